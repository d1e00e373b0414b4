#ifndef MAGNOQI_CONVERTER_HPP
#define MAGNOQI_CONVERTER_HPP

#include <complex>

#include "magnoqi/polynomial.hpp"
#include "magnoqi/system_params.hpp"

namespace magnoqi {

// Drift matrix of the linearized quadrature dynamics, rows/columns ordered
// (X_m, Y_m, X_a, Y_a, X_b, Y_b); entries in rad/s.
struct DriftMatrix {
    Mat6 entries{};

    double at(int i, int j) const { return entries[static_cast<std::size_t>(i * 6 + j)]; }
};

// Damping rates consumed by the frequency-domain coefficients.
struct Kappas {
    double optical = 0.0;    // kappa_a
    double microwave = 0.0;  // kappa_b
    double magnon = 0.0;     // kappa_m
};

// The five input-output coefficients {A_a, A_b, B, C_a, C_b} at one analysis
// frequency. For a faithful transcription they satisfy
//   |A_a|^2 - |B|^2 - |C_a|^2 = 1,
//   |A_b|^2 + |C_b|^2 - |B|^2 = 1,
//   A_b conj(B) + A_a B + C_a C_b = 0
// (the last pairs mirrored frequencies; conj(B) is B at -omega, and the
// combination reduces to A_b B + A_a B + C_a C_b on resonance).
struct ConverterCoefficients {
    std::complex<double> a_a;
    std::complex<double> a_b;
    std::complex<double> b;
    std::complex<double> c_a;
    std::complex<double> c_b;
    double analysis_frequency = 0.0; // rad/s
};

struct CommutatorDefects {
    double d1 = 0.0;                 // |A_a|^2 - |B|^2 - |C_a|^2 - 1
    double d2 = 0.0;                 // |A_b|^2 + |C_b|^2 - |B|^2 - 1
    std::complex<double> d12{0.0};   // cross-commutator residue
};

DriftMatrix drift_matrix(const SystemParams& params, double g_ma_enhanced);

// Authoritative stability check: Routh-Hurwitz on the drift matrix's
// characteristic polynomial.
bool is_stable(const SystemParams& params, double g_ma_enhanced);

// Frequency-dependent coefficients with detunings w_j = 1 - i*omega/kappa_j.
// Throws UnstableRegimeError when 1 + Lb - La <= 0, std::domain_error on a
// nonpositive damping rate.
ConverterCoefficients output_coefficients(const Cooperativities& coop, const Kappas& kappas,
                                          double omega);

// Closed forms at omega = 0.
ConverterCoefficients output_coefficients_resonant(const Cooperativities& coop);

CommutatorDefects commutator_defects(const ConverterCoefficients& c);

} // namespace magnoqi

#endif
