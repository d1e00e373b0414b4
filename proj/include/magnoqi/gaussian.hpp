#ifndef MAGNOQI_GAUSSIAN_HPP
#define MAGNOQI_GAUSSIAN_HPP

#include <complex>

#include "magnoqi/converter.hpp"
#include "magnoqi/small_matrix.hpp"
#include "magnoqi/system_params.hpp"

namespace magnoqi {

// The three nonzero second moments of the propagating two-mode state:
// photon numbers of the optical (n_a) and microwave (n_b) outputs plus the
// phase-sensitive cross correlation <u_b u_a>.
struct OutputMoments {
    double n_a = 0.0;
    double n_b = 0.0;
    std::complex<double> cross{0.0};
};

// Two-mode squeezed thermal CM, vacuum noise 1/2, stored by its three
// distinct entries. Expands to
//   [ v11  0    v13  0  ]
//   [ 0    v11  0   -v13]
//   [ v13  0    v33  0  ]
//   [ 0   -v13  0    v33]
// in (X_b, Y_b, X_a, Y_a) ordering.
struct TwoModeCM {
    double v11 = 0.5; // n_b + 1/2
    double v33 = 0.5; // n_a + 1/2
    double v13 = 0.0; // Re <u_b u_a>

    Mat4 matrix() const;
    Mat4 partial_transpose_matrix() const; // off-diagonal block diag(v13, +v13)
};

enum class DiscordConvention {
    vacuum_half, // denominators v33^2 - 1/4, consistent with vacuum noise 1/2
    vacuum_unit, // literal printed form, denominators v33^2 - 1
};

// All figure-of-merit quantities for one operating point. Normalized
// variants divide by the emitted microwave photon number n_b and are only
// meaningful when per_photon_defined.
struct ResourceReport {
    double epsilon = 0.0;
    double log_negativity = 0.0;        // natural-log convention
    double coherent_information = 0.0;  // bits
    double discord_half = 0.0;          // bits, vacuum-1/2 convention
    double discord_unit = 0.0;          // bits, literal printed convention
    double n_b = 0.0;
    bool per_photon_defined = false;
    double epsilon_per_photon = 0.0;
    double log_negativity_per_photon = 0.0;
    double coherent_information_per_photon = 0.0;
    double discord_half_per_photon = 0.0;
    double discord_unit_per_photon = 0.0;
};

// Second moments of the output fields from the coefficients and the three
// bath occupancies.
OutputMoments output_moments(const ConverterCoefficients& c, const BathOccupancies& baths);

// epsilon = |<u_b u_a>| / sqrt(n_b n_a); > 1 means the outputs are entangled.
// Throws std::domain_error when either photon number vanishes.
double entanglement_metric(const OutputMoments& m);

// Throws ConventionError when the cross moment is significantly complex
// (off-resonance data); CM-based measures assume resonance.
TwoModeCM covariance_matrix(const OutputMoments& m);

// Closed-form symplectic spectrum; agrees with the i*Omega*V oracle.
SymplecticPair symplectic_spectrum(const TwoModeCM& v);

// Smallest partially transposed symplectic eigenvalue.
double pt_symplectic_eigenvalue(const TwoModeCM& v);

// E_N = max(0, -ln 2 xi_minus).
double log_negativity(const TwoModeCM& v);

// I(a|b) = h(v11) - h(nu_plus) - h(nu_minus), in bits.
double coherent_information(const TwoModeCM& v);

// Gaussian discord D(b|a) under the selected reference convention.
double quantum_discord(const TwoModeCM& v, DiscordConvention convention);

// Bundles every measure plus the per-photon normalizations.
ResourceReport resource_report(const OutputMoments& m);

} // namespace magnoqi

#endif
