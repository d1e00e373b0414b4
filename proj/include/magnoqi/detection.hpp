#ifndef MAGNOQI_DETECTION_HPP
#define MAGNOQI_DETECTION_HPP

#include <cstdint>

#include "magnoqi/converter.hpp"
#include "magnoqi/gaussian.hpp"

namespace magnoqi {

// One target-detection configuration: round-trip transmissivity, thermal
// background occupancy of the return path, number of signal modes per
// decision, and the source bath occupancies.
struct DetectionScenario {
    double eta = 0.07;
    double background_occupancy = 0.0; // n_T
    std::int64_t mode_count = 1;       // M
    BathOccupancies baths;
};

// Single-mode moments of the phase-conjugate receiver under both hypotheses
// (H0 target absent, H1 target present).
struct ReceiverMoments {
    double mean_plus_h0 = 0.0;
    double mean_minus_h0 = 0.0;
    double mean_plus_h1 = 0.0;
    double mean_minus_h1 = 0.0;
    double var_h0 = 0.0;      // <(dN_+ - dN_-)^2>_H0
    double var_h1 = 0.0;
    double converted_h0 = 0.0; // <u_eta,a^dag u_eta,a>_H0
    double converted_h1 = 0.0;
    double idler_n_a = 0.0;
};

void validate(const DetectionScenario& scenario);

// Photon-count moments behind the 50-50 splitter; derived at resonance only
// (throws ConventionError for off-resonance coefficients). idler_n_a is the
// retained idler's photon number from the source's second moments.
ReceiverMoments receiver_moments(const ConverterCoefficients& c, const DetectionScenario& scenario,
                                 double idler_n_a);

// M-mode SNR of the photon-count difference receiver; exactly linear in M.
double snr_qi(const ReceiverMoments& moments, double mode_count);

// P = erfc(sqrt(snr/8)) / 2 for equally likely hypotheses.
double error_probability(double snr);

// log10 of the same error probability, valid deep into the regime where the
// probability underflows a double.
double log10_error_probability(double snr);

// Coherent-state transmitter baseline, SNR = 4 eta M n_b / (2 n_T + 1).
double snr_classical(const DetectionScenario& scenario, double n_b);

// R = SNR_QI / SNR_CI; the mode count cancels.
double advantage_ratio(const ConverterCoefficients& c, const DetectionScenario& scenario,
                       const ReceiverMoments& moments, double n_b);

// n_T^sill = |<u_b u_a>|^2 / n_a - n_b; backgrounds at or above it break the
// signal-idler entanglement.
double entanglement_survival_threshold(const OutputMoments& m);

// Mode count giving the same transmitted energy M*n_b as the reference
// transmitter, rounded to the nearest integer (at least 1).
std::int64_t equal_energy_mode_count(std::int64_t m_ref, double n_b_ref, double n_b_other);

} // namespace magnoqi

#endif
