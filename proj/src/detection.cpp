#include "magnoqi/detection.hpp"

#include <cmath>
#include <stdexcept>

#include "magnoqi/errors.hpp"
#include "magnoqi/special_functions.hpp"

namespace magnoqi {

void validate(const DetectionScenario& s)
{
    if (!(s.eta >= 0.0) || !(s.eta < 1.0)) {
        throw std::domain_error("DetectionScenario: eta must lie in [0, 1)");
    }
    if (s.background_occupancy < 0.0 || !std::isfinite(s.background_occupancy)) {
        throw std::domain_error("DetectionScenario: background occupancy must be nonnegative");
    }
    if (s.mode_count < 1) {
        throw std::domain_error("DetectionScenario: mode count must be at least 1");
    }
    if (s.baths.optical < 0.0 || s.baths.microwave < 0.0 || s.baths.intermediary < 0.0) {
        throw std::domain_error("DetectionScenario: bath occupancies must be nonnegative");
    }
}

ReceiverMoments receiver_moments(const ConverterCoefficients& c, const DetectionScenario& scenario,
                                 double idler_n_a)
{
    validate(scenario);
    if (c.analysis_frequency != 0.0) {
        throw ConventionError("receiver_moments: receiver chain is derived at resonance only");
    }

    const double na_t = scenario.baths.optical;
    const double nb_t = scenario.baths.microwave;
    const double nm_t = scenario.baths.intermediary;
    const double n_t = scenario.background_occupancy;
    const double eta = scenario.eta;

    const double b2 = std::norm(c.b);
    const double base = b2 * ((n_t + nb_t) / 2.0 + 1.0) + std::norm(c.a_a) * na_t +
                        std::norm(c.c_a) * (nm_t + 1.0);
    // eta |B|^2 [ |A_b|^2(n_b^T+1) + |B|^2 n_a^T + |C_b|^2(n_m^T+1) ]
    const double reflected = eta * b2 * (std::norm(c.a_b) * (nb_t + 1.0) + b2 * na_t +
                                         std::norm(c.c_b) * (nm_t + 1.0));
    // sqrt(eta) Re[ |B|^2 A_b (n_b^T+1) - |B|^2 A_a n_a^T + B* C_a C_b (n_m^T+1) ]
    const double signature =
        std::sqrt(eta) * (b2 * c.a_b * (nb_t + 1.0) - b2 * c.a_a * na_t +
                          std::conj(c.b) * c.c_a * c.c_b * (nm_t + 1.0))
                             .real();

    ReceiverMoments r;
    r.idler_n_a = idler_n_a;
    r.mean_plus_h0 = base;
    r.mean_minus_h0 = base;
    r.mean_plus_h1 = base + reflected / 2.0 + signature;
    r.mean_minus_h1 = base + reflected / 2.0 - signature;
    r.converted_h0 = b2 * (n_t + 1.0) + std::norm(c.a_a) * na_t + std::norm(c.c_a) * (nm_t + 1.0);
    r.converted_h1 = r.converted_h0 + reflected;

    auto variance = [idler_n_a](double n_plus, double n_minus, double converted) {
        return n_plus * (n_plus + 1.0) + n_minus * (n_minus + 1.0) -
               (converted - idler_n_a) * (converted - idler_n_a) / 2.0;
    };
    r.var_h0 = variance(r.mean_plus_h0, r.mean_minus_h0, r.converted_h0);
    r.var_h1 = variance(r.mean_plus_h1, r.mean_minus_h1, r.converted_h1);
    return r;
}

double snr_qi(const ReceiverMoments& m, double mode_count)
{
    if (!(m.var_h0 > 0.0) || !(m.var_h1 > 0.0)) {
        throw std::domain_error("snr_qi: degenerate scenario with nonpositive variance");
    }
    const double shift = (m.mean_plus_h1 - m.mean_minus_h1) - (m.mean_plus_h0 - m.mean_minus_h0);
    const double denom = std::sqrt(m.var_h0) + std::sqrt(m.var_h1);
    return 4.0 * mode_count * shift * shift / (denom * denom);
}

double error_probability(double snr)
{
    if (!(snr >= 0.0)) {
        throw std::domain_error("error_probability: SNR must be nonnegative");
    }
    return erfc(std::sqrt(snr / 8.0)) / 2.0;
}

double log10_error_probability(double snr)
{
    if (!(snr >= 0.0)) {
        throw std::domain_error("log10_error_probability: SNR must be nonnegative");
    }
    constexpr double ln10 = 2.302585092994046;
    return (log_erfc(std::sqrt(snr / 8.0)) - std::log(2.0)) / ln10;
}

double snr_classical(const DetectionScenario& scenario, double n_b)
{
    validate(scenario);
    if (n_b < 0.0) {
        throw std::domain_error("snr_classical: n_b must be nonnegative");
    }
    return 4.0 * scenario.eta * static_cast<double>(scenario.mode_count) * n_b /
           (2.0 * scenario.background_occupancy + 1.0);
}

double advantage_ratio(const ConverterCoefficients& c, const DetectionScenario& scenario,
                       const ReceiverMoments& moments, double n_b)
{
    const double ci = snr_classical(scenario, n_b);
    if (!(ci > 0.0)) {
        throw std::domain_error("advantage_ratio: classical SNR vanishes");
    }
    (void)c; // the coefficients already shaped `moments`
    return snr_qi(moments, static_cast<double>(scenario.mode_count)) / ci;
}

double entanglement_survival_threshold(const OutputMoments& m)
{
    if (!(m.n_a > 0.0)) {
        throw std::domain_error("entanglement_survival_threshold: n_a must be positive");
    }
    return std::norm(m.cross) / m.n_a - m.n_b;
}

std::int64_t equal_energy_mode_count(std::int64_t m_ref, double n_b_ref, double n_b_other)
{
    if (!(n_b_other > 0.0)) {
        throw std::domain_error("equal_energy_mode_count: n_b_other must be positive");
    }
    const double target = static_cast<double>(m_ref) * n_b_ref / n_b_other;
    const std::int64_t rounded = static_cast<std::int64_t>(std::llround(target));
    return std::max<std::int64_t>(1, rounded);
}

} // namespace magnoqi
