#include "magnoqi/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magnoqi/errors.hpp"
#include "magnoqi/special_functions.hpp"

namespace magnoqi {

namespace {

constexpr double kPhysicalityTol = 1e-9;

void check_cm(const TwoModeCM& v)
{
    if (!(v.v11 >= 0.5 - kPhysicalityTol) || !(v.v33 >= 0.5 - kPhysicalityTol) ||
        !std::isfinite(v.v13)) {
        throw std::domain_error("TwoModeCM: diagonal entries must be at least 1/2");
    }
}

// Both symplectic spectra share the structure
//   nu^2 = (delta -+ sqrt(delta^2 - 4 detV)) / 2
// with detV = (v11 v33 - v13^2)^2 and delta the (partial-transpose) seralian.
std::pair<double, double> spectrum_from_delta(double delta, double det_v)
{
    double disc = delta * delta - 4.0 * det_v;
    const double scale = delta * delta + 4.0 * std::abs(det_v);
    if (disc < 0.0) {
        if (disc < -1e-9 * std::max(scale, 1.0)) {
            throw NumericalError("symplectic spectrum: negative discriminant (malformed CM)");
        }
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    const double hi = std::sqrt(std::max(0.0, (delta + root) / 2.0));
    const double lo = std::sqrt(std::max(0.0, (delta - root) / 2.0));
    return {hi, lo};
}

// h() with slack for eigenvalues a hair below 1/2 from rounding; anything
// below the CM physicality tolerance still throws.
double entropy_clamped(double x)
{
    if (x < 0.5 && x >= 0.5 - kPhysicalityTol) {
        return 0.0;
    }
    return entropy_h(x);
}

} // namespace

Mat4 TwoModeCM::matrix() const
{
    return Mat4{v11, 0.0, v13,  0.0,
                0.0, v11, 0.0, -v13,
                v13, 0.0, v33,  0.0,
                0.0, -v13, 0.0, v33};
}

Mat4 TwoModeCM::partial_transpose_matrix() const
{
    return Mat4{v11, 0.0, v13, 0.0,
                0.0, v11, 0.0, v13,
                v13, 0.0, v33, 0.0,
                0.0, v13, 0.0, v33};
}

OutputMoments output_moments(const ConverterCoefficients& c, const BathOccupancies& baths)
{
    if (baths.optical < 0.0 || baths.microwave < 0.0 || baths.intermediary < 0.0) {
        throw std::domain_error("output_moments: bath occupancies must be nonnegative");
    }
    const double na_t = baths.optical;
    const double nb_t = baths.microwave;
    const double nm_t = baths.intermediary;

    OutputMoments m;
    m.n_a = std::norm(c.b) * (nb_t + 1.0) + std::norm(c.a_a) * na_t + std::norm(c.c_a) * (nm_t + 1.0);
    m.n_b = std::norm(c.a_b) * nb_t + std::norm(c.b) * (na_t + 1.0) + std::norm(c.c_b) * nm_t;
    m.cross = c.a_b * c.b * (nb_t + 1.0) - c.b * c.a_a * na_t + c.c_a * c.c_b * (nm_t + 1.0);
    return m;
}

double entanglement_metric(const OutputMoments& m)
{
    if (!(m.n_a > 0.0) || !(m.n_b > 0.0)) {
        throw std::domain_error("entanglement_metric: undefined at zero photon number");
    }
    return std::abs(m.cross) / std::sqrt(m.n_a * m.n_b);
}

TwoModeCM covariance_matrix(const OutputMoments& m)
{
    const double scale = std::max(1.0, std::abs(m.cross));
    if (std::abs(m.cross.imag()) > 1e-9 * scale) {
        throw ConventionError("covariance_matrix: cross moment significantly complex "
                              "(off-resonance state); use the magnitude-based metric instead");
    }
    TwoModeCM v;
    v.v11 = m.n_b + 0.5;
    v.v33 = m.n_a + 0.5;
    v.v13 = m.cross.real();
    return v;
}

SymplecticPair symplectic_spectrum(const TwoModeCM& v)
{
    check_cm(v);
    const double delta = v.v11 * v.v11 + v.v33 * v.v33 - 2.0 * v.v13 * v.v13;
    const double minor = v.v11 * v.v33 - v.v13 * v.v13;
    const auto [hi, lo] = spectrum_from_delta(delta, minor * minor);
    return SymplecticPair{hi, lo};
}

double pt_symplectic_eigenvalue(const TwoModeCM& v)
{
    check_cm(v);
    const double delta_pt = v.v11 * v.v11 + v.v33 * v.v33 + 2.0 * v.v13 * v.v13;
    const double minor = v.v11 * v.v33 - v.v13 * v.v13;
    return spectrum_from_delta(delta_pt, minor * minor).second;
}

double log_negativity(const TwoModeCM& v)
{
    const double xi = pt_symplectic_eigenvalue(v);
    if (!(xi > 0.0)) {
        throw NumericalError("log_negativity: vanishing partial-transpose eigenvalue");
    }
    return std::max(0.0, -std::log(2.0 * xi));
}

double coherent_information(const TwoModeCM& v)
{
    const SymplecticPair nu = symplectic_spectrum(v);
    return entropy_clamped(v.v11) - entropy_clamped(nu.nu_plus) - entropy_clamped(nu.nu_minus);
}

double quantum_discord(const TwoModeCM& v, DiscordConvention convention)
{
    check_cm(v);
    const double sigma = (convention == DiscordConvention::vacuum_half) ? 0.25 : 1.0;
    const double sqrt_sigma = (convention == DiscordConvention::vacuum_half) ? 0.5 : 1.0;
    // The reparametrized thermal/attenuator form divides by v33^2 - sigma;
    // with v13 = 0 nothing is divided and the limit is plain 0.
    if (std::abs(v.v33 * v.v33 - sigma) <= 1e-12 && v.v13 * v.v13 > 1e-24) {
        throw std::domain_error("quantum_discord: degenerate denominator v33^2 - sigma "
                                "(v33 at the convention's vacuum level)");
    }
    const SymplecticPair nu = symplectic_spectrum(v);
    // tau + eta = v11 - v13^2 / (v33 + sqrt(sigma)), the conditional variance
    // after the optimal Gaussian measurement on mode a.
    const double conditional = v.v11 - v.v13 * v.v13 / (v.v33 + sqrt_sigma);
    return entropy_clamped(v.v33) - entropy_clamped(nu.nu_plus) - entropy_clamped(nu.nu_minus) +
           entropy_clamped(conditional);
}

ResourceReport resource_report(const OutputMoments& m)
{
    ResourceReport r;
    r.n_b = m.n_b;
    if (!(m.n_a > 0.0) || !(m.n_b > 0.0)) {
        return r; // vacuum output: all measures zero, normalization undefined
    }
    r.epsilon = entanglement_metric(m);
    const TwoModeCM v = covariance_matrix(m);
    r.log_negativity = log_negativity(v);
    r.coherent_information = coherent_information(v);
    r.discord_half = quantum_discord(v, DiscordConvention::vacuum_half);
    r.discord_unit = quantum_discord(v, DiscordConvention::vacuum_unit);
    r.per_photon_defined = true;
    r.epsilon_per_photon = r.epsilon / m.n_b;
    r.log_negativity_per_photon = r.log_negativity / m.n_b;
    r.coherent_information_per_photon = r.coherent_information / m.n_b;
    r.discord_half_per_photon = r.discord_half / m.n_b;
    r.discord_unit_per_photon = r.discord_unit / m.n_b;
    return r;
}

} // namespace magnoqi
