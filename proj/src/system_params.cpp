#include "magnoqi/system_params.hpp"

#include <cmath>
#include <stdexcept>

#include "magnoqi/errors.hpp"

namespace magnoqi {

void validate(const SystemParams& p)
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::domain_error(std::string("SystemParams: ") + name + " must be strictly positive");
        }
    };
    positive(p.sphere_radius, "sphere_radius");
    positive(p.pump_power, "pump_power");
    positive(p.pump_wavelength, "pump_wavelength");
    positive(p.optical_quality, "optical_quality");
    positive(p.magnon_damping, "magnon_damping");
    positive(p.microwave_damping, "microwave_damping");
    positive(p.microwave_frequency, "microwave_frequency");
    positive(p.magnon_frequency, "magnon_frequency");
    if (p.electromagnonic_coupling < 0.0 || !std::isfinite(p.electromagnonic_coupling)) {
        throw std::domain_error("SystemParams: electromagnonic_coupling must be nonnegative");
    }
    if (p.environment_temperature < 0.0 || !std::isfinite(p.environment_temperature)) {
        throw std::domain_error("SystemParams: environment_temperature must be nonnegative");
    }
    if (p.optical_thermal_occupancy < 0.0 || !std::isfinite(p.optical_thermal_occupancy)) {
        throw std::domain_error("SystemParams: optical_thermal_occupancy must be nonnegative");
    }
}

void validate(const MaterialParams& m)
{
    if (!(m.verdet_constant > 0.0) || !(m.refractive_index > 0.0) || !(m.spin_density > 0.0)) {
        throw std::domain_error("MaterialParams: all fields must be strictly positive");
    }
}

double planck_occupation(double angular_frequency, double temperature)
{
    if (!(angular_frequency > 0.0) || !std::isfinite(angular_frequency)) {
        throw std::domain_error("planck_occupation: frequency must be strictly positive");
    }
    if (temperature < 0.0 || !std::isfinite(temperature)) {
        throw std::domain_error("planck_occupation: temperature must be nonnegative");
    }
    if (temperature == 0.0) {
        return 0.0;
    }
    const double x = PhysicalConstants::hbar * angular_frequency /
                     (PhysicalConstants::boltzmann * temperature);
    if (x > 745.0) {
        return 0.0; // exp(x) overflows; occupancy below double underflow
    }
    return 1.0 / std::expm1(x);
}

double wgm_damping(double pump_wavelength, double optical_quality)
{
    if (!(pump_wavelength > 0.0) || !(optical_quality > 0.0)) {
        throw std::domain_error("wgm_damping: arguments must be strictly positive");
    }
    const double omega_p = 2.0 * std::numbers::pi * PhysicalConstants::light_speed / pump_wavelength;
    return omega_p / optical_quality;
}

double optomagnonic_coupling(const MaterialParams& material, double sphere_radius)
{
    validate(material);
    if (!(sphere_radius > 0.0)) {
        throw std::domain_error("optomagnonic_coupling: radius must be strictly positive");
    }
    const double sphere_volume = 4.0 * std::numbers::pi / 3.0 * std::pow(sphere_radius, 3);
    return material.verdet_constant * (PhysicalConstants::light_speed / material.refractive_index) *
           std::sqrt(2.0 / (material.spin_density * sphere_volume));
}

double intracavity_pump_photons(double pump_power, double pump_wavelength, double kappa_a)
{
    if (!(pump_power > 0.0) || !(pump_wavelength > 0.0) || !(kappa_a > 0.0)) {
        throw std::domain_error("intracavity_pump_photons: arguments must be strictly positive");
    }
    const double omega_p = 2.0 * std::numbers::pi * PhysicalConstants::light_speed / pump_wavelength;
    return (2.0 / kappa_a) * pump_power / (PhysicalConstants::hbar * omega_p);
}

Cooperativities cooperativities(const SystemParams& params, const MaterialParams& material)
{
    validate(params);
    const double kappa_a = wgm_damping(params.pump_wavelength, params.optical_quality);
    const double g_ma = optomagnonic_coupling(material, params.sphere_radius);
    const double n_te = intracavity_pump_photons(params.pump_power, params.pump_wavelength, kappa_a);
    const double g_ma_enhanced = g_ma * std::sqrt(n_te);
    return cooperativities_from_rates(g_ma_enhanced, params.electromagnonic_coupling,
                                      kappa_a, params.microwave_damping, params.magnon_damping);
}

Cooperativities cooperativities_from_rates(double g_ma_enhanced, double g_mb,
                                           double kappa_a, double kappa_b, double kappa_m)
{
    if (!(kappa_a > 0.0) || !(kappa_b > 0.0) || !(kappa_m > 0.0)) {
        throw std::domain_error("cooperativities_from_rates: damping rates must be strictly positive");
    }
    Cooperativities coop;
    coop.g_ma_enhanced = g_ma_enhanced;
    coop.lambda_a = g_ma_enhanced * g_ma_enhanced / (kappa_a * kappa_m);
    coop.lambda_b = g_mb * g_mb / (kappa_b * kappa_m);
    return coop;
}

double entangled_bandwidth(double kappa_m, const Cooperativities& coop)
{
    const double d = 1.0 + coop.lambda_b - coop.lambda_a;
    if (!(d > 0.0)) {
        throw UnstableRegimeError("entangled_bandwidth: 1 + lambda_b - lambda_a must be positive");
    }
    return kappa_m * d;
}

double microwave_bath_occupancy(const SystemParams& params)
{
    return planck_occupation(params.microwave_frequency, params.environment_temperature);
}

double magnon_bath_occupancy(const SystemParams& params)
{
    return planck_occupation(params.magnon_frequency, params.environment_temperature);
}

} // namespace magnoqi
