#ifndef MAGNOQI_SYSTEM_PARAMS_HPP
#define MAGNOQI_SYSTEM_PARAMS_HPP

#include <numbers>

namespace magnoqi {

// CODATA values.
struct PhysicalConstants {
    static constexpr double hbar = 1.054571817e-34;      // J s
    static constexpr double boltzmann = 1.380649e-23;    // J/K
    static constexpr double light_speed = 299792458.0;   // m/s
};

// Magneto-optical material description (YIG defaults).
struct MaterialParams {
    double verdet_constant = 377.0;     // rad/m ("3.77 rad/cm")
    double refractive_index = 2.19;
    double spin_density = 2.1e28;       // 1/m^3
};

// Physical device description. Every rate and frequency is stored as an
// angular frequency (rad/s); configuration inputs given in Hz are multiplied
// by 2*pi at parse time.
struct SystemParams {
    double sphere_radius = 100e-6;                                    // m
    double pump_power = 60e-3;                                        // W
    double pump_wavelength = 1550e-9;                                 // m
    double optical_quality = 3e6;                                     // dimensionless Q
    double magnon_damping = 2.0 * std::numbers::pi * 1e6;             // kappa_m, rad/s
    double microwave_damping = 2.0 * std::numbers::pi * 1e6;          // kappa_b, rad/s
    double electromagnonic_coupling = 2.0 * std::numbers::pi * 40e6;  // g_mb, rad/s
    double microwave_frequency = 2.0 * std::numbers::pi * 9e9;        // omega_b, rad/s
    double magnon_frequency = 2.0 * std::numbers::pi * 9e9;           // omega_m, rad/s
    double environment_temperature = 0.030;                           // K
    double optical_thermal_occupancy = 0.0;                           // n_a^T
};

// Dimensionless coupling strengths plus the pump-enhanced optomagnonic rate.
struct Cooperativities {
    double lambda_a = 0.0;       // G_ma^2 / (kappa_a kappa_m)
    double lambda_b = 0.0;       // g_mb^2 / (kappa_b kappa_m)
    double g_ma_enhanced = 0.0;  // G_ma = g_ma * sqrt(N_TE), rad/s
};

// Thermal occupancies of the three input baths (n_a^T, n_b^T, n_m^T).
struct BathOccupancies {
    double optical = 0.0;
    double microwave = 0.0;
    double intermediary = 0.0;
};

// Throws std::domain_error when a rate/frequency is non-positive or the
// temperature is negative.
void validate(const SystemParams& params);
void validate(const MaterialParams& material);

// Bose-Einstein occupancy 1/(exp(hbar*omega/kB/T) - 1); exactly 0 at T = 0.
// Uses expm1 so small-argument cases keep full precision.
double planck_occupation(double angular_frequency, double temperature);

// kappa_a = omega_p / Q with omega_p = 2 pi c / lambda_p.
double wgm_damping(double pump_wavelength, double optical_quality);

// Single-photon optomagnonic rate g_ma = V (c/n_r) sqrt(2/(n_spin V_sphere)).
double optomagnonic_coupling(const MaterialParams& material, double sphere_radius);

// Intracavity pump photon number N_TE = (2/kappa_a)(P_p / hbar omega_p).
double intracavity_pump_photons(double pump_power, double pump_wavelength, double kappa_a);

// Full parameter chain from the physical device description.
Cooperativities cooperativities(const SystemParams& params, const MaterialParams& material);

// Cooperativities from bare rates; ratios, hence invariant under a joint
// rescaling of all five rates.
Cooperativities cooperativities_from_rates(double g_ma_enhanced, double g_mb,
                                           double kappa_a, double kappa_b, double kappa_m);

// Common bandwidth of the entangled output fields, W = kappa_m(1 + Lb - La).
// Throws UnstableRegimeError when 1 + Lb - La <= 0.
double entangled_bandwidth(double kappa_m, const Cooperativities& coop);

// Bath occupancy of the microwave input at the device temperature.
double microwave_bath_occupancy(const SystemParams& params);

// Bath occupancy evaluated at the magnon frequency (distinct from the
// microwave one only when the bias-field value overrides the resonant
// default).
double magnon_bath_occupancy(const SystemParams& params);

} // namespace magnoqi

#endif
