#include "magnoqi/converter.hpp"

#include <cmath>
#include <stdexcept>

#include "magnoqi/errors.hpp"

namespace magnoqi {

using std::complex;

DriftMatrix drift_matrix(const SystemParams& params, double g_ma_enhanced)
{
    validate(params);
    const double km = params.magnon_damping;
    const double ka = wgm_damping(params.pump_wavelength, params.optical_quality);
    const double kb = params.microwave_damping;
    const double gma = g_ma_enhanced;
    const double gmb = params.electromagnonic_coupling;

    DriftMatrix d;
    auto set = [&d](int i, int j, double v) { d.entries[static_cast<std::size_t>(i * 6 + j)] = v; };
    // (X_m, Y_m, X_a, Y_a, X_b, Y_b)
    set(0, 0, -km);  set(0, 3, -gma); set(0, 5, gmb);
    set(1, 1, -km);  set(1, 2, -gma); set(1, 4, -gmb);
    set(2, 1, -gma); set(2, 2, -ka);
    set(3, 0, -gma); set(3, 3, -ka);
    set(4, 1, gmb);  set(4, 4, -kb);
    set(5, 0, -gmb); set(5, 5, -kb);
    return d;
}

bool is_stable(const SystemParams& params, double g_ma_enhanced)
{
    return routh_hurwitz_stable(characteristic_polynomial(drift_matrix(params, g_ma_enhanced).entries));
}

ConverterCoefficients output_coefficients(const Cooperativities& coop, const Kappas& kappas,
                                          double omega)
{
    if (!(kappas.optical > 0.0) || !(kappas.microwave > 0.0) || !(kappas.magnon > 0.0)) {
        throw std::domain_error("output_coefficients: damping rates must be strictly positive");
    }
    const double la = coop.lambda_a;
    const double lb = coop.lambda_b;
    if (la < 0.0 || lb < 0.0) {
        throw std::domain_error("output_coefficients: cooperativities must be nonnegative");
    }
    if (!(1.0 + lb - la > 0.0)) {
        throw UnstableRegimeError("output_coefficients: 1 + lambda_b - lambda_a must be positive");
    }

    const complex<double> i_unit(0.0, 1.0);
    const complex<double> wa = 1.0 - i_unit * omega / kappas.optical;
    const complex<double> wb = 1.0 - i_unit * omega / kappas.microwave;
    const complex<double> wm = 1.0 - i_unit * omega / kappas.magnon;
    const complex<double> was = std::conj(wa);
    const complex<double> wbs = std::conj(wb);
    const complex<double> wms = std::conj(wm);

    const complex<double> den = wb * (wa * wm - la) + lb * wa;
    const complex<double> den_s = wbs * (was * wms - la) + lb * was;

    ConverterCoefficients c;
    c.analysis_frequency = omega;
    c.a_a = (-(was - 2.0) * (lb + wbs * wms) + la * wbs) / den_s;
    c.a_b = ((wb - 2.0) * (la - wa * wm) - lb * wa) / den;
    c.b = 2.0 * std::sqrt(la * lb) / den;
    c.c_a = 2.0 * i_unit * std::sqrt(la) * wbs / den_s;
    c.c_b = 2.0 * i_unit * std::sqrt(lb) * wa / den;
    return c;
}

ConverterCoefficients output_coefficients_resonant(const Cooperativities& coop)
{
    const double la = coop.lambda_a;
    const double lb = coop.lambda_b;
    if (la < 0.0 || lb < 0.0) {
        throw std::domain_error("output_coefficients_resonant: cooperativities must be nonnegative");
    }
    const double d = 1.0 + lb - la;
    if (!(d > 0.0)) {
        throw UnstableRegimeError("output_coefficients_resonant: 1 + lambda_b - lambda_a must be positive");
    }
    ConverterCoefficients c;
    c.analysis_frequency = 0.0;
    c.a_a = (1.0 + la + lb) / d;
    c.a_b = (1.0 - la - lb) / d;
    c.b = 2.0 * std::sqrt(la * lb) / d;
    c.c_a = complex<double>(0.0, 2.0 * std::sqrt(la) / d);
    c.c_b = complex<double>(0.0, 2.0 * std::sqrt(lb) / d);
    return c;
}

CommutatorDefects commutator_defects(const ConverterCoefficients& c)
{
    CommutatorDefects d;
    d.d1 = std::norm(c.a_a) - std::norm(c.b) - std::norm(c.c_a) - 1.0;
    d.d2 = std::norm(c.a_b) + std::norm(c.c_b) - std::norm(c.b) - 1.0;
    // [u_a(omega), u_b(-omega)]: the b coefficient enters at the mirrored
    // frequency, B(-omega) = conj B(omega).
    d.d12 = c.a_b * std::conj(c.b) + c.a_a * c.b + c.c_a * c.c_b;
    return d;
}

} // namespace magnoqi
