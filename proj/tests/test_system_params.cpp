#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <stdexcept>

#include "magnoqi/errors.hpp"
#include "magnoqi/system_params.hpp"

using namespace magnoqi;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("planck occupancy fixtures")
{
    // 9 GHz microwave photons at room temperature and in the fridge.
    CHECK(std::abs(planck_occupation(kTwoPi * 9e9, 293.0) - 677.85) < 0.01);
    CHECK(planck_occupation(kTwoPi * 9e9, 0.0) == 0.0);
    CHECK(std::abs(planck_occupation(kTwoPi * 9e9, 0.030) - 5.59e-7) < 1e-9);
    CHECK_THROWS_AS(planck_occupation(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(planck_occupation(-1.0, 1.0), std::domain_error);
}

TEST_CASE("planck occupancy monotonicity")
{
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> freq(kTwoPi * 1e6, kTwoPi * 1e12);
    std::uniform_real_distribution<double> temp(0.001, 400.0);
    for (int i = 0; i < 500; ++i) {
        const double w = freq(rng);
        const double t = temp(rng);
        CHECK(planck_occupation(w * 1.01, t) < planck_occupation(w, t));
        CHECK(planck_occupation(w, t * 1.01) > planck_occupation(w, t));
    }
}

TEST_CASE("WGM damping")
{
    const double ka = wgm_damping(1550e-9, 3e6);
    CHECK(std::abs(ka - 4.0509e8) / 4.0509e8 < 1e-4);
    CHECK(wgm_damping(1550e-9, 3e6) / wgm_damping(1550e-9, 6e6) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(wgm_damping(3100e-9, 3e6) / wgm_damping(1550e-9, 3e6) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("optomagnonic coupling")
{
    const MaterialParams yig;
    const double g = optomagnonic_coupling(yig, 100e-6);
    CHECK(std::abs(g - 246.1) / 246.1 < 5e-3);
    // V_sphere ~ r^3 under the square root.
    CHECK(optomagnonic_coupling(yig, 200e-6) / g == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-12));
    MaterialParams doubled = yig;
    doubled.verdet_constant *= 2.0;
    CHECK(optomagnonic_coupling(doubled, 100e-6) / g == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("intracavity pump photon number")
{
    const double n = intracavity_pump_photons(60e-3, 1550e-9, 4.0509e8);
    CHECK(std::abs(n - 2.311e9) / 2.311e9 < 1e-3);
    CHECK(intracavity_pump_photons(120e-3, 1550e-9, 4.0509e8) / n == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(intracavity_pump_photons(60e-3, 1550e-9, 2 * 4.0509e8) / n == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("cooperativities from the default parameter chain")
{
    const SystemParams params;
    const MaterialParams yig;
    const Cooperativities coop = cooperativities(params, yig);
    CHECK(std::abs(coop.lambda_a - 0.055) / 0.055 < 0.05);
    CHECK(std::abs(coop.lambda_b - 1600.0) / 1600.0 < 1e-12);
    CHECK(coop.g_ma_enhanced > 0.0);

    const Cooperativities zero = cooperativities_from_rates(0.0, params.electromagnonic_coupling,
                                                            1e8, params.microwave_damping,
                                                            params.magnon_damping);
    CHECK(zero.lambda_a == 0.0);
}

TEST_CASE("cooperativities are invariant under a joint 2*pi rescaling of rates")
{
    const Cooperativities base = cooperativities_from_rates(3.1e3, 2.4e8, 4.05e8, 6.28e6, 6.28e6);
    const Cooperativities scaled = cooperativities_from_rates(kTwoPi * 3.1e3, kTwoPi * 2.4e8,
                                                              kTwoPi * 4.05e8, kTwoPi * 6.28e6,
                                                              kTwoPi * 6.28e6);
    CHECK(base.lambda_a == doctest::Approx(scaled.lambda_a).epsilon(1e-12));
    CHECK(base.lambda_b == doctest::Approx(scaled.lambda_b).epsilon(1e-12));
}

TEST_CASE("entangled bandwidth")
{
    const double km = kTwoPi * 1e6;
    Cooperativities coop;
    CHECK(entangled_bandwidth(km, coop) == doctest::Approx(km).epsilon(1e-14));
    coop.lambda_a = 0.054;
    coop.lambda_b = 1600.0;
    CHECK(entangled_bandwidth(km, coop) == doctest::Approx(km * 1600.946).epsilon(1e-12));
    coop.lambda_a = coop.lambda_b = 7.0;
    CHECK(entangled_bandwidth(km, coop) == doctest::Approx(km).epsilon(1e-14));
    coop.lambda_a = 5.0;
    coop.lambda_b = 1.0;
    CHECK_THROWS_AS(entangled_bandwidth(km, coop), magnoqi::UnstableRegimeError);
}

TEST_CASE("bath occupancies expose both interpretations")
{
    SystemParams params;
    params.magnon_frequency = kTwoPi * 2.8e9; // bias-field value
    const double micro = microwave_bath_occupancy(params);
    const double magnon = magnon_bath_occupancy(params);
    CHECK(std::abs(micro - 5.5866e-7) / 5.5866e-7 < 1e-3);
    CHECK(std::abs(magnon - 0.011472) / 0.011472 < 1e-3);
}

TEST_CASE("parameter validation rejects nonphysical inputs")
{
    SystemParams params;
    params.pump_power = 0.0;
    CHECK_THROWS_AS(validate(params), std::domain_error);
    params = SystemParams{};
    params.environment_temperature = -1.0;
    CHECK_THROWS_AS(validate(params), std::domain_error);
}
