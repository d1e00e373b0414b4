#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <stdexcept>

#include "magnoqi/converter.hpp"
#include "magnoqi/errors.hpp"
#include "magnoqi/detection.hpp"
#include "magnoqi/gaussian.hpp"
#include "magnoqi/small_matrix.hpp"
#include "magnoqi/special_functions.hpp"

using namespace magnoqi;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

OutputMoments fixture_moments()
{
    return output_moments(output_coefficients_resonant(Cooperativities{1.0, 1.0, 0.0}),
                          BathOccupancies{0.0, 0.0, 0.0});
}

TwoModeCM tmsv(double r)
{
    TwoModeCM v;
    v.v11 = std::cosh(2 * r) / 2;
    v.v33 = std::cosh(2 * r) / 2;
    v.v13 = std::sinh(2 * r) / 2;
    return v;
}

// Draw a random physical CM of the two-mode squeezed thermal form by pushing
// random baths through random stable coefficients.
TwoModeCM random_cm(std::mt19937& rng)
{
    std::uniform_real_distribution<double> la_dist(0.0, 3.0);
    std::uniform_real_distribution<double> lb_dist(0.0, 2000.0);
    std::uniform_real_distribution<double> bath(0.0, 300.0);
    for (;;) {
        const double la = la_dist(rng);
        const double lb = lb_dist(rng);
        if (1.0 + lb - la <= 1e-3) continue;
        const auto c = output_coefficients_resonant(Cooperativities{la, lb, 0.0});
        const auto m = output_moments(c, BathOccupancies{bath(rng), bath(rng), bath(rng)});
        return covariance_matrix(m);
    }
}

} // namespace

TEST_CASE("output moments fixtures")
{
    SUBCASE("exact fixture at lambda_a = lambda_b = 1, vacuum baths")
    {
        const OutputMoments m = fixture_moments();
        CHECK(m.n_a == doctest::Approx(8.0).epsilon(1e-13));
        CHECK(m.n_b == doctest::Approx(4.0).epsilon(1e-13));
        CHECK(m.cross.real() == doctest::Approx(-6.0).epsilon(1e-13));
        CHECK(std::abs(m.cross.imag()) < 1e-13);
    }
    SUBCASE("vacuum in, vacuum out")
    {
        const OutputMoments m = output_moments(
            output_coefficients_resonant(Cooperativities{0.0, 0.0, 0.0}), BathOccupancies{});
        CHECK(m.n_a == 0.0);
        CHECK(m.n_b == 0.0);
        CHECK(std::abs(m.cross) == 0.0);
    }
    SUBCASE("paper operating point (0.054, 400) at 30 mK")
    {
        const auto c = output_coefficients_resonant(Cooperativities{0.054, 400.0, 0.0});
        const OutputMoments m = output_moments(c, BathOccupancies{0.0, 5.59e-7, 5.59e-7});
        CHECK(std::abs(m.n_b - 5.374e-4) / 5.374e-4 < 0.01);
        CHECK(std::abs(std::abs(m.cross) - 0.023189) / 0.023189 < 0.01);
    }
}

TEST_CASE("entanglement metric")
{
    SUBCASE("uncorrelated outputs give zero")
    {
        OutputMoments m;
        m.n_a = m.n_b = 1.0;
        m.cross = 0.0;
        CHECK(entanglement_metric(m) == 0.0);
    }
    SUBCASE("fixture value 6/sqrt(32)")
    {
        CHECK(entanglement_metric(fixture_moments()) ==
              doctest::Approx(6.0 / std::sqrt(32.0)).epsilon(1e-13));
    }
    SUBCASE("paper operating point is deeply nonclassical")
    {
        const auto c = output_coefficients_resonant(Cooperativities{0.054, 400.0, 0.0});
        const OutputMoments m = output_moments(c, BathOccupancies{0.0, 5.59e-7, 5.59e-7});
        CHECK(std::abs(entanglement_metric(m) - 43.0) / 43.0 < 0.05);
    }
    SUBCASE("zero photon number is rejected")
    {
        OutputMoments m;
        CHECK_THROWS_AS(entanglement_metric(m), std::domain_error);
    }
}

TEST_CASE("covariance matrix construction")
{
    SUBCASE("vacuum moments")
    {
        const TwoModeCM v = covariance_matrix(OutputMoments{});
        CHECK(v.v11 == 0.5);
        CHECK(v.v33 == 0.5);
        CHECK(v.v13 == 0.0);
    }
    SUBCASE("fixture mapping (8, 4, -6) -> (4.5, 8.5, -6)")
    {
        const TwoModeCM v = covariance_matrix(fixture_moments());
        CHECK(v.v11 == doctest::Approx(4.5).epsilon(1e-13));
        CHECK(v.v33 == doctest::Approx(8.5).epsilon(1e-13));
        CHECK(v.v13 == doctest::Approx(-6.0).epsilon(1e-13));
    }
    SUBCASE("TMSV moments map to the hyperbolic identities")
    {
        const double r = 0.5;
        OutputMoments m;
        m.n_a = m.n_b = std::sinh(r) * std::sinh(r);
        m.cross = std::cosh(r) * std::sinh(r);
        const TwoModeCM v = covariance_matrix(m);
        CHECK(v.v11 == doctest::Approx(std::cosh(2 * r) / 2).epsilon(1e-13));
        CHECK(v.v13 == doctest::Approx(std::sinh(2 * r) / 2).epsilon(1e-13));
    }
    SUBCASE("complex cross moment is a convention error")
    {
        OutputMoments m;
        m.n_a = m.n_b = 1.0;
        m.cross = std::complex<double>(0.5, 0.3);
        CHECK_THROWS_AS(covariance_matrix(m), ConventionError);
    }
}

TEST_CASE("symplectic spectrum closed form")
{
    SUBCASE("vacuum and fixture")
    {
        const SymplecticPair vac = symplectic_spectrum(TwoModeCM{});
        CHECK(vac.nu_plus == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(vac.nu_minus == doctest::Approx(0.5).epsilon(1e-14));

        const SymplecticPair nu = symplectic_spectrum(TwoModeCM{4.5, 8.5, -6.0});
        CHECK(nu.nu_plus == doctest::Approx(4.5).epsilon(1e-12));
        CHECK(nu.nu_minus == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("TMSV is pure at every squeezing")
    {
        for (double r : {0.1, 0.5, 1.0, 2.0}) {
            const SymplecticPair nu = symplectic_spectrum(tmsv(r));
            CHECK(std::abs(nu.nu_plus - 0.5) < 1e-9);
            CHECK(std::abs(nu.nu_minus - 0.5) < 1e-9);
        }
    }
}

TEST_CASE("closed forms agree with the iOmegaV oracle on random CMs")
{
    std::mt19937 rng(61);
    for (int i = 0; i < 1000; ++i) {
        const TwoModeCM v = random_cm(rng);
        const SymplecticPair closed = symplectic_spectrum(v);
        const SymplecticPair oracle = symplectic_eigenvalues_oracle(v.matrix());
        const double scale = std::max(1.0, closed.nu_plus);
        CHECK(std::abs(closed.nu_plus - oracle.nu_plus) < 1e-9 * scale);
        CHECK(std::abs(closed.nu_minus - oracle.nu_minus) < 1e-9 * scale);

        const double xi = pt_symplectic_eigenvalue(v);
        const SymplecticPair pt = symplectic_eigenvalues_oracle(v.partial_transpose_matrix());
        CHECK(std::abs(xi - pt.nu_minus) < 1e-9 * scale);

        CHECK(closed.nu_minus >= 0.5 - 1e-9); // physicality of generated states
    }
}

TEST_CASE("logarithmic negativity")
{
    SUBCASE("product states carry none")
    {
        CHECK(log_negativity(TwoModeCM{1.7, 0.9, 0.0}) == 0.0);
    }
    SUBCASE("E_N(TMSV(r)) = 2r")
    {
        for (double r : {0.1, 0.5, 1.0, 2.0}) {
            CHECK(std::abs(log_negativity(tmsv(r)) - 2 * r) < 1e-9);
        }
    }
    SUBCASE("fixture value via xi^2 = (164.5 - sqrt(27040))/2")
    {
        CHECK(std::abs(log_negativity(TwoModeCM{4.5, 8.5, -6.0}) - 1.047) < 1e-3);
    }
}

TEST_CASE("coherent information")
{
    CHECK(coherent_information(TwoModeCM{}) == 0.0);
    CHECK(std::abs(coherent_information(TwoModeCM{4.5, 8.5, -6.0})) < 1e-9);
    // Pure-state entropies vanish, leaving h(V11).
    const double r = 0.5;
    CHECK(coherent_information(tmsv(r)) ==
          doctest::Approx(magnoqi::entropy_h(std::cosh(2 * r) / 2)).epsilon(1e-12));
    CHECK(coherent_information(tmsv(r)) > 0.0);
}

TEST_CASE("quantum discord")
{
    SUBCASE("uncorrelated CMs carry none under either convention")
    {
        const TwoModeCM v{3.2, 1.4, 0.0};
        CHECK(std::abs(quantum_discord(v, DiscordConvention::vacuum_half)) < 1e-12);
        CHECK(std::abs(quantum_discord(v, DiscordConvention::vacuum_unit)) < 1e-12);
        CHECK(std::abs(quantum_discord(TwoModeCM{}, DiscordConvention::vacuum_half)) < 1e-12);
        CHECK(std::abs(quantum_discord(TwoModeCM{}, DiscordConvention::vacuum_unit)) < 1e-12);
    }
    SUBCASE("fixture values under both conventions")
    {
        // Frozen from direct 40-digit evaluation of the two reparametrized
        // forms; the conventions genuinely disagree on mixed states.
        const TwoModeCM v{4.5, 8.5, -6.0};
        CHECK(quantum_discord(v, DiscordConvention::vacuum_half) ==
              doctest::Approx(0.9196845385439989).epsilon(1e-9));
        CHECK(quantum_discord(v, DiscordConvention::vacuum_unit) ==
              doctest::Approx(1.7265951824325874).epsilon(1e-9));
        CHECK(quantum_discord(v, DiscordConvention::vacuum_half) > 0.0);
        CHECK(quantum_discord(v, DiscordConvention::vacuum_unit) > 0.0);
    }
    SUBCASE("degenerate denominator diagnostics")
    {
        CHECK_THROWS_AS(quantum_discord(TwoModeCM{2.0, 1.0, 0.4}, DiscordConvention::vacuum_unit),
                        std::domain_error);
        // v13 = 0 at the same v33 is fine (nothing is divided).
        CHECK(std::abs(quantum_discord(TwoModeCM{2.0, 1.0, 0.0}, DiscordConvention::vacuum_unit)) <
              1e-12);
    }
    SUBCASE("nonnegative under the consistent convention on random physical CMs")
    {
        std::mt19937 rng(62);
        for (int i = 0; i < 300; ++i) {
            const TwoModeCM v = random_cm(rng);
            CHECK(quantum_discord(v, DiscordConvention::vacuum_half) >= -1e-9);
        }
    }
}

TEST_CASE("resource report")
{
    SUBCASE("vacuum output flags undefined normalization")
    {
        const ResourceReport r = resource_report(OutputMoments{});
        CHECK_FALSE(r.per_photon_defined);
        CHECK(r.epsilon == 0.0);
        CHECK(r.log_negativity == 0.0);
    }
    SUBCASE("fixture report")
    {
        const ResourceReport r = resource_report(fixture_moments());
        CHECK(r.per_photon_defined);
        CHECK(r.epsilon == doctest::Approx(6.0 / std::sqrt(32.0)).epsilon(1e-12));
        CHECK(std::abs(r.log_negativity - 1.047) < 1e-3);
        CHECK(std::abs(r.coherent_information) < 1e-9);
        CHECK(r.n_b == doctest::Approx(4.0));
        CHECK(r.log_negativity_per_photon == doctest::Approx(r.log_negativity / 4.0));
    }
    SUBCASE("paper grid corner is deeply entangled")
    {
        const auto c = output_coefficients_resonant(Cooperativities{0.054, 1600.0, 0.0});
        const double n_bath = planck_occupation(kTwoPi * 9e9, 0.030);
        const ResourceReport r =
            resource_report(output_moments(c, BathOccupancies{0.0, n_bath, n_bath}));
        CHECK(r.epsilon > 10.0);
        CHECK(r.log_negativity > 0.0);
    }
}

TEST_CASE("physicality of states from stable converters")
{
    std::mt19937 rng(63);
    for (int i = 0; i < 500; ++i) {
        const TwoModeCM v = random_cm(rng);
        CHECK(symplectic_spectrum(v).nu_minus >= 0.5 - 1e-9);
    }
}

TEST_CASE("epsilon remains available off resonance where the CM is disabled")
{
    const Kappas kappas{4.05e8, kTwoPi * 1e6, kTwoPi * 1e6};
    const Cooperativities coop{0.054, 400.0, 0.0};
    const auto c = output_coefficients(coop, kappas, 3.0 * kTwoPi * 1e6);
    const OutputMoments m = output_moments(c, BathOccupancies{0.0, 5.59e-7, 5.59e-7});
    CHECK(entanglement_metric(m) > 1.0);
    CHECK_THROWS_AS(covariance_matrix(m), ConventionError);
}
