// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries a wall-clock budget that is enforced.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "magnoqi/converter.hpp"
#include "magnoqi/detection.hpp"
#include "magnoqi/gaussian.hpp"
#include "magnoqi/small_matrix.hpp"
#include "magnoqi/special_functions.hpp"
#include "magnoqi/sweep.hpp"
#include "magnoqi/system_params.hpp"

using namespace magnoqi;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int g_failures = 0;
std::vector<std::string> g_notes;

struct Criterion {
    const char* id;
    const char* label;
    double budget_seconds;
    std::function<bool()> body;
};

void check(bool ok, const std::string& what)
{
    if (!ok) {
        g_notes.push_back(what);
    }
}

bool run_criterion(const Criterion& c)
{
    g_notes.clear();
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = c.body();
    } catch (const std::exception& e) {
        g_notes.push_back(std::string("exception: ") + e.what());
        ok = false;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.budget_seconds) {
        g_notes.push_back("runtime " + std::to_string(elapsed) + " s exceeds budget " +
                          std::to_string(c.budget_seconds) + " s");
        ok = false;
    }
    std::printf("[%s] %s: %s (%.3f s)\n", ok ? "PASS" : "FAIL", c.id, c.label, elapsed);
    for (const auto& note : g_notes) {
        std::printf("       - %s\n", note.c_str());
    }
    if (!ok) ++g_failures;
    return ok;
}

// ---- C1: parameter chain ---------------------------------------------------

bool criterion_parameter_chain()
{
    const SystemParams params;
    const MaterialParams yig;
    const Cooperativities coop = cooperativities(params, yig);
    check(std::abs(coop.lambda_a - 0.055) / 0.055 <= 0.05,
          "lambda_a = " + std::to_string(coop.lambda_a) + " not within 5% of 0.055");
    // Exact up to double rounding of the 2*pi products (a few ulps).
    check(std::abs(coop.lambda_b - 1600.0) / 1600.0 <= 1e-12,
          "lambda_b = " + format_real(coop.lambda_b) + " not 1600 to 1e-12");
    return g_notes.empty();
}

// ---- C2: commutator preservation -------------------------------------------

bool criterion_commutators()
{
    std::mt19937 rng(1002);
    std::uniform_real_distribution<double> la_dist(0.0, 3.0);
    std::uniform_real_distribution<double> lb_dist(0.0, 2000.0);
    std::uniform_real_distribution<double> ratio(0.1, 100.0);
    std::uniform_real_distribution<double> omega_frac(0.0, 10.0);

    const double km = kTwoPi * 1e6;
    double worst = 0.0;
    int checked = 0;
    while (checked < 1000) {
        const double la = la_dist(rng);
        const double lb = lb_dist(rng);
        if (1.0 + lb - la <= 1e-3) continue;
        const Kappas kappas{km * ratio(rng), km * ratio(rng), km};
        const ConverterCoefficients c =
            output_coefficients(Cooperativities{la, lb, 0.0}, kappas, omega_frac(rng) * km);
        const CommutatorDefects d = commutator_defects(c);
        worst = std::max({worst, std::abs(d.d1), std::abs(d.d2), std::abs(d.d12)});
        ++checked;
    }
    check(worst <= 1e-9, "worst commutator defect " + format_real(worst) + " exceeds 1e-9");
    return g_notes.empty();
}

// ---- C3: symplectic oracle equivalence --------------------------------------

bool criterion_symplectic_oracle()
{
    std::mt19937 rng(1003);
    std::uniform_real_distribution<double> la_dist(0.0, 3.0);
    std::uniform_real_distribution<double> lb_dist(0.0, 2000.0);
    std::uniform_real_distribution<double> bath(0.0, 300.0);

    double worst = 0.0;
    int checked = 0;
    while (checked < 1000) {
        const double la = la_dist(rng);
        const double lb = lb_dist(rng);
        if (1.0 + lb - la <= 1e-3) continue;
        const auto c = output_coefficients_resonant(Cooperativities{la, lb, 0.0});
        const auto m = output_moments(c, BathOccupancies{bath(rng), bath(rng), bath(rng)});
        const TwoModeCM v = covariance_matrix(m);

        const SymplecticPair closed = symplectic_spectrum(v);
        const SymplecticPair oracle = symplectic_eigenvalues_oracle(v.matrix());
        const double scale = std::max(1.0, closed.nu_plus);
        worst = std::max(worst, std::abs(closed.nu_plus - oracle.nu_plus) / scale);
        worst = std::max(worst, std::abs(closed.nu_minus - oracle.nu_minus) / scale);

        const double xi = pt_symplectic_eigenvalue(v);
        const SymplecticPair pt = symplectic_eigenvalues_oracle(v.partial_transpose_matrix());
        worst = std::max(worst, std::abs(xi - pt.nu_minus) / scale);
        ++checked;
    }
    check(worst <= 1e-9, "worst closed-form vs oracle deviation " + format_real(worst));

    for (double r : {0.1, 0.5, 1.0, 2.0}) {
        TwoModeCM v;
        v.v11 = v.v33 = std::cosh(2 * r) / 2;
        v.v13 = std::sinh(2 * r) / 2;
        check(std::abs(log_negativity(v) - 2 * r) <= 1e-9,
              "E_N(TMSV(" + std::to_string(r) + ")) != 2r to 1e-9");
    }
    return g_notes.empty();
}

// ---- C4: exact-arithmetic fixture -------------------------------------------

bool criterion_exact_fixture()
{
    const auto c = output_coefficients_resonant(Cooperativities{1.0, 1.0, 0.0});
    const OutputMoments m = output_moments(c, BathOccupancies{0.0, 0.0, 0.0});
    check(std::abs(m.n_a - 8.0) < 1e-12 && std::abs(m.n_b - 4.0) < 1e-12 &&
              std::abs(m.cross - std::complex<double>(-6.0, 0.0)) < 1e-12,
          "moments != (8, 4, -6)");
    check(std::abs(entanglement_metric(m) - 6.0 / std::sqrt(32.0)) < 1e-12,
          "epsilon != 6/sqrt(32)");
    const TwoModeCM v = covariance_matrix(m);
    const SymplecticPair nu = symplectic_spectrum(v);
    check(std::abs(nu.nu_plus - 4.5) < 1e-12 && std::abs(nu.nu_minus - 0.5) < 1e-12,
          "nu != (4.5, 0.5)");
    check(std::abs(log_negativity(v) - 1.047) <= 1e-3, "E_N != 1.047 +- 1e-3");
    check(std::abs(coherent_information(v)) <= 1e-9, "I(a|b) != 0 +- 1e-9");
    check(std::abs(entanglement_survival_threshold(m) - 0.5) < 1e-12, "n_T^sill != 0.5");
    return g_notes.empty();
}

// ---- C5: entanglement region -------------------------------------------------

bool criterion_entanglement_region()
{
    const SweepConfig cfg = parse_config("");
    const SweepTable t = run_resources_sweep(cfg, 2);
    std::size_t eps_col = 0, en_col = 0, flag_col = 0, la_col = 0, lb_col = 0;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (t.columns[i] == "epsilon") eps_col = i;
        if (t.columns[i] == "log_negativity") en_col = i;
        if (t.columns[i] == "flag") flag_col = i;
        if (t.columns[i] == "lambda_a") la_col = i;
        if (t.columns[i] == "lambda_b") lb_col = i;
    }
    std::size_t stable_rows = 0;
    for (const auto& row : t.rows) {
        if (row[flag_col].text != "ok") continue;
        ++stable_rows;
        if (!(row[eps_col].real > 1.0)) {
            check(false, "epsilon <= 1 at lambda_a = " + format_real(row[la_col].real) +
                             ", lambda_b = " + format_real(row[lb_col].real));
            return false;
        }
        if (!(row[en_col].real > 0.0)) {
            check(false, "E_N <= 0 at lambda_a = " + format_real(row[la_col].real) +
                             ", lambda_b = " + format_real(row[lb_col].real));
            return false;
        }
    }
    check(stable_rows == t.rows.size(), "default grid produced unstable/flagged points");

    const auto corner = output_coefficients_resonant(Cooperativities{0.054, 1600.0, 0.0});
    const double n_bath = planck_occupation(kTwoPi * 9e9, 0.030);
    const double eps =
        entanglement_metric(output_moments(corner, BathOccupancies{0.0, n_bath, n_bath}));
    check(eps > 10.0, "epsilon at (0.054, 1600) is " + format_real(eps) + ", not > 10");
    return g_notes.empty();
}

// ---- C6: detection ordering ---------------------------------------------------

bool criterion_detection_ordering()
{
    SweepConfig cfg = parse_config("");
    cfg.occupancy = OccupancySelection::microwave;
    const SweepTable t = run_detection_sweep(cfg, 2);
    std::size_t col_pcim = 0, col_lqm = 0, col_lcm = 0, col_lqe = 0, col_lce = 0, col_flag = 0;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        const std::string& n = t.columns[i];
        if (n == "p_ci_magnon") col_pcim = i;
        if (n == "log10_p_qi_magnon") col_lqm = i;
        if (n == "log10_p_ci_magnon") col_lcm = i;
        if (n == "log10_p_qi_eom") col_lqe = i;
        if (n == "log10_p_ci_eom") col_lce = i;
        if (n == "flag") col_flag = i;
    }

    double best_gap_magnon = 0.0, best_gap_eom = 0.0, best_gap_between = 0.0;
    for (const auto& row : t.rows) {
        if (row[col_flag].text != "ok") {
            check(false, "flagged detection row");
            return false;
        }
        const double p_ci = row[col_pcim].real;
        const double lqm = row[col_lqm].real;
        const double lcm = row[col_lcm].real;
        const double lqe = row[col_lqe].real;
        const double lce = row[col_lce].real;
        if (p_ci < 0.4) {
            // (a) both QI curves strictly below their CI curves.
            if (!(lqm < lcm)) {
                check(false, "magnon QI not below its CI at log10 P_CI = " + format_real(lcm));
                return false;
            }
            if (!(lqe < lce)) {
                check(false, "EOM QI not below its CI at log10 P_CI = " + format_real(lce));
                return false;
            }
        }
        // (b) magnon QI strictly below EOM QI everywhere.
        if (!(lqm < lqe)) {
            check(false, "magnon QI not below EOM QI");
            return false;
        }
        best_gap_magnon = std::max(best_gap_magnon, lcm - lqm);
        best_gap_eom = std::max(best_gap_eom, lce - lqe);
        best_gap_between = std::max(best_gap_between, lqe - lqm);
    }
    check(best_gap_magnon >= 1.0,
          "magnon QI never a decade below CI (best " + format_real(best_gap_magnon) + ")");
    check(best_gap_eom >= 1.0,
          "EOM QI never a decade below CI (best " + format_real(best_gap_eom) + ")");
    check(best_gap_between >= 1.0,
          "magnon QI never a decade below EOM QI (best " + format_real(best_gap_between) + ")");
    return g_notes.empty();
}

// ---- C7: advantage threshold ---------------------------------------------------

bool criterion_advantage_threshold()
{
    // Bias-field magnon frequency makes the two interpretations distinct.
    SweepConfig cfg = parse_config("magnon_frequency_hz = 2.8e9\n"
                                   "advantage.lambda_b.min = 400\n"
                                   "advantage.lambda_b.max = 1600\n"
                                   "advantage.lambda_b.points = 2\n");
    cfg.occupancy = OccupancySelection::both;
    const AdvantageResult res = run_advantage_sweep(cfg, 2);

    const double grid_resolution =
        (cfg.advantage_lambda_a.max - cfg.advantage_lambda_a.min) / (cfg.advantage_lambda_a.points - 1);

    std::printf("       R = 1 crossings (paper quotes 0.115; reported, not asserted):\n");
    for (const auto& c : res.crossings) {
        std::printf("         lambda_b = %-6g occupancy = %-9s n_intermediary = %-13g crossing = %s\n",
                    c.lambda_b, c.occupancy.c_str(), c.intermediary_occupancy,
                    c.found ? format_real(c.crossing_lambda_a).c_str() : "none");
        check(c.found, "missing crossing");
        check(c.unique, "crossing not unique");
    }

    bool some_interpretation_ok = false;
    for (const char* interp : {"microwave", "magnon"}) {
        double c400 = -1.0, c1600 = -1.0, occupancy = 0.0;
        for (const auto& c : res.crossings) {
            if (c.occupancy != interp || !c.found) continue;
            occupancy = c.intermediary_occupancy;
            if (c.lambda_b == 400.0) c400 = c.crossing_lambda_a;
            if (c.lambda_b == 1600.0) c1600 = c.crossing_lambda_a;
        }
        if (c400 < 0.0 || c1600 < 0.0) continue;
        const bool near_vertical = std::abs(c400 - c1600) / c400 < 0.10;
        const bool matches_occupancy = std::abs(c400 - occupancy) <= grid_resolution &&
                                       std::abs(c1600 - occupancy) <= grid_resolution;
        if (near_vertical && matches_occupancy) {
            some_interpretation_ok = true;
        }
    }
    check(some_interpretation_ok,
          "no interpretation gives a near-vertical contour matching its occupancy");
    return g_notes.empty();
}

// ---- C8: stability oracle agreement ---------------------------------------------

bool criterion_stability_agreement()
{
    std::mt19937 rng(1008);
    std::uniform_real_distribution<double> la_dist(0.0, 3.0);
    std::uniform_real_distribution<double> lb_dist(0.0, 2000.0);
    std::uniform_real_distribution<double> ratio(0.2, 5.0);

    SystemParams base;
    const double omega_p = kTwoPi * PhysicalConstants::light_speed / base.pump_wavelength;

    int checked = 0;
    while (checked < 500) {
        SystemParams p = base;
        p.magnon_damping = kTwoPi * 1e6 * ratio(rng);
        p.microwave_damping = kTwoPi * 1e6 * ratio(rng);
        p.optical_quality = omega_p / (kTwoPi * 1e6 * ratio(rng));
        const double ka = wgm_damping(p.pump_wavelength, p.optical_quality);
        const double la = la_dist(rng);
        const double lb = lb_dist(rng);
        p.electromagnonic_coupling = std::sqrt(lb * p.microwave_damping * p.magnon_damping);
        const double g_ma = std::sqrt(la * ka * p.magnon_damping);

        const DriftMatrix m = drift_matrix(p, g_ma);
        double max_re = -1e300;
        for (const auto& ev : eigenvalues_small(SmallComplexMatrix::from_real(m.entries))) {
            max_re = std::max(max_re, ev.real());
        }
        if (std::abs(max_re) < 1e-6 * p.magnon_damping) continue; // marginal, redraw

        const bool routh = is_stable(p, g_ma);
        if (routh != (max_re < 0.0)) {
            check(false, "Routh-Hurwitz disagrees with eigenvalue sign at lambda_a = " +
                             std::to_string(la) + ", lambda_b = " + std::to_string(lb));
            return false;
        }
        if (la > 1.0 + lb && routh) {
            check(false, "lambda_a > 1 + lambda_b draw reported stable");
            return false;
        }
        ++checked;
    }

    // Dedicated beyond-threshold draws must all be unstable.
    int beyond = 0;
    while (beyond < 100) {
        SystemParams p = base;
        const double ka = wgm_damping(p.pump_wavelength, p.optical_quality);
        const double lb = lb_dist(rng) * 0.001;
        const double la = 1.0 + lb + 0.1 + la_dist(rng);
        p.electromagnonic_coupling = std::sqrt(lb * p.microwave_damping * p.magnon_damping);
        const double g_ma = std::sqrt(la * ka * p.magnon_damping);
        if (is_stable(p, g_ma)) {
            check(false, "unstable-by-construction draw reported stable");
            return false;
        }
        ++beyond;
    }
    return g_notes.empty();
}

// ---- C9: determinism --------------------------------------------------------------

bool criterion_determinism()
{
    SweepConfig cfg = parse_config("grid.lambda_a.points = 6\ngrid.lambda_b.points = 6\n"
                                   "advantage.lambda_a.points = 4\nadvantage.lambda_b.points = 3\n"
                                   "detection.m.points = 9\nspectrum.points = 11\n"
                                   "magnon_frequency_hz = 2.8e9\n");
    cfg.occupancy = OccupancySelection::both;

    const std::string res1 = render_csv(run_resources_sweep(cfg, 1));
    const std::string res4 = render_csv(run_resources_sweep(cfg, 4));
    const std::string res4b = render_csv(run_resources_sweep(cfg, 4));
    check(res1 == res4 && res4 == res4b, "resources sweep not byte-identical across workers/reruns");

    const std::string det1 = render_csv(run_detection_sweep(cfg, 1));
    const std::string det3 = render_csv(run_detection_sweep(cfg, 3));
    check(det1 == det3, "detection sweep not byte-identical across workers");

    const std::string adv1 = render_csv(run_advantage_sweep(cfg, 1).table);
    const std::string adv4 = render_csv(run_advantage_sweep(cfg, 4).table);
    check(adv1 == adv4, "advantage sweep not byte-identical across workers");

    const std::string spec1 = render_csv(run_spectrum_sweep(cfg, 1));
    const std::string spec4 = render_csv(run_spectrum_sweep(cfg, 4));
    check(spec1 == spec4, "spectrum sweep not byte-identical across workers");
    return g_notes.empty();
}

} // namespace

int main()
{
    std::printf("acceptance suite\n");
    const std::vector<Criterion> criteria = {
        {"C1", "parameter chain reproduces Lambda_a ~ 0.055 and Lambda_b = 1600", 0.001,
         criterion_parameter_chain},
        {"C2", "bosonic commutators preserved on 1000 random stable draws", 1.0,
         criterion_commutators},
        {"C3", "closed-form symplectic spectra match the iOmegaV oracle", 5.0,
         criterion_symplectic_oracle},
        {"C4", "exact-arithmetic fixture at lambda_a = lambda_b = 1", 0.001,
         criterion_exact_fixture},
        {"C5", "default grid is entangled everywhere, corner epsilon > 10", 10.0,
         criterion_entanglement_region},
        {"C6", "QI below CI and magnon a decade below EOM at matched energy", 30.0,
         criterion_detection_ordering},
        {"C7", "R = 1 crossing exists, unique, near-vertical, tracks occupancy", 30.0,
         criterion_advantage_threshold},
        {"C8", "Routh-Hurwitz agrees with eigenvalue signs on 500 draws", 5.0,
         criterion_stability_agreement},
        {"C9", "sweep outputs byte-identical across reruns and worker counts", 60.0,
         criterion_determinism},
    };

    // One warm pass of the tiny criteria so the timed run measures steady
    // state rather than first-touch costs.
    (void)cooperativities(SystemParams{}, MaterialParams{});

    for (const auto& c : criteria) {
        run_criterion(c);
    }
    if (g_failures == 0) {
        std::printf("all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
