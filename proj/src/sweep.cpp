#include "magnoqi/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "magnoqi/converter.hpp"
#include "magnoqi/detection.hpp"
#include "magnoqi/errors.hpp"
#include "magnoqi/gaussian.hpp"
#include "magnoqi/small_matrix.hpp"

namespace magnoqi {

namespace {

using RowGroup = std::vector<std::vector<Cell>>;

// Evaluates fn(i) for i in [0, count) on `workers` threads; results land in
// index order, so the output is independent of scheduling.
std::vector<RowGroup> run_indexed(int count, int workers,
                                  const std::function<RowGroup(int)>& fn)
{
    std::vector<RowGroup> results(static_cast<std::size_t>(count));
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = fn(i);
        return results;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[static_cast<std::size_t>(i)] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::string sanitize_flag(std::string message)
{
    for (char& c : message) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return message;
}

struct OccupancyCase {
    std::string name;
    OccupancySelection which;
};

std::vector<OccupancyCase> occupancy_cases(const SweepConfig& cfg)
{
    switch (cfg.occupancy) {
    case OccupancySelection::microwave:
        return {{"microwave", OccupancySelection::microwave}};
    case OccupancySelection::magnon:
        return {{"magnon", OccupancySelection::magnon}};
    default:
        return {{"microwave", OccupancySelection::microwave}, {"magnon", OccupancySelection::magnon}};
    }
}

bool emit_half(const SweepConfig& cfg)
{
    return cfg.discord != DiscordSelection::unit;
}

bool emit_unit(const SweepConfig& cfg)
{
    return cfg.discord != DiscordSelection::half;
}

std::string hash_hex(const SweepConfig& cfg)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    return buf;
}

// Rates shared by every sweep point.
struct DerivedRates {
    double kappa_a;
    double kappa_b;
    double kappa_m;
};

DerivedRates derived_rates(const SweepConfig& cfg)
{
    return {wgm_damping(cfg.system.pump_wavelength, cfg.system.optical_quality),
            cfg.system.microwave_damping, cfg.system.magnon_damping};
}

// Drift-matrix stability at a grid point: the grid's cooperativities fix the
// enhanced couplings through the configured damping rates.
bool point_is_stable(const SweepConfig& cfg, const DerivedRates& rates, double lambda_a,
                     double lambda_b)
{
    if (!(1.0 + lambda_b - lambda_a > 0.0)) {
        return false;
    }
    SystemParams point = cfg.system;
    point.electromagnonic_coupling = std::sqrt(lambda_b * rates.kappa_b * rates.kappa_m);
    const double g_ma = std::sqrt(lambda_a * rates.kappa_a * rates.kappa_m);
    return is_stable(point, g_ma);
}

Cooperativities point_coop(const DerivedRates& rates, double lambda_a, double lambda_b)
{
    Cooperativities coop;
    coop.lambda_a = lambda_a;
    coop.lambda_b = lambda_b;
    coop.g_ma_enhanced = std::sqrt(lambda_a * rates.kappa_a * rates.kappa_m);
    return coop;
}

} // namespace

SweepTable run_params_report(const SweepConfig& cfg)
{
    const DerivedRates rates = derived_rates(cfg);
    const double g_ma = optomagnonic_coupling(cfg.material, cfg.system.sphere_radius);
    const double n_te = intracavity_pump_photons(cfg.system.pump_power, cfg.system.pump_wavelength,
                                                 rates.kappa_a);
    const Cooperativities coop = cooperativities(cfg.system, cfg.material);
    const double bandwidth = entangled_bandwidth(rates.kappa_m, coop);

    SweepTable t;
    t.columns = {"kappa_a_rad_s", "g_ma_rad_s",
                 "n_te", "g_ma_enhanced_rad_s",
                 "lambda_a", "lambda_b",
                 "bandwidth_rad_s", "bandwidth_hz",
                 "microwave_bath_occupancy", "magnon_bath_occupancy",
                 "room_background_occupancy", "config_hash"};
    t.rows.push_back({Cell::of(rates.kappa_a), Cell::of(g_ma),
                      Cell::of(n_te), Cell::of(coop.g_ma_enhanced),
                      Cell::of(coop.lambda_a), Cell::of(coop.lambda_b),
                      Cell::of(bandwidth), Cell::of(bandwidth / (2.0 * std::numbers::pi)),
                      Cell::of(microwave_bath_occupancy(cfg.system)),
                      Cell::of(magnon_bath_occupancy(cfg.system)),
                      Cell::of(planck_occupation(cfg.system.microwave_frequency, cfg.room_temperature)),
                      Cell::of_text(hash_hex(cfg))});
    return t;
}

SweepTable run_resources_sweep(const SweepConfig& cfg, int workers)
{
    const DerivedRates rates = derived_rates(cfg);
    const std::vector<double> las = grid_points(cfg.resources_lambda_a);
    const std::vector<double> lbs = grid_points(cfg.resources_lambda_b);
    const auto cases = occupancy_cases(cfg);
    const std::string hash = hash_hex(cfg);

    SweepTable t;
    t.columns = {"lambda_a", "lambda_b", "occupancy", "stable", "flag",
                 "n_a", "n_b", "cross_re", "epsilon",
                 "log_negativity", "coherent_information"};
    if (emit_half(cfg)) t.columns.push_back("discord_half");
    if (emit_unit(cfg)) t.columns.push_back("discord_unit");
    t.columns.insert(t.columns.end(),
                     {"epsilon_per_photon", "log_negativity_per_photon",
                      "coherent_information_per_photon"});
    if (emit_half(cfg)) t.columns.push_back("discord_half_per_photon");
    if (emit_unit(cfg)) t.columns.push_back("discord_unit_per_photon");
    t.columns.insert(t.columns.end(),
                     {"nu_plus", "nu_minus", "xi_minus", "bandwidth_rad_s", "config_hash"});
    const std::size_t ncols = t.columns.size();

    const int n_points = static_cast<int>(las.size() * lbs.size());
    auto eval = [&](int index) -> RowGroup {
        const double la = las[static_cast<std::size_t>(index) / lbs.size()];
        const double lb = lbs[static_cast<std::size_t>(index) % lbs.size()];
        RowGroup group;
        for (const auto& occ : cases) {
            std::vector<Cell> row(ncols);
            std::size_t k = 0;
            row[k++] = Cell::of(la);
            row[k++] = Cell::of(lb);
            row[k++] = Cell::of_text(occ.name);
            const bool stable = point_is_stable(cfg, rates, la, lb);
            row[k++] = Cell::of_int(stable ? 1 : 0);
            if (!stable) {
                row[k++] = Cell::of_text("unstable");
                row[ncols - 1] = Cell::of_text(hash);
                group.push_back(std::move(row));
                continue;
            }
            try {
                const Cooperativities coop = point_coop(rates, la, lb);
                const ConverterCoefficients c = output_coefficients_resonant(coop);
                const BathOccupancies baths = interpreted_baths(cfg, occ.which);
                const OutputMoments m = output_moments(c, baths);
                const ResourceReport r = resource_report(m);
                const TwoModeCM v = covariance_matrix(m);
                const SymplecticPair nu = symplectic_spectrum(v);
                row[k++] = Cell::of_text("ok");
                row[k++] = Cell::of(m.n_a);
                row[k++] = Cell::of(m.n_b);
                row[k++] = Cell::of(m.cross.real());
                row[k++] = Cell::of(r.epsilon);
                row[k++] = Cell::of(r.log_negativity);
                row[k++] = Cell::of(r.coherent_information);
                if (emit_half(cfg)) row[k++] = Cell::of(r.discord_half);
                if (emit_unit(cfg)) row[k++] = Cell::of(r.discord_unit);
                row[k++] = Cell::of(r.epsilon_per_photon);
                row[k++] = Cell::of(r.log_negativity_per_photon);
                row[k++] = Cell::of(r.coherent_information_per_photon);
                if (emit_half(cfg)) row[k++] = Cell::of(r.discord_half_per_photon);
                if (emit_unit(cfg)) row[k++] = Cell::of(r.discord_unit_per_photon);
                row[k++] = Cell::of(nu.nu_plus);
                row[k++] = Cell::of(nu.nu_minus);
                row[k++] = Cell::of(pt_symplectic_eigenvalue(v));
                row[k++] = Cell::of(entangled_bandwidth(rates.kappa_m, coop));
            } catch (const std::exception& e) {
                row[4] = Cell::of_text(sanitize_flag(e.what()));
            }
            row[ncols - 1] = Cell::of_text(hash);
            group.push_back(std::move(row));
        }
        return group;
    };

    for (auto& group : run_indexed(n_points, workers, eval)) {
        for (auto& row : group) t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

// One transmitter evaluated at its own mode count.
struct TransmitterPoint {
    double n_b = 0.0;
    double snr_qi_per_mode = 0.0;
    double snr_ci_per_mode = 0.0;
    double nt_sill = 0.0;
    bool entanglement_broken = false;
};

TransmitterPoint transmitter_point(double lambda_a, double lambda_b, const BathOccupancies& baths,
                                   double eta, double background)
{
    Cooperativities coop;
    coop.lambda_a = lambda_a;
    coop.lambda_b = lambda_b;
    const ConverterCoefficients c = output_coefficients_resonant(coop);
    const OutputMoments m = output_moments(c, baths);
    DetectionScenario scenario;
    scenario.eta = eta;
    scenario.background_occupancy = background;
    scenario.mode_count = 1;
    scenario.baths = baths;
    const ReceiverMoments rm = receiver_moments(c, scenario, m.n_a);

    TransmitterPoint p;
    p.n_b = m.n_b;
    p.snr_qi_per_mode = snr_qi(rm, 1.0);
    p.snr_ci_per_mode = snr_classical(scenario, m.n_b);
    p.nt_sill = entanglement_survival_threshold(m);
    p.entanglement_broken = background >= p.nt_sill;
    return p;
}

} // namespace

SweepTable run_detection_sweep(const SweepConfig& cfg, int workers)
{
    const std::vector<double> m_values = grid_points(cfg.detection_m);
    const auto cases = occupancy_cases(cfg);
    const std::string hash = hash_hex(cfg);
    const double background =
        planck_occupation(cfg.system.microwave_frequency, cfg.room_temperature);

    SweepTable t;
    t.columns = {"m_magnon", "m_eom", "occupancy", "flag",
                 "n_b_magnon", "n_b_eom",
                 "snr_qi_magnon", "snr_ci_magnon", "snr_qi_eom", "snr_ci_eom",
                 "p_qi_magnon", "p_ci_magnon", "p_qi_eom", "p_ci_eom",
                 "log10_p_qi_magnon", "log10_p_ci_magnon", "log10_p_qi_eom", "log10_p_ci_eom",
                 "nt_sill_magnon", "nt_sill_eom",
                 "entanglement_broken_magnon", "entanglement_broken_eom",
                 "background_occupancy", "config_hash"};
    const std::size_t ncols = t.columns.size();

    auto eval = [&](int index) -> RowGroup {
        const double m_real = m_values[static_cast<std::size_t>(index)];
        const std::int64_t m_magnon = std::max<std::int64_t>(1, std::llround(m_real));
        RowGroup group;
        for (const auto& occ : cases) {
            std::vector<Cell> row(ncols);
            row[0] = Cell::of_int(m_magnon);
            row[2] = Cell::of_text(occ.name);
            row[ncols - 1] = Cell::of_text(hash);
            try {
                const BathOccupancies magnon_baths = interpreted_baths(cfg, occ.which);
                BathOccupancies eom_baths = magnon_baths;
                eom_baths.intermediary = planck_occupation(cfg.eom_intermediary_frequency,
                                                           cfg.system.environment_temperature);

                const TransmitterPoint magnon =
                    transmitter_point(cfg.detection_lambda_a, cfg.detection_lambda_b, magnon_baths,
                                      cfg.detection_eta, background);
                const TransmitterPoint eom = transmitter_point(
                    cfg.eom_lambda_a, cfg.eom_lambda_b, eom_baths, cfg.detection_eta, background);

                const std::int64_t m_eom =
                    equal_energy_mode_count(m_magnon, magnon.n_b, eom.n_b);

                const double snr_qi_m = magnon.snr_qi_per_mode * static_cast<double>(m_magnon);
                const double snr_ci_m = magnon.snr_ci_per_mode * static_cast<double>(m_magnon);
                const double snr_qi_e = eom.snr_qi_per_mode * static_cast<double>(m_eom);
                const double snr_ci_e = eom.snr_ci_per_mode * static_cast<double>(m_eom);

                std::size_t k = 1;
                row[k] = Cell::of_int(m_eom);
                k = 3;
                row[k++] = Cell::of_text("ok");
                row[k++] = Cell::of(magnon.n_b);
                row[k++] = Cell::of(eom.n_b);
                row[k++] = Cell::of(snr_qi_m);
                row[k++] = Cell::of(snr_ci_m);
                row[k++] = Cell::of(snr_qi_e);
                row[k++] = Cell::of(snr_ci_e);
                row[k++] = Cell::of(error_probability(snr_qi_m));
                row[k++] = Cell::of(error_probability(snr_ci_m));
                row[k++] = Cell::of(error_probability(snr_qi_e));
                row[k++] = Cell::of(error_probability(snr_ci_e));
                row[k++] = Cell::of(log10_error_probability(snr_qi_m));
                row[k++] = Cell::of(log10_error_probability(snr_ci_m));
                row[k++] = Cell::of(log10_error_probability(snr_qi_e));
                row[k++] = Cell::of(log10_error_probability(snr_ci_e));
                row[k++] = Cell::of(magnon.nt_sill);
                row[k++] = Cell::of(eom.nt_sill);
                row[k++] = Cell::of_int(magnon.entanglement_broken ? 1 : 0);
                row[k++] = Cell::of_int(eom.entanglement_broken ? 1 : 0);
                row[k++] = Cell::of(background);
            } catch (const std::exception& e) {
                row[3] = Cell::of_text(sanitize_flag(e.what()));
            }
            group.push_back(std::move(row));
        }
        return group;
    };

    for (auto& group : run_indexed(static_cast<int>(m_values.size()), workers, eval)) {
        for (auto& row : group) t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

double ratio_at(const SweepConfig& cfg, double lambda_a, double lambda_b,
                const BathOccupancies& baths, double background)
{
    const TransmitterPoint p = transmitter_point(lambda_a, lambda_b, baths, cfg.detection_eta,
                                                 background);
    if (!(p.snr_ci_per_mode > 0.0)) {
        throw std::domain_error("advantage ratio: classical SNR vanishes");
    }
    return p.snr_qi_per_mode / p.snr_ci_per_mode;
}

AdvantageCrossing find_crossing(const SweepConfig& cfg, double lambda_b,
                                const OccupancyCase& occ, double background)
{
    const BathOccupancies baths = interpreted_baths(cfg, occ.which);
    AdvantageCrossing result;
    result.lambda_b = lambda_b;
    result.occupancy = occ.name;
    result.intermediary_occupancy = baths.intermediary;

    auto excess = [&](double la) { return ratio_at(cfg, la, lambda_b, baths, background) - 1.0; };

    // Bracket from far below the swept range (R -> 0 with the coupling) up
    // to the map's upper edge; beyond it the ratio eventually saturates back
    // below 1 near the instability boundary, which is outside the map.
    double lo = 1e-12;
    double hi = std::min(cfg.advantage_lambda_a.max, 0.999 * (1.0 + lambda_b));
    if (excess(lo) >= 0.0 || excess(hi) <= 0.0) {
        result.found = false;
        result.crossing_lambda_a = std::numeric_limits<double>::quiet_NaN();
        return result;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) >= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    result.found = true;
    result.crossing_lambda_a = 0.5 * (lo + hi);

    // Uniqueness within the map: sign changes of (R - 1) along a log scan.
    const double scan_hi = std::min(cfg.advantage_lambda_a.max, 0.999 * (1.0 + lambda_b));
    int sign_changes = 0;
    double prev = excess(1e-10);
    for (int i = 1; i <= 200; ++i) {
        const double la = 1e-10 * std::pow(scan_hi / 1e-10, i / 200.0);
        const double cur = excess(la);
        if ((prev < 0.0 && cur >= 0.0) || (prev >= 0.0 && cur < 0.0)) ++sign_changes;
        prev = cur;
    }
    result.unique = (sign_changes == 1);
    return result;
}

} // namespace

AdvantageResult run_advantage_sweep(const SweepConfig& cfg, int workers)
{
    const DerivedRates rates = derived_rates(cfg);
    const std::vector<double> las = grid_points(cfg.advantage_lambda_a);
    const std::vector<double> lbs = grid_points(cfg.advantage_lambda_b);
    const auto cases = occupancy_cases(cfg);
    const std::string hash = hash_hex(cfg);
    const double background =
        planck_occupation(cfg.system.microwave_frequency, cfg.room_temperature);

    AdvantageResult out;
    out.table.columns = {"lambda_a", "lambda_b", "occupancy", "stable", "flag",
                         "advantage_ratio", "crossing_lambda_a", "intermediary_occupancy",
                         "config_hash"};
    const std::size_t ncols = out.table.columns.size();

    // Crossings per lambda_b row and interpretation, reused by every row.
    for (double lb : lbs) {
        for (const auto& occ : cases) {
            out.crossings.push_back(find_crossing(cfg, lb, occ, background));
        }
    }

    const int n_points = static_cast<int>(las.size() * lbs.size());
    auto eval = [&](int index) -> RowGroup {
        const std::size_t ia = static_cast<std::size_t>(index) / lbs.size();
        const std::size_t ib = static_cast<std::size_t>(index) % lbs.size();
        const double la = las[ia];
        const double lb = lbs[ib];
        RowGroup group;
        for (std::size_t ic = 0; ic < cases.size(); ++ic) {
            const auto& occ = cases[ic];
            const AdvantageCrossing& crossing = out.crossings[ib * cases.size() + ic];
            std::vector<Cell> row(ncols);
            row[0] = Cell::of(la);
            row[1] = Cell::of(lb);
            row[2] = Cell::of_text(occ.name);
            const bool stable = point_is_stable(cfg, rates, la, lb);
            row[3] = Cell::of_int(stable ? 1 : 0);
            row[ncols - 1] = Cell::of_text(hash);
            if (!stable) {
                row[4] = Cell::of_text("unstable");
                group.push_back(std::move(row));
                continue;
            }
            try {
                const BathOccupancies baths = interpreted_baths(cfg, occ.which);
                row[4] = Cell::of_text("ok");
                row[5] = Cell::of(ratio_at(cfg, la, lb, baths, background));
                if (crossing.found) row[6] = Cell::of(crossing.crossing_lambda_a);
                row[7] = Cell::of(crossing.intermediary_occupancy);
            } catch (const std::exception& e) {
                row[4] = Cell::of_text(sanitize_flag(e.what()));
            }
            group.push_back(std::move(row));
        }
        return group;
    };

    for (auto& group : run_indexed(n_points, workers, eval)) {
        for (auto& row : group) out.table.rows.push_back(std::move(row));
    }
    return out;
}

SweepTable run_spectrum_sweep(const SweepConfig& cfg, int workers)
{
    const DerivedRates rates = derived_rates(cfg);
    const Cooperativities coop = cooperativities(cfg.system, cfg.material);
    const double bandwidth = entangled_bandwidth(rates.kappa_m, coop);
    const auto cases = occupancy_cases(cfg);
    const std::string hash = hash_hex(cfg);
    const Kappas kappas{rates.kappa_a, rates.kappa_b, rates.kappa_m};

    // Symmetric grid built from integer multiples of one step so omega = 0
    // and the +-omega mirror pairs are exact.
    const int half = (cfg.spectrum_points - 1) / 2;
    const double step = bandwidth / half;
    std::vector<double> omegas(static_cast<std::size_t>(cfg.spectrum_points));
    for (int i = 0; i < cfg.spectrum_points; ++i) {
        omegas[static_cast<std::size_t>(i)] = step * (i - half);
    }

    SweepTable t;
    t.columns = {"omega_rad_s", "omega_over_kappa_m", "occupancy", "flag",
                 "d1", "d2", "abs_d12",
                 "n_a", "n_b", "cross_re", "cross_im", "epsilon", "epsilon_asymmetry_flag",
                 "log_negativity", "coherent_information"};
    if (emit_half(cfg)) t.columns.push_back("discord_half");
    if (emit_unit(cfg)) t.columns.push_back("discord_unit");
    t.columns.push_back("config_hash");
    const std::size_t ncols = t.columns.size();

    auto eval = [&](int index) -> RowGroup {
        const double omega = omegas[static_cast<std::size_t>(index)];
        RowGroup group;
        for (const auto& occ : cases) {
            std::vector<Cell> row(ncols);
            row[0] = Cell::of(omega);
            row[1] = Cell::of(omega / rates.kappa_m);
            row[2] = Cell::of_text(occ.name);
            row[ncols - 1] = Cell::of_text(hash);
            try {
                const ConverterCoefficients c = output_coefficients(coop, kappas, omega);
                const CommutatorDefects d = commutator_defects(c);
                const BathOccupancies baths = interpreted_baths(cfg, occ.which);
                const OutputMoments m = output_moments(c, baths);
                row[3] = Cell::of_text("ok");
                row[4] = Cell::of(d.d1);
                row[5] = Cell::of(d.d2);
                row[6] = Cell::of(std::abs(d.d12));
                row[7] = Cell::of(m.n_a);
                row[8] = Cell::of(m.n_b);
                row[9] = Cell::of(m.cross.real());
                row[10] = Cell::of(m.cross.imag());
                row[11] = Cell::of(entanglement_metric(m));
                if (omega == 0.0) {
                    const TwoModeCM v = covariance_matrix(m);
                    std::size_t k = 13;
                    row[k++] = Cell::of(log_negativity(v));
                    row[k++] = Cell::of(coherent_information(v));
                    if (emit_half(cfg)) row[k++] = Cell::of(quantum_discord(v, DiscordConvention::vacuum_half));
                    if (emit_unit(cfg)) row[k++] = Cell::of(quantum_discord(v, DiscordConvention::vacuum_unit));
                }
            } catch (const std::exception& e) {
                row[3] = Cell::of_text(sanitize_flag(e.what()));
            }
            group.push_back(std::move(row));
        }
        return group;
    };

    auto groups = run_indexed(cfg.spectrum_points, workers, eval);

    // epsilon(omega) = epsilon(-omega) is expected; measure and flag.
    for (int i = 0; i < cfg.spectrum_points; ++i) {
        const int mirror = cfg.spectrum_points - 1 - i;
        for (std::size_t ic = 0; ic < cases.size(); ++ic) {
            auto& row = groups[static_cast<std::size_t>(i)][ic];
            const auto& other = groups[static_cast<std::size_t>(mirror)][ic];
            if (row[11].kind == Cell::Kind::real && other[11].kind == Cell::Kind::real) {
                const bool asymmetric = std::abs(row[11].real - other[11].real) > 1e-9;
                row[12] = Cell::of_int(asymmetric ? 1 : 0);
            }
        }
    }

    for (auto& group : groups) {
        for (auto& row : group) t.rows.push_back(std::move(row));
    }
    return t;
}

SweepTable run_stability_sweep(const SweepConfig& cfg, int workers)
{
    const DerivedRates rates = derived_rates(cfg);
    const std::vector<double> las = grid_points(cfg.resources_lambda_a);
    const std::vector<double> lbs = grid_points(cfg.resources_lambda_b);
    const std::string hash = hash_hex(cfg);

    SweepTable t;
    t.columns = {"lambda_a", "lambda_b", "g_ma_enhanced_rad_s", "g_mb_rad_s",
                 "d_guard", "routh_stable", "max_re_eigenvalue", "eig_agrees", "config_hash"};

    const int n_points = static_cast<int>(las.size() * lbs.size());
    auto eval = [&](int index) -> RowGroup {
        const double la = las[static_cast<std::size_t>(index) / lbs.size()];
        const double lb = lbs[static_cast<std::size_t>(index) % lbs.size()];
        const double g_ma = std::sqrt(la * rates.kappa_a * rates.kappa_m);
        const double g_mb = std::sqrt(lb * rates.kappa_b * rates.kappa_m);
        SystemParams point = cfg.system;
        point.electromagnonic_coupling = g_mb;

        const DriftMatrix drift = drift_matrix(point, g_ma);
        const bool routh = routh_hurwitz_stable(characteristic_polynomial(drift.entries));
        double max_re = -std::numeric_limits<double>::infinity();
        for (const Complex& ev : eigenvalues_small(SmallComplexMatrix::from_real(drift.entries))) {
            max_re = std::max(max_re, ev.real());
        }
        std::vector<Cell> row{Cell::of(la), Cell::of(lb), Cell::of(g_ma), Cell::of(g_mb),
                              Cell::of(1.0 + lb - la), Cell::of_int(routh ? 1 : 0),
                              Cell::of(max_re), Cell::of_int(routh == (max_re < 0.0) ? 1 : 0),
                              Cell::of_text(hash)};
        return {row};
    };

    for (auto& group : run_indexed(n_points, workers, eval)) {
        for (auto& row : group) t.rows.push_back(std::move(row));
    }
    return t;
}

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

std::string render_csv(const SweepTable& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            const Cell& c = row[i];
            switch (c.kind) {
            case Cell::Kind::empty:
                break;
            case Cell::Kind::real:
                out += format_real(c.real);
                break;
            case Cell::Kind::integer:
                out += std::to_string(c.integer);
                break;
            case Cell::Kind::text:
                out += c.text;
                break;
            }
        }
        out += '\n';
    }
    return out;
}

void write_outputs(const SweepTable& table, const SweepConfig& cfg, const std::string& subcommand,
                   const std::filesystem::path& out_dir,
                   const std::vector<AdvantageCrossing>* crossings)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("write_outputs: cannot create directory " + out_dir.string() +
                                 ": " + ec.message());
    }

    const fs::path csv_path = out_dir / (subcommand + ".csv");
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) {
            throw std::runtime_error("write_outputs: cannot open " + csv_path.string());
        }
        csv << render_csv(table);
        if (!csv) {
            throw std::runtime_error("write_outputs: write failed for " + csv_path.string());
        }
    }

    nlohmann::ordered_json meta;
    meta["subcommand"] = subcommand;
    meta["version"] = "1.0.0";
    meta["config_hash"] = hash_hex(cfg);
    meta["constants"] = {{"hbar_j_s", PhysicalConstants::hbar},
                         {"boltzmann_j_per_k", PhysicalConstants::boltzmann},
                         {"light_speed_m_per_s", PhysicalConstants::light_speed}};
    meta["conventions"] = {
        {"rates", "angular frequency (rad/s); *_hz config keys are multiplied by 2*pi"},
        {"vacuum_noise", "1/2"},
        {"log_negativity_log_base", "e"},
        {"entropy_log_base", "2"},
        {"discord_convention",
         cfg.discord == DiscordSelection::half   ? "half"
         : cfg.discord == DiscordSelection::unit ? "unit"
                                                 : "both"},
        {"occupancy_interpretation",
         cfg.occupancy == OccupancySelection::microwave ? "microwave"
         : cfg.occupancy == OccupancySelection::magnon  ? "magnon"
                                                        : "both"}};
    nlohmann::ordered_json config_echo = nlohmann::ordered_json::object();
    {
        std::istringstream lines(canonical_config(cfg));
        std::string line;
        while (std::getline(lines, line)) {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos) {
                config_echo[line.substr(0, eq)] = line.substr(eq + 3);
            }
        }
    }
    meta["config"] = config_echo;
    meta["columns"] = table.columns;
    if (crossings) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : *crossings) {
            nlohmann::ordered_json j;
            j["lambda_b"] = c.lambda_b;
            j["occupancy"] = c.occupancy;
            j["intermediary_occupancy"] = c.intermediary_occupancy;
            j["found"] = c.found;
            j["unique"] = c.unique;
            if (c.found) j["crossing_lambda_a"] = c.crossing_lambda_a;
            arr.push_back(std::move(j));
        }
        meta["r_equals_1_crossings"] = std::move(arr);
        meta["paper_reference_threshold"] = 0.115;
    }

    const fs::path meta_path = out_dir / (subcommand + ".meta.json");
    std::ofstream mj(meta_path, std::ios::binary);
    if (!mj) {
        throw std::runtime_error("write_outputs: cannot open " + meta_path.string());
    }
    mj << meta.dump(2) << '\n';
    if (!mj) {
        throw std::runtime_error("write_outputs: write failed for " + meta_path.string());
    }
}

} // namespace magnoqi
