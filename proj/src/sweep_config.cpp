#include "magnoqi/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "magnoqi/errors.hpp"

namespace magnoqi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& value, const std::string& key, int line)
{
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' (line " + std::to_string(line) +
                              "): not a number: '" + value + "'",
                          key, line);
    }
    if (consumed != value.size() || !std::isfinite(v)) {
        throw ConfigError("config: key '" + key + "' (line " + std::to_string(line) +
                              "): not a finite number: '" + value + "'",
                          key, line);
    }
    return v;
}

int parse_int(const std::string& value, const std::string& key, int line)
{
    const double v = parse_number(value, key, line);
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9) {
        throw ConfigError("config: key '" + key + "' (line " + std::to_string(line) +
                              "): expected an integer",
                          key, line);
    }
    return i;
}

struct Parser {
    SweepConfig cfg;
    std::map<std::string, int> seen_lines;

    using Handler = std::function<void(const std::string& value, const std::string& key, int line)>;
    std::map<std::string, Handler> handlers;

    void number_key(const std::string& key, double* slot, double unit_scale = 1.0,
                    bool require_positive = false, bool require_nonnegative = false)
    {
        handlers[key] = [slot, unit_scale, require_positive, require_nonnegative](
                            const std::string& value, const std::string& k, int line) {
            const double v = parse_number(value, k, line);
            if (require_positive && !(v > 0.0)) {
                throw ConfigError("config: key '" + k + "' (line " + std::to_string(line) +
                                      "): must be strictly positive",
                                  k, line);
            }
            if (require_nonnegative && v < 0.0) {
                throw ConfigError("config: key '" + k + "' (line " + std::to_string(line) +
                                      "): must be nonnegative",
                                  k, line);
            }
            *slot = v * unit_scale;
        };
    }

    void axis_keys(const std::string& prefix, GridAxis* axis)
    {
        handlers[prefix + ".min"] = [axis](const std::string& v, const std::string& k, int line) {
            axis->min = parse_number(v, k, line);
        };
        handlers[prefix + ".max"] = [axis](const std::string& v, const std::string& k, int line) {
            axis->max = parse_number(v, k, line);
        };
        handlers[prefix + ".points"] = [axis](const std::string& v, const std::string& k, int line) {
            axis->points = parse_int(v, k, line);
            if (axis->points < 2) {
                throw ConfigError("config: key '" + k + "' (line " + std::to_string(line) +
                                      "): grid point count must be at least 2",
                                  k, line);
            }
        };
        handlers[prefix + ".spacing"] = [axis](const std::string& v, const std::string& k, int line) {
            if (v == "linear") {
                axis->spacing = Spacing::linear;
            } else if (v == "log") {
                axis->spacing = Spacing::log;
            } else {
                throw ConfigError("config: key '" + k + "' (line " + std::to_string(line) +
                                      "): spacing must be 'linear' or 'log'",
                                  k, line);
            }
        };
    }

    Parser()
    {
        number_key("sphere_radius_um", &cfg.system.sphere_radius, 1e-6, true);
        number_key("pump_power_mw", &cfg.system.pump_power, 1e-3, true);
        number_key("pump_wavelength_nm", &cfg.system.pump_wavelength, 1e-9, true);
        number_key("optical_quality", &cfg.system.optical_quality, 1.0, true);
        number_key("kappa_m_hz", &cfg.system.magnon_damping, kTwoPi, true);
        number_key("kappa_b_hz", &cfg.system.microwave_damping, kTwoPi, true);
        number_key("g_mb_hz", &cfg.system.electromagnonic_coupling, kTwoPi, false, true);
        number_key("microwave_frequency_hz", &cfg.system.microwave_frequency, kTwoPi, true);
        number_key("magnon_frequency_hz", &cfg.system.magnon_frequency, kTwoPi, true);
        number_key("environment_temperature_k", &cfg.system.environment_temperature, 1.0, false, true);
        number_key("optical_bath_occupancy", &cfg.system.optical_thermal_occupancy, 1.0, false, true);

        number_key("verdet_constant_rad_per_m", &cfg.material.verdet_constant, 1.0, true);
        number_key("refractive_index", &cfg.material.refractive_index, 1.0, true);
        number_key("spin_density_per_m3", &cfg.material.spin_density, 1.0, true);

        axis_keys("grid.lambda_a", &cfg.resources_lambda_a);
        axis_keys("grid.lambda_b", &cfg.resources_lambda_b);
        axis_keys("advantage.lambda_a", &cfg.advantage_lambda_a);
        axis_keys("advantage.lambda_b", &cfg.advantage_lambda_b);
        axis_keys("detection.m", &cfg.detection_m);

        number_key("detection.lambda_a", &cfg.detection_lambda_a, 1.0, false, true);
        number_key("detection.lambda_b", &cfg.detection_lambda_b, 1.0, false, true);
        handlers["detection.eta"] = [this](const std::string& v, const std::string& k, int line) {
            const double eta = parse_number(v, k, line);
            if (!(eta >= 0.0) || !(eta < 1.0)) {
                throw ConfigError("config: key '" + k + "' (line " + std::to_string(line) +
                                      "): eta must lie in [0, 1)",
                                  k, line);
            }
            cfg.detection_eta = eta;
        };
        number_key("detection.room_temperature_k", &cfg.room_temperature, 1.0, false, true);

        number_key("eom.lambda_a", &cfg.eom_lambda_a, 1.0, false, true);
        number_key("eom.lambda_b", &cfg.eom_lambda_b, 1.0, false, true);
        number_key("eom.intermediary_frequency_hz", &cfg.eom_intermediary_frequency, kTwoPi, true);

        handlers["spectrum.points"] = [this](const std::string& v, const std::string& k, int line) {
            const int p = parse_int(v, k, line);
            if (p < 3 || p % 2 == 0) {
                throw ConfigError("config: key '" + k + "' (line " + std::to_string(line) +
                                      "): spectrum point count must be odd and at least 3 "
                                      "(the grid must contain omega = 0)",
                                  k, line);
            }
            cfg.spectrum_points = p;
        };
        handlers["discord_convention"] = [this](const std::string& v, const std::string& k, int line) {
            if (v == "half") cfg.discord = DiscordSelection::half;
            else if (v == "unit") cfg.discord = DiscordSelection::unit;
            else if (v == "both") cfg.discord = DiscordSelection::both;
            else {
                throw ConfigError("config: key '" + k + "' (line " + std::to_string(line) +
                                      "): must be 'half', 'unit' or 'both'",
                                  k, line);
            }
        };
        handlers["occupancy_interpretation"] = [this](const std::string& v, const std::string& k,
                                                      int line) {
            if (v == "microwave") cfg.occupancy = OccupancySelection::microwave;
            else if (v == "magnon") cfg.occupancy = OccupancySelection::magnon;
            else if (v == "both") cfg.occupancy = OccupancySelection::both;
            else {
                throw ConfigError("config: key '" + k + "' (line " + std::to_string(line) +
                                      "): must be 'microwave', 'magnon' or 'both'",
                                  k, line);
            }
        };
    }

    void feed(const std::string& text)
    {
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            const std::string stripped = trim(raw);
            if (stripped.empty() || stripped[0] == '#') continue;
            const auto eq = stripped.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config: line " + std::to_string(line) +
                                      ": expected 'key = value', got '" + stripped + "'",
                                  "", line);
            }
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            auto it = handlers.find(key);
            if (it == handlers.end()) {
                throw ConfigError("config: unknown key '" + key + "' (line " + std::to_string(line) + ")",
                                  key, line);
            }
            it->second(value, key, line);
            seen_lines[key] = line;
        }
    }

    int line_of(const std::string& key) const
    {
        auto it = seen_lines.find(key);
        return it == seen_lines.end() ? 0 : it->second;
    }

    void check_axis(const std::string& prefix, const GridAxis& axis)
    {
        if (!(axis.min < axis.max)) {
            const std::string key = prefix + ".min";
            throw ConfigError("config: key '" + key + "': min must be below max", key, line_of(key));
        }
        if (axis.spacing == Spacing::log && !(axis.min > 0.0)) {
            const std::string key = prefix + ".min";
            throw ConfigError("config: key '" + key + "': log spacing requires min > 0", key,
                              line_of(key));
        }
    }

    void validate_all()
    {
        check_axis("grid.lambda_a", cfg.resources_lambda_a);
        check_axis("grid.lambda_b", cfg.resources_lambda_b);
        check_axis("advantage.lambda_a", cfg.advantage_lambda_a);
        check_axis("advantage.lambda_b", cfg.advantage_lambda_b);
        check_axis("detection.m", cfg.detection_m);
        if (!(cfg.detection_m.min >= 1.0)) {
            throw ConfigError("config: key 'detection.m.min': mode counts must be at least 1",
                              "detection.m.min", line_of("detection.m.min"));
        }
        try {
            validate(cfg.system);
            validate(cfg.material);
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("config: ") + e.what(), "", 0);
        }
    }
};

std::string spacing_name(Spacing s)
{
    return s == Spacing::linear ? "linear" : "log";
}

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void render_axis(std::ostringstream& out, const std::string& prefix, const GridAxis& a)
{
    out << prefix << ".min = " << num(a.min) << "\n";
    out << prefix << ".max = " << num(a.max) << "\n";
    out << prefix << ".points = " << a.points << "\n";
    out << prefix << ".spacing = " << spacing_name(a.spacing) << "\n";
}

} // namespace

SweepConfig parse_config(const std::string& text)
{
    Parser parser;
    parser.feed(text);
    parser.validate_all();
    return parser.cfg;
}

std::string canonical_config(const SweepConfig& cfg)
{
    std::ostringstream out;
    out << "sphere_radius_um = " << num(cfg.system.sphere_radius * 1e6) << "\n";
    out << "pump_power_mw = " << num(cfg.system.pump_power * 1e3) << "\n";
    out << "pump_wavelength_nm = " << num(cfg.system.pump_wavelength * 1e9) << "\n";
    out << "optical_quality = " << num(cfg.system.optical_quality) << "\n";
    out << "kappa_m_hz = " << num(cfg.system.magnon_damping / kTwoPi) << "\n";
    out << "kappa_b_hz = " << num(cfg.system.microwave_damping / kTwoPi) << "\n";
    out << "g_mb_hz = " << num(cfg.system.electromagnonic_coupling / kTwoPi) << "\n";
    out << "microwave_frequency_hz = " << num(cfg.system.microwave_frequency / kTwoPi) << "\n";
    out << "magnon_frequency_hz = " << num(cfg.system.magnon_frequency / kTwoPi) << "\n";
    out << "environment_temperature_k = " << num(cfg.system.environment_temperature) << "\n";
    out << "optical_bath_occupancy = " << num(cfg.system.optical_thermal_occupancy) << "\n";
    out << "verdet_constant_rad_per_m = " << num(cfg.material.verdet_constant) << "\n";
    out << "refractive_index = " << num(cfg.material.refractive_index) << "\n";
    out << "spin_density_per_m3 = " << num(cfg.material.spin_density) << "\n";
    render_axis(out, "grid.lambda_a", cfg.resources_lambda_a);
    render_axis(out, "grid.lambda_b", cfg.resources_lambda_b);
    render_axis(out, "advantage.lambda_a", cfg.advantage_lambda_a);
    render_axis(out, "advantage.lambda_b", cfg.advantage_lambda_b);
    render_axis(out, "detection.m", cfg.detection_m);
    out << "detection.lambda_a = " << num(cfg.detection_lambda_a) << "\n";
    out << "detection.lambda_b = " << num(cfg.detection_lambda_b) << "\n";
    out << "detection.eta = " << num(cfg.detection_eta) << "\n";
    out << "detection.room_temperature_k = " << num(cfg.room_temperature) << "\n";
    out << "eom.lambda_a = " << num(cfg.eom_lambda_a) << "\n";
    out << "eom.lambda_b = " << num(cfg.eom_lambda_b) << "\n";
    out << "eom.intermediary_frequency_hz = " << num(cfg.eom_intermediary_frequency / kTwoPi) << "\n";
    out << "spectrum.points = " << cfg.spectrum_points << "\n";
    out << "discord_convention = "
        << (cfg.discord == DiscordSelection::half   ? "half"
            : cfg.discord == DiscordSelection::unit ? "unit"
                                                    : "both")
        << "\n";
    out << "occupancy_interpretation = "
        << (cfg.occupancy == OccupancySelection::microwave ? "microwave"
            : cfg.occupancy == OccupancySelection::magnon  ? "magnon"
                                                           : "both")
        << "\n";
    return out.str();
}

std::uint64_t config_hash(const SweepConfig& cfg)
{
    // FNV-1a over the canonical rendering.
    const std::string doc = canonical_config(cfg);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : doc) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<double> grid_points(const GridAxis& axis)
{
    std::vector<double> pts(static_cast<std::size_t>(axis.points));
    const int n = axis.points;
    if (axis.spacing == Spacing::linear) {
        const double step = (axis.max - axis.min) / (n - 1);
        for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = axis.min + step * i;
    } else {
        const double lmin = std::log(axis.min);
        const double lstep = (std::log(axis.max) - lmin) / (n - 1);
        for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = std::exp(lmin + lstep * i);
    }
    pts.front() = axis.min;
    pts.back() = axis.max;
    return pts;
}

BathOccupancies interpreted_baths(const SweepConfig& cfg, OccupancySelection which)
{
    BathOccupancies baths;
    baths.optical = cfg.system.optical_thermal_occupancy;
    baths.microwave = microwave_bath_occupancy(cfg.system);
    baths.intermediary = (which == OccupancySelection::magnon) ? magnon_bath_occupancy(cfg.system)
                                                               : microwave_bath_occupancy(cfg.system);
    return baths;
}

} // namespace magnoqi
