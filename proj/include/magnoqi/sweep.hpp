#ifndef MAGNOQI_SWEEP_HPP
#define MAGNOQI_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "magnoqi/system_params.hpp"

namespace magnoqi {

enum class Spacing { linear, log };

struct GridAxis {
    double min = 0.0;
    double max = 1.0;
    int points = 2;
    Spacing spacing = Spacing::linear;
};

enum class DiscordSelection { half, unit, both };
enum class OccupancySelection { microwave, magnon, both };

// Parsed + validated sweep configuration; every rate in rad/s.
struct SweepConfig {
    SystemParams system;
    MaterialParams material;

    GridAxis resources_lambda_a{0.001, 0.054, 20, Spacing::linear};
    GridAxis resources_lambda_b{1.0, 1600.0, 20, Spacing::log};
    GridAxis advantage_lambda_a{0.01, 0.3, 20, Spacing::linear};
    GridAxis advantage_lambda_b{1.0, 1600.0, 20, Spacing::log};
    GridAxis detection_m{1e3, 1e10, 29, Spacing::log};

    double detection_lambda_a = 0.054;
    double detection_lambda_b = 400.0;
    double detection_eta = 0.07;
    double room_temperature = 293.0;

    double eom_lambda_a = 668.43;
    double eom_lambda_b = 5181.95;
    double eom_intermediary_frequency = 2.0 * std::numbers::pi * 10e6;

    int spectrum_points = 41;

    DiscordSelection discord = DiscordSelection::both;
    OccupancySelection occupancy = OccupancySelection::microwave;
};

// One CSV cell; empty cells render as the empty string.
struct Cell {
    enum class Kind { empty, real, integer, text };
    Kind kind = Kind::empty;
    double real = 0.0;
    std::int64_t integer = 0;
    std::string text;

    static Cell none() { return {}; }
    static Cell of(double v) { Cell c; c.kind = Kind::real; c.real = v; return c; }
    static Cell of_int(std::int64_t v) { Cell c; c.kind = Kind::integer; c.integer = v; return c; }
    static Cell of_text(std::string v) { Cell c; c.kind = Kind::text; c.text = std::move(v); return c; }
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// R = 1 contour crossing for one lambda_b row under one occupancy
// interpretation.
struct AdvantageCrossing {
    double lambda_b = 0.0;
    std::string occupancy;
    double intermediary_occupancy = 0.0;
    bool found = false;
    bool unique = false;
    double crossing_lambda_a = 0.0;
};

struct AdvantageResult {
    SweepTable table;
    std::vector<AdvantageCrossing> crossings;
};

// Parses the key = value configuration document; unknown keys, malformed
// lines, and schema violations throw ConfigError naming the key and line.
// The empty document yields all defaults.
SweepConfig parse_config(const std::string& text);

// Fixed-order normalized rendering of a config; the echo placed in the
// metadata sidecar and the input of config_hash.
std::string canonical_config(const SweepConfig& cfg);
std::uint64_t config_hash(const SweepConfig& cfg);

// Grid expansion with exact endpoints.
std::vector<double> grid_points(const GridAxis& axis);

// The bath occupancies seen by the magnon-based source under one occupancy
// interpretation ("microwave" or "magnon").
BathOccupancies interpreted_baths(const SweepConfig& cfg, OccupancySelection which);

SweepTable run_params_report(const SweepConfig& cfg);
SweepTable run_resources_sweep(const SweepConfig& cfg, int workers);
SweepTable run_detection_sweep(const SweepConfig& cfg, int workers);
AdvantageResult run_advantage_sweep(const SweepConfig& cfg, int workers);
SweepTable run_spectrum_sweep(const SweepConfig& cfg, int workers);
SweepTable run_stability_sweep(const SweepConfig& cfg, int workers);

// 12-significant-digit scientific notation used by every real CSV cell.
std::string format_real(double v);
std::string render_csv(const SweepTable& table);

// Writes <subcommand>.csv and <subcommand>.meta.json under out_dir;
// byte-identical for identical configs. I/O failures throw with the path.
void write_outputs(const SweepTable& table, const SweepConfig& cfg, const std::string& subcommand,
                   const std::filesystem::path& out_dir,
                   const std::vector<AdvantageCrossing>* crossings = nullptr);

} // namespace magnoqi

#endif
