#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "magnoqi/errors.hpp"
#include "magnoqi/sweep.hpp"

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw magnoqi::ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommonOptions {
    std::string config_path;
    std::string out_dir = "out";
    int workers = 1;
    std::optional<std::string> discord;
    std::optional<std::string> occupancy;
};

void attach_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("config", opts.config_path, "Configuration file (key = value); omit for defaults");
    cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--workers", opts.workers, "Worker threads (output is identical for any count)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--discord-convention", opts.discord, "Discord reference convention")
        ->check(CLI::IsMember({"half", "unit", "both"}));
    cmd->add_option("--occupancy", opts.occupancy, "Intermediary bath occupancy interpretation")
        ->check(CLI::IsMember({"microwave", "magnon", "both"}));
}

magnoqi::SweepConfig load_config(const CommonOptions& opts)
{
    magnoqi::SweepConfig cfg =
        magnoqi::parse_config(opts.config_path.empty() ? std::string() : read_file(opts.config_path));
    if (opts.discord) {
        cfg.discord = *opts.discord == "half"   ? magnoqi::DiscordSelection::half
                      : *opts.discord == "unit" ? magnoqi::DiscordSelection::unit
                                                : magnoqi::DiscordSelection::both;
    }
    if (opts.occupancy) {
        cfg.occupancy = *opts.occupancy == "microwave" ? magnoqi::OccupancySelection::microwave
                        : *opts.occupancy == "magnon"  ? magnoqi::OccupancySelection::magnon
                                                       : magnoqi::OccupancySelection::both;
    }
    if (cfg.detection_eta > 0.5) {
        std::cerr << "warning: eta = " << cfg.detection_eta
                  << " is far from the low-reflectivity regime the receiver model assumes\n";
    }
    return cfg;
}

void print_params(const magnoqi::SweepTable& t)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        const magnoqi::Cell& c = t.rows.front()[i];
        std::string value;
        switch (c.kind) {
        case magnoqi::Cell::Kind::real:
            value = magnoqi::format_real(c.real);
            break;
        case magnoqi::Cell::Kind::integer:
            value = std::to_string(c.integer);
            break;
        case magnoqi::Cell::Kind::text:
            value = c.text;
            break;
        default:
            break;
        }
        std::printf("%-28s %s\n", t.columns[i].c_str(), value.c_str());
    }
}

void print_crossings(const std::vector<magnoqi::AdvantageCrossing>& crossings)
{
    std::printf("R = 1 crossings in lambda_a (paper quotes 0.115; not asserted):\n");
    for (const auto& c : crossings) {
        if (c.found) {
            std::printf("  lambda_b = %-12s occupancy = %-9s n_intermediary = %-18s crossing = %s%s\n",
                        magnoqi::format_real(c.lambda_b).c_str(), c.occupancy.c_str(),
                        magnoqi::format_real(c.intermediary_occupancy).c_str(),
                        magnoqi::format_real(c.crossing_lambda_a).c_str(),
                        c.unique ? "" : " (multiple crossings)");
        } else {
            std::printf("  lambda_b = %-12s occupancy = %-9s no crossing in range\n",
                        magnoqi::format_real(c.lambda_b).c_str(), c.occupancy.c_str());
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cavity-magnonics microwave-optical entanglement source and "
                 "quantum-illumination detection simulator"};
    app.require_subcommand(1);

    CommonOptions opts;
    CLI::App* cmd_params = app.add_subcommand("params", "Derived rates, cooperativities, occupancies");
    CLI::App* cmd_resources = app.add_subcommand("resources", "Quantum-resource map over (lambda_a, lambda_b)");
    CLI::App* cmd_detection = app.add_subcommand("detection", "Error probability versus mode number");
    CLI::App* cmd_advantage = app.add_subcommand("advantage", "Quantum-advantage ratio map and R = 1 contour");
    CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "Frequency-resolved output state diagnostics");
    CLI::App* cmd_stability = app.add_subcommand("stability", "Drift-matrix stability diagnostics");
    for (CLI::App* cmd : {cmd_params, cmd_resources, cmd_detection, cmd_advantage, cmd_spectrum,
                          cmd_stability}) {
        attach_common(cmd, opts);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // command line is configuration too
    }

    try {
        const magnoqi::SweepConfig cfg = load_config(opts);
        if (cmd_params->parsed()) {
            const magnoqi::SweepTable t = magnoqi::run_params_report(cfg);
            print_params(t);
            magnoqi::write_outputs(t, cfg, "params", opts.out_dir);
        } else if (cmd_resources->parsed()) {
            magnoqi::write_outputs(magnoqi::run_resources_sweep(cfg, opts.workers), cfg, "resources",
                                   opts.out_dir);
        } else if (cmd_detection->parsed()) {
            magnoqi::write_outputs(magnoqi::run_detection_sweep(cfg, opts.workers), cfg, "detection",
                                   opts.out_dir);
        } else if (cmd_advantage->parsed()) {
            const magnoqi::AdvantageResult r = magnoqi::run_advantage_sweep(cfg, opts.workers);
            print_crossings(r.crossings);
            magnoqi::write_outputs(r.table, cfg, "advantage", opts.out_dir, &r.crossings);
        } else if (cmd_spectrum->parsed()) {
            magnoqi::write_outputs(magnoqi::run_spectrum_sweep(cfg, opts.workers), cfg, "spectrum",
                                   opts.out_dir);
        } else if (cmd_stability->parsed()) {
            magnoqi::write_outputs(magnoqi::run_stability_sweep(cfg, opts.workers), cfg, "stability",
                                   opts.out_dir);
        }
    } catch (const magnoqi::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
