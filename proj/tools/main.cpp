// Command-line front end: trace runs, field maps, threshold analysis and the
// named experiment sweeps. All outputs are CSV.
//
// Exit codes: 0 success, 1 usage/validation error, 2 I/O error.

#include "fresnel2d/analysis.hpp"
#include "fresnel2d/csv.hpp"
#include "fresnel2d/experiments.hpp"
#include "fresnel2d/fresnel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace fresnel2d;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

std::string default_out_dir() {
    if (const char* env = std::getenv("FRESNEL2D_OUT")) return env;
    return "out";
}

Scenario load_or_die(const std::string& path, std::optional<std::uint64_t> seed) {
    std::vector<std::string> warnings;
    Scenario sc = load_scenario_file(path, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    if (seed) sc.seed = *seed;
    return sc;
}

struct GridOption {
    GridSpec spec;
    bool set = false;
};

bool parse_grid(const std::string& text, GridSpec& g) {
    std::istringstream in(text);
    char c1, c2, c3, c4;
    if (!(in >> g.x0 >> c1 >> g.x1 >> c2 >> g.y0 >> c3 >> g.y1 >> c4 >> g.resolution))
        return false;
    if (c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',') return false;
    return g.resolution > 0.0 && g.x1 > g.x0 && g.y1 > g.y0;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed, int workers) {
    const Scenario sc = load_or_die(scenario_path, seed);
    const ChannelTrace tr = evaluate_trace(sc, workers);
    const ReferenceSet refs = make_references(tr);
    for (std::size_t i = 0; i < refs.estimated.size(); ++i)
        if (!refs.estimated[i])
            std::cerr << "warning: no LoS region at f="
                      << format_number(tr.bands[i].spec.center_hz)
                      << " Hz; h_abs_norm uses the free-space reference\n";
    fs::create_directories(out_dir);
    const fs::path file = fs::path(out_dir) /
                          (fs::path(scenario_path).stem().string() + "_trace.csv");
    write_trace_csv(file, tr, refs.refs);
    std::cout << file.string() << "\n";
    return kExitOk;
}

int cmd_map(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed, const GridOption& grid,
            int component, std::size_t band_index, int workers) {
    if (!grid.set) {
        std::cerr << "error: map requires --grid x0,x1,y0,y1,res\n";
        return kExitUsage;
    }
    const Scenario sc = load_or_die(scenario_path, seed);
    if (band_index >= sc.frequencies.size()) {
        std::cerr << "error: --freq-index out of range\n";
        return kExitUsage;
    }
    const FieldMap map = field_map(sc, band_index, grid.spec, component, workers);
    fs::create_directories(out_dir);
    const fs::path file = fs::path(out_dir) /
                          (fs::path(scenario_path).stem().string() + "_map.csv");
    CsvWriter csv(file.string());
    csv.comment("normalization: |h| * r / A_in (free space = 1); A_in = " +
                format_number(map.reference));
    csv.comment("component: " + (map.component < 0 ? std::string("total")
                                                   : std::to_string(map.component)));
    csv.raw_line("x_m,y_m,h_abs_norm");
    for (std::size_t iy = 0; iy < map.ny; ++iy)
        for (std::size_t ix = 0; ix < map.nx; ++ix) {
            const double x = map.grid.x0 + (ix + 0.5) * map.grid.resolution;
            const double y = map.grid.y0 + (iy + 0.5) * map.grid.resolution;
            csv.field(x).field(y).field(map.values[iy * map.nx + ix]).end_row();
        }
    std::cout << file.string() << "\n";
    return kExitOk;
}

int cmd_analyze(const std::string& scenario_path, const std::string& out_dir,
                std::optional<std::uint64_t> seed, std::optional<double> level,
                int workers) {
    if (level && (*level <= 0.0 || *level >= 1.0)) {
        std::cerr << "error: --level must be in (0, 1)\n";
        return kExitUsage;
    }
    if (level && std::abs(*level - 0.5) < 1e-12)
        std::cerr << "warning: the 50% level is frequency-independent at a "
                     "knife edge and makes a poor threshold\n";
    const Scenario sc = load_or_die(scenario_path, seed);
    const ChannelTrace tr = evaluate_trace(sc, workers);
    const ReferenceSet refs = make_references(tr);

    const double falling_level = level.value_or(0.7);
    const double rising_level = level.value_or(0.3);

    fs::create_directories(out_dir);
    CsvWriter events_csv((fs::path(out_dir) / "events.csv").string());
    events_csv.raw_line("f_hz,position_m,direction,level");
    for (std::size_t bi = 0; bi < tr.bands.size(); ++bi) {
        for (auto [dir_, lvl] : {std::pair{CrossDirection::falling, falling_level},
                                 std::pair{CrossDirection::rising, rising_level}}) {
            for (const ThresholdEvent& e :
                 threshold_crossings(tr, bi, lvl, dir_, refs.refs[bi])) {
                events_csv.field(e.frequency_hz)
                    .field(e.position_m)
                    .field(e.direction == CrossDirection::falling ? "falling" : "rising")
                    .field(e.level)
                    .end_row();
            }
        }
    }

    CsvWriter delays_csv((fs::path(out_dir) / "delays.csv").string());
    delays_csv.raw_line("f_low_hz,f_high_hz,direction,level,delay_m");
    for (std::size_t i = 0; i < tr.bands.size(); ++i) {
        for (std::size_t j = i + 1; j < tr.bands.size(); ++j) {
            std::size_t lo = i, hi = j;
            if (tr.bands[lo].spec.center_hz > tr.bands[hi].spec.center_hz)
                std::swap(lo, hi);
            for (auto [dir_, lvl] : {std::pair{CrossDirection::falling, falling_level},
                                     std::pair{CrossDirection::rising, rising_level}}) {
                delays_csv.field(tr.bands[lo].spec.center_hz)
                    .field(tr.bands[hi].spec.center_hz)
                    .field(dir_ == CrossDirection::falling ? "falling" : "rising")
                    .field(lvl);
                try {
                    delays_csv.field(threshold_delay(tr, lo, hi, lvl, dir_,
                                                     refs.refs[lo], refs.refs[hi]));
                } catch (const NoCrossing&) {
                    delays_csv.field(""); // no crossing: empty delay
                }
                delays_csv.end_row();
            }
        }
    }
    std::cout << (fs::path(out_dir) / "events.csv").string() << "\n"
              << (fs::path(out_dir) / "delays.csv").string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-D image-source + Fresnel-diffraction channel simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = default_out_dir();
    std::string scenario_dir = "scenarios";
    std::optional<std::uint64_t> seed;
    std::optional<double> level;
    std::string grid_text;
    int workers = 1;
    int component = -1;
    std::size_t band_index = 0;

    auto add_common = [&](CLI::App* sub, bool needs_scenario) {
        if (needs_scenario)
            sub->add_option("--scenario", scenario_path, "scenario document (JSON)")
                ->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override the scenario seed");
        sub->add_option("--threads", workers, "worker threads (never affects results)");
    };

    CLI::App* run = app.add_subcommand("run", "evaluate the channel along the path");
    add_common(run, true);

    CLI::App* map = app.add_subcommand("map", "evaluate |h| over a grid");
    add_common(map, true);
    map->add_option("--grid", grid_text, "x0,x1,y0,y1,res (meters)");
    map->add_option("--component", component, "component index (-1 = total)");
    map->add_option("--freq-index", band_index, "frequency index in the scenario");

    CLI::App* analyze = app.add_subcommand("analyze", "threshold events and delays");
    add_common(analyze, true);
    analyze->add_option("--level", level, "threshold level in (0,1)");

    CLI::App* sweep = app.add_subcommand("sweep", "run a named experiment");
    std::string experiment;
    sweep->add_option("name", experiment, "experiment name")->required();
    add_common(sweep, false);
    sweep->add_option("--scenarios", scenario_dir, "shipped scenario directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, out_dir, seed, workers);
        if (map->parsed()) {
            GridOption grid;
            if (!grid_text.empty()) {
                if (!parse_grid(grid_text, grid.spec)) {
                    std::cerr << "error: bad --grid (want x0,x1,y0,y1,res)\n";
                    return kExitUsage;
                }
                grid.set = true;
            }
            return cmd_map(scenario_path, out_dir, seed, grid, component, band_index,
                           workers);
        }
        if (analyze->parsed())
            return cmd_analyze(scenario_path, out_dir, seed, level, workers);
        if (sweep->parsed()) {
            ExperimentConfig cfg;
            cfg.out_dir = out_dir;
            cfg.scenario_dir = scenario_dir;
            if (seed) cfg.seed = *seed;
            cfg.workers = workers;
            if (!run_experiment(experiment, cfg)) {
                std::cerr << "error: unknown experiment '" << experiment << "'; valid:";
                for (const std::string& n : experiment_names()) std::cerr << " " << n;
                std::cerr << "\n";
                return kExitUsage;
            }
            return kExitOk;
        }
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
