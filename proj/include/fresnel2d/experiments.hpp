#pragma once
// Named, reproducible experiment recipes: threshold delays across carriers,
// roughness sweeps, reflector regime families, back-reflection fades and AoA
// consistency, each emitting CSV reports and traces.
// Every experiment is deterministic in (config, seed) and records the
// scenario hash it ran.

#include "fresnel2d/analysis.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fresnel2d {

struct ExperimentConfig {
    std::filesystem::path out_dir = "out";
    std::filesystem::path scenario_dir = "scenarios";
    std::uint64_t seed = 1;
    int workers = 1;
    double level_falling = 0.7; // 30% deviation below the LoS reference
    double level_rising = 0.3;  // signal appearing
    bool write_traces = true;
};

/// Per-cell statistics of a parameter sweep.
struct SweepCell {
    double mean = 0.0;
    double stddev = 0.0; // sample std, only meaningful for n >= 2
    int n = 0;
};

struct SweepReport {
    std::vector<std::string> factor_names;
    std::vector<std::vector<double>> factor_values; // one axis per factor
    std::vector<SweepCell> cells;                   // row-major over the grid
    std::uint64_t seed = 0;
    std::uint64_t scenario_digest = 0;
};

// --- LoS/NLoS transition (blockage) -----------------------------------------
struct LosNlosResult {
    double falling_delay_m = 0.0; // 70% threshold, motion into the shadow
    double rising_delay_m = 0.0;  // 30% threshold, reversed motion
    std::uint64_t scenario_digest = 0;
};
LosNlosResult exp_los_nlos(const ExperimentConfig& cfg);

// --- Reflection into the shadow region --------------------------------------
struct ReflectionShadowResult {
    bool rough = false;
    std::vector<double> delays_m; // one per seed (single entry when smooth)
    double mean_delay_m = 0.0;
    double std_delay_m = 0.0;
    std::uint64_t scenario_digest = 0;
};
ReflectionShadowResult exp_reflection_shadow(const ExperimentConfig& cfg,
                                             bool rough, int n_seeds = 20);

// --- Rough-reflector grid (sub-length x offset, n seeds per cell) -----------
SweepReport exp_rough_grid(const ExperimentConfig& cfg, int n_per_cell = 100,
                           int path_samples = 500);

// --- Random-reflector variance ----------------------------------------------
struct RandomVarianceCell {
    int reflector_count = 0;
    bool vary_angle = false;
    bool vary_length = false;
    int n = 0;
    double mean_delay_m = 0.0;
    double variance = 0.0;
};
std::vector<RandomVarianceCell> exp_random_variance(
    const ExperimentConfig& cfg, const std::vector<int>& groups = {1, 3, 9},
    int n_per_cell = 40);

/// Canonical single-knife-edge scene: transmitter at the origin, wall along
/// +x ending at (edge_x, 2) with the gap open beyond, path parallel to the
/// wall at `offset_m` above the edge.
Scenario knife_edge_scenario(double offset_m, double edge_x = 3.0);

// --- Threshold delay vs edge-to-path offset ----------------------------------
struct OffsetSweepPoint {
    double offset_m = 0.0;
    double delay_m = 0.0;
};
std::vector<OffsetSweepPoint> exp_offset_sweep(
    const ExperimentConfig& cfg,
    const std::vector<double>& offsets = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

// --- Small-reflector regime families -----------------------------------------
struct RegimeTrace {
    std::string family;     // "wavelength", "size", "distance"
    double lambda_m = 0.0;
    double length_m = 0.0;
    double r2_m = 0.0;
    double n_value = 0.0;   // 2 L^2 / (lambda r2)
    int sidelobe_count = 0; // local maxima above 10% of the peak
    bool flat_top = false;
    std::vector<double> eta;       // path coordinate in units of L/2
    std::vector<double> magnitude; // |h_1|, peak-normalized
};
std::vector<RegimeTrace> exp_small_reflector_regimes(const ExperimentConfig& cfg,
                                                     double eta_max = 8.0,
                                                     int samples = 4001);

// --- LoS + back-reflection ----------------------------------------------------
enum class BackReflectionVariant { flat_pure, banded, rough };
struct BackReflectionResult {
    BackReflectionVariant variant = BackReflectionVariant::flat_pure;
    struct PerFrequency {
        double f_hz = 0.0;
        int deep_fade_count = 0;
        double fade_depth = 0.0;      // max/min amplitude over the specular region
        double path_swing_cycles = 0.0; // relative path change over the region, in wavelengths
    };
    std::vector<PerFrequency> per_frequency;
    double region_lo_m = 0.0; // specular region along the path
    double region_hi_m = 0.0;
    std::uint64_t scenario_digest = 0;
};
BackReflectionResult exp_back_reflection(const ExperimentConfig& cfg,
                                         BackReflectionVariant variant);

// --- Four-reflector AoA -------------------------------------------------------
struct FourReflectorAoaResult {
    // dominance-run entries per band: (component, entry position)
    std::vector<std::pair<int, double>> switches_low;
    std::vector<std::pair<int, double>> switches_high;
    // per component present in both bands: |entry(low) - entry(high)|
    std::vector<std::pair<int, double>> matched_offsets;
    std::uint64_t scenario_digest = 0;
};
FourReflectorAoaResult exp_four_reflector_aoa(const ExperimentConfig& cfg,
                                              double min_run_m = 0.5);

/// Dispatch by experiment name; returns false for an unknown name.
/// Valid names: los_nlos, reflection_shadow, rough_grid, random_variance,
/// offset_sweep, regimes, back_reflection, four_reflector_aoa.
bool run_experiment(const std::string& name, const ExperimentConfig& cfg);
std::vector<std::string> experiment_names();

/// Trace CSV in the interchange layout used by the CLI `run` command.
void write_trace_csv(const std::filesystem::path& file, const ChannelTrace& trace,
                     const std::vector<LosReference>& refs);

/// LoS reference per band with a free-space fallback when the path has no
/// LoS region (fallback noted via `estimated` = false).
struct ReferenceSet {
    std::vector<LosReference> refs;
    std::vector<bool> estimated;
};
ReferenceSet make_references(const ChannelTrace& trace,
                             SignalSource source = SignalSource::tone_amplitude);

} // namespace fresnel2d
