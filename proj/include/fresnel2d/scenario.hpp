#pragma once
// Scene data model, scenario-file loading/validation, roughness
// decomposition, random-scene generation and path sampling. All randomness
// flows through seeded, platform-independent derived streams.

#include "fresnel2d/propagation.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fresnel2d {

struct PathSpec {
    Point2 start;
    Point2 end;
    int samples = 2;
};

struct Scenario {
    Transmitter transmitter;
    std::vector<Reflector> reflectors;
    Antenna antenna;
    PathSpec path;
    std::vector<FrequencySpec> frequencies;
    std::uint64_t seed = 0;
};

/// Validation failure; the message names the offending field and constraint.
class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parse and validate a scenario document (JSON). Unknown keys are rejected.
/// Non-fatal issues (e.g. a reflector near the transmitter-aperture shadow
/// boundary) are appended to `warnings` when given.
Scenario load_scenario(const std::string& json_text,
                       std::vector<std::string>* warnings = nullptr);
Scenario load_scenario_file(const std::string& path,
                            std::vector<std::string>* warnings = nullptr);

/// Serialize back to canonical JSON (used for hashing and report metadata).
std::string scenario_to_json(const Scenario& s);

/// FNV-1a hash of the canonical document, for experiment metadata.
std::uint64_t scenario_hash(const Scenario& s);

/// Split a rough reflector into perpendicular-jittered sub-reflectors.
/// Deterministic in (master_seed, spec.seed_offset, sub index).
std::vector<Reflector> roughen(const Reflector& reflector,
                               std::uint64_t master_seed,
                               std::vector<std::string>* warnings = nullptr);

/// All reflectors with roughness specs expanded (master seed = scenario seed).
std::vector<Reflector> expand_reflectors(const Scenario& s,
                                         std::vector<std::string>* warnings = nullptr);

struct SpawnRanges {
    double x_min = 5.0, x_max = 20.0;
    double y_min = -5.0, y_max = 7.0;
    double angle_min = 90.0, angle_max = 270.0;
    double length_min = 0.0, length_max = 2.0;
    bool randomize_position = true;
    bool randomize_angle = true;
    bool randomize_length = true;
    // values used when a parameter is not randomized
    double fixed_x = 12.5, fixed_y = 1.0;
    double fixed_angle = 180.0, fixed_length = 1.0;
};

/// Uniform random reflectors in a rectangular region; deterministic per seed,
/// with one derived stream per reflector index.
std::vector<Reflector> spawn_random_reflectors(int count, std::uint64_t seed,
                                               const SpawnRanges& ranges = {});

/// `samples` equally spaced points from start to end inclusive.
std::vector<Point2> sample_path(const PathSpec& path);

/// Blocking wall segments implied by the transmitter aperture (used by the
/// first-Fresnel-zone LoS test). Open edges produce no wall on that side.
std::vector<Segment> aperture_walls(const Transmitter& tx,
                                    double wall_extent = 1e4);

namespace rng {

/// SplitMix64 step; the basis of every derived stream.
std::uint64_t splitmix64(std::uint64_t x);

/// Stable 64-bit key for (master seed, stream id).
std::uint64_t derive_key(std::uint64_t master, std::uint64_t stream);

/// i-th uniform in [0, 1) of a derived stream.
double uniform01(std::uint64_t key, std::uint64_t index);

/// i-th uniform in [a, b) of a derived stream.
double uniform(std::uint64_t key, std::uint64_t index, double a, double b);

} // namespace rng

} // namespace fresnel2d
