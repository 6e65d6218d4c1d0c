#include "fresnel2d/scenario.hpp"

#include "fresnel2d/constants.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace fresnel2d {

using nlohmann::json;

namespace rng {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_key(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ (stream * 0x9e3779b97f4a7c15ULL));
}

double uniform01(std::uint64_t key, std::uint64_t index) {
    const std::uint64_t v = splitmix64(key + index * 0xd1b54a32d192ed03ULL);
    return static_cast<double>(v >> 11) * 0x1.0p-53;
}

double uniform(std::uint64_t key, std::uint64_t index, double a, double b) {
    return a + (b - a) * uniform01(key, index);
}

} // namespace rng

std::vector<Point2> sample_path(const PathSpec& path) {
    if (path.samples < 2) throw ScenarioError("path.samples: must be >= 2");
    std::vector<Point2> pts(static_cast<std::size_t>(path.samples));
    const double n1 = static_cast<double>(path.samples - 1);
    for (int i = 0; i < path.samples; ++i) {
        const double t = static_cast<double>(i) / n1;
        pts[static_cast<std::size_t>(i)] = {
            path.start.x + (path.end.x - path.start.x) * t,
            path.start.y + (path.end.y - path.start.y) * t};
    }
    return pts;
}

std::vector<Reflector> roughen(const Reflector& reflector,
                               std::uint64_t master_seed,
                               std::vector<std::string>* warnings) {
    if (!reflector.roughness)
        throw ScenarioError("roughen: reflector has no roughness spec");
    const RoughnessSpec& spec = *reflector.roughness;
    const double len = reflector.geometry.length;
    if (!(spec.sub_length > 0.0))
        throw ScenarioError("roughness.sub_length: must be > 0");
    if (spec.max_offset < 0.0)
        throw ScenarioError("roughness.max_offset: must be >= 0");
    if (spec.sub_length > len && warnings)
        warnings->push_back("roughness.sub_length exceeds reflector length; emitting a single displaced segment");

    const int n = std::max(1, static_cast<int>(std::ceil(len / spec.sub_length)));
    const Point2 dir = reflector.geometry.dir();
    const Point2 nrm = reflector.geometry.normal();
    const Point2 start = reflector.geometry.end_low();
    const std::uint64_t key = rng::derive_key(master_seed, spec.seed_offset);

    std::vector<Reflector> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double s0 = i * spec.sub_length;
        const double sub_len = std::min(spec.sub_length, len - s0);
        const double d = rng::uniform(key, static_cast<std::uint64_t>(i),
                                      -spec.max_offset, spec.max_offset);
        Reflector sub;
        sub.geometry.center = start + dir * (s0 + 0.5 * sub_len) + nrm * d;
        sub.geometry.length = sub_len;
        sub.geometry.angle_deg = reflector.geometry.angle_deg;
        sub.reflectivity = reflector.reflectivity;
        sub.phase_deg = reflector.phase_deg;
        out.push_back(sub);
    }
    return out;
}

std::vector<Reflector> expand_reflectors(const Scenario& s,
                                         std::vector<std::string>* warnings) {
    std::vector<Reflector> out;
    for (const Reflector& r : s.reflectors) {
        if (r.roughness) {
            std::vector<Reflector> subs = roughen(r, s.seed, warnings);
            out.insert(out.end(), subs.begin(), subs.end());
        } else {
            out.push_back(r);
        }
    }
    return out;
}

std::vector<Reflector> spawn_random_reflectors(int count, std::uint64_t seed,
                                               const SpawnRanges& rg) {
    if (count < 0) throw ScenarioError("spawn_random_reflectors: count must be >= 0");
    std::vector<Reflector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const std::uint64_t key = rng::derive_key(seed, static_cast<std::uint64_t>(i));
        Reflector r;
        r.geometry.center.x = rg.randomize_position ? rng::uniform(key, 0, rg.x_min, rg.x_max) : rg.fixed_x;
        r.geometry.center.y = rg.randomize_position ? rng::uniform(key, 1, rg.y_min, rg.y_max) : rg.fixed_y;
        r.geometry.angle_deg = rg.randomize_angle
                                   ? normalize_angle_deg(rng::uniform(key, 2, rg.angle_min, rg.angle_max))
                                   : normalize_angle_deg(rg.fixed_angle);
        r.geometry.length = rg.randomize_length ? rng::uniform(key, 3, rg.length_min, rg.length_max) : rg.fixed_length;
        out.push_back(r);
    }
    return out;
}

std::vector<Segment> aperture_walls(const Transmitter& tx, double wall_extent) {
    std::vector<Segment> walls;
    if (!tx.aperture) return walls;
    const Aperture& ap = *tx.aperture;
    const Point2 d = ap.seg.dir();
    if (!ap.open_low) {
        Segment w;
        w.center = ap.seg.end_low() - d * (0.5 * wall_extent);
        w.length = wall_extent;
        w.angle_deg = ap.seg.angle_deg;
        walls.push_back(w);
    }
    if (!ap.open_high) {
        Segment w;
        w.center = ap.seg.end_high() + d * (0.5 * wall_extent);
        w.length = wall_extent;
        w.angle_deg = ap.seg.angle_deg;
        walls.push_back(w);
    }
    return walls;
}

// ---------------------------------------------------------------------------
// Document parsing
// ---------------------------------------------------------------------------

namespace {

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok)
            throw ScenarioError(std::string(where) + ": unknown key '" + it.key() + "'");
    }
}

double num(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ScenarioError(std::string(where) + "." + key + ": missing");
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ScenarioError(std::string(where) + "." + key + ": must be a number");
    return v.get<double>();
}

double num_or(const json& obj, const char* where, const char* key, double dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ScenarioError(std::string(where) + "." + key + ": must be a number");
    return v.get<double>();
}

Point2 point(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ScenarioError(std::string(where) + "." + key + ": missing");
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ScenarioError(std::string(where) + "." + key + ": must be [x, y]");
    Point2 p{v[0].get<double>(), v[1].get<double>()};
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw ScenarioError(std::string(where) + "." + key + ": components must be finite");
    return p;
}

Segment parse_segment(const json& v, const std::string& where) {
    require_keys(v, where.c_str(), {"center", "angle_deg", "length"});
    Segment s;
    s.center = point(v, where.c_str(), "center");
    s.angle_deg = normalize_angle_deg(num(v, where.c_str(), "angle_deg"));
    s.length = num(v, where.c_str(), "length");
    if (s.length < 0.0) throw ScenarioError(where + ".length: must be >= 0");
    return s;
}

Aperture parse_aperture(const json& v, const std::string& where) {
    require_keys(v, where.c_str(),
                 {"center", "angle_deg", "length", "open_low", "open_high"});
    Aperture ap;
    ap.seg.center = point(v, where.c_str(), "center");
    ap.seg.angle_deg = normalize_angle_deg(num(v, where.c_str(), "angle_deg"));
    ap.seg.length = num(v, where.c_str(), "length");
    if (ap.seg.length < 0.0) throw ScenarioError(where + ".length: must be >= 0");
    if (v.contains("open_low")) ap.open_low = v.at("open_low").get<bool>();
    if (v.contains("open_high")) ap.open_high = v.at("open_high").get<bool>();
    return ap;
}

Antenna parse_antenna(const json& v) {
    require_keys(v, "antenna", {"type", "angles_deg", "gains"});
    const std::string type = v.value("type", std::string("isotropic"));
    if (type == "isotropic") return Antenna::isotropic();
    if (type == "table") {
        if (!v.contains("angles_deg") || !v.contains("gains"))
            throw ScenarioError("antenna: table type needs angles_deg and gains");
        return Antenna::from_table(v.at("angles_deg").get<std::vector<double>>(),
                                   v.at("gains").get<std::vector<double>>());
    }
    throw ScenarioError("antenna.type: unknown type '" + type + "'");
}

FrequencySpec parse_frequency(const json& v, const std::string& where) {
    FrequencySpec f;
    if (v.is_number()) {
        f.center_hz = v.get<double>();
    } else if (v.is_object()) {
        require_keys(v, where.c_str(), {"center_hz", "band_fraction", "band_points"});
        f.center_hz = num(v, where.c_str(), "center_hz");
        f.band_fraction = num_or(v, where.c_str(), "band_fraction", 0.0);
        f.band_points = static_cast<int>(num_or(v, where.c_str(), "band_points", 1.0));
    } else {
        throw ScenarioError(where + ": must be a number or an object");
    }
    if (!(f.center_hz > 0.0)) throw ScenarioError(where + ".center_hz: must be > 0");
    if (f.band_fraction < 0.0) throw ScenarioError(where + ".band_fraction: must be >= 0");
    if (f.band_points < 1) throw ScenarioError(where + ".band_points: must be >= 1");
    if (f.band_fraction == 0.0 && f.band_points != 1)
        throw ScenarioError(where + ": band_points must be 1 when band_fraction is 0");
    return f;
}

Reflector parse_reflector(const json& v, const std::string& where) {
    require_keys(v, where.c_str(),
                 {"center", "angle_deg", "length", "reflectivity", "phase_deg",
                  "radius_m", "roughness"});
    Reflector r;
    r.geometry = Segment{point(v, where.c_str(), "center"),
                         num(v, where.c_str(), "length"),
                         normalize_angle_deg(num(v, where.c_str(), "angle_deg"))};
    if (r.geometry.length < 0.0) throw ScenarioError(where + ".length: must be >= 0");
    r.reflectivity = num_or(v, where.c_str(), "reflectivity", 1.0);
    if (r.reflectivity < 0.0 || r.reflectivity > 1.0)
        throw ScenarioError(where + ".reflectivity: reflectivity out of [0,1]");
    r.phase_deg = num_or(v, where.c_str(), "phase_deg", 0.0);
    if (v.contains("radius_m") && !v.at("radius_m").is_null()) {
        r.radius = num(v, where.c_str(), "radius_m");
        if (!(*r.radius > 0.0)) throw ScenarioError(where + ".radius_m: must be > 0");
    }
    if (v.contains("roughness") && !v.at("roughness").is_null()) {
        const json& rough = v.at("roughness");
        const std::string rwhere = where + ".roughness";
        require_keys(rough, rwhere.c_str(), {"sub_length", "max_offset", "seed_offset"});
        RoughnessSpec spec;
        spec.sub_length = num(rough, rwhere.c_str(), "sub_length");
        spec.max_offset = num(rough, rwhere.c_str(), "max_offset");
        spec.seed_offset = static_cast<std::uint64_t>(num_or(rough, rwhere.c_str(), "seed_offset", 0.0));
        if (!(spec.sub_length > 0.0)) throw ScenarioError(rwhere + ".sub_length: must be > 0");
        if (spec.max_offset < 0.0) throw ScenarioError(rwhere + ".max_offset: must be >= 0");
        r.roughness = spec;
    }
    return r;
}

// Warn when a reflector center sits close (in Fresnel-argument units at the
// lowest carrier) to a transmitter-aperture shadow boundary; the model
// expects the user to split such reflectors.
void check_shadow_boundary(const Scenario& s, std::vector<std::string>* warnings) {
    if (!warnings || !s.transmitter.aperture || s.frequencies.empty()) return;
    double fmin = s.frequencies.front().center_hz;
    for (const FrequencySpec& f : s.frequencies) fmin = std::min(fmin, f.center_hz);
    for (std::size_t i = 0; i < s.reflectors.size(); ++i) {
        DiffractionGeometry g;
        try {
            g = aperture_projection(s.transmitter.position,
                                    s.reflectors[i].geometry.center,
                                    *s.transmitter.aperture);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (g.same_side) continue;
        const auto [w1, w2] = edge_args(g, fmin);
        const double margin = std::min(std::abs(w1), std::abs(w2));
        if (margin < 1.0)
            warnings->push_back("reflector " + std::to_string(i) +
                                " lies near the transmitter-aperture shadow boundary"
                                " (|w| = " + std::to_string(margin) +
                                " at the lowest carrier); consider splitting it");
    }
}

} // namespace

Scenario load_scenario(const std::string& json_text,
                       std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario: top level must be an object");
    require_keys(doc, "scenario",
                 {"transmitter", "reflectors", "antenna", "path", "frequencies", "seed"});

    Scenario s;
    if (!doc.contains("transmitter")) throw ScenarioError("transmitter: missing");
    {
        const json& t = doc.at("transmitter");
        require_keys(t, "transmitter", {"position", "power_w", "gain", "aperture"});
        s.transmitter.position = point(t, "transmitter", "position");
        s.transmitter.input_power_w = num_or(t, "transmitter", "power_w", 1.0);
        s.transmitter.gain = num_or(t, "transmitter", "gain", 1.0);
        if (!(s.transmitter.input_power_w > 0.0))
            throw ScenarioError("transmitter.power_w: must be > 0");
        if (!(s.transmitter.gain > 0.0))
            throw ScenarioError("transmitter.gain: must be > 0");
        if (t.contains("aperture") && !t.at("aperture").is_null())
            s.transmitter.aperture = parse_aperture(t.at("aperture"), "transmitter.aperture");
    }

    if (doc.contains("reflectors")) {
        const json& rs = doc.at("reflectors");
        if (!rs.is_array()) throw ScenarioError("reflectors: must be an array");
        for (std::size_t i = 0; i < rs.size(); ++i)
            s.reflectors.push_back(parse_reflector(rs[i], "reflectors[" + std::to_string(i) + "]"));
    }

    s.antenna = doc.contains("antenna") ? parse_antenna(doc.at("antenna"))
                                        : Antenna::isotropic();

    if (!doc.contains("path")) throw ScenarioError("path: missing");
    {
        const json& p = doc.at("path");
        require_keys(p, "path", {"start", "end", "samples"});
        s.path.start = point(p, "path", "start");
        s.path.end = point(p, "path", "end");
        s.path.samples = static_cast<int>(num(p, "path", "samples"));
        if (s.path.samples < 2) throw ScenarioError("path.samples: must be >= 2");
        if (distance(s.path.start, s.path.end) <= 0.0)
            throw ScenarioError("path: start and end must differ");
    }

    if (!doc.contains("frequencies")) throw ScenarioError("frequencies: missing");
    {
        const json& fs = doc.at("frequencies");
        if (!fs.is_array() || fs.empty())
            throw ScenarioError("frequencies: must be a non-empty array");
        for (std::size_t i = 0; i < fs.size(); ++i)
            s.frequencies.push_back(parse_frequency(fs[i], "frequencies[" + std::to_string(i) + "]"));
    }

    if (doc.contains("seed")) {
        const json& sd = doc.at("seed");
        if (!sd.is_number_integer() || sd.get<long long>() < 0)
            throw ScenarioError("seed: must be a non-negative integer");
        s.seed = sd.get<std::uint64_t>();
    }

    check_shadow_boundary(s, warnings);
    return s;
}

Scenario load_scenario_file(const std::string& path,
                            std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str(), warnings);
}

std::string scenario_to_json(const Scenario& s) {
    json doc;
    json t;
    t["position"] = {s.transmitter.position.x, s.transmitter.position.y};
    t["power_w"] = s.transmitter.input_power_w;
    t["gain"] = s.transmitter.gain;
    if (s.transmitter.aperture) {
        const Aperture& ap = *s.transmitter.aperture;
        t["aperture"] = {{"center", {ap.seg.center.x, ap.seg.center.y}},
                         {"angle_deg", ap.seg.angle_deg},
                         {"length", ap.seg.length},
                         {"open_low", ap.open_low},
                         {"open_high", ap.open_high}};
    }
    doc["transmitter"] = std::move(t);
    json rs = json::array();
    for (const Reflector& r : s.reflectors) {
        json v;
        v["center"] = {r.geometry.center.x, r.geometry.center.y};
        v["angle_deg"] = r.geometry.angle_deg;
        v["length"] = r.geometry.length;
        v["reflectivity"] = r.reflectivity;
        v["phase_deg"] = r.phase_deg;
        if (r.radius) v["radius_m"] = *r.radius;
        if (r.roughness)
            v["roughness"] = {{"sub_length", r.roughness->sub_length},
                              {"max_offset", r.roughness->max_offset},
                              {"seed_offset", r.roughness->seed_offset}};
        rs.push_back(std::move(v));
    }
    doc["reflectors"] = std::move(rs);
    if (s.antenna.is_isotropic()) {
        doc["antenna"] = {{"type", "isotropic"}};
    } else {
        doc["antenna"] = {{"type", "table"},
                          {"angles_deg", s.antenna.table_angles()},
                          {"gains", s.antenna.table_gains()}};
    }
    doc["path"] = {{"start", {s.path.start.x, s.path.start.y}},
                   {"end", {s.path.end.x, s.path.end.y}},
                   {"samples", s.path.samples}};
    json fs = json::array();
    for (const FrequencySpec& f : s.frequencies)
        fs.push_back({{"center_hz", f.center_hz},
                      {"band_fraction", f.band_fraction},
                      {"band_points", f.band_points}});
    doc["frequencies"] = std::move(fs);
    doc["seed"] = s.seed;
    return doc.dump();
}

std::uint64_t scenario_hash(const Scenario& s) {
    const std::string text = scenario_to_json(s);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace fresnel2d
