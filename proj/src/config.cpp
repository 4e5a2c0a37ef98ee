#include "rydsim/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rydsim/units.hpp"

namespace rydsim {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

DriveParams DriveConfig::resolve() const {
    if (c6 && r_b_um) throw ConfigError("drive: give either c6_rad_um6_per_us or r_b_um, not both");
    DriveParams d;
    d.omega = mhz_to_rad_per_us(omega_mhz);
    d.detuning = mhz_to_rad_per_us(detuning_mhz);
    if (r_b_um)
        d.c6 = d.omega * std::pow(*r_b_um, 6);
    else
        d.c6 = c6.value_or(default_c6);
    if (!(d.omega > 0.0)) throw ConfigError("drive: omega_mhz must be > 0");
    if (!(d.c6 > 0.0)) throw ConfigError("drive: c6 must be > 0");
    return d;
}

std::string OutputConfig::resolve_directory() const {
    if (!directory.empty()) return directory;
    if (const char* env = std::getenv("RYDSIM_OUT"); env && *env) return env;
    return ".";
}

AtomArrangement ExperimentConfig::arrangement() const {
    if (geometry.atoms) return *geometry.atoms;
    if (geometry.param) return make_arrangement(*geometry.param);
    throw ConfigError("geometry: either a transformation family or an explicit atom list is required");
}

namespace {

// strict object access: every key must be consumed
class StrictObject {
public:
    StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
    }
    ~StrictObject() = default;

    bool has(const char* key) {
        seen_.insert(key);
        return j_.contains(key);
    }
    const json& at(const char* key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ConfigError(path_ + "." + key + ": required");
        return j_.at(key);
    }
    template <typename T>
    T get(const char* key, T fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) return fallback;
        try {
            return j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(path_ + "." + key + ": wrong type");
        }
    }
    template <typename T>
    std::optional<T> get_opt(const char* key) {
        seen_.insert(key);
        if (!j_.contains(key)) return std::nullopt;
        try {
            return j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(path_ + "." + key + ": wrong type");
        }
    }
    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError(path_ + "." + it.key() + ": unknown key");
    }
    const std::string& path() const { return path_; }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

WindowKind window_from_name(const std::string& name, const std::string& path) {
    if (name == "rect") return WindowKind::rect;
    if (name == "hann") return WindowKind::hann;
    throw ConfigError(path + ": window must be 'rect', 'hann' or 'auto'");
}

GeometryConfig parse_geometry(const json& j) {
    StrictObject o(j, "geometry");
    GeometryConfig g;
    const bool has_family = o.has("family");
    if (o.has("atoms")) {
        if (has_family) throw ConfigError("geometry: give either family or atoms, not both");
        ojson wrap;
        wrap["atoms"] = o.at("atoms");
        g.atoms = arrangement_from_json(wrap.dump());
    } else if (has_family) {
        TransformationParam p;
        p.family = family_from_name(o.at("family").get<std::string>());
        p.value = o.get<double>("value", 0.0);
        p.scale_um = o.get<double>("scale_um", 8.0);
        g.param = p;
    } else {
        throw ConfigError("geometry: either family or atoms is required");
    }
    o.finish();
    return g;
}

NoiseParams parse_noise(const json& j) {
    StrictObject o(j, "noise");
    NoiseParams n;
    n.gamma_phi = o.get<double>("gamma_phi_per_us", n.gamma_phi);
    n.eps_prep = o.get<double>("eps_prep", n.eps_prep);
    n.eps_det_0to1 = o.get<double>("eps_det_0to1", n.eps_det_0to1);
    n.eps_det_1to0 = o.get<double>("eps_det_1to0", n.eps_det_1to0);
    n.n_shots = o.get<long>("n_shots", n.n_shots);
    n.rng_seed = o.get<uint64_t>("rng_seed", n.rng_seed);
    o.finish();
    try {
        n.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("noise: ") + e.what());
    }
    return n;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    StrictObject o(j, "config");
    ExperimentConfig cfg;
    cfg.preset = o.get<std::string>("preset", "");
    cfg.geometry = parse_geometry(o.at("geometry"));

    if (o.has("drive")) {
        StrictObject d(j.at("drive"), "drive");
        cfg.drive.omega_mhz = d.get<double>("omega_mhz", cfg.drive.omega_mhz);
        cfg.drive.c6 = d.get_opt<double>("c6_rad_um6_per_us");
        cfg.drive.r_b_um = d.get_opt<double>("r_b_um");
        cfg.drive.detuning_mhz = d.get<double>("detuning_mhz", 0.0);
        d.finish();
    }
    cfg.drive.resolve();  // validates

    if (o.has("model")) cfg.model = model_from_name(o.at("model").get<std::string>());

    if (o.has("noise") && !j.at("noise").is_null()) cfg.noise = parse_noise(j.at("noise"));

    if (o.has("grid")) {
        StrictObject g(j.at("grid"), "grid");
        cfg.grid.t_max = g.get<double>("t_max_us", cfg.grid.t_max);
        cfg.grid.dt = g.get<double>("dt_us", cfg.grid.dt);
        g.finish();
        try {
            cfg.grid.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("grid: ") + e.what());
        }
    }

    if (o.has("analysis")) {
        StrictObject a(j.at("analysis"), "analysis");
        if (a.has("window")) {
            const auto name = j.at("analysis").at("window").get<std::string>();
            if (name != "auto") cfg.analysis.window = window_from_name(name, "analysis.window");
        }
        cfg.analysis.zero_pad_factor = a.get<int>("zero_pad_factor", cfg.analysis.zero_pad_factor);
        cfg.analysis.min_prominence = a.get<double>("min_prominence", cfg.analysis.min_prominence);
        cfg.analysis.tol_frac = a.get<double>("tol_frac", cfg.analysis.tol_frac);
        cfg.analysis.eps_bright = a.get<double>("eps_bright", cfg.analysis.eps_bright);
        a.finish();
        if (cfg.analysis.zero_pad_factor < 1)
            throw ConfigError("analysis.zero_pad_factor: must be >= 1");
    }

    if (o.has("output")) {
        StrictObject out(j.at("output"), "output");
        cfg.output.directory = out.get<std::string>("directory", "");
        if (out.has("formats")) {
            cfg.output.csv = cfg.output.json = cfg.output.svg = false;
            for (const auto& f : j.at("output").at("formats")) {
                const auto name = f.get<std::string>();
                if (name == "csv") cfg.output.csv = true;
                else if (name == "json") cfg.output.json = true;
                else if (name == "svg") cfg.output.svg = true;
                else throw ConfigError("output.formats: unknown format '" + name + "'");
            }
        }
        out.finish();
    }

    if (o.has("sweep")) {
        StrictObject s(j.at("sweep"), "sweep");
        cfg.sweep.n_steps = s.get<int>("n_steps", cfg.sweep.n_steps);
        cfg.sweep.param_min = s.get_opt<double>("param_min");
        cfg.sweep.param_max = s.get_opt<double>("param_max");
        s.finish();
    }

    o.finish();
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    ojson j;
    if (!cfg.preset.empty()) j["preset"] = cfg.preset;
    ojson geom;
    if (cfg.geometry.param) {
        geom["family"] = family_name(cfg.geometry.param->family);
        geom["value"] = cfg.geometry.param->value;
        geom["scale_um"] = cfg.geometry.param->scale_um;
    } else if (cfg.geometry.atoms) {
        geom["atoms"] = ojson::array();
        for (int i = 0; i < cfg.geometry.atoms->size(); ++i) {
            const auto& p = cfg.geometry.atoms->positions[i];
            geom["atoms"].push_back({{"label", i + 1}, {"xyz_um", {p.x(), p.y(), p.z()}}});
        }
    }
    j["geometry"] = geom;

    const DriveParams d = cfg.drive.resolve();
    j["drive"] = {{"omega_mhz", cfg.drive.omega_mhz},
                  {"c6_rad_um6_per_us", d.c6},
                  {"r_b_um", d.blockade_radius()},
                  {"detuning_mhz", cfg.drive.detuning_mhz}};
    j["model"] = model_name(cfg.model);
    if (cfg.noise) {
        j["noise"] = {{"gamma_phi_per_us", cfg.noise->gamma_phi},
                      {"eps_prep", cfg.noise->eps_prep},
                      {"eps_det_0to1", cfg.noise->eps_det_0to1},
                      {"eps_det_1to0", cfg.noise->eps_det_1to0},
                      {"n_shots", cfg.noise->n_shots},
                      {"rng_seed", cfg.noise->rng_seed}};
    } else {
        j["noise"] = nullptr;
    }
    j["grid"] = {{"t_max_us", cfg.grid.t_max}, {"dt_us", cfg.grid.dt}};
    j["analysis"] = {{"window", cfg.analysis.window
                                    ? (*cfg.analysis.window == WindowKind::hann ? "hann" : "rect")
                                    : (cfg.noise ? "hann" : "rect")},
                     {"zero_pad_factor", cfg.analysis.zero_pad_factor},
                     {"min_prominence", cfg.analysis.min_prominence},
                     {"tol_frac", cfg.analysis.tol_frac},
                     {"eps_bright", cfg.analysis.eps_bright}};
    std::vector<std::string> formats;
    if (cfg.output.csv) formats.push_back("csv");
    if (cfg.output.json) formats.push_back("json");
    if (cfg.output.svg) formats.push_back("svg");
    j["output"] = {{"directory", cfg.output.resolve_directory()}, {"formats", formats}};
    j["sweep"] = ojson{{"n_steps", cfg.sweep.n_steps}};
    if (cfg.sweep.param_min) j["sweep"]["param_min"] = *cfg.sweep.param_min;
    if (cfg.sweep.param_max) j["sweep"]["param_max"] = *cfg.sweep.param_max;
    return j.dump(2) + "\n";
}

uint64_t config_hash(const ExperimentConfig& cfg) {
    // FNV-1a over the canonical echo, output directory excluded so a run
    // is identified by its physics, not its destination
    ExperimentConfig c = cfg;
    c.output.directory = "-";
    const std::string dump = config_to_json(c);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

ExperimentConfig base_preset(TransformationFamily family, double value, double scale,
                             double omega_mhz, ModelKind model) {
    ExperimentConfig cfg;
    cfg.geometry.param = TransformationParam{family, value, scale};
    cfg.drive.omega_mhz = omega_mhz;
    cfg.model = model;
    // Hann plus a low prominence floor keeps every catalogued line of the
    // ideal figures above the window leakage (rect sidelobes sit at 5-7%
    // of the peak power, masking the weakest star_4 line).
    cfg.analysis.window = WindowKind::hann;
    cfg.analysis.min_prominence = 0.01;
    return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"triangle-60", "triangle-90",  "triangle-180",    "s4",
            "k4",          "c4",           "k4e",             "hexagon-z0",
            "hexagon-z34", "hexagon-z32",  "trios-decoupled", "sweep-bend",
            "sweep-star-to-tetra", "sweep-tetra-to-square", "sweep-square-to-diamond",
            "sweep-hexagon"};
}

ExperimentConfig preset_config(const std::string& name) {
    using TF = TransformationFamily;
    ExperimentConfig cfg;
    if (name == "triangle-60") {
        cfg = base_preset(TF::three_atom_bend, 60.0, 8.0, 1.0, ModelKind::pxp);
    } else if (name == "triangle-90") {
        cfg = base_preset(TF::three_atom_bend, 90.0, 8.0, 1.0, ModelKind::full);
    } else if (name == "triangle-180") {
        cfg = base_preset(TF::three_atom_bend, 180.0, 8.0, 1.0, ModelKind::truncated);
    } else if (name == "s4") {
        cfg = base_preset(TF::star_to_tetrahedron, 0.0, 8.0, 1.0, ModelKind::pxp);
    } else if (name == "k4") {
        cfg = base_preset(TF::star_to_tetrahedron, 1.0, 8.0, 1.0, ModelKind::pxp);
    } else if (name == "c4") {
        cfg = base_preset(TF::tetra_to_square, 1.0, 8.0, 1.0, ModelKind::pxp);
    } else if (name == "k4e") {
        cfg = base_preset(TF::square_to_diamond, 1.0, 8.0, 1.0, ModelKind::pxp);
    } else if (name == "hexagon-z0" || name == "hexagon-z34" || name == "hexagon-z32") {
        const double z = name == "hexagon-z0" ? 0.0 : (name == "hexagon-z34" ? 0.75 : 1.5);
        cfg = base_preset(TF::hexagon_to_antiprism, z, 8.0, 0.8, ModelKind::full);
        // separates the four physical bright states (|A|^2 >= 2.7e-3 at
        // z = 3d/4) from weak admixtures (<= 8.2e-4)
        cfg.analysis.eps_bright = 1e-3;
    } else if (name == "trios-decoupled") {
        cfg = base_preset(TF::hexagon_to_antiprism, 1.5, 8.0, 0.8, ModelKind::pxp);
    } else if (name == "sweep-bend") {
        cfg = base_preset(TF::three_atom_bend, 60.0, 8.0, 1.0, ModelKind::full);
    } else if (name == "sweep-star-to-tetra") {
        cfg = base_preset(TF::star_to_tetrahedron, 0.0, 8.0, 1.0, ModelKind::full);
    } else if (name == "sweep-tetra-to-square") {
        cfg = base_preset(TF::tetra_to_square, 0.0, 8.0, 1.0, ModelKind::full);
    } else if (name == "sweep-square-to-diamond") {
        cfg = base_preset(TF::square_to_diamond, 0.0, 8.0, 1.0, ModelKind::full);
    } else if (name == "sweep-hexagon") {
        cfg = base_preset(TF::hexagon_to_antiprism, 0.0, 8.0, 0.8, ModelKind::full);
        cfg.analysis.eps_bright = 1e-3;
    } else {
        throw ConfigError("unknown preset '" + name + "'; available: " + [] {
            std::string all;
            for (const auto& n : preset_names()) all += n + " ";
            return all;
        }());
    }
    cfg.preset = name;
    return cfg;
}

}  // namespace rydsim
