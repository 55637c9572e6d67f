#include "statecopy/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace statecopy {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

int require_int(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number_integer()) throw ConfigError(where + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_string()) throw ConfigError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

double optional_number(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

AtomicLevel parse_level(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": level must be an object");
    try {
        return AtomicLevel(require_string(j, "label", where), require_int(j, "l", where), require_int(j, "m", where),
                           optional_number(j, "energy", 0.0, where));
    } catch (const ValidationError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

json level_json(const AtomicLevel& l) {
    return {{"label", l.label()}, {"l", l.l()}, {"m", l.m()}, {"energy", l.energy()}};
}

const char* kHydrogenN2 = R"({
  "schema_version": 1,
  "name": "hydrogen-n2",
  "ground": {"label": "1s", "l": 0, "m": 0, "energy": 0.0},
  "excited": [
    {"label": "2s",   "l": 0, "m": 0,  "energy": 0.75},
    {"label": "2p-1", "l": 1, "m": -1, "energy": 0.75},
    {"label": "2p0",  "l": 1, "m": 0,  "energy": 0.75},
    {"label": "2p+1", "l": 1, "m": 1,  "energy": 0.75}
  ]
})";

const char* kPManifold = R"({
  "schema_version": 1,
  "name": "p-manifold",
  "ground": {"label": "1s", "l": 0, "m": 0, "energy": 0.0},
  "excited": [
    {"label": "2p-1", "l": 1, "m": -1, "energy": 0.75},
    {"label": "2p0",  "l": 1, "m": 0,  "energy": 0.75},
    {"label": "2p+1", "l": 1, "m": 1,  "energy": 0.75}
  ],
  "radial_factors": {"2p-1": 1.0, "2p0": 1.0, "2p+1": 1.0},
  "polarization_modes": ["sigma-", "pi", "sigma+"],
  "mode_map": {"sigma-": "2p-1", "pi": "2p0", "sigma+": "2p+1"}
})";

const char* kPiOnly = R"({
  "schema_version": 1,
  "name": "pi-only",
  "ground": {"label": "1s", "l": 0, "m": 0, "energy": 0.0},
  "excited": [
    {"label": "2p0", "l": 1, "m": 0, "energy": 0.75}
  ],
  "mode_map": {"pi": "2p0"}
})";

const char* kSToS = R"({
  "schema_version": 1,
  "name": "s-to-s",
  "ground": {"label": "1s", "l": 0, "m": 0, "energy": 0.0},
  "excited": [
    {"label": "2s", "l": 0, "m": 0, "energy": 0.75}
  ]
})";

const char* kSigmaPair = R"({
  "schema_version": 1,
  "name": "sigma-pair",
  "ground": {"label": "1s", "l": 0, "m": 0, "energy": 0.0},
  "excited": [
    {"label": "2p+1", "l": 1, "m": 1,  "energy": 0.75},
    {"label": "2p-1", "l": 1, "m": -1, "energy": 0.75}
  ],
  "polarization_modes": ["sigma+", "sigma-"],
  "mode_map": {"sigma+": "2p+1", "sigma-": "2p-1"}
})";

}  // namespace

ModeMap SystemConfig::effective_mode_map() const {
    return mode_map ? *mode_map : ModeMap::matching(system, modes);
}

json SystemConfig::to_json() const {
    json excited = json::array();
    json radial = json::object();
    for (const auto& e : system.excited()) {
        excited.push_back(level_json(e));
        radial[e.label()] = system.radial_factor(e.label());
    }
    json mode_labels = json::array();
    for (const auto& m : modes) mode_labels.push_back(m.label());
    json out = {{"schema_version", kConfigSchemaVersion},
                {"name", name},
                {"ground", level_json(system.ground())},
                {"excited", excited},
                {"radial_factors", radial},
                {"polarization_modes", mode_labels}};
    const ModeMap map = effective_mode_map();
    json mm = json::object();
    for (const auto& [k, label] : map.targets) mm[map.modes[k].label()] = label;
    out["mode_map"] = mm;
    return out;
}

SystemConfig parse_system_config(const json& doc) {
    const std::string where = "config";
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    if (require_int(doc, "schema_version", where) != kConfigSchemaVersion)
        throw ConfigError("config: unsupported schema_version (expected 1)");
    std::string name = doc.contains("name") ? require_string(doc, "name", where) : std::string("unnamed");

    AtomicLevel ground = parse_level(require(doc, "ground", where), "config.ground");
    const json& ex = require(doc, "excited", where);
    if (!ex.is_array()) throw ConfigError("config: 'excited' must be an array");
    std::vector<AtomicLevel> excited;
    for (std::size_t i = 0; i < ex.size(); ++i)
        excited.push_back(parse_level(ex[i], "config.excited[" + std::to_string(i) + "]"));

    std::map<std::string, double> radial;
    if (doc.contains("radial_factors")) {
        const json& r = doc.at("radial_factors");
        if (!r.is_object()) throw ConfigError("config: 'radial_factors' must be an object");
        for (const auto& [label, v] : r.items()) {
            if (!v.is_number()) throw ConfigError("config.radial_factors: '" + label + "' must be a number");
            radial[label] = v.get<double>();
        }
        if (radial.size() != excited.size())
            throw ConfigError("config.radial_factors: must list every excited level exactly once");
    }

    std::vector<PolarizationMode> modes;
    if (doc.contains("polarization_modes")) {
        const json& pm = doc.at("polarization_modes");
        if (!pm.is_array() || pm.empty()) throw ConfigError("config: 'polarization_modes' must be a non-empty array");
        std::set<std::string> seen;
        for (const auto& m : pm) {
            if (!m.is_string()) throw ConfigError("config.polarization_modes: entries must be strings");
            if (!seen.insert(m.get<std::string>()).second)
                throw ConfigError("config.polarization_modes: duplicate mode " + m.get<std::string>());
            try {
                modes.push_back(PolarizationMode::from_label(m.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("config.polarization_modes: ") + e.what());
            }
        }
    } else {
        modes = spherical_basis();
    }

    try {
        SystemConfig cfg{std::move(name), AtomicSystem(std::move(ground), std::move(excited), std::move(radial)),
                         std::move(modes), std::nullopt};
        if (doc.contains("mode_map")) {
            const json& mm = doc.at("mode_map");
            if (!mm.is_object()) throw ConfigError("config: 'mode_map' must be an object");
            ModeMap map{cfg.modes, {}};
            for (const auto& [mode_label, level] : mm.items()) {
                if (!level.is_string()) throw ConfigError("config.mode_map: values must be level labels");
                auto it = std::find_if(cfg.modes.begin(), cfg.modes.end(),
                                       [&](const auto& m) { return m.label() == mode_label; });
                if (it == cfg.modes.end())
                    throw ConfigError("config.mode_map: '" + mode_label + "' is not a configured polarization mode");
                map.targets[static_cast<std::size_t>(it - cfg.modes.begin())] = level.get<std::string>();
            }
            map.validate(cfg.system);
            cfg.mode_map = std::move(map);
        }
        return cfg;
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

SystemConfig parse_system_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_system_config(doc);
}

SystemConfig load_system_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_system_config(ss.str());
}

SystemConfig preset_system(const std::string& name) {
    if (name == "hydrogen-n2") return parse_system_config(std::string(kHydrogenN2));
    if (name == "p-manifold") return parse_system_config(std::string(kPManifold));
    if (name == "pi-only") return parse_system_config(std::string(kPiOnly));
    if (name == "s-to-s") return parse_system_config(std::string(kSToS));
    if (name == "sigma-pair") return parse_system_config(std::string(kSigmaPair));
    throw ConfigError("unknown preset system '" + name + "'");
}

std::vector<std::string> preset_names() { return {"hydrogen-n2", "p-manifold", "pi-only", "s-to-s", "sigma-pair"}; }

}  // namespace statecopy
