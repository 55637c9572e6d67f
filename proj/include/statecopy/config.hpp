#pragma once

// Atomic-system configuration files (JSON). The schema is documented in
// docs/config-schema.md.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "statecopy/emission.hpp"

namespace statecopy {

inline constexpr int kConfigSchemaVersion = 1;

/// The configuration is unreadable, malformed, or describes an invalid system.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SystemConfig {
    std::string name;
    AtomicSystem system;
    /// Photon polarization basis; defaults to {sigma-, pi, sigma+}.
    std::vector<PolarizationMode> modes;
    /// Explicit photon-mode -> excited-level map; ModeMap::matching if absent.
    std::optional<ModeMap> mode_map;

    ModeMap effective_mode_map() const;
    nlohmann::json to_json() const;
};

SystemConfig parse_system_config(const nlohmann::json& doc);
SystemConfig parse_system_config(const std::string& text);
SystemConfig load_system_config(const std::filesystem::path& path);

/// Built-in systems: "hydrogen-n2" (1s; 2s, 2p m=-1,0,+1), "p-manifold"
/// (1s; 2p m=-1,0,+1), "pi-only" (1s; 2p m=0), "s-to-s" (1s; 2s),
/// "sigma-pair" (1s; 2p m=+1,-1 with a 2-mode sigma+/sigma- basis).
SystemConfig preset_system(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace statecopy
