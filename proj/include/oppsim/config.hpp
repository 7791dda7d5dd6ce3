#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oppsim/geo.hpp"
#include "oppsim/mobility.hpp"
#include "oppsim/net.hpp"
#include "oppsim/routing.hpp"

namespace oppsim::config {

enum class Protocol {
    Epidemic,
    Prophet,
};

const char* protocol_name(Protocol protocol);
std::optional<Protocol> protocol_from_name(const std::string& name);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GroupConfig {
    std::string label;
    int count = 0;
    bool inside_zones = false;
    std::int64_t buffer_bytes = 0;
    std::vector<net::InterfaceKind> interfaces;
    mobility::MobilityConfig mobility;  // layer doubles as the okMap choice
    bool detection_capable = false;

    bool operator==(const GroupConfig& other) const = default;
};

struct ScenarioConfig {
    std::string name = "scenario";
    double duration_s = 0.0;
    double step_s = 1.0;
    std::uint64_t seed = 1;
    double ttl_s = 18000.0;
    Protocol router = Protocol::Epidemic;
    std::string map_file;                    // empty = bundled synthetic map
    double snap_epsilon = 0.1;
    std::optional<geo::Rect> world_bounds;   // default: AllRoads bbox +5%
    geo::ZoneModel zones;
    net::InterfaceSpec bluetooth{net::InterfaceKind::Bluetooth, 10.0, 250000.0};
    net::InterfaceSpec highspeed{net::InterfaceKind::Highspeed, 100.0, 1250000.0};
    routing::ProphetParams prophet;
    std::vector<GroupConfig> groups;

    // Resolved map content; not part of the serialized form.
    std::string map_wkt_text;

    bool operator==(const ScenarioConfig& other) const;
};

// `5M` -> 5*1024*1024 bytes, `256k` -> 262144; bare numbers are bytes.
std::int64_t parse_size(const std::string& text);

// `5h` -> 18000 s; suffixes s/m/h/d, bare numbers are seconds.
double parse_time(const std::string& text);

// Line-oriented `Section.key = value` format with `#` comments.
ScenarioConfig parse_config(const std::string& text, const std::string& origin);
ScenarioConfig load_config(const std::string& path);

// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

void validate(const ScenarioConfig& cfg);

}  // namespace oppsim::config
