#include "oppsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace oppsim::config {

const char* protocol_name(Protocol protocol) {
    return protocol == Protocol::Epidemic ? "epidemic" : "prophet";
}

std::optional<Protocol> protocol_from_name(const std::string& name) {
    if (name == "epidemic") {
        return Protocol::Epidemic;
    }
    if (name == "prophet") {
        return Protocol::Prophet;
    }
    return std::nullopt;
}

bool ScenarioConfig::operator==(const ScenarioConfig& other) const {
    return name == other.name && duration_s == other.duration_s &&
           step_s == other.step_s && seed == other.seed && ttl_s == other.ttl_s &&
           router == other.router && map_file == other.map_file &&
           snap_epsilon == other.snap_epsilon && world_bounds == other.world_bounds &&
           zones == other.zones && bluetooth == other.bluetooth &&
           highspeed == other.highspeed && prophet == other.prophet &&
           groups == other.groups;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

double parse_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    double value = 0.0;
    auto [next, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || next != t.data() + t.size()) {
        throw ConfigError(what + ": expected a number, got '" + t + "'");
    }
    return value;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            out.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    out.push_back(trim(current));
    return out;
}

}  // namespace

std::int64_t parse_size(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) {
        throw ConfigError("empty size value");
    }
    double factor = 1.0;
    const char suffix = t.back();
    if (suffix == 'k' || suffix == 'K') {
        factor = 1024.0;
        t.pop_back();
    } else if (suffix == 'M') {
        factor = 1024.0 * 1024.0;
        t.pop_back();
    } else if (suffix == 'G') {
        factor = 1024.0 * 1024.0 * 1024.0;
        t.pop_back();
    }
    const double value = parse_double(t, "size");
    if (value < 0) {
        throw ConfigError("size must be non-negative: '" + text + "'");
    }
    return static_cast<std::int64_t>(std::llround(value * factor));
}

double parse_time(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) {
        throw ConfigError("empty time value");
    }
    double factor = 1.0;
    const char suffix = t.back();
    if (suffix == 's') {
        t.pop_back();
    } else if (suffix == 'm') {
        factor = 60.0;
        t.pop_back();
    } else if (suffix == 'h') {
        factor = 3600.0;
        t.pop_back();
    } else if (suffix == 'd') {
        factor = 86400.0;
        t.pop_back();
    }
    return parse_double(t, "time") * factor;
}

namespace {

// Raw key/value store from one pass over the file, with line numbers for
// error reporting and consumption tracking for unknown-key detection.
struct RawConfig {
    struct Entry {
        std::string value;
        int line = 0;
        bool used = false;
    };
    std::map<std::string, Entry> entries;
    std::string origin;

    [[noreturn]] void fail(const std::string& message) const {
        throw ConfigError(origin + ": " + message);
    }

    [[noreturn]] void fail_key(const std::string& key, const std::string& message) const {
        auto it = entries.find(key);
        if (it != entries.end()) {
            throw ConfigError(origin + ":" + std::to_string(it->second.line) + ": " +
                              key + ": " + message);
        }
        throw ConfigError(origin + ": " + key + ": " + message);
    }

    bool has(const std::string& key) const { return entries.count(key) > 0; }

    std::optional<std::string> take(const std::string& key) {
        auto it = entries.find(key);
        if (it == entries.end()) {
            return std::nullopt;
        }
        it->second.used = true;
        return it->second.value;
    }

    std::string require(const std::string& key) {
        auto value = take(key);
        if (!value) {
            fail_key(key, "missing required key");
        }
        return *value;
    }
};

RawConfig scan_lines(const std::string& text, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'Section.key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.find('.') == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": key '" + key + "' is missing its section prefix");
        }
        if (raw.entries.count(key) > 0) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": duplicate key '" + key + "'");
        }
        raw.entries[key] = RawConfig::Entry{value, line_no, false};
    }
    return raw;
}

geo::MapLayer parse_layer(const std::string& value, RawConfig& raw,
                          const std::string& key) {
    if (value == "all") {
        return geo::MapLayer::AllRoads;
    }
    if (value == "inside") {
        return geo::MapLayer::InsideZones;
    }
    if (value == "outside") {
        return geo::MapLayer::OutsideZones;
    }
    raw.fail_key(key, "expected all|inside|outside, got '" + value + "'");
}

GroupConfig parse_group(RawConfig& raw, int index) {
    const std::string prefix = "Group" + std::to_string(index) + ".";
    GroupConfig group;
    group.label = raw.take(prefix + "label").value_or("group" + std::to_string(index));

    const std::string count_key = prefix + "nodeCount";
    group.count = static_cast<int>(parse_double(raw.require(count_key), count_key));
    if (group.count < 0) {
        raw.fail_key(count_key, "node count must be >= 0");
    }

    const std::string inside = raw.require(prefix + "insideZones");
    if (inside != "true" && inside != "false") {
        raw.fail_key(prefix + "insideZones", "expected true|false, got '" + inside + "'");
    }
    group.inside_zones = inside == "true";

    group.buffer_bytes = parse_size(raw.require(prefix + "bufferSize"));
    if (group.buffer_bytes <= 0) {
        raw.fail_key(prefix + "bufferSize", "buffer size must be > 0");
    }

    for (const std::string& name : split_list(raw.require(prefix + "interfaces"))) {
        if (name == "Bluetooth") {
            group.interfaces.push_back(net::InterfaceKind::Bluetooth);
        } else if (name == "Highspeed") {
            group.interfaces.push_back(net::InterfaceKind::Highspeed);
        } else {
            raw.fail_key(prefix + "interfaces",
                         "unknown interface '" + name + "'");
        }
    }
    if (group.interfaces.empty()) {
        raw.fail_key(prefix + "interfaces", "at least one interface is required");
    }

    const std::string model = raw.require(prefix + "movementModel");
    if (model == "ShortestMapBasedMovement") {
        group.mobility.model = mobility::MobilityModel::ShortestMapBased;
    } else if (model == "RandomWaypoint") {
        group.mobility.model = mobility::MobilityModel::RandomWaypoint;
    } else {
        raw.fail_key(prefix + "movementModel", "unknown model '" + model + "'");
    }

    const std::string speed_key = prefix + "speed";
    const auto speeds = split_list(raw.require(speed_key));
    if (speeds.size() != 2) {
        raw.fail_key(speed_key, "expected 'min, max'");
    }
    group.mobility.speed_min = parse_double(speeds[0], speed_key);
    group.mobility.speed_max = parse_double(speeds[1], speed_key);
    if (group.mobility.speed_min < 0 ||
        group.mobility.speed_min > group.mobility.speed_max) {
        raw.fail_key(speed_key, "requires 0 <= min <= max");
    }

    const std::string wait_key = prefix + "waitTime";
    const auto waits = split_list(raw.require(wait_key));
    if (waits.size() != 2) {
        raw.fail_key(wait_key, "expected 'min, max'");
    }
    group.mobility.wait_min = parse_time(waits[0]);
    group.mobility.wait_max = parse_time(waits[1]);
    if (group.mobility.wait_min < 0 ||
        group.mobility.wait_min > group.mobility.wait_max) {
        raw.fail_key(wait_key, "requires 0 <= min <= max");
    }

    if (auto ok_map = raw.take(prefix + "okMap")) {
        group.mobility.layer = parse_layer(*ok_map, raw, prefix + "okMap");
    } else {
        group.mobility.layer = group.inside_zones ? geo::MapLayer::InsideZones
                                                  : geo::MapLayer::OutsideZones;
    }

    if (auto detector = raw.take(prefix + "radiationDetector")) {
        if (*detector != "true" && *detector != "false") {
            raw.fail_key(prefix + "radiationDetector",
                         "expected true|false, got '" + *detector + "'");
        }
        group.detection_capable = *detector == "true";
    }
    return group;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
    RawConfig raw = scan_lines(text, origin);
    ScenarioConfig cfg;

    cfg.name = raw.take("Scenario.name").value_or("scenario");
    cfg.duration_s = parse_time(raw.require("Scenario.duration"));
    if (auto step = raw.take("Scenario.step")) {
        cfg.step_s = parse_time(*step);
    }
    if (auto seed = raw.take("Scenario.seed")) {
        cfg.seed = static_cast<std::uint64_t>(parse_double(*seed, "Scenario.seed"));
    }
    if (auto ttl = raw.take("Scenario.ttl")) {
        cfg.ttl_s = parse_time(*ttl);
    }
    if (auto router = raw.take("Scenario.router")) {
        auto protocol = protocol_from_name(*router);
        if (!protocol) {
            raw.fail_key("Scenario.router",
                         "expected epidemic|prophet, got '" + *router + "'");
        }
        cfg.router = *protocol;
    }
    cfg.map_file = raw.take("Scenario.mapFile").value_or("");
    if (auto eps = raw.take("Scenario.snapEpsilon")) {
        cfg.snap_epsilon = parse_double(*eps, "Scenario.snapEpsilon");
    }
    if (auto bounds = raw.take("Scenario.worldBounds")) {
        const auto parts = split_list(*bounds);
        if (parts.size() != 4) {
            raw.fail_key("Scenario.worldBounds",
                         "expected 'min_x, min_y, max_x, max_y'");
        }
        cfg.world_bounds = geo::Rect{
            parse_double(parts[0], "Scenario.worldBounds"),
            parse_double(parts[1], "Scenario.worldBounds"),
            parse_double(parts[2], "Scenario.worldBounds"),
            parse_double(parts[3], "Scenario.worldBounds")};
    }

    {
        const auto center = split_list(raw.require("Zones.center"));
        if (center.size() != 2) {
            raw.fail_key("Zones.center", "expected 'x, y'");
        }
        cfg.zones.center = geo::Point{parse_double(center[0], "Zones.center"),
                                      parse_double(center[1], "Zones.center")};
        const auto radii = split_list(raw.require("Zones.radii"));
        if (radii.size() != 6) {
            raw.fail_key("Zones.radii", "expected six ascending radii");
        }
        for (const std::string& r : radii) {
            cfg.zones.radii.push_back(parse_double(r, "Zones.radii"));
        }
    }

    if (auto v = raw.take("Bluetooth.range")) {
        cfg.bluetooth.range_m = parse_double(*v, "Bluetooth.range");
    }
    if (auto v = raw.take("Bluetooth.bitrate")) {
        cfg.bluetooth.bitrate_bps = static_cast<double>(parse_size(*v));
    }
    if (auto v = raw.take("Highspeed.range")) {
        cfg.highspeed.range_m = parse_double(*v, "Highspeed.range");
    }
    if (auto v = raw.take("Highspeed.bitrate")) {
        cfg.highspeed.bitrate_bps = static_cast<double>(parse_size(*v));
    }

    if (auto v = raw.take("Prophet.pInit")) {
        cfg.prophet.p_init = parse_double(*v, "Prophet.pInit");
    }
    if (auto v = raw.take("Prophet.beta")) {
        cfg.prophet.beta = parse_double(*v, "Prophet.beta");
    }
    if (auto v = raw.take("Prophet.gamma")) {
        cfg.prophet.gamma = parse_double(*v, "Prophet.gamma");
    }
    if (auto v = raw.take("Prophet.agingUnit")) {
        cfg.prophet.aging_unit = parse_time(*v);
    }

    for (int index = 1; raw.has("Group" + std::to_string(index) + ".nodeCount") ||
                        raw.has("Group" + std::to_string(index) + ".label");
         ++index) {
        cfg.groups.push_back(parse_group(raw, index));
    }

    for (const auto& [key, entry] : raw.entries) {
        if (!entry.used) {
            throw ConfigError(origin + ":" + std::to_string(entry.line) +
                              ": unknown key '" + key + "'");
        }
    }

    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream content;
    content << file.rdbuf();
    return parse_config(content.str(), path);
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.duration_s <= 0) {
        throw ConfigError("Scenario.duration: must be > 0");
    }
    if (cfg.step_s <= 0) {
        throw ConfigError("Scenario.step: must be > 0");
    }
    if (cfg.ttl_s <= 0) {
        throw ConfigError("Scenario.ttl: must be > 0");
    }
    if (cfg.zones.radii.size() != 6) {
        throw ConfigError("Zones.radii: exactly six radii are required");
    }
    double prev = 0.0;
    for (double r : cfg.zones.radii) {
        if (r <= prev) {
            throw ConfigError("Zones.radii: radii must be positive and strictly ascending");
        }
        prev = r;
    }
    if (cfg.bluetooth.range_m <= 0 || cfg.highspeed.range_m <= 0 ||
        cfg.bluetooth.bitrate_bps <= 0 || cfg.highspeed.bitrate_bps <= 0) {
        throw ConfigError("interface ranges and bitrates must be > 0");
    }
    if (cfg.prophet.p_init <= 0 || cfg.prophet.p_init > 1) {
        throw ConfigError("Prophet.pInit: must be in (0,1]");
    }
    if (cfg.prophet.beta < 0 || cfg.prophet.beta > 1) {
        throw ConfigError("Prophet.beta: must be in [0,1]");
    }
    if (cfg.prophet.gamma <= 0 || cfg.prophet.gamma > 1) {
        throw ConfigError("Prophet.gamma: must be in (0,1]");
    }
    if (cfg.prophet.aging_unit <= 0) {
        throw ConfigError("Prophet.agingUnit: must be > 0");
    }
    if (cfg.groups.empty()) {
        throw ConfigError("at least one group is required");
    }
    int capable_count = 0;
    bool any_capable_group = false;
    for (const GroupConfig& group : cfg.groups) {
        if (group.detection_capable) {
            any_capable_group = true;
            capable_count += group.count;
        }
    }
    if (any_capable_group && capable_count < 2) {
        throw ConfigError(
            "detection-capable groups must contribute at least two nodes in total");
    }
}

namespace {

std::string format_number(double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, end);
}

const char* layer_token(geo::MapLayer layer) {
    switch (layer) {
    case geo::MapLayer::AllRoads:
        return "all";
    case geo::MapLayer::InsideZones:
        return "inside";
    case geo::MapLayer::OutsideZones:
        return "outside";
    }
    return "all";
}

}  // namespace

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "Scenario.name = " << cfg.name << "\n";
    out << "Scenario.duration = " << format_number(cfg.duration_s) << "\n";
    out << "Scenario.step = " << format_number(cfg.step_s) << "\n";
    out << "Scenario.seed = " << cfg.seed << "\n";
    out << "Scenario.ttl = " << format_number(cfg.ttl_s) << "\n";
    out << "Scenario.router = " << protocol_name(cfg.router) << "\n";
    if (!cfg.map_file.empty()) {
        out << "Scenario.mapFile = " << cfg.map_file << "\n";
    }
    out << "Scenario.snapEpsilon = " << format_number(cfg.snap_epsilon) << "\n";
    if (cfg.world_bounds) {
        out << "Scenario.worldBounds = " << format_number(cfg.world_bounds->min_x)
            << ", " << format_number(cfg.world_bounds->min_y) << ", "
            << format_number(cfg.world_bounds->max_x) << ", "
            << format_number(cfg.world_bounds->max_y) << "\n";
    }
    out << "Zones.center = " << format_number(cfg.zones.center.x) << ", "
        << format_number(cfg.zones.center.y) << "\n";
    out << "Zones.radii = ";
    for (std::size_t i = 0; i < cfg.zones.radii.size(); ++i) {
        if (i > 0) {
            out << ", ";
        }
        out << format_number(cfg.zones.radii[i]);
    }
    out << "\n";
    out << "Bluetooth.range = " << format_number(cfg.bluetooth.range_m) << "\n";
    out << "Bluetooth.bitrate = " << format_number(cfg.bluetooth.bitrate_bps) << "\n";
    out << "Highspeed.range = " << format_number(cfg.highspeed.range_m) << "\n";
    out << "Highspeed.bitrate = " << format_number(cfg.highspeed.bitrate_bps) << "\n";
    out << "Prophet.pInit = " << format_number(cfg.prophet.p_init) << "\n";
    out << "Prophet.beta = " << format_number(cfg.prophet.beta) << "\n";
    out << "Prophet.gamma = " << format_number(cfg.prophet.gamma) << "\n";
    out << "Prophet.agingUnit = " << format_number(cfg.prophet.aging_unit) << "\n";

    for (std::size_t i = 0; i < cfg.groups.size(); ++i) {
        const GroupConfig& group = cfg.groups[i];
        const std::string prefix = "Group" + std::to_string(i + 1) + ".";
        out << prefix << "label = " << group.label << "\n";
        out << prefix << "nodeCount = " << group.count << "\n";
        out << prefix << "insideZones = " << (group.inside_zones ? "true" : "false")
            << "\n";
        out << prefix << "bufferSize = " << group.buffer_bytes << "\n";
        out << prefix << "interfaces = ";
        for (std::size_t k = 0; k < group.interfaces.size(); ++k) {
            if (k > 0) {
                out << ", ";
            }
            out << net::interface_kind_name(group.interfaces[k]);
        }
        out << "\n";
        out << prefix << "movementModel = "
            << (group.mobility.model == mobility::MobilityModel::ShortestMapBased
                    ? "ShortestMapBasedMovement"
                    : "RandomWaypoint")
            << "\n";
        out << prefix << "speed = " << format_number(group.mobility.speed_min) << ", "
            << format_number(group.mobility.speed_max) << "\n";
        out << prefix << "waitTime = " << format_number(group.mobility.wait_min)
            << ", " << format_number(group.mobility.wait_max) << "\n";
        out << prefix << "okMap = " << layer_token(group.mobility.layer) << "\n";
        out << prefix << "radiationDetector = "
            << (group.detection_capable ? "true" : "false") << "\n";
    }
    return out.str();
}

}  // namespace oppsim::config
