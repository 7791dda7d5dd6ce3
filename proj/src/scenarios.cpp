#include "oppsim/scenarios.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oppsim::scenarios {

namespace {

// Map layout constants. The grid spans kCols x kRows intersections; the ring
// road orbits just outside the outermost zone radius.
constexpr int kCols = 27;
constexpr int kRows = 19;
constexpr double kSpacing = 120.0;
constexpr double kJitter = 18.0;
constexpr int kRingPoints = 44;
constexpr double kRingRadius = 1040.0;
constexpr double kCenterX = (kCols - 1) * kSpacing / 2.0;  // 1560
constexpr double kCenterY = (kRows - 1) * kSpacing / 2.0;  // 1080

// Small deterministic mixer for the street jitter.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double jitter_for(int col, int row, int axis) {
    const std::uint64_t h = mix((static_cast<std::uint64_t>(col) << 32) ^
                                (static_cast<std::uint64_t>(row) << 8) ^
                                static_cast<std::uint64_t>(axis));
    const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0,1)
    return (unit * 2.0 - 1.0) * kJitter;
}

geo::Point grid_point(int col, int row) {
    return geo::Point{col * kSpacing + jitter_for(col, row, 0),
                      row * kSpacing + jitter_for(col, row, 1)};
}

void append(std::string& out, double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    out.append(buf, end);
}

void append_point(std::string& out, const geo::Point& p, bool first) {
    if (!first) {
        out += ", ";
    }
    append(out, p.x);
    out.push_back(' ');
    append(out, p.y);
}

}  // namespace

std::string synthetic_map_wkt() {
    std::string out;

    // Horizontal streets, one linestring per row.
    for (int row = 0; row < kRows; ++row) {
        out += "LINESTRING (";
        for (int col = 0; col < kCols; ++col) {
            append_point(out, grid_point(col, row), col == 0);
        }
        out += ")\n";
    }
    // Vertical streets.
    for (int col = 0; col < kCols; ++col) {
        out += "LINESTRING (";
        for (int row = 0; row < kRows; ++row) {
            append_point(out, grid_point(col, row), row == 0);
        }
        out += ")\n";
    }

    // Ring road around the affected area, closed loop.
    std::vector<geo::Point> ring;
    for (int i = 0; i < kRingPoints; ++i) {
        const double angle = 2.0 * M_PI * i / kRingPoints;
        ring.push_back(geo::Point{kCenterX + kRingRadius * std::cos(angle),
                                  kCenterY + kRingRadius * std::sin(angle)});
    }
    out += "LINESTRING (";
    for (int i = 0; i < kRingPoints; ++i) {
        append_point(out, ring[static_cast<std::size_t>(i)], i == 0);
    }
    append_point(out, ring[0], false);
    out += ")\n";

    // Spokes tying the ring into the street grid.
    for (int i = 0; i < kRingPoints; i += 4) {
        const geo::Point& p = ring[static_cast<std::size_t>(i)];
        const int col = std::min(kCols - 1, std::max(0, static_cast<int>(
                                 std::lround(p.x / kSpacing))));
        const int row = std::min(kRows - 1, std::max(0, static_cast<int>(
                                 std::lround(p.y / kSpacing))));
        out += "LINESTRING (";
        append_point(out, p, true);
        append_point(out, grid_point(col, row), false);
        out += ")\n";
    }

    out += "POINT (";
    append(out, kCenterX);
    out.push_back(' ');
    append(out, kCenterY);
    out += ")\n";
    return out;
}

geo::ZoneModel synthetic_zones() {
    return geo::ZoneModel{geo::Point{kCenterX, kCenterY},
                          {130.0, 260.0, 430.0, 600.0, 780.0, 950.0}};
}

namespace {

struct GroupSpec {
    const char* label;
    bool inside;
    int count;
    const char* buffer;
    bool highspeed;     // responders and UAVs
    bool bluetooth;
    bool waypoint;      // UAVs only
    double speed_min, speed_max;
    double wait_min, wait_max;
    bool detector;
};

config::GroupConfig make_group(const GroupSpec& spec) {
    config::GroupConfig group;
    group.label = spec.label;
    group.count = spec.count;
    group.inside_zones = spec.inside;
    group.buffer_bytes = config::parse_size(spec.buffer);
    if (spec.bluetooth) {
        group.interfaces.push_back(net::InterfaceKind::Bluetooth);
    }
    if (spec.highspeed) {
        group.interfaces.push_back(net::InterfaceKind::Highspeed);
    }
    group.mobility.model = spec.waypoint ? mobility::MobilityModel::RandomWaypoint
                                         : mobility::MobilityModel::ShortestMapBased;
    group.mobility.speed_min = spec.speed_min;
    group.mobility.speed_max = spec.speed_max;
    group.mobility.wait_min = spec.wait_min;
    group.mobility.wait_max = spec.wait_max;
    group.mobility.layer = spec.inside ? geo::MapLayer::InsideZones
                                       : geo::MapLayer::OutsideZones;
    group.detection_capable = spec.detector;
    return group;
}

}  // namespace

config::ScenarioConfig phase_config(int phase) {
    config::ScenarioConfig cfg;
    cfg.name = "phase" + std::to_string(phase);
    cfg.step_s = 1.0;
    cfg.seed = 1;
    cfg.ttl_s = 18000.0;  // 5 hours
    cfg.zones = synthetic_zones();

    std::vector<GroupSpec> specs;
    switch (phase) {
    case 1:
        cfg.duration_s = 43200.0;  // 0-12 h
        specs = {
            {"pedestrians_in", true, 15, "256k", false, true, false, 0.9, 4.0, 60, 43200, false},
            {"pedestrians_out", false, 70, "256k", false, true, false, 0.5, 2.1, 30, 3600, false},
            {"vehicles_in", true, 5, "512k", false, true, false, 2.7, 13.2, 30, 300, false},
            {"vehicles_out", false, 30, "512k", false, true, false, 1.5, 7.7, 60, 300, false},
            {"responders_out", false, 5, "2M", true, true, false, 2.7, 13.2, 120, 600, true},
            {"uavs", true, 1, "5M", true, false, true, 10, 25, 10, 60, true},
        };
        break;
    case 2:
        cfg.duration_s = 129600.0;  // 12-48 h
        specs = {
            {"pedestrians_in", true, 2, "256k", false, true, false, 0.0, 3.5, 600, 43200, false},
            {"pedestrians_out", false, 50, "256k", false, true, false, 0.5, 2.1, 30, 3600, false},
            {"vehicles_in", true, 1, "512k", false, true, false, 2.7, 13.2, 30, 300, false},
            {"vehicles_out", false, 20, "512k", false, true, false, 1.5, 13.2, 60, 300, false},
            {"responders_out", false, 10, "2M", true, true, false, 2.7, 15, 120, 600, true},
            {"uavs", true, 2, "5M", true, false, true, 10, 25, 10, 60, true},
        };
        break;
    case 3:
        cfg.duration_s = 432000.0;  // 48 h - 7 d
        specs = {
            {"pedestrians_in", true, 7, "256k", false, true, false, 0.0, 3.5, 600, 432000, false},
            {"pedestrians_out", false, 40, "256k", false, true, false, 0.5, 2.1, 30, 3600, false},
            {"vehicles_in", true, 5, "512k", false, true, false, 2.7, 13.2, 30, 300, false},
            {"vehicles_out", false, 15, "512k", false, true, false, 1.5, 13.2, 60, 300, false},
            {"responders_in", true, 2, "2M", true, true, false, 2.7, 7.7, 30, 900, true},
            {"responders_out", false, 10, "2M", true, true, false, 2.7, 15, 120, 600, true},
            {"uavs", true, 3, "5M", true, false, true, 10, 25, 10, 150, true},
        };
        break;
    case 4:
        cfg.duration_s = 604800.0;  // 7-14 d
        specs = {
            {"pedestrians_in", true, 30, "256k", false, true, false, 0.0, 3.5, 600, 432000, false},
            {"pedestrians_out", false, 60, "256k", false, true, false, 0.5, 2.1, 30, 3600, false},
            {"vehicles_in", true, 15, "512k", false, true, false, 2.7, 13.2, 30, 300, false},
            {"vehicles_out", false, 30, "512k", false, true, false, 1.5, 13.2, 60, 300, false},
            {"responders_in", true, 10, "2M", true, true, false, 2.7, 7.7, 30, 900, true},
            {"responders_out", false, 15, "2M", true, true, false, 2.7, 15, 120, 600, true},
            {"uavs", true, 4, "5M", true, false, true, 10, 25, 10, 150, true},
        };
        break;
    default:
        throw std::invalid_argument("phase must be 1..4");
    }

    for (const GroupSpec& spec : specs) {
        cfg.groups.push_back(make_group(spec));
    }
    return cfg;
}

}  // namespace oppsim::scenarios
