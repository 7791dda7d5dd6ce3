#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oppsim::geo {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point& other) const = default;
};

double distance(const Point& a, const Point& b);

// Point-to-segment distance, used to check that map-based movement stays on roads.
double distance_to_segment(const Point& p, const Point& a, const Point& b);

struct Rect {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    bool contains(const Point& p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    Rect expanded(double fraction) const;

    bool operator==(const Rect& other) const = default;
};

// Ordered chain of at least two points; consecutive points are distinct.
struct Polyline {
    std::vector<Point> points;

    double length() const;
};

enum class MapLayer {
    AllRoads,
    InsideZones,   // zones 1-2 removed
    OutsideZones,  // all zones removed
};

const char* map_layer_name(MapLayer layer);

// Blast center plus six strictly ascending radii (zone 1 innermost).
struct ZoneModel {
    Point center;
    std::vector<double> radii;  // size 6

    bool operator==(const ZoneModel& other) const = default;
};

// 0 = outside all zones, 1..6 = innermost..outermost ring containing the point.
// A distance exactly equal to a radius belongs to the inner zone.
int classify_zone(const ZoneModel& zones, const Point& p);

struct GraphEdge {
    int a = 0;
    int b = 0;
    double length = 0.0;
};

struct RoadGraph {
    std::vector<Point> vertices;
    std::vector<GraphEdge> edges;
    MapLayer layer = MapLayer::AllRoads;

    // adjacency[v] = (neighbor vertex, edge length), in edge insertion order.
    std::vector<std::vector<std::pair<int, double>>> adjacency;

    void rebuild_adjacency();
    Rect bounds() const;
    bool empty() const { return vertices.empty(); }
};

struct WktParseError : std::runtime_error {
    WktParseError(const std::string& message, int line, int column);
    int line;
    int column;
};

// Parsed WKT: road polylines plus standalone point markers (e.g. a blast center).
struct WktData {
    std::vector<Polyline> polylines;
    std::vector<Point> points;
};

// Accepts LINESTRING, MULTILINESTRING and POINT, whitespace-tolerant.
WktData parse_wkt(const std::string& text);

std::string to_wkt(const WktData& data);

// Merges endpoints within snap_epsilon, drops duplicate edges and self-loops.
RoadGraph build_graph(const std::vector<Polyline>& polylines, double snap_epsilon);

// Minimum-length path by edge length; equal-length ties resolved toward the
// lexicographically smallest vertex-index sequence. Empty optional when the
// vertices are in different components.
std::optional<std::vector<int>> shortest_path(const RoadGraph& graph, int from, int to);

double path_length(const RoadGraph& graph, const std::vector<int>& path);

// Removes every vertex whose zone is in `excluded` along with incident edges.
RoadGraph carve_layer(const RoadGraph& graph, const ZoneModel& zones,
                      const std::vector<int>& excluded);

}  // namespace oppsim::geo
