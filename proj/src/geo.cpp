#include "oppsim/geo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace oppsim::geo {

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double distance_to_segment(const Point& p, const Point& a, const Point& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) {
        return distance(p, a);
    }
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, Point{a.x + t * dx, a.y + t * dy});
}

Rect Rect::expanded(double fraction) const {
    const double wx = width() * fraction * 0.5;
    const double wy = height() * fraction * 0.5;
    return Rect{min_x - wx, min_y - wy, max_x + wx, max_y + wy};
}

double Polyline::length() const {
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        total += distance(points[i - 1], points[i]);
    }
    return total;
}

const char* map_layer_name(MapLayer layer) {
    switch (layer) {
    case MapLayer::AllRoads:
        return "all";
    case MapLayer::InsideZones:
        return "inside";
    case MapLayer::OutsideZones:
        return "outside";
    }
    return "all";
}

int classify_zone(const ZoneModel& zones, const Point& p) {
    const double d = distance(zones.center, p);
    for (std::size_t i = 0; i < zones.radii.size(); ++i) {
        if (d <= zones.radii[i]) {
            return static_cast<int>(i) + 1;
        }
    }
    return 0;
}

void RoadGraph::rebuild_adjacency() {
    adjacency.assign(vertices.size(), {});
    for (const GraphEdge& e : edges) {
        adjacency[static_cast<std::size_t>(e.a)].emplace_back(e.b, e.length);
        adjacency[static_cast<std::size_t>(e.b)].emplace_back(e.a, e.length);
    }
}

Rect RoadGraph::bounds() const {
    if (vertices.empty()) {
        return Rect{};
    }
    Rect r{vertices[0].x, vertices[0].y, vertices[0].x, vertices[0].y};
    for (const Point& p : vertices) {
        r.min_x = std::min(r.min_x, p.x);
        r.min_y = std::min(r.min_y, p.y);
        r.max_x = std::max(r.max_x, p.x);
        r.max_y = std::max(r.max_y, p.y);
    }
    return r;
}

namespace {

// Spatial hash used while snapping polyline endpoints onto graph vertices.
struct SnapGrid {
    explicit SnapGrid(double epsilon)
        : eps(epsilon), cell(epsilon > 0.0 ? epsilon : 1.0) {}

    std::pair<std::int64_t, std::int64_t> cell_of(const Point& p) const {
        return {static_cast<std::int64_t>(std::floor(p.x / cell)),
                static_cast<std::int64_t>(std::floor(p.y / cell))};
    }

    int find(const Point& p, const std::vector<Point>& vertices) const {
        const auto [cx, cy] = cell_of(p);
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = cells.find(key(cx + dx, cy + dy));
                if (it == cells.end()) {
                    continue;
                }
                for (int v : it->second) {
                    if (distance(vertices[static_cast<std::size_t>(v)], p) <= eps) {
                        return v;
                    }
                }
            }
        }
        return -1;
    }

    void add(const Point& p, int index) {
        const auto [cx, cy] = cell_of(p);
        cells[key(cx, cy)].push_back(index);
    }

    static std::uint64_t key(std::int64_t cx, std::int64_t cy) {
        return (static_cast<std::uint64_t>(cx) << 32) ^
               (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
    }

    double eps;
    double cell;
    std::unordered_map<std::uint64_t, std::vector<int>> cells;
};

}  // namespace

RoadGraph build_graph(const std::vector<Polyline>& polylines, double snap_epsilon) {
    RoadGraph graph;
    SnapGrid grid(snap_epsilon);
    std::unordered_set<std::uint64_t> seen_edges;

    auto intern = [&](const Point& p) {
        int found = grid.find(p, graph.vertices);
        if (found >= 0) {
            return found;
        }
        const int index = static_cast<int>(graph.vertices.size());
        graph.vertices.push_back(p);
        grid.add(p, index);
        return index;
    };

    for (const Polyline& line : polylines) {
        int prev = -1;
        for (const Point& p : line.points) {
            const int v = intern(p);
            if (prev >= 0 && prev != v) {
                const int lo = std::min(prev, v);
                const int hi = std::max(prev, v);
                const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) |
                                          static_cast<std::uint64_t>(hi);
                if (seen_edges.insert(key).second) {
                    graph.edges.push_back(GraphEdge{
                        lo, hi,
                        distance(graph.vertices[static_cast<std::size_t>(lo)],
                                 graph.vertices[static_cast<std::size_t>(hi)])});
                }
            }
            prev = v;
        }
    }
    graph.rebuild_adjacency();
    return graph;
}

namespace {

std::vector<int> reconstruct(const std::vector<int>& parent, int v) {
    std::vector<int> path;
    for (int cur = v; cur != -1; cur = parent[static_cast<std::size_t>(cur)]) {
        path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool path_less(const std::vector<int>& parent, int u1, int u2) {
    const std::vector<int> p1 = reconstruct(parent, u1);
    const std::vector<int> p2 = reconstruct(parent, u2);
    return std::lexicographical_compare(p1.begin(), p1.end(), p2.begin(), p2.end());
}

}  // namespace

std::optional<std::vector<int>> shortest_path(const RoadGraph& graph, int from, int to) {
    const std::size_t n = graph.vertices.size();
    if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= n ||
        static_cast<std::size_t>(to) >= n) {
        return std::nullopt;
    }
    if (from == to) {
        return std::vector<int>{from};
    }

    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    std::vector<bool> settled(n, false);

    using QueueItem = std::pair<double, int>;
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue;
    dist[static_cast<std::size_t>(from)] = 0.0;
    queue.emplace(0.0, from);

    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (settled[static_cast<std::size_t>(u)]) {
            continue;
        }
        settled[static_cast<std::size_t>(u)] = true;
        if (u == to) {
            return reconstruct(parent, to);
        }
        for (const auto& [v, w] : graph.adjacency[static_cast<std::size_t>(u)]) {
            const std::size_t vi = static_cast<std::size_t>(v);
            if (settled[vi]) {
                continue;
            }
            const double nd = d + w;
            if (nd < dist[vi]) {
                dist[vi] = nd;
                parent[vi] = u;
                queue.emplace(nd, v);
            } else if (nd == dist[vi] && parent[vi] != u && path_less(parent, u, parent[vi])) {
                // Equal length: keep the lexicographically smaller prefix. All
                // equal-distance relaxations of v happen before v settles, so
                // the choice is final once v pops (edge lengths are positive).
                parent[vi] = u;
            }
        }
    }
    return std::nullopt;
}

double path_length(const RoadGraph& graph, const std::vector<int>& path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        total += distance(graph.vertices[static_cast<std::size_t>(path[i - 1])],
                          graph.vertices[static_cast<std::size_t>(path[i])]);
    }
    return total;
}

RoadGraph carve_layer(const RoadGraph& graph, const ZoneModel& zones,
                      const std::vector<int>& excluded) {
    RoadGraph out;
    if (excluded.empty()) {
        out = graph;
        return out;
    }

    std::vector<bool> drop_zone(7, false);
    bool all_zones = true;
    for (int z : excluded) {
        if (z >= 1 && z <= 6) {
            drop_zone[static_cast<std::size_t>(z)] = true;
        }
    }
    for (int z = 1; z <= 6; ++z) {
        all_zones = all_zones && drop_zone[static_cast<std::size_t>(z)];
    }
    out.layer = all_zones ? MapLayer::OutsideZones : MapLayer::InsideZones;

    std::vector<int> remap(graph.vertices.size(), -1);
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        const int zone = classify_zone(zones, graph.vertices[i]);
        if (zone == 0 || !drop_zone[static_cast<std::size_t>(zone)]) {
            remap[i] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(graph.vertices[i]);
        }
    }
    for (const GraphEdge& e : graph.edges) {
        const int a = remap[static_cast<std::size_t>(e.a)];
        const int b = remap[static_cast<std::size_t>(e.b)];
        if (a >= 0 && b >= 0) {
            out.edges.push_back(GraphEdge{a, b, e.length});
        }
    }
    out.rebuild_adjacency();
    return out;
}

}  // namespace oppsim::geo
