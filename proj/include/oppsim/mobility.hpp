#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "oppsim/geo.hpp"
#include "oppsim/rng.hpp"

namespace oppsim::mobility {

enum class MobilityModel {
    ShortestMapBased,
    RandomWaypoint,
};

struct MobilityConfig {
    MobilityModel model = MobilityModel::ShortestMapBased;
    double speed_min = 0.0;
    double speed_max = 0.0;
    double wait_min = 0.0;
    double wait_max = 0.0;
    geo::MapLayer layer = geo::MapLayer::AllRoads;  // map-based only

    bool operator==(const MobilityConfig& other) const = default;
};

// What the movement model operates on: the allowed layer graph for map-based
// motion, the world rectangle for waypoint motion.
struct MobilityContext {
    const geo::RoadGraph* graph = nullptr;
    geo::Rect bounds;
};

struct MovementState {
    geo::Point position;
    std::vector<geo::Point> leg;  // upcoming waypoints, [leg_next..]
    std::size_t leg_next = 0;
    int vertex = -1;       // current/last graph vertex (map-based)
    int dest_vertex = -1;  // vertex the active leg ends at (map-based)
    double speed = 0.0;
    double pending_wait = 0.0;  // wait to apply once the active leg completes
    std::optional<double> waiting_until;  // absolute sim time

    bool has_leg() const { return leg_next < leg.size(); }
    bool waiting() const { return waiting_until.has_value(); }
};

struct EmptyMapError : std::runtime_error {
    EmptyMapError() : std::runtime_error("mobility: layer graph has no vertices") {}
};

// Map-based: a uniformly chosen graph vertex; waypoint: a uniform point in
// bounds. The chosen vertex index (or -1) is written to vertex_out if given.
geo::Point initial_placement(const MobilityConfig& cfg, const MobilityContext& ctx,
                             Rng& rng, int* vertex_out = nullptr);

// Picks a destination, draws speed and the post-arrival wait. A zero-length
// leg or a drawn speed of 0 puts the node straight into its wait. Map-based
// destinations in an unreachable component are redrawn a bounded number of
// times, after which the node waits in place.
void plan_next_leg(MovementState& state, const MobilityConfig& cfg,
                   const MobilityContext& ctx, Rng& rng, double now);

// Advances one time slice: either lets the wait run down or moves the node
// along its leg. Arrival clamps to the destination; leftover travel within
// the step is discarded and the wait starts at the end of the step.
void step_movement(MovementState& state, double now, double dt);

}  // namespace oppsim::mobility
