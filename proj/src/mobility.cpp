#include "oppsim/mobility.hpp"

namespace oppsim::mobility {

namespace {

constexpr int kMaxPathRetries = 8;

void enter_wait(MovementState& state, double until) {
    state.leg.clear();
    state.leg_next = 0;
    state.waiting_until = until;
}

}  // namespace

geo::Point initial_placement(const MobilityConfig& cfg, const MobilityContext& ctx,
                             Rng& rng, int* vertex_out) {
    if (vertex_out != nullptr) {
        *vertex_out = -1;
    }
    if (cfg.model == MobilityModel::ShortestMapBased) {
        if (ctx.graph == nullptr || ctx.graph->empty()) {
            throw EmptyMapError();
        }
        const int v = rng.uniform_int(static_cast<int>(ctx.graph->vertices.size()));
        if (vertex_out != nullptr) {
            *vertex_out = v;
        }
        return ctx.graph->vertices[static_cast<std::size_t>(v)];
    }
    const double x = rng.uniform(ctx.bounds.min_x, ctx.bounds.max_x);
    const double y = rng.uniform(ctx.bounds.min_y, ctx.bounds.max_y);
    return geo::Point{x, y};
}

void plan_next_leg(MovementState& state, const MobilityConfig& cfg,
                   const MobilityContext& ctx, Rng& rng, double now) {
    state.leg.clear();
    state.leg_next = 0;

    if (cfg.model == MobilityModel::ShortestMapBased) {
        if (ctx.graph == nullptr || ctx.graph->empty()) {
            throw EmptyMapError();
        }
        const int vertex_count = static_cast<int>(ctx.graph->vertices.size());
        std::optional<std::vector<int>> path;
        for (int attempt = 0; attempt < kMaxPathRetries && !path; ++attempt) {
            const int dest = rng.uniform_int(vertex_count);
            path = geo::shortest_path(*ctx.graph, state.vertex, dest);
        }
        const double speed = rng.uniform(cfg.speed_min, cfg.speed_max);
        const double wait = rng.uniform(cfg.wait_min, cfg.wait_max);
        if (!path || path->size() < 2 || speed <= 0.0) {
            // Unreachable destination, destination == current vertex, or an
            // immobile draw: sit out one wait period in place.
            state.pending_wait = wait;
            enter_wait(state, now + wait);
            return;
        }
        state.dest_vertex = path->back();
        state.leg.reserve(path->size() - 1);
        for (std::size_t i = 1; i < path->size(); ++i) {
            state.leg.push_back(
                ctx.graph->vertices[static_cast<std::size_t>((*path)[i])]);
        }
        state.speed = speed;
        state.pending_wait = wait;
        return;
    }

    // RandomWaypoint: straight line to a uniform point in bounds.
    const geo::Point dest{rng.uniform(ctx.bounds.min_x, ctx.bounds.max_x),
                          rng.uniform(ctx.bounds.min_y, ctx.bounds.max_y)};
    const double speed = rng.uniform(cfg.speed_min, cfg.speed_max);
    const double wait = rng.uniform(cfg.wait_min, cfg.wait_max);
    if (speed <= 0.0) {
        state.pending_wait = wait;
        enter_wait(state, now + wait);
        return;
    }
    state.leg.push_back(dest);
    state.speed = speed;
    state.pending_wait = wait;
}

void step_movement(MovementState& state, double now, double dt) {
    if (state.waiting()) {
        if (now + dt >= *state.waiting_until) {
            state.waiting_until.reset();
        }
        return;
    }
    if (!state.has_leg()) {
        return;
    }

    double travel = state.speed * dt;
    while (travel > 0.0 && state.has_leg()) {
        const geo::Point& target = state.leg[state.leg_next];
        const double d = geo::distance(state.position, target);
        if (d <= travel) {
            state.position = target;
            ++state.leg_next;
            travel -= d;
        } else {
            const double f = travel / d;
            state.position.x += (target.x - state.position.x) * f;
            state.position.y += (target.y - state.position.y) * f;
            travel = 0.0;
        }
    }
    if (!state.has_leg()) {
        if (state.dest_vertex >= 0) {
            state.vertex = state.dest_vertex;
            state.dest_vertex = -1;
        }
        enter_wait(state, now + dt + state.pending_wait);
    }
}

}  // namespace oppsim::mobility
