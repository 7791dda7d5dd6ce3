#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "oppsim/config.hpp"
#include "oppsim/events.hpp"
#include "oppsim/geo.hpp"
#include "oppsim/mobility.hpp"
#include "oppsim/net.hpp"
#include "oppsim/rng.hpp"
#include "oppsim/routing.hpp"
#include "oppsim/sensing.hpp"

namespace oppsim::engine {

struct Host {
    int address = -1;
    int group = -1;
    geo::Point position;
    mobility::MovementState movement;
    routing::Buffer buffer;
    routing::DeliveryTable table;        // PRoPHET state
    routing::MessageIdSet delivered;     // messages consumed as destination
    sensing::SensingState sensing;
    std::array<bool, net::kInterfaceKindCount> kinds{};

    // Bumped whenever buffer contents, delivered set or table change;
    // drives the transfer-plan caching.
    std::uint64_t route_version = 0;
};

// Unordered host pair, a < b.
struct PairKey {
    int a = -1;
    int b = -1;

    auto operator<=>(const PairKey& other) const = default;
};

// Pending transfer plan for one host pair in contact. For Epidemic the queue
// is maintained incrementally from buffer events; for PRoPHET it is rebuilt
// whenever either endpoint's routing state changes. Both maintain exactly
// the plan a per-step recomputation would produce (see RunOptions).
struct PairPlan {
    std::map<routing::PlanKey, routing::PlanItem> queue;
    int contacts = 0;  // up connections between the pair
    std::uint64_t ver_a = ~0ULL;
    std::uint64_t ver_b = ~0ULL;
};

struct World {
    config::ScenarioConfig cfg;
    geo::ZoneModel zones;
    std::array<geo::RoadGraph, 3> layers;  // indexed by MapLayer
    geo::Rect bounds;                      // waypoint flight area
    std::vector<Host> hosts;
    std::vector<int> capable;              // ascending addresses
    double clock = 0.0;
    Rng rng{1};
    net::ConnectivityTable links;
    std::map<PairKey, PairPlan> plans;
    std::array<double, net::kInterfaceKindCount> ranges{};
    std::array<double, net::kInterfaceKindCount> bitrates{};

    const geo::RoadGraph& layer(geo::MapLayer l) const {
        return layers[static_cast<std::size_t>(l)];
    }
};

// Fills cfg.map_wkt_text from the bundled synthetic map or cfg.map_file.
void resolve_map_text(config::ScenarioConfig& cfg);

World build_world(const config::ScenarioConfig& cfg);

struct RunOptions {
    // Cross-checks every started transfer against a fresh plan computation;
    // test instrumentation, throws std::logic_error on divergence.
    bool validate_plans = false;
};

void run(World& world, double duration, events::EventSink* sink,
         const RunOptions& opts = {});

}  // namespace oppsim::engine
