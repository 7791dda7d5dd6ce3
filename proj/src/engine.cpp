#include "oppsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oppsim/scenarios.hpp"

namespace oppsim::engine {

void resolve_map_text(config::ScenarioConfig& cfg) {
    if (!cfg.map_wkt_text.empty()) {
        return;
    }
    if (cfg.map_file.empty()) {
        cfg.map_wkt_text = scenarios::synthetic_map_wkt();
        return;
    }
    std::ifstream file(cfg.map_file, std::ios::binary);
    if (!file) {
        throw config::ConfigError("cannot open map file '" + cfg.map_file + "'");
    }
    std::ostringstream content;
    content << file.rdbuf();
    cfg.map_wkt_text = content.str();
}

World build_world(const config::ScenarioConfig& input_cfg) {
    World world;
    world.cfg = input_cfg;
    resolve_map_text(world.cfg);
    const config::ScenarioConfig& cfg = world.cfg;

    world.zones = cfg.zones;
    const geo::WktData wkt = geo::parse_wkt(cfg.map_wkt_text);
    auto& all = world.layers[static_cast<std::size_t>(geo::MapLayer::AllRoads)];
    all = geo::build_graph(wkt.polylines, cfg.snap_epsilon);
    world.layers[static_cast<std::size_t>(geo::MapLayer::InsideZones)] =
        geo::carve_layer(all, world.zones, {1, 2});
    world.layers[static_cast<std::size_t>(geo::MapLayer::OutsideZones)] =
        geo::carve_layer(all, world.zones, {1, 2, 3, 4, 5, 6});
    world.bounds = cfg.world_bounds ? *cfg.world_bounds : all.bounds().expanded(0.05);

    world.ranges = {cfg.bluetooth.range_m, cfg.highspeed.range_m};
    world.bitrates = {cfg.bluetooth.bitrate_bps, cfg.highspeed.bitrate_bps};
    world.rng = Rng(cfg.seed);

    int address = 0;
    for (std::size_t g = 0; g < cfg.groups.size(); ++g) {
        const config::GroupConfig& group = cfg.groups[g];
        const mobility::MobilityContext ctx{&world.layer(group.mobility.layer),
                                            world.bounds};
        for (int i = 0; i < group.count; ++i) {
            Host host;
            host.address = address++;
            host.group = static_cast<int>(g);
            int vertex = -1;
            host.position =
                mobility::initial_placement(group.mobility, ctx, world.rng, &vertex);
            host.movement.position = host.position;
            host.movement.vertex = vertex;
            host.buffer = routing::Buffer(group.buffer_bytes);
            for (net::InterfaceKind kind : group.interfaces) {
                host.kinds[static_cast<std::size_t>(kind)] = true;
            }
            host.sensing.capable = group.detection_capable;
            host.sensing.current_zone = geo::classify_zone(world.zones, host.position);
            if (group.detection_capable) {
                world.capable.push_back(host.address);
            }
            world.hosts.push_back(std::move(host));
        }
    }
    return world;
}

namespace {

routing::PeerView peer_view(Host& host) {
    return routing::PeerView{host.address, &host.buffer, &host.delivered, &host.table};
}

struct Engine {
    World& world;
    events::EventSink* sink;
    const RunOptions& opts;
    bool prophet;

    void emit(events::EventKind kind, double t, routing::MessageId msg, int a, int b,
              int aux = 0) {
        if (sink != nullptr) {
            sink->on_event(events::Event{kind, t, msg, a, b, aux});
        }
    }

    bool is_candidate(const routing::Message& msg, Host& holder, Host& receiver) {
        routing::PeerView h = peer_view(holder);
        routing::PeerView r = peer_view(receiver);
        return prophet ? routing::prophet_candidate(msg, h, r)
                       : routing::epidemic_candidate(msg, h, r);
    }

    // A message appeared in `host`'s buffer: offer it on every live contact.
    void on_buffer_insert(Host& host, const routing::Message& msg) {
        ++host.route_version;
        if (prophet) {
            return;  // plans rebuild from the version bump
        }
        for (auto& [pair, plan] : world.plans) {
            if (plan.contacts <= 0 ||
                (pair.a != host.address && pair.b != host.address)) {
                continue;
            }
            Host& peer = world.hosts[static_cast<std::size_t>(
                pair.a == host.address ? pair.b : pair.a)];
            if (is_candidate(msg, host, peer)) {
                plan.queue.emplace(routing::plan_key(msg, host.address, peer.address),
                                   routing::PlanItem{msg.id, host.address, peer.address});
            }
        }
    }

    // `host` lost a message (drop/expiry): peers in contact may now offer
    // their copy again.
    void on_buffer_remove(Host& host, const routing::MessageId& id) {
        ++host.route_version;
        if (prophet) {
            return;
        }
        for (auto& [pair, plan] : world.plans) {
            if (plan.contacts <= 0 ||
                (pair.a != host.address && pair.b != host.address)) {
                continue;
            }
            Host& peer = world.hosts[static_cast<std::size_t>(
                pair.a == host.address ? pair.b : pair.a)];
            const routing::Message* copy = peer.buffer.find(id);
            if (copy != nullptr && is_candidate(*copy, peer, host)) {
                plan.queue.emplace(routing::plan_key(*copy, peer.address, host.address),
                                   routing::PlanItem{id, peer.address, host.address});
            }
        }
    }

    void handle_insert_result(Host& host, const routing::Buffer::InsertResult& result,
                              const routing::MessageId& id, double now) {
        for (const routing::MessageId& dropped : result.dropped) {
            emit(events::EventKind::Dropped, now, dropped, host.address, -1);
            on_buffer_remove(host, dropped);
        }
        if (result.status == routing::Buffer::InsertStatus::Inserted) {
            const routing::Message* stored = host.buffer.find(id);
            on_buffer_insert(host, *stored);
        } else if (result.status == routing::Buffer::InsertStatus::TooLarge) {
            emit(events::EventKind::Dropped, now, id, host.address, -1);
        }
    }

    void process_link_events(const net::ConnectivityTable::UpdateResult& result,
                             double now) {
        for (const net::TransferEvent& abort : result.aborts) {
            emit(events::EventKind::Aborted, now, abort.transfer.msg.id,
                 abort.transfer.from, abort.transfer.to);
        }
        for (const net::LinkEvent& ev : result.events) {
            emit(ev.up ? events::EventKind::LinkUp : events::EventKind::LinkDown, now,
                 routing::MessageId{}, ev.key.a, ev.key.b,
                 static_cast<int>(ev.key.kind));
            const PairKey pair{ev.key.a, ev.key.b};
            if (ev.up) {
                PairPlan& plan = world.plans[pair];
                if (plan.contacts++ == 0) {
                    on_contact_start(pair, plan, now);
                }
            } else {
                auto it = world.plans.find(pair);
                if (it != world.plans.end() && --it->second.contacts <= 0) {
                    world.plans.erase(it);
                }
            }
        }
        // An aborted transfer goes back into the plan when the pair is still
        // in contact over another interface.
        for (const net::TransferEvent& abort : result.aborts) {
            const PairKey pair{std::min(abort.transfer.from, abort.transfer.to),
                               std::max(abort.transfer.from, abort.transfer.to)};
            auto it = world.plans.find(pair);
            if (it == world.plans.end()) {
                continue;
            }
            const routing::Message& msg = abort.transfer.msg;
            it->second.queue.emplace(
                routing::plan_key(msg, abort.transfer.from, abort.transfer.to),
                routing::PlanItem{msg.id, abort.transfer.from, abort.transfer.to});
        }
    }

    void on_contact_start(const PairKey& pair, PairPlan& plan, double now) {
        Host& a = world.hosts[static_cast<std::size_t>(pair.a)];
        Host& b = world.hosts[static_cast<std::size_t>(pair.b)];
        if (prophet) {
            routing::PeerView va = peer_view(a);
            routing::PeerView vb = peer_view(b);
            routing::prophet_contact(va, vb, now, world.cfg.prophet);
            ++a.route_version;
            ++b.route_version;
            plan.ver_a = ~0ULL;  // force rebuild in the start phase
            plan.ver_b = ~0ULL;
            return;
        }
        for (const routing::PlanItem& item :
             routing::epidemic_exchange(peer_view(a), peer_view(b))) {
            Host& holder = world.hosts[static_cast<std::size_t>(item.from)];
            const routing::Message* msg = holder.buffer.find(item.id);
            plan.queue.emplace(routing::plan_key(*msg, item.from, item.to), item);
        }
    }

    net::Connection* active_connection(const PairKey& pair) {
        net::Connection* best = nullptr;
        double best_rate = -1.0;
        for (int k = 0; k < net::kInterfaceKindCount; ++k) {
            net::Connection* conn = world.links.find(net::ConnKey{
                pair.a, pair.b, static_cast<net::InterfaceKind>(k)});
            if (conn != nullptr && world.bitrates[static_cast<std::size_t>(k)] > best_rate) {
                best = conn;
                best_rate = world.bitrates[static_cast<std::size_t>(k)];
            }
        }
        return best;
    }

    void rebuild_prophet_plan(const PairKey& pair, PairPlan& plan) {
        Host& a = world.hosts[static_cast<std::size_t>(pair.a)];
        Host& b = world.hosts[static_cast<std::size_t>(pair.b)];
        if (plan.ver_a == a.route_version && plan.ver_b == b.route_version) {
            return;
        }
        plan.queue.clear();
        for (const routing::PlanItem& item :
             routing::prophet_plan(peer_view(a), peer_view(b))) {
            Host& holder = world.hosts[static_cast<std::size_t>(item.from)];
            const routing::Message* msg = holder.buffer.find(item.id);
            plan.queue.emplace(routing::plan_key(*msg, item.from, item.to), item);
        }
        plan.ver_a = a.route_version;
        plan.ver_b = b.route_version;
    }

    void start_transfers(double now) {
        for (auto& [pair, plan] : world.plans) {
            if (plan.contacts <= 0) {
                continue;
            }
            net::Connection* conn = active_connection(pair);
            if (conn == nullptr || conn->transfer.has_value()) {
                continue;
            }
            if (prophet) {
                rebuild_prophet_plan(pair, plan);
            }
            if (opts.validate_plans) {
                validate_against_fresh_plan(pair, plan);
            }
            while (!plan.queue.empty()) {
                auto it = plan.queue.begin();
                const routing::PlanItem item = it->second;
                plan.queue.erase(it);
                Host& holder = world.hosts[static_cast<std::size_t>(item.from)];
                Host& receiver = world.hosts[static_cast<std::size_t>(item.to)];
                const routing::Message* msg = holder.buffer.find(item.id);
                if (msg == nullptr || !is_candidate(*msg, holder, receiver)) {
                    continue;
                }
                net::start_transfer(*conn, *msg, item.from, item.to);
                emit(events::EventKind::Started, now, item.id, item.from, item.to);
                break;
            }
        }
    }

    // Test instrumentation: the cached queue must start exactly what a fresh
    // per-step plan computation would start.
    void validate_against_fresh_plan(const PairKey& pair, PairPlan& plan) {
        Host& a = world.hosts[static_cast<std::size_t>(pair.a)];
        Host& b = world.hosts[static_cast<std::size_t>(pair.b)];
        const std::vector<routing::PlanItem> fresh =
            prophet ? routing::prophet_plan(peer_view(a), peer_view(b))
                    : routing::epidemic_exchange(peer_view(a), peer_view(b));

        const routing::PlanItem* expected = fresh.empty() ? nullptr : &fresh.front();
        for (const auto& [key, item] : plan.queue) {
            Host& holder = world.hosts[static_cast<std::size_t>(item.from)];
            Host& receiver = world.hosts[static_cast<std::size_t>(item.to)];
            const routing::Message* msg = holder.buffer.find(item.id);
            if (msg != nullptr && is_candidate(*msg, holder, receiver)) {
                if (expected == nullptr || !(item == *expected)) {
                    throw std::logic_error("plan cache diverged from fresh plan");
                }
                return;
            }
        }
        if (expected != nullptr) {
            throw std::logic_error("plan cache missed a plannable transfer");
        }
    }

    void complete_transfers(double now) {
        for (net::TransferEvent& ev : world.links.tick(world.bitrates, world.cfg.step_s)) {
            routing::Message msg = std::move(ev.transfer.msg);
            const routing::MessageId id = msg.id;
            Host& receiver = world.hosts[static_cast<std::size_t>(ev.transfer.to)];
            emit(events::EventKind::Relayed, now, id, ev.transfer.from, ev.transfer.to);
            routing::PeerView view = peer_view(receiver);
            const int hopcount = static_cast<int>(msg.hops.size());
            const routing::DeliveryResult result =
                routing::on_transfer_complete(view, std::move(msg), now);
            if (result.delivered) {
                emit(events::EventKind::Delivered, now, id, ev.transfer.from,
                     ev.transfer.to, hopcount);
                ++receiver.route_version;
            } else {
                handle_insert_result(receiver, result.insert, id, now);
            }
        }
    }

    void step(double now) {
        const double dt = world.cfg.step_s;
        const double prev = now - dt;

        // Mobility.
        for (Host& host : world.hosts) {
            const config::GroupConfig& group =
                world.cfg.groups[static_cast<std::size_t>(host.group)];
            const mobility::MobilityContext ctx{&world.layer(group.mobility.layer),
                                                world.bounds};
            if (!host.movement.waiting() && !host.movement.has_leg()) {
                mobility::plan_next_leg(host.movement, group.mobility, ctx, world.rng,
                                        prev);
            }
            mobility::step_movement(host.movement, prev, dt);
            host.position = host.movement.position;
        }

        // Sensing.
        for (Host& host : world.hosts) {
            if (!host.sensing.capable) {
                continue;
            }
            auto msg = sensing::on_position_update(host.sensing, host.address,
                                                   host.position, world.zones,
                                                   world.capable, world.rng, now,
                                                   world.cfg.ttl_s);
            if (msg) {
                emit(events::EventKind::Created, now, msg->id, msg->source,
                     msg->destination);
                const routing::MessageId id = msg->id;
                const auto result = host.buffer.insert(std::move(*msg), now);
                handle_insert_result(host, result, id, now);
            }
        }

        // Connectivity.
        std::vector<net::HostRadio> radios;
        radios.reserve(world.hosts.size());
        for (const Host& host : world.hosts) {
            radios.push_back(net::HostRadio{host.address, host.position, host.kinds});
        }
        process_link_events(world.links.update(radios, world.ranges, now), now);

        // Exchanges, transfer progress, TTL.
        start_transfers(now);
        complete_transfers(now);
        for (Host& host : world.hosts) {
            for (const routing::MessageId& id : host.buffer.expire(now)) {
                emit(events::EventKind::Expired, now, id, host.address, -1);
                on_buffer_remove(host, id);
            }
        }
    }
};

}  // namespace

void run(World& world, double duration, events::EventSink* sink,
         const RunOptions& opts) {
    if (duration <= 0.0) {
        throw std::invalid_argument("run: duration must be > 0");
    }
    Engine engine{world, sink, opts,
                  world.cfg.router == config::Protocol::Prophet};
    const double dt = world.cfg.step_s;
    const long long steps = static_cast<long long>(std::ceil(duration / dt));
    const double start = world.clock;
    for (long long i = 1; i <= steps; ++i) {
        world.clock = start + static_cast<double>(i) * dt;
        engine.step(world.clock);
    }
    // Close remaining contacts so every link-up has a matching link-down.
    const auto closing = world.links.teardown(world.clock);
    engine.process_link_events(closing, world.clock);
}

}  // namespace oppsim::engine
