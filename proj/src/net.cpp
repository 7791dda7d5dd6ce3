#include "oppsim/net.hpp"

#include <algorithm>

namespace oppsim::net {

const char* interface_kind_name(InterfaceKind kind) {
    switch (kind) {
    case InterfaceKind::Bluetooth:
        return "Bluetooth";
    case InterfaceKind::Highspeed:
        return "Highspeed";
    }
    return "Bluetooth";
}

ConnKey make_conn_key(int host1, int host2, InterfaceKind kind) {
    return ConnKey{std::min(host1, host2), std::max(host1, host2), kind};
}

StartStatus start_transfer(Connection& conn, routing::Message msg, int from, int to) {
    if (conn.transfer.has_value()) {
        return StartStatus::Busy;
    }
    const double size = static_cast<double>(msg.size);
    conn.transfer = ActiveTransfer{std::move(msg), from, to, size};
    return StartStatus::Started;
}

ConnectivityTable::UpdateResult ConnectivityTable::update(
    const std::vector<HostRadio>& hosts,
    const std::array<double, kInterfaceKindCount>& ranges, double t) {
    UpdateResult result;

    // Desired connection set for this instant, built in ConnKey order.
    std::vector<ConnKey> wanted;
    for (std::size_t i = 0; i < hosts.size(); ++i) {
        for (std::size_t j = i + 1; j < hosts.size(); ++j) {
            const HostRadio& hi = hosts[i];
            const HostRadio& hj = hosts[j];
            const double dx = hi.pos.x - hj.pos.x;
            const double dy = hi.pos.y - hj.pos.y;
            const double dist2 = dx * dx + dy * dy;
            for (int k = 0; k < kInterfaceKindCount; ++k) {
                if (!hi.has_kind[static_cast<std::size_t>(k)] ||
                    !hj.has_kind[static_cast<std::size_t>(k)]) {
                    continue;
                }
                const double range = ranges[static_cast<std::size_t>(k)];
                if (dist2 <= range * range) {
                    wanted.push_back(make_conn_key(hi.address, hj.address,
                                                   static_cast<InterfaceKind>(k)));
                }
            }
        }
    }
    std::sort(wanted.begin(), wanted.end());

    // Tear down connections no longer in range.
    std::vector<ConnKey> to_remove;
    {
        auto w = wanted.begin();
        for (const auto& [key, conn] : conns_) {
            while (w != wanted.end() && *w < key) {
                ++w;
            }
            if (w == wanted.end() || *w != key) {
                to_remove.push_back(key);
            }
        }
    }
    for (const ConnKey& key : to_remove) {
        auto it = conns_.find(key);
        if (it->second.transfer.has_value()) {
            result.aborts.push_back(
                TransferEvent{false, std::move(*it->second.transfer), key});
        }
        conns_.erase(it);
        result.events.push_back(LinkEvent{false, key, t});
    }

    // Bring new connections up.
    for (const ConnKey& key : wanted) {
        if (conns_.find(key) == conns_.end()) {
            conns_.emplace(key, Connection{key, t, std::nullopt});
            result.events.push_back(LinkEvent{true, key, t});
        }
    }
    return result;
}

ConnectivityTable::UpdateResult ConnectivityTable::teardown(double t) {
    UpdateResult result;
    for (auto& [key, conn] : conns_) {
        if (conn.transfer.has_value()) {
            result.aborts.push_back(TransferEvent{false, std::move(*conn.transfer), key});
        }
        result.events.push_back(LinkEvent{false, key, t});
    }
    conns_.clear();
    return result;
}

Connection* ConnectivityTable::find(const ConnKey& key) {
    auto it = conns_.find(key);
    return it == conns_.end() ? nullptr : &it->second;
}

std::vector<TransferEvent> ConnectivityTable::tick(
    const std::array<double, kInterfaceKindCount>& bitrates, double dt) {
    std::vector<TransferEvent> events;
    for (auto& [key, conn] : conns_) {
        if (!conn.transfer.has_value()) {
            continue;
        }
        const double rate = bitrates[static_cast<std::size_t>(key.kind)];
        conn.transfer->bytes_remaining -= rate * dt;
        if (conn.transfer->bytes_remaining <= 0.0) {
            events.push_back(TransferEvent{true, std::move(*conn.transfer), key});
            conn.transfer.reset();
        }
    }
    return events;
}

std::vector<TransferEvent> tick_transfers(
    ConnectivityTable& table,
    const std::array<double, kInterfaceKindCount>& bitrates, double dt) {
    return table.tick(bitrates, dt);
}

}  // namespace oppsim::net
