#include "oppsim/sensing.hpp"

#include <algorithm>

namespace oppsim::sensing {

int draw_destination(int self, const std::vector<int>& capable_addrs, Rng& rng) {
    const auto self_it =
        std::find(capable_addrs.begin(), capable_addrs.end(), self);
    const int others = static_cast<int>(capable_addrs.size()) -
                       (self_it != capable_addrs.end() ? 1 : 0);
    if (others <= 0) {
        throw NoPeerError();
    }
    int index = rng.uniform_int(others);
    if (self_it != capable_addrs.end() &&
        index >= static_cast<int>(self_it - capable_addrs.begin())) {
        ++index;  // skip over self
    }
    return capable_addrs[static_cast<std::size_t>(index)];
}

std::optional<routing::Message> on_position_update(
    SensingState& state, int self, const geo::Point& position,
    const geo::ZoneModel& zones, const std::vector<int>& capable_addrs,
    Rng& rng, double now, double ttl) {
    if (!state.capable) {
        return std::nullopt;
    }
    const int new_zone = geo::classify_zone(zones, position);
    if (new_zone == state.current_zone) {
        return std::nullopt;
    }
    state.current_zone = new_zone;

    routing::Message msg;
    msg.id = routing::MessageId{self, state.next_seq++};
    msg.source = self;
    msg.destination = draw_destination(self, capable_addrs, rng);
    msg.size = kRadiationMessageSize;
    msg.created_at = now;
    msg.ttl = ttl;
    msg.hops.push_back(self);
    return msg;
}

}  // namespace oppsim::sensing
