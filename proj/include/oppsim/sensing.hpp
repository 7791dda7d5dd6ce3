#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "oppsim/geo.hpp"
#include "oppsim/rng.hpp"
#include "oppsim/routing.hpp"

namespace oppsim::sensing {

constexpr std::int64_t kRadiationMessageSize = 100;  // bytes

struct SensingState {
    int current_zone = 0;
    bool capable = false;
    int next_seq = 0;  // per-host message sequence
};

struct NoPeerError : std::runtime_error {
    NoPeerError() : std::runtime_error("sensing: no detection-capable peer to address") {}
};

// Uniform over the capable set excluding self.
int draw_destination(int self, const std::vector<int>& capable_addrs, Rng& rng);

// Detection-capable hosts emit one fixed-size message whenever the radiation
// zone under them changes; everyone else stays silent.
std::optional<routing::Message> on_position_update(
    SensingState& state, int self, const geo::Point& position,
    const geo::ZoneModel& zones, const std::vector<int>& capable_addrs,
    Rng& rng, double now, double ttl);

}  // namespace oppsim::sensing
