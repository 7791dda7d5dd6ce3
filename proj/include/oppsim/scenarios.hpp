#pragma once

#include <string>

#include "oppsim/config.hpp"
#include "oppsim/geo.hpp"

namespace oppsim::scenarios {

// Deterministic desk-scale road map: a jittered street grid plus an orbital
// ring road, with the blast center marked by a POINT geometry. All
// coordinates are planar meters; the layout and the zone radii are synthetic.
std::string synthetic_map_wkt();

geo::ZoneModel synthetic_zones();

// Bundled post-event phase scenarios 1..4.
config::ScenarioConfig phase_config(int phase);

constexpr int kPhaseCount = 4;

}  // namespace oppsim::scenarios
