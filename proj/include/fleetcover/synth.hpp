#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "fleetcover/geo_grid.hpp"
#include "fleetcover/trajectory.hpp"

namespace fleetcover {

enum class RouteModel { loop, back_and_forth };

/// Deterministic synthetic fleet: each agent follows a fixed waypoint route
/// at constant speed, emitting a ping every ping_interval seconds.
struct SynthConfig {
    GridSpec grid;
    std::size_t n_agents = 1;
    TimeSlotting slotting;
    std::int64_t ping_interval = 5;  // seconds
    RouteModel route_model = RouteModel::loop;
    std::size_t waypoints_per_agent = 6;
    double speed_mps = 8.0;
    std::uint64_t rng_seed = 0;
};

/// A polyline route with precomputed arc lengths. Loop routes close back to
/// the first waypoint; back-and-forth routes reflect at the ends. A single
/// waypoint (or zero total length) is a stationary agent.
struct Route {
    std::vector<LatLon> waypoints;
    RouteModel model = RouteModel::loop;
    double speed_mps = 8.0;
    std::vector<double> cum_m;  // arc length at each vertex of one traversal
    double length_m = 0.0;      // one traversal (loop: includes the closing leg)
    double period_s = 0.0;      // 0 for stationary agents
};

/// Segment lengths use the same flat projection as the grid (longitude
/// scaled by cos of the box's mid latitude).
Route build_route(std::vector<LatLon> waypoints, RouteModel model, double speed_mps,
                  const GridSpec& grid);

/// Position after `elapsed_s` seconds from the first waypoint.
LatLon route_position(const Route& route, double elapsed_s);

/// Write the trajectory CSV (`agent_id,timestamp,lat,lon`, epoch-second
/// timestamps) and return the route metadata. Identical config, identical
/// bytes.
nlohmann::json generate(const SynthConfig& cfg, std::ostream& csv_out);

}  // namespace fleetcover
