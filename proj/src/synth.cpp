#include "fleetcover/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "fleetcover/util.hpp"

namespace fleetcover {

namespace {

double meters_per_degree_lon(const GridSpec& grid) {
    const double mid = (grid.lat_min + grid.lat_max) / 2.0;
    return kMetersPerDegreeLat * std::cos(mid * std::numbers::pi / 180.0);
}

double segment_m(const LatLon& a, const LatLon& b, double m_per_deg_lon) {
    const double dy = (b.lat - a.lat) * kMetersPerDegreeLat;
    const double dx = (b.lon - a.lon) * m_per_deg_lon;
    return std::hypot(dx, dy);
}

LatLon lerp(const LatLon& a, const LatLon& b, double t) {
    return {a.lat + (b.lat - a.lat) * t, a.lon + (b.lon - a.lon) * t};
}

// Position at arc length d along one traversal (d in [0, length_m]).
LatLon at_distance(const Route& route, double d) {
    const auto& cum = route.cum_m;
    const std::size_t segments = cum.size() - 1;
    auto it = std::upper_bound(cum.begin(), cum.end(), d);
    std::size_t seg = it == cum.begin() ? 0 : static_cast<std::size_t>(it - cum.begin()) - 1;
    if (seg >= segments) seg = segments - 1;
    const double seg_len = cum[seg + 1] - cum[seg];
    const double t = seg_len > 0.0 ? (d - cum[seg]) / seg_len : 0.0;
    const std::size_t n = route.waypoints.size();
    const LatLon& a = route.waypoints[seg % n];
    const LatLon& b = route.waypoints[(seg + 1) % n];
    return lerp(a, b, t);
}

}  // namespace

Route build_route(std::vector<LatLon> waypoints, RouteModel model, double speed_mps,
                  const GridSpec& grid) {
    if (waypoints.empty()) throw std::invalid_argument("a route needs at least one waypoint");
    if (speed_mps <= 0.0) throw std::invalid_argument("speed must be positive");

    Route route;
    route.waypoints = std::move(waypoints);
    route.model = model;
    route.speed_mps = speed_mps;

    const double m_per_deg_lon = meters_per_degree_lon(grid);
    const std::size_t n = route.waypoints.size();
    route.cum_m.push_back(0.0);
    if (n > 1) {
        const std::size_t segments = model == RouteModel::loop ? n : n - 1;
        for (std::size_t i = 0; i < segments; ++i) {
            const double len = segment_m(route.waypoints[i], route.waypoints[(i + 1) % n],
                                         m_per_deg_lon);
            route.cum_m.push_back(route.cum_m.back() + len);
        }
    }
    route.length_m = route.cum_m.back();
    if (route.length_m > 0.0) {
        const double traversal = route.length_m / speed_mps;
        route.period_s = model == RouteModel::loop ? traversal : 2.0 * traversal;
    }
    return route;
}

LatLon route_position(const Route& route, double elapsed_s) {
    if (route.length_m <= 0.0) return route.waypoints.front();
    double d = std::fmod(route.speed_mps * elapsed_s, route.model == RouteModel::loop
                                                          ? route.length_m
                                                          : 2.0 * route.length_m);
    if (d > route.length_m) d = 2.0 * route.length_m - d;  // reflected return leg
    return at_distance(route, d);
}

nlohmann::json generate(const SynthConfig& cfg, std::ostream& csv_out) {
    if (cfg.n_agents < 1) throw std::invalid_argument("n_agents must be at least 1");
    if (cfg.ping_interval <= 0) throw std::invalid_argument("ping_interval must be positive");
    if (cfg.speed_mps <= 0.0) throw std::invalid_argument("speed must be positive");
    if (cfg.waypoints_per_agent < 1)
        throw std::invalid_argument("waypoints_per_agent must be at least 1");

    std::size_t id_width = 2;
    for (std::size_t v = cfg.n_agents; v >= 100; v /= 10) ++id_width;

    csv_out << "agent_id,timestamp,lat,lon\n";
    nlohmann::json metadata = nlohmann::json::array();

    std::uint64_t seed_state = cfg.rng_seed;
    for (std::size_t a = 0; a < cfg.n_agents; ++a) {
        // each agent draws from its own derived stream, so fleet size does
        // not perturb earlier agents' routes
        std::mt19937_64 rng(splitmix64(seed_state));

        char id[32];
        std::snprintf(id, sizeof id, "bus_%0*zu", static_cast<int>(id_width), a + 1);

        std::vector<LatLon> waypoints(cfg.waypoints_per_agent);
        for (auto& w : waypoints) {
            w.lat = cfg.grid.lat_min + uniform_unit(rng) * (cfg.grid.lat_max - cfg.grid.lat_min);
            w.lon = cfg.grid.lon_min + uniform_unit(rng) * (cfg.grid.lon_max - cfg.grid.lon_min);
        }
        const Route route = build_route(waypoints, cfg.route_model, cfg.speed_mps, cfg.grid);

        for (std::int64_t t = cfg.slotting.window_start; t < cfg.slotting.window_end;
             t += cfg.ping_interval) {
            const LatLon p = route_position(route, static_cast<double>(t - cfg.slotting.window_start));
            char line[96];
            std::snprintf(line, sizeof line, "%s,%lld,%.7f,%.7f\n", id,
                          static_cast<long long>(t), p.lat, p.lon);
            csv_out << line;
        }

        nlohmann::json waypoint_list = nlohmann::json::array();
        for (const auto& w : waypoints) waypoint_list.push_back({w.lat, w.lon});
        metadata.push_back({{"agent_id", id},
                            {"waypoints", std::move(waypoint_list)},
                            {"period_s", route.period_s}});
    }
    return metadata;
}

}  // namespace fleetcover
