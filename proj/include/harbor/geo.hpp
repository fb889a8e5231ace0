#pragma once

#include <span>

#include "harbor/core.hpp"

namespace harbor {

/// Great-circle distance on a sphere of radius kEarthRadiusKm.
double haversine_km(LatLon a, LatLon b);
double haversine_nm(LatLon a, LatLon b);

/// Point reached after travelling `fraction` of the great-circle arc a->b.
LatLon interpolate_great_circle(LatLon a, LatLon b, double fraction);

double route_length_nm(std::span<const LatLon> route);

struct RouteProjection {
    std::size_t segment = 0;  // index of the leg's first waypoint
    double fraction = 0.0;    // position along that leg, [0, 1]
    LatLon point;             // projected position
    double offset_nm = 0.0;   // distance from the query to the projected point
    double remaining_nm = 0.0;
};

/// Nearest point on the nearest leg; ties go to the earlier leg.
RouteProjection project_onto_route(std::span<const LatLon> route, LatLon pos);

/// Along-route distance from the projection of `pos` to the last waypoint.
/// Throws EmptyRoute for an empty route. A single-waypoint route is
/// treated as the haversine distance to that waypoint.
double route_remaining_nm(std::span<const LatLon> route, LatLon pos);

/// Position after sailing `distance_nm` from the first waypoint (clamped to
/// the route ends).
LatLon point_along_route(std::span<const LatLon> route, double distance_nm);

/// Position reached from `origin` on initial bearing `bearing_deg` after `distance_nm`.
LatLon destination_point(LatLon origin, double bearing_deg, double distance_nm);

}  // namespace harbor
