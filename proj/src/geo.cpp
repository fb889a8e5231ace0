#include "harbor/geo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace harbor {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 to_unit(LatLon p) {
    const double la = deg_to_rad(p.lat), lo = deg_to_rad(p.lon);
    return {std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la)};
}

LatLon from_unit(const Vec3& v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {rad_to_deg(std::asin(std::clamp(v[2] / n, -1.0, 1.0))), rad_to_deg(std::atan2(v[1], v[0]))};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

double haversine_km(LatLon a, LatLon b) {
    const double dlat = deg_to_rad(b.lat - a.lat);
    const double dlon = deg_to_rad(b.lon - a.lon);
    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    const double h = s1 * s1 + std::cos(deg_to_rad(a.lat)) * std::cos(deg_to_rad(b.lat)) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

double haversine_nm(LatLon a, LatLon b) { return km_to_nm(haversine_km(a, b)); }

LatLon interpolate_great_circle(LatLon a, LatLon b, double fraction) {
    if (fraction <= 0.0) return a;
    if (fraction >= 1.0) return b;
    const Vec3 u = to_unit(a), v = to_unit(b);
    const double omega = std::acos(std::clamp(dot(u, v), -1.0, 1.0));
    if (omega < 1e-15) return a;
    const double sa = std::sin((1.0 - fraction) * omega) / std::sin(omega);
    const double sb = std::sin(fraction * omega) / std::sin(omega);
    return from_unit({sa * u[0] + sb * v[0], sa * u[1] + sb * v[1], sa * u[2] + sb * v[2]});
}

double route_length_nm(std::span<const LatLon> route) {
    double total = 0.0;
    for (std::size_t i = 1; i < route.size(); ++i) total += haversine_nm(route[i - 1], route[i]);
    return total;
}

RouteProjection project_onto_route(std::span<const LatLon> route, LatLon pos) {
    if (route.empty()) throw Error(ErrorCode::EmptyRoute, "route has no waypoints");
    RouteProjection best;
    if (route.size() == 1) {
        best.point = route[0];
        best.offset_nm = haversine_nm(pos, route[0]);
        best.remaining_nm = best.offset_nm;
        return best;
    }

    const Vec3 p = to_unit(pos);
    double best_offset = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
        const Vec3 a = to_unit(route[i]), b = to_unit(route[i + 1]);
        const double omega = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
        double frac = 0.0;
        if (omega > 1e-15) {
            // Foot of the perpendicular from p onto the arc's great circle.
            const Vec3 n = cross(a, b);
            const double nn = dot(n, n);
            const double k = dot(p, n) / nn;
            const Vec3 q{p[0] - k * n[0], p[1] - k * n[1], p[2] - k * n[2]};
            const double qa = std::atan2(std::sqrt(dot(cross(a, q), cross(a, q))), dot(a, q));
            const double sign = dot(cross(a, q), n) >= 0.0 ? 1.0 : -1.0;
            frac = std::clamp(sign * qa / omega, 0.0, 1.0);
        }
        const LatLon candidate = interpolate_great_circle(route[i], route[i + 1], frac);
        const double offset = haversine_nm(pos, candidate);
        if (offset < best_offset - 1e-12) {
            best_offset = offset;
            best.segment = i;
            best.fraction = frac;
            best.point = candidate;
            best.offset_nm = offset;
        }
    }

    double remaining = haversine_nm(best.point, route[best.segment + 1]);
    for (std::size_t i = best.segment + 1; i + 1 < route.size(); ++i) remaining += haversine_nm(route[i], route[i + 1]);
    best.remaining_nm = remaining;
    return best;
}

double route_remaining_nm(std::span<const LatLon> route, LatLon pos) {
    return project_onto_route(route, pos).remaining_nm;
}

LatLon point_along_route(std::span<const LatLon> route, double distance_nm) {
    if (route.empty()) throw Error(ErrorCode::EmptyRoute, "route has no waypoints");
    if (distance_nm <= 0.0) return route.front();
    double left = distance_nm;
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
        const double leg = haversine_nm(route[i], route[i + 1]);
        if (left <= leg) return interpolate_great_circle(route[i], route[i + 1], leg > 0.0 ? left / leg : 1.0);
        left -= leg;
    }
    return route.back();
}

LatLon destination_point(LatLon origin, double bearing_deg, double distance_nm) {
    const double delta = nm_to_km(distance_nm) / kEarthRadiusKm;
    const double theta = deg_to_rad(bearing_deg);
    const double phi1 = deg_to_rad(origin.lat), lam1 = deg_to_rad(origin.lon);
    const double phi2 =
        std::asin(std::sin(phi1) * std::cos(delta) + std::cos(phi1) * std::sin(delta) * std::cos(theta));
    const double lam2 = lam1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                                          std::cos(delta) - std::sin(phi1) * std::sin(phi2));
    return {rad_to_deg(phi2), rad_to_deg(lam2)};
}

}  // namespace harbor
