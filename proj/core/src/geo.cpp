#include "hotspot/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hotspot/errors.hpp"

namespace hotspot::geo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    const double lat1 = a.lat * kDegToRad;
    const double lat2 = b.lat * kDegToRad;
    const double dlat = (b.lat - a.lat) * kDegToRad;
    const double dlon = (b.lon - a.lon) * kDegToRad;

    const double sl = std::sin(dlat / 2.0);
    const double so = std::sin(dlon / 2.0);
    const double h = sl * sl + std::cos(lat1) * std::cos(lat2) * so * so;
    // Clamp against roundoff before asin.
    const double root = std::sqrt(std::min(1.0, std::max(0.0, h)));
    return 2.0 * kEarthRadiusKm * std::asin(root);
}

PixelPoint project_pixel(const GeoPoint& p, int zoom, Projection projection, double scale_c) {
    switch (projection) {
        case Projection::equirectangular:
            return PixelPoint{p.lon * scale_c, p.lat * scale_c, zoom};
        case Projection::web_mercator: {
            if (std::abs(p.lat) >= kWebMercatorLatLimit) {
                throw ProjectionDomainError("web_mercator undefined for |lat| >= 85.05113 (got lat=" +
                                            std::to_string(p.lat) + ")");
            }
            const double world = 256.0 * std::exp2(static_cast<double>(zoom));
            const double px = (p.lon + 180.0) / 360.0 * world;
            const double py = (1.0 - std::asinh(std::tan(p.lat * kDegToRad)) / std::numbers::pi) / 2.0 * world;
            return PixelPoint{px, py, zoom};
        }
    }
    throw ParamError("projection: unknown enumerator");
}

BBox bounding_box(std::span<const GeoPoint> points, double padding_fraction) {
    if (points.empty()) {
        throw EmptyInputError("bounding_box: point list is empty");
    }
    BBox box{points[0].lat, points[0].lat, points[0].lon, points[0].lon};
    for (const GeoPoint& p : points) {
        box.min_lat = std::min(box.min_lat, p.lat);
        box.max_lat = std::max(box.max_lat, p.lat);
        box.min_lon = std::min(box.min_lon, p.lon);
        box.max_lon = std::max(box.max_lon, p.lon);
    }

    constexpr double kMinSpan = 0.001;
    if (box.lat_span() == 0.0) {
        box.min_lat -= kMinSpan / 2.0;
        box.max_lat += kMinSpan / 2.0;
    } else {
        const double pad = padding_fraction * box.lat_span();
        box.min_lat -= pad;
        box.max_lat += pad;
    }
    if (box.lon_span() == 0.0) {
        box.min_lon -= kMinSpan / 2.0;
        box.max_lon += kMinSpan / 2.0;
    } else {
        const double pad = padding_fraction * box.lon_span();
        box.min_lon -= pad;
        box.max_lon += pad;
    }
    return box;
}

}  // namespace hotspot::geo
