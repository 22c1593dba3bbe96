#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace hotspot::geo {

// Mean Earth radius.
inline constexpr double kEarthRadiusKm = 6371.0088;

// Kilometers per degree of latitude (and of longitude at the equator):
// one degree of great-circle arc.
inline constexpr double kKmPerDegree = 2.0 * std::numbers::pi * kEarthRadiusKm / 360.0;

// Maximum slippy-map zoom level supported throughout the toolkit.
inline constexpr int kMaxZoom = 22;

// Web-mercator is defined for |lat| strictly below this cutoff.
inline constexpr double kWebMercatorLatLimit = 85.05113;

struct GeoPoint {
    double lat = 0.0;  // degrees, [-90, 90]
    double lon = 0.0;  // degrees, [-180, 180]

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct BBox {
    double min_lat = 0.0;
    double max_lat = 0.0;
    double min_lon = 0.0;
    double max_lon = 0.0;

    double lat_span() const { return max_lat - min_lat; }
    double lon_span() const { return max_lon - min_lon; }
    bool contains(const GeoPoint& p) const {
        return p.lat >= min_lat && p.lat <= max_lat && p.lon >= min_lon && p.lon <= max_lon;
    }

    friend bool operator==(const BBox&, const BBox&) = default;
};

// Real-valued pixel coordinates at a stated zoom level.
struct PixelPoint {
    double px = 0.0;
    double py = 0.0;
    int zoom = 0;
};

enum class Projection {
    equirectangular,  // px = lon*C, py = lat*C
    web_mercator,     // standard world-pixel formula, 256-pixel tiles
};

// Default coordinate scale for the equirectangular projection: full world
// width in pixels at the maximum zoom, per degree of longitude.
inline constexpr double default_scale_c() {
    return 256.0 * static_cast<double>(1 << kMaxZoom) / 360.0;
}

// Great-circle distance in kilometers on the mean-radius sphere.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

// Projects a point to pixel coordinates. The equirectangular form scales raw
// coordinates by C and ignores the zoom (zoom is recorded in the result only);
// web_mercator uses the standard 256-tile world formula at the given zoom and
// throws ProjectionDomainError for |lat| >= 85.05113.
PixelPoint project_pixel(const GeoPoint& p, int zoom, Projection projection, double scale_c);

// Smallest box containing all points, each side extended by padding_fraction
// of its span. A zero-span side is widened to a 0.001 degree span instead.
// Throws EmptyInputError for an empty list.
BBox bounding_box(std::span<const GeoPoint> points, double padding_fraction);

}  // namespace hotspot::geo
