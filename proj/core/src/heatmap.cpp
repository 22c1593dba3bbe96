#include "hotspot/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hotspot/errors.hpp"

namespace hotspot::heatmap {

void HeatmapParams::validate() const {
    if (!(alpha > 0.0)) throw ParamError("alpha: must be > 0");
    if (width < 1) throw ParamError("width: must be >= 1");
    if (height < 1) throw ParamError("height: must be >= 1");
    if (bbox.min_lat > bbox.max_lat) throw ParamError("bbox: min_lat exceeds max_lat");
    if (bbox.min_lon > bbox.max_lon) throw ParamError("bbox: min_lon exceeds max_lon");
}

double Raster::max_value() const {
    double max = 0.0;
    for (double v : values) max = std::max(max, v);
    return max;
}

double kernel_value(const geo::GeoPoint& cell_center, const geo::GeoPoint& event, double alpha,
                    KernelSpace space) {
    double d2 = 0.0;
    if (space == KernelSpace::degrees) {
        const double dx = cell_center.lon - event.lon;
        const double dy = cell_center.lat - event.lat;
        d2 = dx * dx + dy * dy;
    } else {
        const double d = geo::haversine_km(cell_center, event);
        d2 = d * d;
    }
    return std::exp(-d2 / alpha);
}

namespace {

struct CellRange {
    int lo = 0;
    int hi = -1;  // inclusive; empty when hi < lo
};

CellRange clamp_range(double lo, double hi, int count) {
    // One cell of slack each side; the per-cell cutoff test is exact.
    const int a = std::max(0, static_cast<int>(std::floor(lo)) - 1);
    const int b = std::min(count - 1, static_cast<int>(std::ceil(hi)) + 1);
    return {a, b};
}

}  // namespace

Raster render(std::span<const geo::GeoPoint> points, const HeatmapParams& params) {
    params.validate();

    Raster raster;
    raster.width = params.width;
    raster.height = params.height;
    raster.bbox = params.bbox;
    raster.values.assign(static_cast<std::size_t>(params.width) * params.height, 0.0);

    const double dlat = raster.bbox.lat_span() / params.height;
    const double dlon = raster.bbox.lon_span() / params.width;
    const double cutoff = 5.0 * std::sqrt(params.alpha);
    const double cutoff2 = cutoff * cutoff;

    // Conservative per-event degree extents covering the cutoff radius.
    double lat_extent = cutoff;
    double lon_extent = cutoff;
    if (params.space == KernelSpace::km) {
        lat_extent = cutoff / geo::kKmPerDegree;
        const double min_abs_cos =
            std::min(std::cos(raster.bbox.min_lat * std::numbers::pi / 180.0),
                     std::cos(raster.bbox.max_lat * std::numbers::pi / 180.0));
        lon_extent = min_abs_cos > 1e-6 ? cutoff / (geo::kKmPerDegree * min_abs_cos) : 360.0;
    }

    for (const geo::GeoPoint& event : points) {
        // Row index grows southward: row r center lat = max_lat - (r+0.5)*dlat.
        CellRange rows{0, params.height - 1};
        CellRange cols{0, params.width - 1};
        if (dlat > 0.0) {
            rows = clamp_range((raster.bbox.max_lat - (event.lat + lat_extent)) / dlat - 0.5,
                               (raster.bbox.max_lat - (event.lat - lat_extent)) / dlat - 0.5,
                               params.height);
        }
        if (dlon > 0.0) {
            cols = clamp_range((event.lon - lon_extent - raster.bbox.min_lon) / dlon - 0.5,
                               (event.lon + lon_extent - raster.bbox.min_lon) / dlon - 0.5,
                               params.width);
        }
        for (int r = rows.lo; r <= rows.hi; ++r) {
            const double lat = raster.cell_center_lat(r);
            for (int c = cols.lo; c <= cols.hi; ++c) {
                const geo::GeoPoint center{lat, raster.cell_center_lon(c)};
                double d2 = 0.0;
                if (params.space == KernelSpace::degrees) {
                    const double dx = center.lon - event.lon;
                    const double dy = center.lat - event.lat;
                    d2 = dx * dx + dy * dy;
                } else {
                    const double d = geo::haversine_km(center, event);
                    d2 = d * d;
                }
                if (d2 > cutoff2) continue;
                raster.at(r, c) += std::exp(-d2 / params.alpha);
            }
        }
    }

    if (params.normalize) {
        const double max = raster.max_value();
        if (max > 0.0) {
            for (double& v : raster.values) v /= max;
        }
    }
    return raster;
}

}  // namespace hotspot::heatmap
