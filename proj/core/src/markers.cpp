#include "hotspot/markers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "hotspot/errors.hpp"

namespace hotspot::markers {

void MarkerParams::validate() const {
    if (zoom_max < 0 || zoom_max > geo::kMaxZoom) {
        throw ParamError("zoom_max: must be in [0, " + std::to_string(geo::kMaxZoom) + "]");
    }
    if (zoom_current < 0 || zoom_current > zoom_max) {
        throw ParamError("zoom_current: must be in [0, zoom_max]");
    }
    if (!(radius_px > 0.0)) throw ParamError("radius_px: must be > 0");
    if (!(scale_c > 0.0)) throw ParamError("scale_c: must be > 0");
}

double zoom_distance(const geo::GeoPoint& a, const geo::GeoPoint& b, const MarkerParams& params) {
    const geo::PixelPoint pa = geo::project_pixel(a, params.zoom_max, params.projection, params.scale_c);
    const geo::PixelPoint pb = geo::project_pixel(b, params.zoom_max, params.projection, params.scale_c);
    const double dx = pa.px - pb.px;
    const double dy = pa.py - pb.py;
    // ldexp keeps the power-of-two scaling exact.
    return std::ldexp(std::sqrt(dx * dx + dy * dy), params.zoom_current - params.zoom_max);
}

namespace {

struct CellHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& cell) const {
        const auto h = static_cast<std::uint64_t>(cell.first) * 0x9e3779b97f4a7c15ull;
        return static_cast<std::size_t>(h ^ (static_cast<std::uint64_t>(cell.second) +
                                             0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
    }
};

std::int64_t cell_coord(double scaled_px, double cell_size) {
    const double c = std::floor(scaled_px / cell_size);
    return static_cast<std::int64_t>(std::clamp(c, -9.0e18, 9.0e18));
}

}  // namespace

MarkerClusterSet cluster_markers(std::span<const geo::GeoPoint> points, const MarkerParams& params) {
    params.validate();

    MarkerClusterSet set;
    set.zoom_current = params.zoom_current;

    // Founders bucketed by cells of twice the radius in current-zoom pixel
    // space. A founder within radius_px of a point is always in the point's
    // 3x3 cell block (the per-axis offset stays below one cell even with
    // quotient roundoff), so first-fit reduces to the minimum founding index
    // among nearby candidates.
    using Cell = std::pair<std::int64_t, std::int64_t>;
    std::unordered_map<Cell, std::vector<int>, CellHash> founder_cells;
    const int shift = params.zoom_current - params.zoom_max;
    const double cell_size = 2.0 * params.radius_px;

    for (std::size_t i = 0; i < points.size(); ++i) {
        const geo::PixelPoint raw =
            geo::project_pixel(points[i], params.zoom_max, params.projection, params.scale_c);
        const double px = std::ldexp(raw.px, shift);
        const double py = std::ldexp(raw.py, shift);
        const std::int64_t cx = cell_coord(px, cell_size);
        const std::int64_t cy = cell_coord(py, cell_size);

        int best = -1;
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const auto it = founder_cells.find({cx + dx, cy + dy});
                if (it == founder_cells.end()) continue;
                for (int cluster_idx : it->second) {
                    if (best >= 0 && cluster_idx >= best) continue;
                    if (zoom_distance(points[i], set.clusters[cluster_idx].founder, params) <=
                        params.radius_px) {
                        best = cluster_idx;
                    }
                }
            }
        }

        if (best >= 0) {
            set.clusters[best].member_indices.push_back(static_cast<int>(i));
            ++set.clusters[best].count;
        } else {
            MarkerCluster fresh;
            fresh.founder = points[i];
            fresh.member_indices.push_back(static_cast<int>(i));
            fresh.count = 1;
            founder_cells[{cx, cy}].push_back(static_cast<int>(set.clusters.size()));
            set.clusters.push_back(std::move(fresh));
        }
    }
    return set;
}

}  // namespace hotspot::markers
