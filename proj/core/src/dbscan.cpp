#include "hotspot/dbscan.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "hotspot/errors.hpp"

namespace hotspot::dbscan {

namespace {

// Packs two signed 32-bit cell coordinates into one key.
std::uint64_t pack_cell(std::int32_t cx, std::int32_t cy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy));
}

}  // namespace

void DbscanParams::validate() const {
    if (!(eps_km > 0.0)) throw ParamError("eps_km: must be > 0");
    if (min_pts < 1) throw ParamError("min_pts: must be >= 1");
}

SpatialIndex::SpatialIndex(std::span<const geo::GeoPoint> points, double cell_size_km)
    : cell_size_km_(cell_size_km), size_(points.size()) {
    if (!(cell_size_km > 0.0)) throw ParamError("cell_size_km: must be > 0");
    if (points.empty()) return;

    double lat_sum = 0.0;
    double lon_sum = 0.0;
    for (const geo::GeoPoint& p : points) {
        lat_sum += p.lat;
        lon_sum += p.lon;
    }
    anchor_lat_ = lat_sum / static_cast<double>(points.size());
    anchor_lon_ = lon_sum / static_cast<double>(points.size());
    km_per_deg_lon_ = geo::kKmPerDegree * std::cos(anchor_lat_ * std::numbers::pi / 180.0);

    grid_.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        grid_[cell_key(points[i])].push_back(static_cast<int>(i));
    }
}

std::uint64_t SpatialIndex::cell_key(const geo::GeoPoint& p) const {
    const double x = (p.lon - anchor_lon_) * km_per_deg_lon_;
    const double y = (p.lat - anchor_lat_) * geo::kKmPerDegree;
    const auto cx = static_cast<std::int32_t>(std::floor(x / cell_size_km_));
    const auto cy = static_cast<std::int32_t>(std::floor(y / cell_size_km_));
    return pack_cell(cx, cy);
}

std::vector<int> SpatialIndex::neighbors(std::span<const geo::GeoPoint> points, int q,
                                         double eps_km) const {
    if (eps_km > cell_size_km_) {
        throw ParamError("eps_km: exceeds index cell_size_km (" + std::to_string(eps_km) + " > " +
                         std::to_string(cell_size_km_) + ")");
    }
    const geo::GeoPoint& center = points[q];
    const double x = (center.lon - anchor_lon_) * km_per_deg_lon_;
    const double y = (center.lat - anchor_lat_) * geo::kKmPerDegree;
    const auto cx = static_cast<std::int32_t>(std::floor(x / cell_size_km_));
    const auto cy = static_cast<std::int32_t>(std::floor(y / cell_size_km_));

    std::vector<int> result;
    for (std::int32_t dx = -1; dx <= 1; ++dx) {
        for (std::int32_t dy = -1; dy <= 1; ++dy) {
            const auto it = grid_.find(pack_cell(cx + dx, cy + dy));
            if (it == grid_.end()) continue;
            for (int i : it->second) {
                if (geo::haversine_km(center, points[i]) <= eps_km) result.push_back(i);
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

Clustering cluster(std::span<const geo::GeoPoint> points, const DbscanParams& params) {
    params.validate();

    constexpr int kUnvisited = -2;
    Clustering out;
    out.labels.assign(points.size(), kUnvisited);
    out.core_flags.assign(points.size(), false);

    if (points.empty()) return out;
    // Cell assignment approximates distances on a local plane, which can read
    // up to a few tenths of a percent long near the edges of a metro-scale
    // extent. One percent of slack keeps every true eps-neighbor inside the
    // 3x3 cell block scanned by neighbors().
    const SpatialIndex index(points, params.eps_km * 1.01);
    const auto min_pts = static_cast<std::size_t>(params.min_pts);

    std::deque<int> frontier;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (out.labels[i] != kUnvisited) continue;
        const std::vector<int> hood = index.neighbors(points, static_cast<int>(i), params.eps_km);
        if (hood.size() < min_pts) {
            out.labels[i] = kNoise;
            continue;
        }
        const int cluster_id = out.cluster_count++;
        out.labels[i] = cluster_id;
        out.core_flags[i] = true;

        frontier.assign(hood.begin(), hood.end());
        while (!frontier.empty()) {
            const int j = frontier.front();
            frontier.pop_front();
            if (out.labels[j] == kNoise) out.labels[j] = cluster_id;  // border point
            if (out.labels[j] != kUnvisited) continue;
            out.labels[j] = cluster_id;
            const std::vector<int> sub = index.neighbors(points, j, params.eps_km);
            if (sub.size() >= min_pts) {
                out.core_flags[j] = true;
                frontier.insert(frontier.end(), sub.begin(), sub.end());
            }
        }
    }
    return out;
}

std::vector<ClusterSummary> cluster_summary(std::span<const geo::GeoPoint> points,
                                            const Clustering& clustering) {
    std::vector<ClusterSummary> summaries(static_cast<std::size_t>(clustering.cluster_count));
    std::vector<double> lat_sums(summaries.size(), 0.0);
    std::vector<double> lon_sums(summaries.size(), 0.0);

    for (std::size_t i = 0; i < points.size(); ++i) {
        const int label = clustering.labels[i];
        if (label < 0) continue;
        ClusterSummary& s = summaries[static_cast<std::size_t>(label)];
        const geo::GeoPoint& p = points[i];
        if (s.member_count == 0) {
            s.bounds = geo::BBox{p.lat, p.lat, p.lon, p.lon};
        } else {
            s.bounds.min_lat = std::min(s.bounds.min_lat, p.lat);
            s.bounds.max_lat = std::max(s.bounds.max_lat, p.lat);
            s.bounds.min_lon = std::min(s.bounds.min_lon, p.lon);
            s.bounds.max_lon = std::max(s.bounds.max_lon, p.lon);
        }
        ++s.member_count;
        lat_sums[static_cast<std::size_t>(label)] += p.lat;
        lon_sums[static_cast<std::size_t>(label)] += p.lon;
    }
    for (std::size_t c = 0; c < summaries.size(); ++c) {
        summaries[c].cluster_id = static_cast<int>(c);
        if (summaries[c].member_count > 0) {
            const auto n = static_cast<double>(summaries[c].member_count);
            summaries[c].centroid = geo::GeoPoint{lat_sums[c] / n, lon_sums[c] / n};
        }
    }
    return summaries;
}

}  // namespace hotspot::dbscan
