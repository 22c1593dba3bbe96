#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "hotspot/geo.hpp"

namespace hotspot::dbscan {

inline constexpr int kNoise = -1;

struct DbscanParams {
    double eps_km = 0.05;
    int min_pts = 300;

    void validate() const;
};

// Uniform grid over a local equirectangular plane anchored at the dataset
// centroid. With cell_size_km >= eps_km, the 3x3 cell block around a query
// point covers its eps-neighborhood.
class SpatialIndex {
public:
    SpatialIndex(std::span<const geo::GeoPoint> points, double cell_size_km);

    double cell_size_km() const { return cell_size_km_; }
    std::size_t size() const { return size_; }
    const std::unordered_map<std::uint64_t, std::vector<int>>& grid() const { return grid_; }

    // Cell key for a point (derivable from coordinates and cell size alone,
    // given the anchor fixed at construction).
    std::uint64_t cell_key(const geo::GeoPoint& p) const;

    // Indices i with haversine_km(points[q], points[i]) <= eps_km, including
    // q itself, sorted ascending. Requires eps_km <= cell_size_km.
    std::vector<int> neighbors(std::span<const geo::GeoPoint> points, int q, double eps_km) const;

private:
    double cell_size_km_;
    double anchor_lat_ = 0.0;
    double anchor_lon_ = 0.0;
    double km_per_deg_lon_ = 0.0;  // scaled by cos(anchor latitude)
    std::size_t size_ = 0;
    std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

// Per-point labels (cluster id >= 0, or kNoise), core flags, and the number
// of clusters. Cluster ids are contiguous in order of discovery.
struct Clustering {
    std::vector<int> labels;
    std::vector<bool> core_flags;
    int cluster_count = 0;
};

struct ClusterSummary {
    int cluster_id = 0;
    std::size_t member_count = 0;
    geo::GeoPoint centroid;
    geo::BBox bounds;  // tight min/max over members
};

// Density-based clustering over haversine distance. A point is core iff its
// eps-neighborhood (itself included) holds at least min_pts points. Points
// are visited in input order and clusters grow through a FIFO frontier, so
// labels are deterministic for a given input ordering; a border point goes to
// whichever cluster's expansion reaches it first.
Clustering cluster(std::span<const geo::GeoPoint> points, const DbscanParams& params);

// Member count, centroid (arithmetic mean), and tight bounds per cluster,
// ordered by cluster id. Noise is not summarized.
std::vector<ClusterSummary> cluster_summary(std::span<const geo::GeoPoint> points,
                                            const Clustering& clustering);

}  // namespace hotspot::dbscan
