#pragma once

#include <span>
#include <vector>

#include "hotspot/geo.hpp"

namespace hotspot::markers {

struct MarkerParams {
    int zoom_current = geo::kMaxZoom;
    int zoom_max = geo::kMaxZoom;
    double radius_px = 80.0;
    double scale_c = geo::default_scale_c();
    geo::Projection projection = geo::Projection::equirectangular;

    void validate() const;
};

struct MarkerCluster {
    geo::GeoPoint founder;          // location of the first member; never moves
    std::vector<int> member_indices;  // includes the founder's index
    std::size_t count = 0;
};

struct MarkerClusterSet {
    std::vector<MarkerCluster> clusters;
    int zoom_current = 0;
};

// Pixel distance between two points at the current zoom: the Euclidean
// distance of their projected pixel coordinates at zoom_max, divided by
// 2^(zoom_max - zoom_current). The divisor is applied as a real-valued
// power-of-two scaling, so the distance halves exactly per zoom decrement.
double zoom_distance(const geo::GeoPoint& a, const geo::GeoPoint& b, const MarkerParams& params);

// Greedy first-fit grouping in input order: each point joins the first
// existing cluster whose founder lies within radius_px by zoom_distance,
// else founds a new cluster. Deterministic for a fixed input order.
MarkerClusterSet cluster_markers(std::span<const geo::GeoPoint> points, const MarkerParams& params);

}  // namespace hotspot::markers
