#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "hotspot/dbscan.hpp"
#include "hotspot/geo.hpp"
#include "hotspot/markers.hpp"

namespace hotspot::geojson {

// FeatureCollection with one point feature per input point (properties
// cluster_id and is_core; noise carries cluster_id = -1) plus one feature per
// cluster centroid (properties cluster_id and member_count).
void write_clustering(std::ostream& out, std::span<const geo::GeoPoint> points,
                      const dbscan::Clustering& clustering,
                      const std::vector<dbscan::ClusterSummary>& summaries);

// FeatureCollection with one point feature per marker-cluster founder,
// properties count and zoom.
void write_marker_clusters(std::ostream& out, const markers::MarkerClusterSet& set);

}  // namespace hotspot::geojson
