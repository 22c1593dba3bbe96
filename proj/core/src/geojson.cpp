#include "hotspot/geojson.hpp"

#include <ostream>

#include <json.hpp>

namespace hotspot::geojson {

namespace {

nlohmann::json point_feature(const geo::GeoPoint& p, nlohmann::json properties) {
    return nlohmann::json{
        {"type", "Feature"},
        {"geometry", {{"type", "Point"}, {"coordinates", {p.lon, p.lat}}}},
        {"properties", std::move(properties)},
    };
}

}  // namespace

void write_clustering(std::ostream& out, std::span<const geo::GeoPoint> points,
                      const dbscan::Clustering& clustering,
                      const std::vector<dbscan::ClusterSummary>& summaries) {
    nlohmann::json features = nlohmann::json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        features.push_back(point_feature(
            points[i], {{"cluster_id", clustering.labels[i]},
                        {"is_core", static_cast<bool>(clustering.core_flags[i])}}));
    }
    for (const dbscan::ClusterSummary& s : summaries) {
        features.push_back(point_feature(
            s.centroid, {{"cluster_id", s.cluster_id}, {"member_count", s.member_count}}));
    }
    const nlohmann::json doc{{"type", "FeatureCollection"}, {"features", std::move(features)}};
    out << doc.dump(2) << '\n';
}

void write_marker_clusters(std::ostream& out, const markers::MarkerClusterSet& set) {
    nlohmann::json features = nlohmann::json::array();
    for (const markers::MarkerCluster& cluster : set.clusters) {
        features.push_back(point_feature(
            cluster.founder, {{"count", cluster.count}, {"zoom", set.zoom_current}}));
    }
    const nlohmann::json doc{{"type", "FeatureCollection"}, {"features", std::move(features)}};
    out << doc.dump(2) << '\n';
}

}  // namespace hotspot::geojson
