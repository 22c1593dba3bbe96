#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "hotspot/dbscan.hpp"
#include "hotspot/errors.hpp"
#include "hotspot/geo.hpp"

namespace hotspot::quality {

struct SilhouetteResult {
    double mean_score = 0.0;
    std::vector<double> per_point;  // one entry per clustered (non-noise) point
    std::size_t excluded_noise = 0;
};

// Silhouette score of a clustering: per clustered point i in cluster A,
// a(i) = mean distance to the other members of A, b(i) = smallest mean
// distance to any other cluster, s(i) = (b-a)/max(a,b); members of singleton
// clusters score 0. Noise points are excluded and counted. Per-point scores
// are computed concurrently; the result is independent of evaluation order.
// Throws EmptyInputError when no point is clustered and UndefinedScoreError
// when fewer than two clusters are non-empty.
template <std::invocable<const geo::GeoPoint&, const geo::GeoPoint&> Metric>
SilhouetteResult silhouette(std::span<const geo::GeoPoint> points,
                            const dbscan::Clustering& clustering, Metric&& metric) {
    const std::size_t n = points.size();
    std::vector<std::size_t> clustered;  // indices of non-noise points, input order
    clustered.reserve(n);
    std::vector<std::size_t> cluster_sizes(static_cast<std::size_t>(clustering.cluster_count), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = clustering.labels[i];
        if (label < 0) continue;
        clustered.push_back(i);
        ++cluster_sizes[static_cast<std::size_t>(label)];
    }

    SilhouetteResult result;
    result.excluded_noise = n - clustered.size();
    if (clustered.empty()) throw EmptyInputError("silhouette: no clustered points");
    const auto nonempty = static_cast<std::size_t>(
        std::count_if(cluster_sizes.begin(), cluster_sizes.end(), [](std::size_t s) { return s > 0; }));
    if (nonempty < 2) {
        throw UndefinedScoreError("silhouette: needs at least 2 non-empty clusters, got " +
                                  std::to_string(nonempty));
    }

    result.per_point.assign(clustered.size(), 0.0);
    const std::size_t k = cluster_sizes.size();

    const auto score_one = [&](std::size_t slot) {
        const std::size_t i = clustered[slot];
        const auto own = static_cast<std::size_t>(clustering.labels[i]);
        if (cluster_sizes[own] == 1) {
            result.per_point[slot] = 0.0;  // singleton convention
            return;
        }
        std::vector<double> sums(k, 0.0);
        for (std::size_t j : clustered) {
            sums[static_cast<std::size_t>(clustering.labels[j])] += metric(points[i], points[j]);
        }
        const double a = sums[own] / static_cast<double>(cluster_sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c == own || cluster_sizes[c] == 0) continue;
            b = std::min(b, sums[c] / static_cast<double>(cluster_sizes[c]));
        }
        const double denom = std::max(a, b);
        result.per_point[slot] = denom > 0.0 ? (b - a) / denom : 0.0;
    };

    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>({hw, clustered.size(), 16});
    if (workers <= 1 || clustered.size() < 256) {
        for (std::size_t slot = 0; slot < clustered.size(); ++slot) score_one(slot);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                for (std::size_t slot = w; slot < clustered.size(); slot += workers) score_one(slot);
            });
        }
        for (std::thread& t : threads) t.join();
    }

    double total = 0.0;
    for (double s : result.per_point) total += s;
    result.mean_score = total / static_cast<double>(result.per_point.size());
    return result;
}

inline SilhouetteResult silhouette(std::span<const geo::GeoPoint> points,
                                   const dbscan::Clustering& clustering) {
    return silhouette(points, clustering,
                      [](const geo::GeoPoint& a, const geo::GeoPoint& b) { return geo::haversine_km(a, b); });
}

}  // namespace hotspot::quality
