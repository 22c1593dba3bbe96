#include "fixtures.hpp"

#include <cmath>
#include <numbers>

namespace testsupport {

using hotspot::geo::GeoPoint;
using hotspot::geo::kKmPerDegree;
using hotspot::ingest::EventRecord;

std::vector<GeoPoint> random_metro_points(Rng& rng, std::size_t n) {
    std::vector<GeoPoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        points.push_back({rng.uniform(kMetroBox.min_lat, kMetroBox.max_lat),
                          rng.uniform(kMetroBox.min_lon, kMetroBox.max_lon)});
    }
    return points;
}

std::vector<GeoPoint> clustered_metro_points(Rng& rng, int blobs, int per_blob,
                                             double blob_radius_km, int scattered) {
    // Keep centers away from the box edge so blob members stay inside it.
    const double margin = 0.02;
    std::vector<GeoPoint> centers;
    for (int b = 0; b < blobs; ++b) {
        centers.push_back({rng.uniform(kMetroBox.min_lat + margin, kMetroBox.max_lat - margin),
                           rng.uniform(kMetroBox.min_lon + margin, kMetroBox.max_lon - margin)});
    }

    std::vector<GeoPoint> points;
    points.reserve(static_cast<std::size_t>(blobs * per_blob + scattered));
    const double lat_r = blob_radius_km / kKmPerDegree;
    for (int b = 0; b < blobs; ++b) {
        const double lon_r =
            blob_radius_km / (kKmPerDegree * std::cos(centers[b].lat * std::numbers::pi / 180.0));
        for (int i = 0; i < per_blob; ++i) {
            points.push_back({centers[b].lat + rng.uniform(-lat_r, lat_r),
                              centers[b].lon + rng.uniform(-lon_r, lon_r)});
        }
    }
    for (int i = 0; i < scattered; ++i) {
        points.push_back({rng.uniform(kMetroBox.min_lat, kMetroBox.max_lat),
                          rng.uniform(kMetroBox.min_lon, kMetroBox.max_lon)});
    }

    // Interleave deterministically so blob membership is not contiguous in
    // input order (exercises order-dependent tie-breaking).
    Rng shuffle_rng(0x5eedf00d);
    for (std::size_t i = points.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<int>(i) - 1));
        std::swap(points[i - 1], points[j]);
    }
    return points;
}

std::vector<EventRecord> month_day_fixture_records() {
    static const char* const kSeverities[4] = {"K", "A", "B", "C"};
    Rng rng(0x7ab1e1);
    std::vector<EventRecord> records;
    records.reserve(kFixtureGrandTotal);
    int k = 0;
    for (int m = 1; m <= 12; ++m) {
        for (int d = 0; d < 7; ++d) {
            const int count = kMonthDayCounts[static_cast<std::size_t>(m - 1)]
                                             [static_cast<std::size_t>(d)];
            for (int c = 0; c < count; ++c, ++k) {
                EventRecord r;
                r.lat = rng.uniform(kMetroBox.min_lat, kMetroBox.max_lat);
                r.lon = rng.uniform(kMetroBox.min_lon, kMetroBox.max_lon);
                r.month = m;
                r.weekday = d;
                r.hour = (k % 4 == 0) ? 18 : k % 24;
                r.features["severity"] = kSeverities[k % 4];
                records.push_back(std::move(r));
            }
        }
    }
    return records;
}

}  // namespace testsupport
