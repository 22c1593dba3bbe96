#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "hotspot/geo.hpp"
#include "hotspot/ingest.hpp"

namespace testsupport {

// Month-by-weekday incident counts (rows January..December, columns
// Sunday..Saturday) used as the ground-truth aggregation fixture.
inline constexpr std::array<std::array<int, 7>, 12> kMonthDayCounts = {{
    {246, 352, 469, 379, 406, 438, 317},  // January   (2607)
    {259, 327, 351, 371, 374, 402, 362},  // February  (2446)
    {268, 398, 380, 374, 419, 413, 402},  // March     (2654)
    {257, 367, 386, 401, 391, 425, 405},  // April     (2632)
    {309, 333, 382, 381, 445, 437, 381},  // May       (2668)
    {287, 352, 345, 328, 368, 416, 373},  // June      (2469)
    {303, 340, 363, 355, 341, 383, 356},  // July      (2441)
    {342, 378, 346, 382, 382, 495, 402},  // August    (2727)
    {306, 408, 446, 425, 414, 519, 487},  // September (3005)
    {340, 507, 534, 578, 506, 599, 511},  // October   (3575)
    {333, 528, 489, 532, 480, 508, 448},  // November  (3318)
    {276, 452, 445, 478, 503, 566, 444},  // December  (3164)
}};

inline constexpr int kFixtureGrandTotal = 33706;
inline constexpr int kFixtureFridayTotal = 5601;
inline constexpr int kFixtureSundayTotal = 3526;
inline constexpr int kFixtureOctoberTotal = 3575;

// Metro-scale box all random spatial fixtures draw from; roughly 33 x 28 km.
inline constexpr hotspot::geo::BBox kMetroBox{35.00, 35.30, -80.95, -80.65};

// Seeded generator with reproducible double/int derivation (no reliance on
// the implementation-defined std distributions).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 engine_;
};

std::vector<hotspot::geo::GeoPoint> random_metro_points(Rng& rng, std::size_t n);

// Dense blobs of blob_radius_km spread around well-separated centers, plus
// uniformly scattered extra points; the shape density clustering is made for.
std::vector<hotspot::geo::GeoPoint> clustered_metro_points(Rng& rng, int blobs,
                                                           int per_blob,
                                                           double blob_radius_km,
                                                           int scattered);

// Expands kMonthDayCounts into one record per counted incident (33,706 rows)
// with deterministic metro coordinates, an hour histogram peaking at 18, and
// a cyclic "severity" feature.
std::vector<hotspot::ingest::EventRecord> month_day_fixture_records();

}  // namespace testsupport
