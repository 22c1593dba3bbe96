#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hotspot/ingest.hpp"

namespace hotspot::temporal {

inline constexpr std::array<const char*, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

inline constexpr std::array<const char*, 7> kWeekdayNames = {
    "Sunday", "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday"};

// 12 x 7 count grid (month 1-12 by weekday Sunday..Saturday).
struct MonthDayTable {
    std::array<std::array<std::size_t, 7>, 12> counts{};
    std::array<std::size_t, 12> row_totals{};
    std::size_t grand_total = 0;
    std::size_t excluded = 0;  // records lacking month or weekday

    std::size_t cell(int month, int weekday) const {
        return counts[static_cast<std::size_t>(month - 1)][static_cast<std::size_t>(weekday)];
    }
};

struct HourHistogram {
    std::array<std::size_t, 24> counts{};
    std::size_t total = 0;
    std::size_t excluded = 0;
};

struct FeatureCategory {
    std::string category;
    std::size_t count = 0;
    double percentage = 0.0;  // 100*count/total, rounded to 3 decimals
};

// Categories sorted by descending count, ties broken lexicographically.
struct FeatureBreakdown {
    std::vector<FeatureCategory> categories;
    std::size_t total = 0;
    std::size_t excluded = 0;
};

MonthDayTable aggregate_month_day(const std::vector<ingest::EventRecord>& records);

// Column shares of the grid as percentages of the grand total.
// Throws UndefinedShareError when the table is empty.
std::array<double, 7> weekday_shares(const MonthDayTable& table);

HourHistogram aggregate_hour(const std::vector<ingest::EventRecord>& records);

// Per-category counts of one feature. known_features is the schema's list of
// canonical feature names; an unknown name throws SchemaError.
FeatureBreakdown aggregate_feature(const std::vector<ingest::EventRecord>& records,
                                   const std::string& feature,
                                   const std::vector<std::string>& known_features);

// CSV layout: "Months,Sunday,...,Saturday,total cases" with one row per month.
void write_month_day_csv(std::ostream& out, const MonthDayTable& table);
// Re-reads the layout above; throws DataError on malformed rows or totals
// that contradict the cells.
MonthDayTable read_month_day_csv(std::istream& in);

// "hour,count" rows for hours 0-23.
void write_hour_csv(std::ostream& out, const HourHistogram& histogram);

// "category,count,percentage" rows, percentage with 3 decimals.
void write_feature_csv(std::ostream& out, const FeatureBreakdown& breakdown);

}  // namespace hotspot::temporal
