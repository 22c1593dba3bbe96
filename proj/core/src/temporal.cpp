#include "hotspot/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include "hotspot/errors.hpp"
#include "internal/csv.hpp"

namespace hotspot::temporal {

namespace {

std::string format_percentage(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return buf;
}

double round3(double value) { return std::round(value * 1000.0) / 1000.0; }

}  // namespace

MonthDayTable aggregate_month_day(const std::vector<ingest::EventRecord>& records) {
    MonthDayTable table;
    for (const ingest::EventRecord& r : records) {
        if (!r.month || !r.weekday) {
            ++table.excluded;
            continue;
        }
        ++table.counts[static_cast<std::size_t>(*r.month - 1)][static_cast<std::size_t>(*r.weekday)];
    }
    for (std::size_t m = 0; m < 12; ++m) {
        for (std::size_t d = 0; d < 7; ++d) table.row_totals[m] += table.counts[m][d];
        table.grand_total += table.row_totals[m];
    }
    return table;
}

std::array<double, 7> weekday_shares(const MonthDayTable& table) {
    if (table.grand_total == 0) {
        throw UndefinedShareError("weekday_shares: table grand total is zero");
    }
    std::array<double, 7> shares{};
    for (std::size_t d = 0; d < 7; ++d) {
        std::size_t column = 0;
        for (std::size_t m = 0; m < 12; ++m) column += table.counts[m][d];
        shares[d] = 100.0 * static_cast<double>(column) / static_cast<double>(table.grand_total);
    }
    return shares;
}

HourHistogram aggregate_hour(const std::vector<ingest::EventRecord>& records) {
    HourHistogram histogram;
    for (const ingest::EventRecord& r : records) {
        if (!r.hour) {
            ++histogram.excluded;
            continue;
        }
        ++histogram.counts[static_cast<std::size_t>(*r.hour)];
        ++histogram.total;
    }
    return histogram;
}

FeatureBreakdown aggregate_feature(const std::vector<ingest::EventRecord>& records,
                                   const std::string& feature,
                                   const std::vector<std::string>& known_features) {
    if (std::find(known_features.begin(), known_features.end(), feature) == known_features.end()) {
        throw SchemaError("unknown feature name: \"" + feature + "\"");
    }

    FeatureBreakdown breakdown;
    std::map<std::string, std::size_t> counts;
    for (const ingest::EventRecord& r : records) {
        const auto it = r.features.find(feature);
        if (it == r.features.end()) {
            ++breakdown.excluded;
            continue;
        }
        ++counts[it->second];
        ++breakdown.total;
    }

    breakdown.categories.reserve(counts.size());
    for (const auto& [category, count] : counts) {
        breakdown.categories.push_back(FeatureCategory{
            category, count,
            round3(100.0 * static_cast<double>(count) / static_cast<double>(breakdown.total))});
    }
    std::sort(breakdown.categories.begin(), breakdown.categories.end(),
              [](const FeatureCategory& a, const FeatureCategory& b) {
                  if (a.count != b.count) return a.count > b.count;
                  return a.category < b.category;
              });
    return breakdown;
}

void write_month_day_csv(std::ostream& out, const MonthDayTable& table) {
    std::vector<std::string> row = {"Months"};
    for (const char* day : kWeekdayNames) row.emplace_back(day);
    row.emplace_back("total cases");
    detail::write_csv_row(out, row, ',');

    for (std::size_t m = 0; m < 12; ++m) {
        row.clear();
        row.emplace_back(kMonthNames[m]);
        for (std::size_t d = 0; d < 7; ++d) row.push_back(std::to_string(table.counts[m][d]));
        row.push_back(std::to_string(table.row_totals[m]));
        detail::write_csv_row(out, row, ',');
    }
}

MonthDayTable read_month_day_csv(std::istream& in) {
    detail::CsvReader reader(in, ',');
    const auto header = reader.next_row();
    if (!header || header->size() != 9) {
        throw DataError("month-day CSV: malformed or missing header");
    }

    MonthDayTable table;
    std::size_t month_rows = 0;
    while (auto row = reader.next_row()) {
        if (row->size() != 9) {
            throw DataError("month-day CSV: row has " + std::to_string(row->size()) +
                            " fields, expected 9");
        }
        const auto name_it =
            std::find_if(kMonthNames.begin(), kMonthNames.end(),
                         [&](const char* name) { return name == (*row)[0]; });
        if (name_it == kMonthNames.end()) {
            throw DataError("month-day CSV: unknown month \"" + (*row)[0] + "\"");
        }
        const auto m = static_cast<std::size_t>(name_it - kMonthNames.begin());
        std::size_t row_sum = 0;
        for (std::size_t d = 0; d < 7; ++d) {
            const auto v = detail::parse_int_lenient((*row)[d + 1]);
            if (!v || *v < 0) throw DataError("month-day CSV: bad count \"" + (*row)[d + 1] + "\"");
            table.counts[m][d] = static_cast<std::size_t>(*v);
            row_sum += table.counts[m][d];
        }
        const auto total = detail::parse_int_lenient((*row)[8]);
        if (!total || static_cast<std::size_t>(*total) != row_sum) {
            throw DataError("month-day CSV: total for " + (*row)[0] + " does not match its cells");
        }
        table.row_totals[m] = row_sum;
        ++month_rows;
    }
    if (month_rows != 12) {
        throw DataError("month-day CSV: expected 12 month rows, got " + std::to_string(month_rows));
    }
    for (std::size_t m = 0; m < 12; ++m) table.grand_total += table.row_totals[m];
    return table;
}

void write_hour_csv(std::ostream& out, const HourHistogram& histogram) {
    out << "hour,count\n";
    for (std::size_t h = 0; h < histogram.counts.size(); ++h) {
        out << h << ',' << histogram.counts[h] << '\n';
    }
}

void write_feature_csv(std::ostream& out, const FeatureBreakdown& breakdown) {
    out << "category,count,percentage\n";
    std::vector<std::string> row;
    for (const FeatureCategory& c : breakdown.categories) {
        row = {c.category, std::to_string(c.count), format_percentage(c.percentage)};
        detail::write_csv_row(out, row, ',');
    }
}

}  // namespace hotspot::temporal
