#include "hotspot/ingest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>

#include "hotspot/errors.hpp"
#include "internal/csv.hpp"

namespace hotspot::ingest {

namespace {

constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

std::size_t resolve_column(const std::unordered_map<std::string, std::size_t>& header,
                           const std::string& name) {
    const auto it = header.find(name);
    if (it == header.end()) {
        throw SchemaError("schema column not found in header: \"" + name + "\"");
    }
    return it->second;
}

std::string_view field_at(const std::vector<std::string>& row, std::size_t index) {
    if (index == kNoColumn || index >= row.size()) return {};
    return row[index];
}

std::optional<int> parse_bounded_int(std::string_view raw, int lo, int hi) {
    const std::optional<long long> v = detail::parse_int_lenient(raw);
    if (!v || *v < lo || *v > hi) return std::nullopt;
    return static_cast<int>(*v);
}

}  // namespace

void SchemaMap::validate() const {
    if (latitude_column.empty()) throw ParamError("latitude_column: must be non-empty");
    if (longitude_column.empty()) throw ParamError("longitude_column: must be non-empty");
    if (latitude_column == longitude_column) {
        throw ParamError("latitude_column/longitude_column: must be distinct (both \"" +
                         latitude_column + "\")");
    }
}

std::pair<std::vector<EventRecord>, CleanReport> load_records(std::istream& source,
                                                              const SchemaMap& schema,
                                                              char delimiter) {
    schema.validate();
    if (source.bad()) throw InputError("input stream is unreadable");

    detail::CsvReader reader(source, delimiter);
    const auto header_row = reader.next_row();
    if (!header_row) {
        if (reader.bad()) throw InputError("input stream is unreadable");
        throw InputError("input is empty: no header row");
    }

    std::unordered_map<std::string, std::size_t> header;
    for (std::size_t i = 0; i < header_row->size(); ++i) {
        header.emplace((*header_row)[i], i);  // first occurrence wins
    }

    const std::size_t lat_idx = resolve_column(header, schema.latitude_column);
    const std::size_t lon_idx = resolve_column(header, schema.longitude_column);
    const std::size_t month_idx =
        schema.month_column ? resolve_column(header, *schema.month_column) : kNoColumn;
    const std::size_t weekday_idx =
        schema.weekday_column ? resolve_column(header, *schema.weekday_column) : kNoColumn;
    const std::size_t hour_idx =
        schema.hour_column ? resolve_column(header, *schema.hour_column) : kNoColumn;
    std::vector<std::pair<std::string, std::size_t>> feature_idx;
    feature_idx.reserve(schema.feature_columns.size());
    for (const auto& [canonical, column] : schema.feature_columns) {
        feature_idx.emplace_back(canonical, resolve_column(header, column));
    }

    std::vector<EventRecord> records;
    CleanReport report;
    std::set<std::pair<double, double>> seen;

    while (auto row = reader.next_row()) {
        ++report.rows_read;

        const std::optional<double> lat = detail::parse_double(field_at(*row, lat_idx));
        const std::optional<double> lon = detail::parse_double(field_at(*row, lon_idx));
        const bool lat_in_range = lat && *lat >= -90.0 && *lat <= 90.0;
        const bool lon_in_range = lon && *lon >= -180.0 && *lon <= 180.0;
        if (!lat_in_range || !lon_in_range) {
            ++report.rows_dropped_missing_coords;
            if ((lat && !lat_in_range) || (lon && !lon_in_range)) {
                ++report.rows_out_of_range_coords;
            }
            continue;
        }

        EventRecord rec;
        rec.lat = *lat;
        rec.lon = *lon;
        rec.month = parse_bounded_int(field_at(*row, month_idx), 1, 12);
        rec.weekday = parse_bounded_int(field_at(*row, weekday_idx), 0, 6);
        rec.hour = parse_bounded_int(field_at(*row, hour_idx), 0, 23);
        for (const auto& [canonical, idx] : feature_idx) {
            const std::string_view value = field_at(*row, idx);
            if (!detail::is_blank(value)) rec.features.emplace(canonical, std::string(value));
        }

        if (!seen.emplace(rec.lat, rec.lon).second) ++report.duplicate_coordinate_rows;
        records.push_back(std::move(rec));
        ++report.rows_retained;
    }
    if (reader.bad()) throw InputError("read failure while scanning rows");

    return {std::move(records), report};
}

FieldAbsenceSummary detect_quality(const std::vector<EventRecord>& records) {
    FieldAbsenceSummary summary;
    summary.records = records.size();
    for (const EventRecord& r : records) {
        if (!r.month) ++summary.month_absent;
        if (!r.weekday) ++summary.weekday_absent;
        if (!r.hour) ++summary.hour_absent;
    }
    return summary;
}

void write_records(std::ostream& out, const std::vector<EventRecord>& records) {
    const std::vector<std::string> features = feature_names(records);

    std::vector<std::string> row = {"lat", "lon", "month", "weekday", "hour"};
    row.insert(row.end(), features.begin(), features.end());
    detail::write_csv_row(out, row, ',');

    for (const EventRecord& r : records) {
        row.clear();
        row.push_back(detail::format_double(r.lat));
        row.push_back(detail::format_double(r.lon));
        row.push_back(r.month ? std::to_string(*r.month) : std::string());
        row.push_back(r.weekday ? std::to_string(*r.weekday) : std::string());
        row.push_back(r.hour ? std::to_string(*r.hour) : std::string());
        for (const std::string& name : features) {
            const auto it = r.features.find(name);
            row.push_back(it == r.features.end() ? std::string() : it->second);
        }
        detail::write_csv_row(out, row, ',');
    }
}

SchemaMap canonical_schema(const std::vector<std::string>& feature_names) {
    SchemaMap schema;
    schema.latitude_column = "lat";
    schema.longitude_column = "lon";
    schema.month_column = "month";
    schema.weekday_column = "weekday";
    schema.hour_column = "hour";
    for (const std::string& name : feature_names) {
        schema.feature_columns.emplace_back(name, name);
    }
    return schema;
}

std::vector<std::string> feature_names(const std::vector<EventRecord>& records) {
    std::set<std::string> names;
    for (const EventRecord& r : records) {
        for (const auto& [name, value] : r.features) names.insert(name);
    }
    return {names.begin(), names.end()};
}

}  // namespace hotspot::ingest
