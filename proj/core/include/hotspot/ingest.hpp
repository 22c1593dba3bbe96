#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hotspot::ingest {

// Maps source columns of a delimited file onto the canonical record model.
// Only the mapped subset of a (possibly very wide) source file is loaded.
struct SchemaMap {
    std::string latitude_column;
    std::string longitude_column;
    std::optional<std::string> month_column;
    std::optional<std::string> weekday_column;
    std::optional<std::string> hour_column;
    // (canonical name, source column name)
    std::vector<std::pair<std::string, std::string>> feature_columns;

    // Throws ParamError unless latitude/longitude columns are non-empty
    // and distinct.
    void validate() const;
};

// One cleaned point event. Weekday encoding: 0 = Sunday .. 6 = Saturday.
struct EventRecord {
    double lat = 0.0;
    double lon = 0.0;
    std::optional<int> month;    // 1-12
    std::optional<int> weekday;  // 0-6
    std::optional<int> hour;     // 0-23
    std::map<std::string, std::string> features;  // canonical name -> value

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct CleanReport {
    std::size_t rows_read = 0;
    std::size_t rows_dropped_missing_coords = 0;
    std::size_t rows_retained = 0;
    // Informational: retained rows whose coordinate pair repeats an earlier row.
    std::size_t duplicate_coordinate_rows = 0;
    // Informational subset of rows_dropped_missing_coords: rows whose
    // coordinates parsed but fell outside [-90,90] x [-180,180].
    std::size_t rows_out_of_range_coords = 0;
};

// Per-field absence counts over a record list.
struct FieldAbsenceSummary {
    std::size_t records = 0;
    std::size_t month_absent = 0;
    std::size_t weekday_absent = 0;
    std::size_t hour_absent = 0;
};

// Loads delimited text with a header row, keeping rows with valid coordinates.
// Rows with missing, unparseable, or out-of-range lat/lon are dropped and
// counted; rows repeating an earlier coordinate pair are retained and counted.
// Missing non-coordinate fields stay absent. Retained records keep input order.
// Throws SchemaError when a mapped column is missing from the header and
// InputError when the stream cannot be read.
std::pair<std::vector<EventRecord>, CleanReport> load_records(std::istream& source,
                                                              const SchemaMap& schema,
                                                              char delimiter = ',');

FieldAbsenceSummary detect_quality(const std::vector<EventRecord>& records);

// Canonical-form CSV: header "lat,lon,month,weekday,hour,<features...>" with
// feature columns in sorted order; absent values are empty fields; doubles
// use shortest round-trip formatting. Loading the output back with
// canonical_schema() reproduces the record list exactly.
void write_records(std::ostream& out, const std::vector<EventRecord>& records);

// Schema map matching write_records output for the given feature names.
SchemaMap canonical_schema(const std::vector<std::string>& feature_names);

// Sorted union of feature names present across records.
std::vector<std::string> feature_names(const std::vector<EventRecord>& records);

}  // namespace hotspot::ingest
