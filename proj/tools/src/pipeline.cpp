#include "pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hotspot/errors.hpp"
#include "hotspot/geojson.hpp"
#include "hotspot/markers.hpp"
#include "hotspot/quality.hpp"
#include "hotspot/raster_io.hpp"
#include "hotspot/temporal.hpp"

namespace hotspot::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("out-dir is not a writable directory: " + dir.string());
    }
}

// Opens for writing, throws IoError naming the path on failure.
std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write: " + path.string());
    return out;
}

void finish_output(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

void write_json_file(const fs::path& path, const json& doc) {
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
    finish_output(out, path);
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read artifact: " + path.string());
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed artifact " + path.string() + ": " + e.what());
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[80];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

// Minimal RFC-4180 split of a single physical line (no embedded newlines).
// Enough for canonical headers and the small CSV artifacts report reads back.
std::vector<std::string> split_csv_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r' || i + 1 != line.size()) {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

struct CleanedInput {
    std::vector<ingest::EventRecord> records;
    std::vector<std::string> features;
    fs::path path;
};

// Reads a cleaned-records CSV produced by the clean stage (or a compatible
// file passed via --input): fixed lat,lon,month,weekday,hour prefix, then
// zero or more feature columns.
CleanedInput load_cleaned(const RunConfig& config) {
    const fs::path path = config.stage_input_path();
    std::ifstream probe(path, std::ios::binary);
    if (!probe) {
        if (config.input.empty()) {
            throw InputError("cleaned records not found: " + path.string() +
                             " (run the clean stage first or pass --input)");
        }
        throw InputError("cannot open input: " + path.string());
    }
    std::string header;
    if (!std::getline(probe, header)) {
        throw InputError("input is empty: no header row in " + path.string());
    }
    probe.close();

    const auto columns = split_csv_line(header, ',');
    const std::vector<std::string> prefix = {"lat", "lon", "month", "weekday", "hour"};
    if (columns.size() < prefix.size() ||
        !std::equal(prefix.begin(), prefix.end(), columns.begin())) {
        throw SchemaError("not a cleaned-records file (expected header "
                          "lat,lon,month,weekday,hour[,...]): " +
                          path.string());
    }
    std::vector<std::string> features(columns.begin() + prefix.size(), columns.end());

    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input: " + path.string());
    auto [records, report] = ingest::load_records(in, ingest::canonical_schema(features));
    (void)report;
    return {std::move(records), std::move(features), path};
}

std::vector<geo::GeoPoint> points_of(const std::vector<ingest::EventRecord>& records) {
    std::vector<geo::GeoPoint> points;
    points.reserve(records.size());
    for (const auto& r : records) points.push_back({r.lat, r.lon});
    return points;
}

// Raster extent for a point set; degenerate spans are widened inside
// bounding_box, and an empty set falls back to a tiny box around the origin
// so empty inputs still produce a valid all-zero raster.
geo::BBox raster_bbox(const std::vector<geo::GeoPoint>& points, double padding) {
    if (points.empty()) return {-0.0005, 0.0005, -0.0005, 0.0005};
    return geo::bounding_box(points, padding);
}

std::string sanitize_name(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
        if (!ok) c = '_';
    }
    return out;
}

json projection_name(geo::Projection p) {
    return p == geo::Projection::equirectangular ? "equirectangular" : "web-mercator";
}

// --- report helpers ---------------------------------------------------------

fs::path require_artifact(const fs::path& out_dir, const std::string& name) {
    fs::path p = out_dir / name;
    if (!fs::exists(p)) throw InputError("missing upstream artifact: " + p.string());
    return p;
}

json artifact_entry(const fs::path& out_dir, const fs::path& path) {
    json entry;
    entry["path"] = fs::relative(path, out_dir).generic_string();
    entry["bytes"] = static_cast<std::uint64_t>(fs::file_size(path));
    entry["fnv1a64"] = fnv1a64_hex_of_file(path);
    return entry;
}

// Artifacts matching <prefix><middle><suffix> in out_dir, sorted by name.
std::vector<fs::path> matching_artifacts(const fs::path& out_dir, const std::string& prefix,
                                         const std::string& suffix) {
    std::vector<fs::path> found;
    for (const auto& entry : fs::directory_iterator(out_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() <= prefix.size() + suffix.size()) continue;
        if (name.rfind(prefix, 0) != 0) continue;
        if (name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
        found.push_back(entry.path());
    }
    std::sort(found.begin(), found.end());
    return found;
}

json month_day_headline(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read artifact: " + path.string());
    const auto table = temporal::read_month_day_csv(in);
    json headline;
    if (table.grand_total == 0) {
        headline["max_month"] = nullptr;
        headline["max_weekday"] = nullptr;
        return headline;
    }
    const auto max_row =
        std::max_element(table.row_totals.begin(), table.row_totals.end()) - table.row_totals.begin();
    std::array<std::size_t, 7> column_totals{};
    for (const auto& row : table.counts) {
        for (std::size_t d = 0; d < 7; ++d) column_totals[d] += row[d];
    }
    const auto max_col =
        std::max_element(column_totals.begin(), column_totals.end()) - column_totals.begin();
    headline["max_month"] = temporal::kMonthNames[static_cast<std::size_t>(max_row)];
    headline["max_weekday"] = temporal::kWeekdayNames[static_cast<std::size_t>(max_col)];
    const auto shares = temporal::weekday_shares(table);
    json share_obj;
    for (std::size_t d = 0; d < 7; ++d) share_obj[temporal::kWeekdayNames[d]] = shares[d];
    headline["weekday_share_percent"] = std::move(share_obj);
    return headline;
}

std::optional<int> hourly_max(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read artifact: " + path.string());
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line, ',') != std::vector<std::string>{"hour", "count"}) {
        throw DataError("malformed artifact " + path.string() + ": expected hour,count header");
    }
    std::optional<int> best_hour;
    std::size_t best_count = 0;
    std::size_t total = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line, ',');
        if (fields.size() != 2) throw DataError("malformed artifact " + path.string());
        const int hour = std::stoi(fields[0]);
        const auto count = static_cast<std::size_t>(std::stoull(fields[1]));
        total += count;
        if (count > best_count) {
            best_count = count;
            best_hour = hour;
        }
    }
    if (total == 0) return std::nullopt;
    return best_hour;
}

json feature_headline(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read artifact: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError("malformed artifact " + path.string());
    json top;
    if (std::getline(in, line) && !line.empty() && line != "\r") {
        const auto fields = split_csv_line(line, ',');
        if (fields.size() != 3) throw DataError("malformed artifact " + path.string());
        top["category"] = fields[0];
        top["count"] = static_cast<std::uint64_t>(std::stoull(fields[1]));
        top["percentage"] = std::stod(fields[2]);
    } else {
        top = nullptr;
    }
    return top;
}

json marker_headline(const fs::path& path) {
    const json doc = read_json_file(path);
    json entry;
    std::vector<std::uint64_t> counts;
    if (doc.contains("features")) {
        for (const auto& f : doc["features"]) {
            counts.push_back(f.at("properties").at("count").get<std::uint64_t>());
        }
    }
    std::sort(counts.rbegin(), counts.rend());
    entry["clusters"] = counts.size();
    json top = json::array();
    for (std::size_t i = 0; i < counts.size() && i < 5; ++i) top.push_back(counts[i]);
    entry["top_counts"] = std::move(top);
    return entry;
}

json parameters_json(const RunConfig& config) {
    json p;
    p["eps_km"] = config.db.eps_km;
    p["min_pts"] = config.db.min_pts;
    p["alpha"] = config.alpha;
    p["grid"] = std::to_string(config.grid_width) + "x" + std::to_string(config.grid_height);
    p["padding"] = config.padding;
    p["normalize"] = config.normalize;
    p["kernel_space"] = config.kernel_space == heatmap::KernelSpace::degrees ? "degrees" : "km";
    p["zooms"] = config.zooms;
    p["zoom_max"] = config.zoom_max;
    p["radius_px"] = config.radius_px;
    p["projection"] = projection_name(config.projection);
    p["scale_c"] = config.scale_c;
    p["seed"] = config.seed;
    p["delimiter"] = config.delimiter;
    return p;
}

}  // namespace

std::string fnv1a64_hex_of_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read: " + path.string());
    std::uint64_t hash = 14695981039346656037ull;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const auto got = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ull;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

void RunConfig::validate_common() const {
    if (delimiter.size() != 1) throw ConfigError("delimiter: must be a single character");
    if (padding < 0.0) throw ConfigError("padding: must be non-negative");
    if (zoom_max < 0 || zoom_max > geo::kMaxZoom) {
        throw ConfigError("zoom_max: must be between 0 and " + std::to_string(geo::kMaxZoom));
    }
    for (int z : zooms) {
        if (z < 0 || z > zoom_max) {
            throw ConfigError("zooms: level " + std::to_string(z) + " outside [0, " +
                              std::to_string(zoom_max) + "]");
        }
    }
}

int cmd_clean(const RunConfig& config) {
    if (config.input.empty()) throw ConfigError("input: required for the clean stage");
    config.schema.validate();
    ensure_out_dir(config.out_dir);

    // With the stock lat/lon-only schema, a file that is already in cleaned
    // form keeps all its columns, making a second clean pass a no-op.
    ingest::SchemaMap schema = config.schema;
    const bool stock_schema = schema.latitude_column == "lat" && schema.longitude_column == "lon" &&
                              !schema.month_column && !schema.weekday_column &&
                              !schema.hour_column && schema.feature_columns.empty();
    if (stock_schema) {
        std::ifstream probe(config.input, std::ios::binary);
        if (!probe) throw InputError("cannot open input: " + config.input.string());
        std::string header;
        if (std::getline(probe, header)) {
            const auto columns = split_csv_line(header, config.delimiter[0]);
            const std::vector<std::string> prefix = {"lat", "lon", "month", "weekday", "hour"};
            if (columns.size() >= prefix.size() &&
                std::equal(prefix.begin(), prefix.end(), columns.begin())) {
                schema = ingest::canonical_schema(
                    {columns.begin() + prefix.size(), columns.end()});
            }
        }
    }

    std::ifstream in(config.input, std::ios::binary);
    if (!in) throw InputError("cannot open input: " + config.input.string());
    auto [records, report] = ingest::load_records(in, schema, config.delimiter[0]);
    in.close();

    const fs::path csv_path = config.cleaned_csv_path();
    {
        auto out = open_output(csv_path);
        ingest::write_records(out, records);
        finish_output(out, csv_path);
    }

    const auto absence = ingest::detect_quality(records);
    json doc;
    doc["input"]["path"] = config.input.string();
    doc["input"]["fnv1a64"] = fnv1a64_hex_of_file(config.input);
    doc["rows_read"] = report.rows_read;
    doc["rows_retained"] = report.rows_retained;
    doc["rows_dropped_missing_coords"] = report.rows_dropped_missing_coords;
    doc["rows_out_of_range_coords"] = report.rows_out_of_range_coords;
    doc["duplicate_coordinate_rows"] = report.duplicate_coordinate_rows;
    doc["field_absence"]["records"] = absence.records;
    doc["field_absence"]["month_absent"] = absence.month_absent;
    doc["field_absence"]["weekday_absent"] = absence.weekday_absent;
    doc["field_absence"]["hour_absent"] = absence.hour_absent;
    write_json_file(config.out_dir / "clean_report.json", doc);
    return 0;
}

int cmd_cluster(const RunConfig& config) {
    config.db.validate();
    const auto cleaned = load_cleaned(config);
    ensure_out_dir(config.out_dir);
    const auto points = points_of(cleaned.records);

    const auto clustering = dbscan::cluster(points, config.db);
    const auto summaries = dbscan::cluster_summary(points, clustering);

    {
        const fs::path path = config.out_dir / "clusters.geojson";
        auto out = open_output(path);
        geojson::write_clustering(out, points, clustering, summaries);
        finish_output(out, path);
    }

    std::size_t noise = 0;
    for (int label : clustering.labels) {
        if (label == dbscan::kNoise) ++noise;
    }

    json summary;
    summary["params"]["eps_km"] = config.db.eps_km;
    summary["params"]["min_pts"] = config.db.min_pts;
    summary["total_points"] = points.size();
    summary["cluster_count"] = clustering.cluster_count;
    summary["noise_count"] = noise;
    json clusters = json::array();
    for (const auto& s : summaries) {
        json c;
        c["id"] = s.cluster_id;
        c["member_count"] = s.member_count;
        c["centroid"] = {s.centroid.lon, s.centroid.lat};
        c["bbox"]["min_lat"] = s.bounds.min_lat;
        c["bbox"]["max_lat"] = s.bounds.max_lat;
        c["bbox"]["min_lon"] = s.bounds.min_lon;
        c["bbox"]["max_lon"] = s.bounds.max_lon;
        clusters.push_back(std::move(c));
    }
    summary["clusters"] = std::move(clusters);
    write_json_file(config.out_dir / "cluster_summary.json", summary);

    json sil;
    try {
        const auto result = quality::silhouette(points, clustering);
        sil["defined"] = true;
        sil["mean_score"] = result.mean_score;
        sil["clustered_points"] = result.per_point.size();
        sil["excluded_noise"] = result.excluded_noise;
        const auto [lo, hi] = std::minmax_element(result.per_point.begin(), result.per_point.end());
        sil["min_score"] = *lo;
        sil["max_score"] = *hi;
    } catch (const DataError& e) {
        sil["defined"] = false;
        sil["reason"] = e.what();
    }
    write_json_file(config.out_dir / "silhouette.json", sil);
    return 0;
}

int cmd_heatmap(const RunConfig& config) {
    heatmap::HeatmapParams params;
    params.alpha = config.alpha;
    params.width = config.grid_width;
    params.height = config.grid_height;
    params.normalize = config.normalize;
    params.space = config.kernel_space;
    params.bbox = {-0.0005, 0.0005, -0.0005, 0.0005};  // placeholder for validate()
    params.validate();

    const auto cleaned = load_cleaned(config);
    ensure_out_dir(config.out_dir);
    const auto points = points_of(cleaned.records);
    params.bbox = raster_bbox(points, config.padding);

    const auto raster = heatmap::render(points, params);
    {
        const fs::path path = config.out_dir / "heatmap.asc";
        auto out = open_output(path);
        raster_io::write_esri_ascii(out, raster);
        finish_output(out, path);
    }
    {
        const fs::path path = config.out_dir / "heatmap.pgm";
        auto out = open_output(path);
        raster_io::write_pgm(out, raster);
        finish_output(out, path);
    }
    return 0;
}

int cmd_markers(const RunConfig& config) {
    if (config.zooms.empty()) throw ConfigError("zooms: at least one zoom level is required");
    markers::MarkerParams params;
    params.zoom_max = config.zoom_max;
    params.radius_px = config.radius_px;
    params.scale_c = config.scale_c;
    params.projection = config.projection;
    params.zoom_current = config.zooms.front();
    params.validate();

    const auto cleaned = load_cleaned(config);
    ensure_out_dir(config.out_dir);
    const auto points = points_of(cleaned.records);

    for (int zoom : config.zooms) {
        params.zoom_current = zoom;
        const auto set = markers::cluster_markers(points, params);
        const fs::path path = config.out_dir / ("markers_z" + std::to_string(zoom) + ".geojson");
        auto out = open_output(path);
        geojson::write_marker_clusters(out, set);
        finish_output(out, path);
    }
    return 0;
}

int cmd_temporal(const RunConfig& config) {
    const auto cleaned = load_cleaned(config);
    ensure_out_dir(config.out_dir);

    {
        const fs::path path = config.out_dir / "month_day.csv";
        auto out = open_output(path);
        temporal::write_month_day_csv(out, temporal::aggregate_month_day(cleaned.records));
        finish_output(out, path);
    }
    {
        const fs::path path = config.out_dir / "hourly.csv";
        auto out = open_output(path);
        temporal::write_hour_csv(out, temporal::aggregate_hour(cleaned.records));
        finish_output(out, path);
    }
    for (const auto& feature : cleaned.features) {
        const auto breakdown = temporal::aggregate_feature(cleaned.records, feature, cleaned.features);
        const fs::path path = config.out_dir / ("feature_" + sanitize_name(feature) + ".csv");
        auto out = open_output(path);
        temporal::write_feature_csv(out, breakdown);
        finish_output(out, path);
    }
    return 0;
}

int cmd_report(const RunConfig& config) {
    const fs::path& dir = config.out_dir;
    if (!fs::is_directory(dir)) {
        throw InputError("missing upstream artifact: " + dir.string() + " is not a directory");
    }

    const fs::path clean_csv = require_artifact(dir, "clean.csv");
    const fs::path clean_report = require_artifact(dir, "clean_report.json");
    const fs::path clusters_geojson = require_artifact(dir, "clusters.geojson");
    const fs::path cluster_summary = require_artifact(dir, "cluster_summary.json");
    const fs::path silhouette = require_artifact(dir, "silhouette.json");
    const fs::path month_day = require_artifact(dir, "month_day.csv");
    const fs::path hourly = require_artifact(dir, "hourly.csv");

    json manifest;
    manifest["generated_at"] = utc_timestamp();

    const json clean_doc = read_json_file(clean_report);
    manifest["input"]["path"] = clean_doc.at("input").at("path");
    manifest["input"]["fnv1a64"] = clean_doc.at("input").at("fnv1a64");
    manifest["input"]["rows_read"] = clean_doc.at("rows_read");
    manifest["input"]["rows_retained"] = clean_doc.at("rows_retained");
    manifest["input"]["rows_dropped_missing_coords"] = clean_doc.at("rows_dropped_missing_coords");
    manifest["input"]["duplicate_coordinate_rows"] = clean_doc.at("duplicate_coordinate_rows");

    manifest["parameters"] = parameters_json(config);

    json artifacts;
    artifacts["clean_csv"] = artifact_entry(dir, clean_csv);
    artifacts["clean_report"] = artifact_entry(dir, clean_report);
    artifacts["clusters_geojson"] = artifact_entry(dir, clusters_geojson);
    artifacts["cluster_summary"] = artifact_entry(dir, cluster_summary);
    artifacts["silhouette"] = artifact_entry(dir, silhouette);
    const bool have_heatmap = fs::exists(dir / "heatmap.asc");
    if (have_heatmap) {
        artifacts["heatmap_asc"] = artifact_entry(dir, dir / "heatmap.asc");
        if (fs::exists(dir / "heatmap.pgm")) {
            artifacts["heatmap_pgm"] = artifact_entry(dir, dir / "heatmap.pgm");
        }
    }
    const auto marker_files = matching_artifacts(dir, "markers_z", ".geojson");
    for (const auto& path : marker_files) {
        const std::string stem = path.stem().string();  // markers_z<zoom>
        artifacts[stem] = artifact_entry(dir, path);
    }
    artifacts["month_day_csv"] = artifact_entry(dir, month_day);
    artifacts["hourly_csv"] = artifact_entry(dir, hourly);
    const auto feature_files = matching_artifacts(dir, "feature_", ".csv");
    for (const auto& path : feature_files) {
        artifacts[path.stem().string()] = artifact_entry(dir, path);
    }
    manifest["artifacts"] = std::move(artifacts);

    json headline;
    headline["rows_retained"] = clean_doc.at("rows_retained");
    const json summary_doc = read_json_file(cluster_summary);
    headline["cluster_count"] = summary_doc.at("cluster_count");
    headline["noise_count"] = summary_doc.at("noise_count");
    std::uint64_t largest = 0;
    for (const auto& c : summary_doc.at("clusters")) {
        largest = std::max(largest, c.at("member_count").get<std::uint64_t>());
    }
    headline["largest_cluster_size"] = largest;
    const json sil_doc = read_json_file(silhouette);
    headline["silhouette_mean"] =
        sil_doc.at("defined").get<bool>() ? sil_doc.at("mean_score") : json(nullptr);

    const json md_headline = month_day_headline(month_day);
    for (const auto& [key, value] : md_headline.items()) headline[key] = value;
    const auto best_hour = hourly_max(hourly);
    headline["max_hour"] = best_hour ? json(*best_hour) : json(nullptr);

    json top_features;
    for (const auto& path : feature_files) {
        const std::string name = path.stem().string().substr(std::string("feature_").size());
        top_features[name] = feature_headline(path);
    }
    headline["top_feature"] = std::move(top_features);

    json marker_stats;
    for (const auto& path : marker_files) {
        const std::string stem = path.stem().string();
        marker_stats[stem.substr(std::string("markers_").size())] = marker_headline(path);
    }
    headline["markers"] = std::move(marker_stats);

    manifest["headline"] = std::move(headline);
    write_json_file(dir / "manifest.json", manifest);
    return 0;
}

}  // namespace hotspot::cli
