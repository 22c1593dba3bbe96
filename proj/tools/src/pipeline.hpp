#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hotspot/dbscan.hpp"
#include "hotspot/geo.hpp"
#include "hotspot/heatmap.hpp"
#include "hotspot/ingest.hpp"

namespace hotspot::cli {

// One run's worth of pipeline settings; every subcommand reads the subset it
// needs. Numeric fields mirror the module parameter defaults.
struct RunConfig {
    std::filesystem::path input;   // raw CSV for clean; cleaned CSV otherwise
    std::filesystem::path out_dir = "out";
    std::string delimiter = ",";

    ingest::SchemaMap schema;

    dbscan::DbscanParams db;

    double alpha = 1e-4;
    int grid_width = 512;
    int grid_height = 512;
    double padding = 0.05;  // bbox padding fraction for rasters
    bool normalize = true;
    heatmap::KernelSpace kernel_space = heatmap::KernelSpace::degrees;

    std::vector<int> zooms = {5, 9, 12, 15, 18, 22};
    int zoom_max = geo::kMaxZoom;
    double radius_px = 80.0;
    double scale_c = geo::default_scale_c();
    geo::Projection projection = geo::Projection::equirectangular;

    std::uint64_t seed = 0;

    // Throws ParamError/ConfigError naming the offending parameter.
    void validate_common() const;

    std::filesystem::path cleaned_csv_path() const { return out_dir / "clean.csv"; }
    // The cleaned-records file a downstream stage should read: --input when
    // given, else out_dir/clean.csv.
    std::filesystem::path stage_input_path() const {
        return input.empty() ? cleaned_csv_path() : input;
    }
};

int cmd_clean(const RunConfig& config);
int cmd_cluster(const RunConfig& config);
int cmd_heatmap(const RunConfig& config);
int cmd_markers(const RunConfig& config);
int cmd_temporal(const RunConfig& config);
int cmd_report(const RunConfig& config);

// Streaming FNV-1a 64-bit digest of a file, as 16 lowercase hex digits.
// Identifies dataset/artifact versions; not a cryptographic hash.
std::string fnv1a64_hex_of_file(const std::filesystem::path& path);

}  // namespace hotspot::cli
