#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hotspot/errors.hpp"
#include "pipeline.hpp"

namespace {

using hotspot::cli::RunConfig;

// "WIDTHxHEIGHT" -> grid dimensions.
void apply_grid(RunConfig& config, const std::string& grid) {
    const auto x = grid.find_first_of("xX");
    std::size_t w_end = 0;
    std::size_t h_end = 0;
    try {
        if (x == std::string::npos || x == 0 || x + 1 == grid.size()) throw std::invalid_argument("");
        config.grid_width = std::stoi(grid.substr(0, x), &w_end);
        config.grid_height = std::stoi(grid.substr(x + 1), &h_end);
        if (w_end != x || h_end != grid.size() - x - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw hotspot::ConfigError("grid: expected WIDTHxHEIGHT, got \"" + grid + "\"");
    }
}

void apply_features(RunConfig& config, const std::vector<std::string>& specs) {
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
            throw hotspot::ConfigError("feature: expected CANONICAL=COLUMN, got \"" + spec + "\"");
        }
        config.schema.feature_columns.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig config;
    config.schema.latitude_column = "lat";
    config.schema.longitude_column = "lon";

    std::string input;
    std::string out_dir = "out";
    std::string grid = "512x512";
    std::string month_col;
    std::string weekday_col;
    std::string hour_col;
    std::vector<std::string> feature_specs;

    CLI::App app{"Point-event hotspot mining: clean, cluster, rasterize, and summarize\n"
                 "geolocated incident records."};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key=value config file; command-line flags take precedence");

    app.add_option("--input", input, "Input CSV (raw for clean; cleaned records otherwise)");
    app.add_option("--out-dir", out_dir, "Directory for stage outputs")->capture_default_str();
    app.add_option("--delimiter", config.delimiter, "Field delimiter of the raw input")
        ->capture_default_str();
    app.add_option("--lat-col", config.schema.latitude_column, "Latitude column in the raw input")
        ->capture_default_str();
    app.add_option("--lon-col", config.schema.longitude_column, "Longitude column in the raw input")
        ->capture_default_str();
    app.add_option("--month-col", month_col, "Month column (1-12) in the raw input");
    app.add_option("--weekday-col", weekday_col, "Weekday column (0=Sunday..6) in the raw input");
    app.add_option("--hour-col", hour_col, "Hour column (0-23) in the raw input");
    app.add_option("--feature", feature_specs,
                   "Categorical column to carry through, as CANONICAL=COLUMN (repeatable)");

    app.add_option("--eps-km", config.db.eps_km, "Neighborhood radius in km for density clustering")
        ->capture_default_str();
    app.add_option("--min-pts", config.db.min_pts,
                   "Minimum neighborhood size (self included) for a core point")
        ->capture_default_str();

    app.add_option("--alpha", config.alpha, "Kernel bandwidth (squared units of the kernel space)")
        ->capture_default_str();
    app.add_option("--grid", grid, "Raster size as WIDTHxHEIGHT")->capture_default_str();
    app.add_option("--padding", config.padding, "Raster bounding-box padding fraction")
        ->capture_default_str();
    app.add_flag("--normalize,!--no-normalize", config.normalize,
                 "Scale raster values to [0,1] by the maximum");
    app.add_option("--kernel-space", config.kernel_space, "Kernel distance space")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, hotspot::heatmap::KernelSpace>{
                {"degrees", hotspot::heatmap::KernelSpace::degrees},
                {"km", hotspot::heatmap::KernelSpace::km}},
            CLI::ignore_case));

    app.add_option("--zooms", config.zooms, "Zoom levels to cluster markers at (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--zoom-max", config.zoom_max, "Deepest zoom level of the projection")
        ->capture_default_str();
    app.add_option("--radius-px", config.radius_px, "Marker clustering radius in pixels")
        ->capture_default_str();
    app.add_option("--projection", config.projection, "Pixel projection")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, hotspot::geo::Projection>{
                {"equirectangular", hotspot::geo::Projection::equirectangular},
                {"web-mercator", hotspot::geo::Projection::web_mercator},
                {"web_mercator", hotspot::geo::Projection::web_mercator}},
            CLI::ignore_case));
    app.add_option("--scale-c", config.scale_c, "Degrees-to-pixels scale at the deepest zoom")
        ->capture_default_str();

    app.add_option("--seed", config.seed, "Run seed, recorded in the manifest")
        ->capture_default_str();

    auto* clean = app.add_subcommand("clean", "Parse raw records, drop bad coordinates, "
                                              "write cleaned CSV and a report");
    auto* cluster = app.add_subcommand("cluster", "Density-cluster cleaned records; write GeoJSON "
                                                  "plus summary and silhouette JSON");
    auto* heat = app.add_subcommand("heatmap", "Render a kernel-density raster (ESRI ASCII + PGM)");
    auto* markers = app.add_subcommand("markers", "Greedy marker clustering per zoom level");
    auto* temporal = app.add_subcommand("temporal", "Month/weekday, hourly, and feature tables");
    auto* report = app.add_subcommand("report", "Collect stage outputs into manifest.json");
    for (auto* sub : {clean, cluster, heat, markers, temporal, report}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        config.input = input;
        config.out_dir = out_dir;
        if (!month_col.empty()) config.schema.month_column = month_col;
        if (!weekday_col.empty()) config.schema.weekday_column = weekday_col;
        if (!hour_col.empty()) config.schema.hour_column = hour_col;
        apply_features(config, feature_specs);
        apply_grid(config, grid);
        config.validate_common();

        if (clean->parsed()) return hotspot::cli::cmd_clean(config);
        if (cluster->parsed()) return hotspot::cli::cmd_cluster(config);
        if (heat->parsed()) return hotspot::cli::cmd_heatmap(config);
        if (markers->parsed()) return hotspot::cli::cmd_markers(config);
        if (temporal->parsed()) return hotspot::cli::cmd_temporal(config);
        if (report->parsed()) return hotspot::cli::cmd_report(config);
        std::cerr << "error: no subcommand given\n";
        return 1;
    } catch (const hotspot::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return hotspot::exit_code_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
