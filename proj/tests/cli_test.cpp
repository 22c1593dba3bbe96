// End-to-end tests that drive the installed command-line tool as a black box.
// The binary under test is located through the HOTSPOT_CLI_BIN environment
// variable, which the build sets to the freshly built tool.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hotspot/ingest.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string& cli_bin() {
    static const std::string path = [] {
        const char* env = std::getenv("HOTSPOT_CLI_BIN");
        return env ? std::string(env) : std::string();
    }();
    REQUIRE_MESSAGE(!path.empty(), "HOTSPOT_CLI_BIN must point at the tool under test");
    REQUIRE_MESSAGE(fs::exists(path), "HOTSPOT_CLI_BIN does not exist: " << path);
    return path;
}

struct TempDir {
    fs::path path;

    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "hotspot_cli_XXXXXX").string();
        char* made = mkdtemp(tmpl.data());
        REQUIRE(made != nullptr);
        path = made;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    fs::path operator/(const std::string& name) const { return path / name; }
};

struct RunResult {
    int code = -1;
    std::string output;  // stdout and stderr combined
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.is_open(), "cannot open " << path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.is_open());
    out << content;
}

RunResult run_cli(const std::string& args, const TempDir& scratch) {
    static int serial = 0;
    const fs::path capture = scratch / ("run_output_" + std::to_string(serial++) + ".txt");
    const std::string command =
        "\"" + cli_bin() + "\" " + args + " >\"" + capture.string() + "\" 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = read_file(capture);
    return result;
}

json read_json(const fs::path& path) { return json::parse(read_file(path)); }

// 300 coincident events (one dense cluster at the default 300-point
// threshold), five isolated events far enough apart to stay noise, and two
// rows that the clean stage must drop.
void write_small_raw(const fs::path& path) {
    std::ostringstream out;
    out << "lat,lon,month,weekday,hour,severity\n";
    for (int i = 0; i < 300; ++i) out << "35.1,-80.8,10,5,18,K\n";
    for (int i = 0; i < 5; ++i) {
        out << (35.2 + 0.03 * i) << ",-80.6" << ",4," << i << "," << (6 + i) << ",B\n";
    }
    out << "oops,-80.8,1,1,1,A\n";   // unparseable latitude
    out << "91.5,-80.8,1,1,1,A\n";   // latitude out of range
    write_file(path, out.str());
}

void write_fixture_raw(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.is_open());
    hotspot::ingest::write_records(out, testsupport::month_day_fixture_records());
    REQUIRE(out.good());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors and help") {
    TempDir dir;
    CHECK(run_cli("--help", dir).code == 0);
    CHECK(run_cli("clean --help", dir).code == 0);
    CHECK(run_cli("", dir).code == 1);
    CHECK(run_cli("frobnicate", dir).code == 1);
    CHECK(run_cli("clean --no-such-flag", dir).code == 1);
}

TEST_CASE("clean drops bad rows and reports what happened") {
    TempDir dir;
    write_small_raw(dir / "raw.csv");
    const auto out_dir = (dir / "out").string();

    const auto result =
        run_cli("clean --input \"" + (dir / "raw.csv").string() + "\" --out-dir " + out_dir, dir);
    CHECK(result.code == 0);

    const json report = read_json(dir / "out/clean_report.json");
    CHECK(report.at("rows_read") == 307);
    CHECK(report.at("rows_retained") == 305);
    CHECK(report.at("rows_dropped_missing_coords") == 2);
    CHECK(report.at("rows_out_of_range_coords") == 1);
    CHECK(report.at("duplicate_coordinate_rows") == 299);
    CHECK(report.at("field_absence").at("records") == 305);
    CHECK(report.at("field_absence").at("hour_absent") == 0);

    const std::string cleaned = read_file(dir / "out/clean.csv");
    CHECK(cleaned.substr(0, cleaned.find('\n')) == "lat,lon,month,weekday,hour,severity");
}

TEST_CASE("cleaning already-clean output is byte identical") {
    TempDir dir;
    write_small_raw(dir / "raw.csv");
    REQUIRE(run_cli("clean --input \"" + (dir / "raw.csv").string() + "\" --out-dir " +
                        (dir / "a").string(),
                    dir)
                .code == 0);
    REQUIRE(run_cli("clean --input \"" + (dir / "a/clean.csv").string() + "\" --out-dir " +
                        (dir / "b").string(),
                    dir)
                .code == 0);
    CHECK(read_file(dir / "a/clean.csv") == read_file(dir / "b/clean.csv"));
}

TEST_CASE("failure modes map to documented exit codes") {
    TempDir dir;
    const auto out_dir = (dir / "out").string();

    SUBCASE("clean without an input path") {
        const auto r = run_cli("clean --out-dir " + out_dir, dir);
        CHECK(r.code == 1);
    }
    SUBCASE("clean with a missing input file") {
        const auto r =
            run_cli("clean --input " + (dir / "absent.csv").string() + " --out-dir " + out_dir, dir);
        CHECK(r.code == 3);
    }
    SUBCASE("schema column absent from the header") {
        write_small_raw(dir / "raw.csv");
        const auto r = run_cli("clean --input \"" + (dir / "raw.csv").string() +
                                   "\" --lat-col nope --out-dir " + out_dir,
                               dir);
        CHECK(r.code == 2);
        CHECK(r.output.find("nope") != std::string::npos);
    }
    SUBCASE("cluster before clean") {
        const auto r = run_cli("cluster --out-dir " + out_dir, dir);
        CHECK(r.code == 3);
    }
    SUBCASE("invalid parameter names the offender") {
        write_small_raw(dir / "raw.csv");
        REQUIRE(run_cli("clean --input \"" + (dir / "raw.csv").string() + "\" --out-dir " + out_dir,
                        dir)
                    .code == 0);
        const auto r = run_cli("cluster --eps-km 0 --out-dir " + out_dir, dir);
        CHECK(r.code == 1);
        CHECK(r.output.find("eps_km") != std::string::npos);
    }
    SUBCASE("report with upstream artifacts missing") {
        write_small_raw(dir / "raw.csv");
        REQUIRE(run_cli("clean --input \"" + (dir / "raw.csv").string() + "\" --out-dir " + out_dir,
                        dir)
                    .code == 0);
        const auto r = run_cli("report --out-dir " + out_dir, dir);
        CHECK(r.code == 3);
        CHECK(r.output.find("missing upstream artifact") != std::string::npos);
    }
}

TEST_CASE("cluster stage artifacts describe the dense group and the strays") {
    TempDir dir;
    write_small_raw(dir / "raw.csv");
    const auto out_dir = (dir / "out").string();
    REQUIRE(
        run_cli("clean --input \"" + (dir / "raw.csv").string() + "\" --out-dir " + out_dir, dir)
            .code == 0);
    REQUIRE(run_cli("cluster --out-dir " + out_dir, dir).code == 0);

    const json summary = read_json(dir / "out/cluster_summary.json");
    CHECK(summary.at("total_points") == 305);
    CHECK(summary.at("cluster_count") == 1);
    CHECK(summary.at("noise_count") == 5);
    REQUIRE(summary.at("clusters").size() == 1);
    CHECK(summary.at("clusters")[0].at("member_count") == 300);
    CHECK(summary.at("clusters")[0].at("centroid")[0] == doctest::Approx(-80.8));
    CHECK(summary.at("clusters")[0].at("centroid")[1] == doctest::Approx(35.1));

    const json geo = read_json(dir / "out/clusters.geojson");
    CHECK(geo.at("type") == "FeatureCollection");
    CHECK(geo.at("features").size() == 306);  // 305 points + 1 centroid

    const json sil = read_json(dir / "out/silhouette.json");
    CHECK(sil.at("defined") == false);  // a single cluster has no defined score
}

TEST_CASE("heatmap stage writes both raster formats") {
    TempDir dir;
    write_small_raw(dir / "raw.csv");
    const auto out_dir = (dir / "out").string();
    REQUIRE(
        run_cli("clean --input \"" + (dir / "raw.csv").string() + "\" --out-dir " + out_dir, dir)
            .code == 0);
    REQUIRE(run_cli("heatmap --grid 8x8 --out-dir " + out_dir, dir).code == 0);

    const std::string asc = read_file(dir / "out/heatmap.asc");
    CHECK(asc.substr(0, asc.find('\n')) == "ncols 8");
    const std::string pgm = read_file(dir / "out/heatmap.pgm");
    CHECK(pgm.substr(0, 2) == "P2");
}

TEST_CASE("markers stage writes one artifact per zoom and conserves points") {
    TempDir dir;
    write_small_raw(dir / "raw.csv");
    const auto out_dir = (dir / "out").string();
    REQUIRE(
        run_cli("clean --input \"" + (dir / "raw.csv").string() + "\" --out-dir " + out_dir, dir)
            .code == 0);
    REQUIRE(run_cli("markers --zooms 5,22 --out-dir " + out_dir, dir).code == 0);

    for (const char* name : {"markers_z5.geojson", "markers_z22.geojson"}) {
        const json doc = read_json(dir / "out" / name);
        std::size_t total = 0;
        for (const auto& f : doc.at("features")) {
            total += f.at("properties").at("count").get<std::size_t>();
        }
        CHECK_MESSAGE(total == 305, name);
    }
}

TEST_CASE("temporal and report stages reproduce the month-by-weekday fixture") {
    TempDir dir;
    write_fixture_raw(dir / "raw.csv");
    const auto out_dir = (dir / "out").string();
    REQUIRE(
        run_cli("clean --input \"" + (dir / "raw.csv").string() + "\" --out-dir " + out_dir, dir)
            .code == 0);
    REQUIRE(run_cli("cluster --out-dir " + out_dir, dir).code == 0);
    REQUIRE(run_cli("temporal --out-dir " + out_dir, dir).code == 0);

    const std::string month_day = read_file(dir / "out/month_day.csv");
    CHECK(month_day.find("October,340,507,534,578,506,599,511,3575") != std::string::npos);
    CHECK(month_day.substr(0, month_day.find('\n')) ==
          "Months,Sunday,Monday,Tuesday,Wednesday,Thursday,Friday,Saturday,total cases");

    REQUIRE(run_cli("report --out-dir " + out_dir, dir).code == 0);
    const json manifest = read_json(dir / "out/manifest.json");
    CHECK(manifest.contains("generated_at"));
    CHECK(manifest.at("input").at("rows_retained") == 33706);

    const json& headline = manifest.at("headline");
    CHECK(headline.at("rows_retained") == 33706);
    CHECK(headline.at("max_month") == "October");
    CHECK(headline.at("max_weekday") == "Friday");
    CHECK(std::abs(headline.at("weekday_share_percent").at("Friday").get<double>() - 16.617) <=
          0.001);
    CHECK(std::abs(headline.at("weekday_share_percent").at("Sunday").get<double>() - 10.461) <=
          0.001);
    CHECK(headline.at("max_hour") == 18);
    CHECK(headline.at("top_feature").at("severity").at("category") == "A");
    CHECK(headline.at("top_feature").at("severity").at("count") == 8427);

    const json& entry = manifest.at("artifacts").at("clean_csv");
    CHECK(entry.at("path") == "clean.csv");
    CHECK(entry.at("fnv1a64").get<std::string>().size() == 16);
    CHECK(entry.at("bytes").get<std::uint64_t>() > 0);
}

TEST_CASE("config file supplies parameters and flags override it") {
    TempDir dir;
    write_small_raw(dir / "raw.csv");
    const auto out_dir = (dir / "out").string();
    REQUIRE(
        run_cli("clean --input \"" + (dir / "raw.csv").string() + "\" --out-dir " + out_dir, dir)
            .code == 0);
    write_file(dir / "run.toml", "eps-km=0.2\nmin-pts=3\n");

    REQUIRE(run_cli("cluster --config \"" + (dir / "run.toml").string() + "\" --out-dir " + out_dir,
                    dir)
                .code == 0);
    json summary = read_json(dir / "out/cluster_summary.json");
    CHECK(summary.at("params").at("eps_km") == doctest::Approx(0.2));
    CHECK(summary.at("params").at("min_pts") == 3);

    REQUIRE(run_cli("cluster --config \"" + (dir / "run.toml").string() +
                        "\" --eps-km 0.1 --out-dir " + out_dir,
                    dir)
                .code == 0);
    summary = read_json(dir / "out/cluster_summary.json");
    CHECK(summary.at("params").at("eps_km") == doctest::Approx(0.1));
    CHECK(summary.at("params").at("min_pts") == 3);
}

TEST_CASE("two identical pipeline runs produce byte-identical artifacts") {
    TempDir dir;
    write_small_raw(dir / "raw.csv");
    const std::string raw = (dir / "raw.csv").string();
    const std::string stage_args = " --grid 16x16 --zooms 5,12,22";

    for (const char* out_name : {"a", "b"}) {
        const std::string out_dir = (dir / out_name).string();
        REQUIRE(run_cli("clean --input \"" + raw + "\" --out-dir " + out_dir, dir).code == 0);
        for (const char* stage : {"cluster", "heatmap", "markers", "temporal"}) {
            REQUIRE(run_cli(std::string(stage) + stage_args + " --out-dir " + out_dir, dir).code ==
                    0);
        }
        REQUIRE(run_cli("report" + stage_args + " --out-dir " + out_dir, dir).code == 0);
    }

    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        const std::string name = entry.path().filename().string();
        const fs::path other = dir / "b" / name;
        REQUIRE_MESSAGE(fs::exists(other), name);
        if (name == "manifest.json") {
            json a = json::parse(read_file(entry.path()));
            json b = json::parse(read_file(other));
            CHECK(a.at("generated_at").is_string());
            a.erase("generated_at");
            b.erase("generated_at");
            CHECK(a == b);
        } else {
            CHECK_MESSAGE(read_file(entry.path()) == read_file(other), name);
        }
        ++compared;
    }
    CHECK(compared >= 14);
}

}  // TEST_SUITE
