#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "oped/io.hpp"

using namespace oped;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kWorkDir = [] {
    fs::path d = fs::temp_directory_path() / "oped_cli_tests";
    fs::create_directories(d);
    return d;
}();

int run_cli(const std::string& args, const fs::path& stdout_file = {}) {
    std::string cmd = std::string(OPED_CLI_PATH) + " " + args;
    if (!stdout_file.empty()) {
        cmd += " > " + stdout_file.string();
    } else {
        cmd += " > /dev/null";
    }
    cmd += " 2> /dev/null";
    int rc = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

json parse_json_file(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    json j;
    in >> j;
    return j;
}

std::string at(const fs::path& p) { return (kWorkDir / p).string(); }

}  // namespace

TEST_CASE("phantom subcommand writes the expected image") {
    REQUIRE(run_cli("phantom --size 32 --phantom shepp-logan --out " + at("sl.img")) == 0);
    ImageGrid img = read_image(at("sl.img"));
    CHECK(img.size == 32);
    // pixels adjacent to the origin sit inside skull + brain only: 2.0 - 0.98
    CHECK(img.at(15, 15) == doctest::Approx(1.02));
    CHECK(img.at(16, 16) == doctest::Approx(1.02));
    CHECK(fs::exists(at("sl.img.pgm")));
    CHECK(fs::exists(at("sl.img.pgm.json")));
}

TEST_CASE("phantom without --out is a usage error") {
    CHECK(run_cli("phantom --size 32") == 2);
}

TEST_CASE("unknown phantom name is a validation error") {
    CHECK(run_cli("phantom --size 32 --phantom shep-logan --out " + at("x.img")) == 2);
}

TEST_CASE("project writes the right dimensions and values") {
    REQUIRE(run_cli("project --m 4 --variant 2 --phantom disk --out " + at("disk.sino")) == 0);
    Sinogram s = read_sinogram(at("disk.sino"));
    CHECK(s.geometry.m == 4);
    CHECK(s.geometry.variant == Variant::TypeII);
    CHECK(s.geometry.n_views() == 9);
    CHECK(s.geometry.n_detectors() == 8);
    for (int nu = 0; nu < 9; ++nu) {
        for (int j = 0; j < 8; ++j) {
            CHECK(s.at(nu, j) ==
                  doctest::Approx(2.0 * std::sin(s.geometry.psi[j])).epsilon(1e-13));
        }
    }
}

TEST_CASE("phantom JSON file round trip") {
    std::ofstream out(at("two.json"));
    out << R"({"ellipses":[
        {"cx":0.0,"cy":0.0,"a":0.8,"b":0.8,"alpha_deg":0,"rho":1.0},
        {"cx":0.1,"cy":0.0,"a":0.2,"b":0.3,"alpha_deg":30,"rho":-0.5}]})";
    out.close();
    REQUIRE(run_cli("project --m 4 --phantom " + at("two.json") + " --out " + at("two.sino")) == 0);
    Sinogram s = read_sinogram(at("two.sino"));
    CHECK(s.geometry.n_detectors() == 9);

    std::ofstream bad(at("bad.json"));
    bad << R"({"ellipses": "nope"})";
    bad.close();
    CHECK(run_cli("project --m 4 --phantom " + at("bad.json") + " --out " + at("bad.sino")) == 2);
    CHECK(run_cli("project --m 4 --phantom " + at("missing.json") + " --out " +
                  at("bad.sino")) == 3);
}

TEST_CASE("reconstruct + compare on identical images") {
    REQUIRE(run_cli("project --m 8 --phantom disk --out " + at("d8.sino")) == 0);
    REQUIRE(run_cli("reconstruct --sino " + at("d8.sino") + " --method direct --size 32 --out " +
                        at("rec.img"),
                    at("timing.json")) == 0);
    json timing = parse_json_file(at("timing.json"));
    CHECK(timing.contains("seconds_total"));
    CHECK(timing.contains("seconds_backprojection"));
    CHECK(timing["seconds_total"].get<double>() >= timing["seconds_backprojection"].get<double>());

    REQUIRE(run_cli("compare --a " + at("rec.img") + " --b " + at("rec.img"),
                    at("cmp.json")) == 0);
    json cmp = parse_json_file(at("cmp.json"));
    CHECK(cmp["rse"].get<double>() == 0.0);
    CHECK(cmp["me"].get<double>() == 0.0);
    CHECK(cmp["n_pixels"].get<int>() == 32 * 32);
}

TEST_CASE("reconstruct rejects a roi beyond the bound") {
    REQUIRE(run_cli("project --m 4 --phantom disk --out " + at("d4.sino")) == 0);
    CHECK(run_cli("reconstruct --sino " + at("d4.sino") + " --roi 0.999 --size 16 --out " +
                  at("never.img")) == 2);
}

TEST_CASE("compare rejects mismatched dimensions") {
    REQUIRE(run_cli("phantom --size 16 --phantom disk --out " + at("a16.img")) == 0);
    REQUIRE(run_cli("phantom --size 24 --phantom disk --out " + at("a24.img")) == 0);
    CHECK(run_cli("compare --a " + at("a16.img") + " --b " + at("a24.img")) == 2);
}

TEST_CASE("bench emits one row per m plus scaling slopes") {
    REQUIRE(run_cli("bench --m-list 2,4 --size 16 --phantom disk", at("bench.json")) == 0);
    json b = parse_json_file(at("bench.json"));
    REQUIRE(b["runs"].size() == 2);
    for (const json& row : b["runs"]) {
        CHECK(row.contains("m"));
        CHECK(row["t_direct"].get<double>() > 0.0);
        CHECK(row["t_fast"].get<double>() > 0.0);
        CHECK(row.contains("speedup"));
    }
    CHECK(b.contains("slope_direct"));
    CHECK(b.contains("slope_fast"));
}

TEST_CASE("bench requires a non-empty m-list") {
    CHECK(run_cli("bench --size 16") == 2);
}

TEST_CASE("convergence errors shrink with m for the smooth phantom") {
    REQUIRE(run_cli("convergence --m-list 4,8,16 --size 32 --phantom smooth --method fast",
                    at("conv.json")) == 0);
    json c = parse_json_file(at("conv.json"));
    REQUIRE(c["errors"].size() == 3);
    double e4 = c["errors"][0]["max_abs_err"].get<double>();
    double e8 = c["errors"][1]["max_abs_err"].get<double>();
    double e16 = c["errors"][2]["max_abs_err"].get<double>();
    CHECK(e8 < e4);
    CHECK(e16 < e8);
}

TEST_CASE("convergence with the direct method is exact for the polynomial phantom") {
    REQUIRE(run_cli("convergence --m-list 4 --size 32 --phantom smooth --method direct",
                    at("convd.json")) == 0);
    json c = parse_json_file(at("convd.json"));
    CHECK(c["errors"][0]["max_abs_err"].get<double>() < 1e-10);
}
