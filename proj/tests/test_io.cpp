#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pat/errors.hpp"
#include "pat/experiment.hpp"
#include "pat/field_io.hpp"

using namespace pat;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("pat_tests_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("field file round trip")
{
    const auto dir = scratch("io");
    std::mt19937_64 rng(9);
    std::normal_distribution<double> N;
    auto f = ScalarField(GridSpec::rect(-1.0, 1.0, 7, -0.5, 2.0, 5));
    for (double& v : f.values) v = N(rng) * 1e-300 + N(rng);
    f[3] = -0.0;
    f[4] = 5e-324;
    write_field(dir / "f.json", f, "test");
    const auto back = read_field(dir / "f.json");
    CHECK(back.grid == f.grid);
    CHECK(std::memcmp(back.values.data(), f.values.data(), 8 * f.size()) == 0);
    CHECK(fs::file_size(dir / "f.bin") == 8 * f.size());

    // byte order is little endian regardless of host
    const std::string bytes = slurp(dir / "f.bin");
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= std::uint64_t(static_cast<unsigned char>(bytes[b])) << (8 * b);
    CHECK(std::bit_cast<double>(bits) == f[0]);

    const auto g1 = ScalarField::from_function(GridSpec::line(-1.0, 1.0, 11), [](const Point& x) { return x[0]; });
    write_field(dir / "line.json", g1);
    CHECK(read_field(dir / "line.json").values == g1.values);
    CHECK(read_field_file(dir / "line.json").field_name == "p0");
}

TEST_CASE("field file header reconstructs the grid")
{
    const auto dir = scratch("hdr");
    std::ofstream(dir / "h.json") << R"({"shape": [100, 100], "extent_lo": [-1, -1], "extent_hi": [1, 1],
        "dtype": "f64le", "field_name": "x", "payload": "h.bin"})";
    std::ofstream(dir / "h.bin", std::ios::binary) << std::string(8 * 100 * 100, '\0');
    const auto f = read_field(dir / "h.json");
    CHECK(f.grid == GridSpec::square(-1.0, 1.0, 100));
    CHECK(f.max() == 0.0);
}

TEST_CASE("field file errors")
{
    const auto dir = scratch("err");
    write_field(dir / "a.json", ScalarField(GridSpec::line(0.0, 1.0, 10), 1.5));
    fs::resize_file(dir / "a.bin", 8 * 9);
    CHECK_THROWS_AS(read_field(dir / "a.json"), ConfigError);

    std::ofstream(dir / "b.json") << "{ \"shape\": [3], ";
    CHECK_THROWS_AS(read_field(dir / "b.json"), ConfigError);
    std::ofstream(dir / "c.json") << R"({"shape": [3], "extent_lo": [0], "extent_hi": [1], "field_name": "x",
        "dtype": "f32le", "payload": "c.bin"})";
    CHECK_THROWS_AS(read_field(dir / "c.json"), ConfigError);
    std::ofstream(dir / "d.json") << R"({"shape": [3], "extent_lo": [0], "extent_hi": [1], "dtype": "f64le",
        "payload": "d.bin"})";
    CHECK_THROWS_AS(read_field(dir / "d.json"), ConfigError);
    CHECK_THROWS_AS(read_field(dir / "missing.json"), ConfigError);
}

TEST_CASE("boundary record round trip")
{
    const auto dir = scratch("rec");
    const auto grid = GridSpec::rect(-1.0, 1.0, 6, -1.0, 1.0, 5);
    BoundaryRecord g(grid, TimeGrid{2.0, 13});
    for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = std::sin(0.37 * i);
    write_record(dir / "g.json", g);
    const auto back = read_record(dir / "g.json");
    CHECK(back.grid == grid);
    CHECK(back.times == g.times);
    CHECK(back.values == g.values);
    CHECK(read_field_file(dir / "g.json").shape == std::vector<int>{static_cast<int>(g.n_sensors()), 13});
}

TEST_CASE("experiment config")
{
    const auto c1 = preset_case(1);
    CHECK(c1.grid == GridSpec::line(-1.0, 1.0, 200));
    CHECK(c1.sqh.p_hi == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(c1.sqh.data_weight == doctest::Approx(199.0));
    const auto c6 = preset_case(6);
    CHECK(c6.grid.dim == 2);
    CHECK(c6.times.t_final == 2.0);
    CHECK_THROWS_AS(preset_case(7), ConfigError);

    // dump/parse is a fixed point
    const auto again = parse_config(dump_config(c6));
    CHECK(dump_config(again) == dump_config(c6));

    const auto c = parse_config(R"({"case": 2, "noise": 0.0, "methods": ["tr"], "sqh": {"alpha": 0.3}})");
    CHECK(c.noise == 0.0);
    CHECK(c.sqh.alpha == 0.3);
    CHECK(c.sqh.p_hi == doctest::Approx(2.0).epsilon(1e-3));

    CHECK_THROWS_AS(parse_config(R"({"case": 1, "nosie": 0.1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"case": 1, "methods": ["spectral"]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"case": 1, "methods": ["cnn"]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"case": 1, "methods": ["magic"]})"), ConfigError);
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_NOTHROW(parse_config(R"({"case": 1, "methods": ["spectral"], "damping": {"kind": "constant", "gamma": 1}})"));

    const auto ph = parse_phantom(R"({"kind": "sum", "parts": [{"kind": "gaussian", "center": [0.1]},
                                                               {"kind": "heart_lung"}]})");
    CHECK(std::get<PhantomSum>(ph.shape).parts.size() == 2);
}

TEST_CASE("run_testcase: zero phantom")
{
    auto c = parse_config(R"({"case": 1, "noise": 0.0, "methods": ["tr", "sqh"],
                              "phantom": {"kind": "gaussian", "center": [0.0], "peak": 0.0}})");
    c.sqh.p_hi = 2.0;
    const auto rep = run_testcase(c, false);
    for (const auto& r : rep.results) {
        CHECK(r.mse < 1e-10);
        CHECK(std::isnan(r.psnr));
    }
}

TEST_CASE("run_testcase: files and determinism")
{
    const auto dir = scratch("run");
    auto c = parse_config(R"({"case": 2, "grid": {"lo": [-1], "hi": [1], "n": [60]},
                              "times": {"t_final": 1, "n_t": 60}, "methods": ["tr", "sqh"]})");
    c.sqh.data_weight = 59.0;
    c.output_dir = dir / "a";
    const auto a = run_testcase(c);
    c.output_dir = dir / "b";
    run_testcase(c);
    for (const char* f : {"config.json", "metrics.csv", "truth.json", "truth.bin", "data.bin", "tr.bin", "sqh.bin",
                          "sqh_log.csv", "profile.dat"}) {
        CAPTURE(f);
        REQUIRE(fs::exists(dir / "a" / f));
        if (std::string(f) != "config.json") CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    CHECK(a.result(Method::SQH).mse < a.result(Method::TR).mse);
    CHECK(read_field(dir / "a" / "sqh.json").values == a.result(Method::SQH).p0.values);
}

TEST_CASE("training pairs")
{
    const auto dir = scratch("ds");
    auto c = preset_case(1);
    c.grid = GridSpec::line(-1.0, 1.0, 40);
    c.times = {1.0, 40};
    const auto fam = export_training_pairs(c, 15, dir / "x", 5);
    REQUIRE(fam.size() == 15);
    CHECK(std::count(fam.begin(), fam.end(), PhantomFamily::Gaussian) == 3);
    CHECK(std::count(fam.begin(), fam.end(), PhantomFamily::Characteristic) == 7);
    CHECK(std::count(fam.begin(), fam.end(), PhantomFamily::Mixed) == 5);
    CHECK(fs::exists(dir / "x" / "manifest.json"));
    for (int i = 0; i < 15; ++i) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "sample_%04d", i);
        const auto p0 = read_field(dir / "x" / (std::string(stem) + "_p0.json"));
        CHECK(p0.min() >= 0.0);
        CHECK(p0.max() <= c.sqh.p_hi);
        CHECK(read_record(dir / "x" / (std::string(stem) + "_g.json")).times == c.times);
    }
    export_training_pairs(c, 1, dir / "y", 5);
    export_training_pairs(c, 1, dir / "z", 5);
    CHECK(slurp(dir / "y" / "sample_0000_g.bin") == slurp(dir / "z" / "sample_0000_g.bin"));
    CHECK(slurp(dir / "y" / "manifest.json") == slurp(dir / "z" / "manifest.json"));
}
