#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "splab/errors.hpp"
#include "splab/report.hpp"

using namespace splab;
namespace fs = std::filesystem;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

fs::path fresh_dir(const char* tag) {
    fs::path dir = fs::temp_directory_path() / (std::string("splab_test_") + tag);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("numeric formatting") {
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(1000000.0) == "1000000");
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
    CHECK(format_int(341) == "341");
}

TEST_CASE("grid construction") {
    CHECK(GridSpec::explicit_list({30, 10, 30}).x_values ==
          std::vector<std::uint64_t>{10, 30});
    CHECK(GridSpec::geometric(1000, 10.0, 4).x_values ==
          std::vector<std::uint64_t>{1000, 10000, 100000, 1000000});
    CHECK_THROWS_AS(GridSpec::geometric(1000, 1.0, 4), std::domain_error);
    CHECK_THROWS_AS(GridSpec::explicit_list({}), std::domain_error);
    CHECK_THROWS_AS(GridSpec::explicit_list({1}), std::domain_error);
    CHECK_THROWS_AS(GridSpec::explicit_list({std::uint64_t{1} << 41}), std::domain_error);
}

TEST_CASE("density command") {
    auto out = cmd_density(GridSpec::explicit_list({30}), Rational::of(0, 1));
    auto rows = parse_csv(out.csv);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"x", "count_N_alpha", "pi_x",
                                              "ratio_to_x_over_logx", "ratio_to_pi",
                                              "theorem1_bound"});
    CHECK(rows[1][0] == "30");
    CHECK(rows[1][1] == "5");
    CHECK(rows[1][2] == "10");
    CHECK(std::stod(rows[1][5]) == doctest::Approx(15.0 / std::log(30.0)).epsilon(1e-9));

    // x = 2 is a legal one-row grid: the count is zero by the P(1) = 1 rule
    auto degenerate = cmd_density(GridSpec::explicit_list({2}), Rational::of(0, 1));
    CHECK(parse_csv(degenerate.csv)[1][1] == "0");

    // the manifest carries the exact fraction and the grid floor of the ratios
    auto two = cmd_density(GridSpec::explicit_list({30, 100}), Rational::of(1, 8));
    auto mrows = parse_csv(two.csv);
    const double kappa =
        std::min(std::stod(mrows[1][4]), std::stod(mrows[2][4]));
    auto j = nlohmann::json::parse(two.manifest.to_json());
    CHECK(j["parameters"]["alpha"] == "1/8");
    CHECK(std::stod(j["results"]["kappa_estimate"].get<std::string>()) ==
          doctest::Approx(kappa).epsilon(1e-12));
    CHECK(j["command"] == "density");
}

TEST_CASE("sums command") {
    auto out = cmd_sums(GridSpec::explicit_list({30, 10000}), Rational::of(1, 2), 1.0);
    auto rows = parse_csv(out.csv);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][1] == "M_c");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(std::log(77.0)).epsilon(1e-9));
    CHECK(std::stod(rows[1][2]) == doctest::Approx(std::log(1021870080.0)).epsilon(1e-9));
    CHECK(std::stod(rows[1][5]) == doctest::Approx(std::log(924.0)).epsilon(1e-9));
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const double full = std::stod(rows[r][2]);
        const double parts =
            std::stod(rows[r][3]) + std::stod(rows[r][4]) + std::stod(rows[r][5]);
        CHECK(parts == doctest::Approx(full).epsilon(1e-9));
    }
}

TEST_CASE("products command") {
    ProductsOptions opt;
    opt.k = 2;
    opt.a = Rational::of(1, 4);
    opt.engine = Engine::both;
    opt.records = true;

    opt.mode = EnumMode::multiplicity;
    auto mult = cmd_products(GridSpec::explicit_list({100}), opt);
    auto rows = parse_csv(mult.csv);
    CHECK(rows[1][1] == "3");
    REQUIRE(mult.extras.size() == 1);
    CHECK(mult.extras[0].first == "products_records.csv");
    CHECK(mult.extras[0].second.find("3;3") != std::string::npos);
    CHECK(mult.extras[0].second.find("7;7") != std::string::npos);

    opt.mode = EnumMode::distinct;
    auto dist = cmd_products(GridSpec::explicit_list({100}), opt);
    CHECK(parse_csv(dist.csv)[1][1] == "1");

    // four-decade series carries a slope in the manifest
    opt.records = false;
    opt.engine = Engine::progression;
    auto series = cmd_products(GridSpec::geometric(1000, 10.0, 3), opt);
    auto j = nlohmann::json::parse(series.manifest.to_json());
    CHECK(j["results"].contains("fit_slope"));
    CHECK(j["parameters"]["a"] == "1/4");
    CHECK(j["parameters"]["mode"] == "distinct");
}

TEST_CASE("btscan command") {
    BTWindow w;
    w.y = 100;
    w.nu = 0.5;
    w.c1 = 0.5;
    w.c2 = 1.5;
    auto out = cmd_btscan(w);
    auto rows = parse_csv(out.csv);
    REQUIRE(rows.size() == 5);
    CHECK(rows[1] != rows[2]);
    CHECK(rows[1][0] == "2");
    CHECK(rows[1][1] == "24");
    CHECK(rows[1][4] == "1");
    CHECK(rows[3][4] == "0");
    CHECK(out.csv.find("# scanned=4 exceptions=2 fraction=0.5") != std::string::npos);
    auto j = nlohmann::json::parse(out.manifest.to_json());
    CHECK(j["results"]["exceptions"] == "2");
}

TEST_CASE("every command is byte-deterministic across tunings") {
    const std::vector<Tuning> tunings{{1 << 10, 1}, {1 << 12, 3}, {1 << 14, 8}};

    std::vector<std::string> density_csv, sums_csv, products_csv, btscan_csv;
    for (const Tuning& t : tunings) {
        density_csv.push_back(
            cmd_density(GridSpec::explicit_list({10000}), Rational::of(1, 8), t).csv);
        sums_csv.push_back(
            cmd_sums(GridSpec::explicit_list({10000}), Rational::of(1, 2), 1.0, t).csv);
        ProductsOptions opt;
        opt.k = 2;
        opt.a = Rational::of(1, 4);
        opt.mode = EnumMode::multiplicity;
        opt.engine = Engine::both;
        products_csv.push_back(cmd_products(GridSpec::explicit_list({10000}), opt, t).csv);
        BTWindow w;
        w.y = 3000;
        w.nu = 0.5;
        w.c1 = 0.5;
        w.c2 = 1.5;
        btscan_csv.push_back(cmd_btscan(w, t).csv);
    }
    for (std::size_t i = 1; i < tunings.size(); ++i) {
        CHECK(density_csv[i] == density_csv[0]);
        CHECK(sums_csv[i] == sums_csv[0]);
        CHECK(products_csv[i] == products_csv[0]);
        CHECK(btscan_csv[i] == btscan_csv[0]);
    }
}

TEST_CASE("write_output produces csv, manifest and plot files") {
    const fs::path dir = fresh_dir("write");
    auto out = cmd_density(GridSpec::explicit_list({100}), Rational::of(0, 1));
    auto paths = write_output(out, dir.string(), /*plot=*/true);

    REQUIRE(paths.size() == 3);
    CHECK(fs::exists(dir / "density.csv"));
    CHECK(fs::exists(dir / "density.dat"));
    CHECK(fs::exists(dir / "density.manifest.json"));
    CHECK(slurp(dir / "density.csv") == out.csv);

    auto j = nlohmann::json::parse(slurp(dir / "density.manifest.json"));
    REQUIRE(j["output_paths"].size() == 2);
    CHECK(j["output_paths"][0].get<std::string>() == (dir / "density.csv").string());

    // plot files are two whitespace-separated columns
    std::istringstream plot(slurp(dir / "density.dat"));
    std::uint64_t x = 0, count = 0;
    plot >> x >> count;
    CHECK(x == 100);
    std::uint64_t expected = 0; // primes p <= 100 with P(p-1)^2 >= p
    for (std::uint64_t p : oracle::primes_upto(100))
        if (oracle::cmp_pow128(oracle::largest_factor(p - 1), 2, p, 1) >= 0) ++expected;
    CHECK(count == expected);
    fs::remove_all(dir);
}

TEST_CASE("re-running with the same parameters reproduces the csv bytes") {
    const fs::path dir = fresh_dir("rerun");
    auto first = cmd_sums(GridSpec::explicit_list({2000}), Rational::of(1, 2), 1.0);
    write_output(first, dir.string(), false);
    const std::string bytes = slurp(dir / "sums.csv");
    auto second = cmd_sums(GridSpec::explicit_list({2000}), Rational::of(1, 2), 1.0);
    write_output(second, dir.string(), false);
    CHECK(slurp(dir / "sums.csv") == bytes);
    fs::remove_all(dir);
}

TEST_CASE("density floor at alpha = 0 stays above one half") {
    auto out = cmd_density(GridSpec::explicit_list({100'000, 1'000'000}),
                           Rational::of(0, 1));
    auto j = nlohmann::json::parse(out.manifest.to_json());
    const double kappa = std::stod(j["results"]["kappa_estimate"].get<std::string>());
    CHECK(kappa >= 0.5);
}

TEST_CASE("selftest passes") {
    std::ostringstream sink;
    CHECK(run_selftest(sink));
    CHECK(sink.str().find("[FAIL]") == std::string::npos);
}
