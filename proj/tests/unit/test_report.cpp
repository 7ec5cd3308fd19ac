#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "hofercert/report.hpp"
#include "hofercert/rng.hpp"

using namespace hofercert;

TEST_CASE("run config: defaults validate and the text form round-trips") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    cfg.N = 3;
    cfg.a = {1, -2, 4};
    cfg.seed = 987654321012345ull;
    cfg.fd_step = 2e-6;
    cfg.out = "report.json";
    const RunConfig parsed = RunConfig::parse_text(cfg.to_text());
    CHECK(parsed.N == cfg.N);
    CHECK(parsed.a == cfg.a);
    CHECK(parsed.seed == cfg.seed);
    CHECK(parsed.fd_step == cfg.fd_step);
    CHECK(parsed.out == cfg.out);
    CHECK(parsed.to_text() == cfg.to_text());
}

TEST_CASE("run config: comments, whitespace, and errors") {
    const std::string text =
        "# comment line\n"
        "\n"
        "  N = 1\n"
        "a = 4\n"
        "seed=9\n";
    const RunConfig cfg = RunConfig::parse_text(text);
    CHECK(cfg.N == 1);
    CHECK(cfg.a == std::vector<int>{4});
    CHECK(cfg.seed == 9);

    CHECK_THROWS_AS(RunConfig::parse_text("unknown_key = 3\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse_text("N 3\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse_text("displacement_samples = -5\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse_text("fd_step = 0.5\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse_text("fd_step = 1e-12\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse_text("tol_exact = -1\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse_text("N = 3\n"), ConfigError);  // a keeps 2 entries
    CHECK_THROWS_AS(RunConfig::parse_text("a = \n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("format_double: 17 significant digits, round-trip exact") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    SampleRng rng(601u, 0u);
    for (int i = 0; i < 1000; ++i) {
        const double x = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0));
        const std::string s = format_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "null");
}

TEST_CASE("certificate JSON: parses, carries the schema and the bounds") {
    RunConfig cfg;
    cfg.displacement_samples = 1500;
    cfg.embedding_samples = 1500;
    cfg.dichotomy_samples = 100;
    cfg.symplectic_samples = 10;
    const auto cert = certify(cfg.lattice_element(), cfg.model(), cfg.certify_options());
    const std::string text = certificate_to_json(cert);

    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed.at("schema") == "hofercert.certificate/1");
    CHECK(parsed.at("N") == 2);
    CHECK(parsed.at("a") == nlohmann::json::array({3, -5}));
    CHECK(parsed.at("l1") == 8);
    CHECK(parsed.at("certified") == true);
    CHECK(parsed.at("lower_bound").get<double>() ==
          doctest::Approx(std::numbers::pi / 160.0).epsilon(1e-15));
    CHECK(parsed.at("lower_bound").get<double>() <= parsed.at("upper_bound").get<double>());
    CHECK(parsed.at("displacement").at("disjoint") == true);
    CHECK(parsed.at("deck_sweep").at("all_certified") == true);
    CHECK(parsed.at("embeddings").size() == 2);
    CHECK(parsed.at("embeddings")[0].at("shell_fit").at("ok") == true);
    CHECK(parsed.at("embeddings")[1].at("shell_fit").is_null());

    // Identical run, identical bytes.
    const auto cert2 = certify(cfg.lattice_element(), cfg.model(), cfg.certify_options());
    CHECK(certificate_to_json(cert2) == text);
}

TEST_CASE("scan CSV: fixed header, halving column, deterministic") {
    const auto scan = growth_scan(1, 4);
    const std::string csv = scan_to_csv(scan);
    CHECK(csv.rfind("N,epsilon_N,C_osc,C_N,epsilon_ratio,C_N_ratio\n", 0) == 0);

    int rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 5);  // header + 4 rows

    CHECK(csv.find("\n2,") != std::string::npos);
    CHECK(csv.find(",0.5,") != std::string::npos);
    CHECK(scan_to_csv(growth_scan(1, 4)) == csv);
}

TEST_CASE("shells SVG: one dark annulus per shell, deterministic bytes") {
    const std::string svg2 = shells_svg(2);
    CHECK(svg2.rfind("<?xml", 0) == 0);

    auto count = [](const std::string& text, const std::string& needle) {
        int n = 0;
        for (std::size_t pos = text.find(needle); pos != std::string::npos;
             pos = text.find(needle, pos + needle.size()))
            ++n;
        return n;
    };
    CHECK(count(svg2, "<path") == 4);
    CHECK(count(shells_svg(1), "<path") == 2);
    CHECK(count(shells_svg(3), "<path") == 8);

    // Boundary circle at sqrt(3) times the plot scale.
    CHECK(svg2.find("r=\"219.970\"") != std::string::npos);
    // Innermost shell boundary at radius 1 (scale 127).
    CHECK(svg2.find("127.000") != std::string::npos);

    CHECK(shells_svg(2) == svg2);
}

TEST_CASE("embedding point cloud CSV lands inside the target region") {
    const Eigen::VectorXd q0 = Eigen::VectorXd::Zero(2);
    const RegionSpec target = RegionSpec::lifted_shell(2, 2, 2.0, q0);
    const std::string csv = embedding_cloud_csv(target, 200, 5u);

    std::stringstream ss(csv);
    std::string line;
    REQUIRE(std::getline(ss, line));
    CHECK(line == "ball_0,ball_1,ball_2,ball_3,q_0,q_1,p_0,p_1");

    int rows = 0;
    while (std::getline(ss, line)) {
        std::stringstream fields(line);
        std::string field;
        std::vector<double> values;
        while (std::getline(fields, field, ',')) values.push_back(std::strtod(field.c_str(), nullptr));
        REQUIRE(values.size() == 8);
        CotangentPoint image;
        image.q.resize(2);
        image.p.resize(2);
        image.q << values[4], values[5];
        image.p << values[6], values[7];
        image.chart = Chart::Cover;
        CHECK(region_contains(target, image));
        ++rows;
    }
    CHECK(rows == 200);
    CHECK(embedding_cloud_csv(target, 200, 5u) == csv);
}
