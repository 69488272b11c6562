#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cli.hpp"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = mbonacci::cli::dispatch(std::move(args), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_CASE("perron subcommand emits the documented JSON fields") {
    const Run r = run_cli({"perron", "--m", "3"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["m"] == 3);
    CHECK(j["rho"].get<double>() == doctest::Approx(1.83929).epsilon(1e-5));
    CHECK(j["eigenvector"].size() == 3);
    CHECK(j["poly_residual"].get<double>() < 1e-12);
    CHECK(j["eig_residual"].get<double>() < 1e-12);
}

TEST_CASE("expand subcommand reproduces the worked example verbatim") {
    const Run r = run_cli({"expand", "--n", "10"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "{\"n\":10,\"L\":6,\"bits\":\"1101\"}\n");
}

TEST_CASE("word subcommand digit and csv formats") {
    const Run digits = run_cli({"word", "--m", "2", "--length", "8"});
    REQUIRE(digits.code == 0);
    CHECK(digits.out == "12112121\n");

    const Run both = run_cli({"word", "--m", "2", "--length", "4", "--left", "2",
                              "--format", "csv"});
    REQUIRE(both.code == 0);
    CHECK(both.out == "index,digit\n-2,2\n-1,1\n0,1\n1,2\n2,1\n3,1\n");
}

TEST_CASE("chain subcommand lists positions and gap digits") {
    const Run r = run_cli({"chain", "--m", "2", "--from", "-1", "--to", "2"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "k,lambda,gap_digit");
    std::getline(lines, line);
    CHECK(line == "-1,-0.61803398875,1");
    std::getline(lines, line);
    CHECK(line == "0,0,1");
}

TEST_CASE("density csv goes to stdout with a JSON summary on stderr") {
    const Run r = run_cli({"density", "--m", "2", "--rmin", "40", "--rmax", "42", "--step", "1",
                           "--points", "2000"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("r,n,ratio\n", 0) == 0);
    const auto summary = nlohmann::json::parse(r.err);
    CHECK(summary["closed_form"].get<double>() == doctest::Approx(1.89443).epsilon(1e-5));
    CHECK(summary["lower_bound"] == 1.25);

    const Run j = run_cli({"density", "--m", "2", "--rmin", "40", "--rmax", "42", "--step", "1",
                           "--points", "2000", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["samples"].size() == 3);
}

TEST_CASE("gaps subcommand emits one row per window size") {
    const Run r = run_cli({"gaps", "--m", "2", "--nmax", "3", "--krange", "500"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "N,gamma,gamma_sharp,brute_min,holds");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line)) {
        CHECK(line.find("true") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 3);

    // Tribonacci rows leave the sharp column empty
    const Run r3 = run_cli({"gaps", "--m", "3", "--nmax", "1", "--krange", "100"});
    REQUIRE(r3.code == 0);
    CHECK(r3.out.find(",,") != std::string::npos);
}

TEST_CASE("frame subcommand labels the regime per row") {
    const Run r = run_cli({"frame", "--m", "2", "--k", "10", "--lmin", "6", "--lmax", "14",
                           "--steps", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("below-threshold") != std::string::npos);
    CHECK(r.out.find("above-threshold") != std::string::npos);
    const auto summary = nlohmann::json::parse(r.err);
    CHECK(summary["threshold"].get<double>() == doctest::Approx(11.903).epsilon(1e-3));
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::vector<std::string> args{"density", "--m",    "3",  "--rmin", "30",
                                        "--rmax",  "35",     "--step", "1",  "--points",
                                        "3000",    "--format", "json"};
    const Run a = run_cli(args);
    const Run b = run_cli(args);
    CHECK(a.out == b.out);
    const Run w1 = run_cli({"word", "--m", "4", "--length", "4000", "--format", "csv"});
    const Run w2 = run_cli({"word", "--m", "4", "--length", "4000", "--format", "csv"});
    CHECK(w1.out == w2.out);
}

TEST_CASE("usage and computation errors are separated") {
    CHECK(run_cli({"nosuch"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"perron"}).code == 2);                                // missing --m
    CHECK(run_cli({"perron", "--m", "1"}).code == 2);                    // out of range
    CHECK(run_cli({"word", "--m", "12", "--length", "5"}).code == 2);    // digits format cap
    CHECK(run_cli({"chain", "--m", "2", "--from", "1", "--to", "5"}).code == 1);
    CHECK(run_cli({"word", "--m", "2", "--length", "50", "--cap", "10"}).code == 1);

    const Run bad = run_cli({"chain", "--m", "2", "--from", "1", "--to", "5"});
    CHECK(bad.err.rfind("error:", 0) == 0);
    CHECK(bad.out.empty());
}

TEST_CASE("help is not an error") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"word", "--help"}).code == 0);
}

TEST_CASE("precision digits come from the environment unless overridden") {
    // Large m needs a wide mantissa just to bracket the root; at native
    // precision the solve must fail loudly instead.
    const Run narrow = run_cli({"perron", "--m", "80"});
    CHECK(narrow.code == 1);
    CHECK(narrow.err.find("raise digits") != std::string::npos);

    setenv("MBONACCI_PRECISION_DIGITS", "50", 1);
    const Run wide = run_cli({"perron", "--m", "80"});
    unsetenv("MBONACCI_PRECISION_DIGITS");
    REQUIRE(wide.code == 0);
    const auto j = nlohmann::json::parse(wide.out);
    CHECK(j["rho"].get<double>() <= 2.0);

    const Run flag = run_cli({"perron", "--m", "80", "--digits", "50"});
    CHECK(flag.code == 0);
}

TEST_CASE("output files are written atomically") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mbonacci_cli_test";
    fs::create_directories(dir);
    const fs::path target = dir / "out.json";

    const Run r = run_cli({"expand", "--n", "7", "--output", target.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(target);
    std::string payload((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(payload == "{\"n\":7,\"L\":6,\"bits\":\"0001\"}\n");
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));
    fs::remove_all(dir);
}

TEST_CASE("repro fast run passes every check") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mbonacci_repro_test";
    fs::create_directories(dir);

    const Run r = run_cli({"repro", "--fast", "--outdir", dir.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["pass"] == true);
    for (const auto& check : j["checks"]) {
        INFO(check["name"].get<std::string>());
        CHECK(check["pass"] == true);
    }
    CHECK(fs::exists(dir / "repro_density.csv"));
    CHECK(fs::exists(dir / "repro_gaps_m2.csv"));
    CHECK(fs::exists(dir / "repro_gaps_m3.csv"));
    CHECK(fs::exists(dir / "repro_frame.csv"));
    fs::remove_all(dir);

    const Run jo = run_cli({"repro", "--fast", "--json-only", "--outdir", dir.string()});
    CHECK(jo.code == 0);
    CHECK_FALSE(fs::exists(dir / "repro_density.csv"));
}
