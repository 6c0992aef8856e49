#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "perc/cli.hpp"
#include "perc/records.hpp"

using namespace perc;

namespace {

int run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"perclab"};
    argv.insert(argv.end(), args.begin(), args.end());
    return cli::dispatch(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("unknown subcommands and flags fail with nonzero exit") {
    CHECK(run({"frobnicate"}) != 0);
    CHECK(run({"crossing", "--no-such-flag"}) != 0);
    CHECK(run({}) != 0);
}

TEST_CASE("crossing at p=1 gives mean 2n with zero stderr") {
    auto out = temp_file("perc_cli_crossing.csv");
    CHECK(run({"crossing", "--p", "1.0", "--n", "8", "--trials", "10",
               "--seed", "1", "--out", out.c_str()}) == 0);
    std::ifstream in(out);
    auto records = parse_csv_records(in);
    REQUIRE(records.size() == 3);
    CHECK(records[0].statistic == "shortest_crossing");
    CHECK(records[0].mean == 16.0);
    CHECK(records[0].stderror == 0.0);
    CHECK(records[0].count == 10);
    CHECK(records[2].statistic == "crossing_ratio");
    CHECK(records[2].mean == 1.0);
    std::filesystem::remove(out);
}

TEST_CASE("arms emits one row per size plus a fit row") {
    auto out = temp_file("perc_cli_arms.csv");
    CHECK(run({"arms", "--model", "triangular-site", "--n-list", "2,4,8",
               "--trials", "400", "--seed", "3", "--format", "csv", "--out",
               out.c_str()}) == 0);
    std::ifstream in(out);
    auto records = parse_csv_records(in);
    REQUIRE(records.size() == 4);
    for (int i = 0; i < 3; ++i) {
        CHECK(records[static_cast<std::size_t>(i)].statistic ==
              "arm_probability");
        CHECK(records[static_cast<std::size_t>(i)].model ==
              "triangular-site");
    }
    CHECK(records[3].statistic == "arm_decay_fit");
    std::filesystem::remove(out);
}

TEST_CASE("fit subcommand recovers a planted exponent from CSV") {
    auto data = temp_file("perc_cli_fit_input.csv");
    {
        std::vector<ResultRecord> rows;
        for (long n : {8, 16, 32, 64}) {
            ResultRecord r;
            r.model = "square-bond";
            r.p = 0.5;
            r.n = n;
            r.trials = 1;
            r.seed = 0;
            r.statistic = "planted";
            r.mean = 3.0 * std::pow(static_cast<double>(n), 1.5);
            r.stderror = 0.0;
            r.count = 1;
            rows.push_back(std::move(r));
        }
        std::ofstream outstream(data);
        emit(rows, OutputFormat::csv, outstream);
    }
    auto out = temp_file("perc_cli_fit_output.csv");
    CHECK(run({"fit", "--in", data.c_str(), "--statistic", "planted", "--out",
               out.c_str()}) == 0);
    std::ifstream in(out);
    auto records = parse_csv_records(in);
    REQUIRE(records.size() == 1);
    CHECK(records[0].statistic == "exponent_fit");
    CHECK(records[0].mean == doctest::Approx(1.5).epsilon(1e-9));
    std::filesystem::remove(data);
    std::filesystem::remove(out);
}

TEST_CASE("validate exits zero on the default suite") {
    auto out = temp_file("perc_cli_validate.txt");
    CHECK(run({"validate", "--n", "3", "--trials", "200", "--seed", "7",
               "--out", out.c_str()}) == 0);
    std::ifstream in(out);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str().find("FAIL") == std::string::npos);
    CHECK(buffer.str().find("all checks passed") != std::string::npos);
    std::filesystem::remove(out);
}

TEST_CASE("identical invocations give byte-identical files") {
    auto out1 = temp_file("perc_cli_det1.json");
    auto out2 = temp_file("perc_cli_det2.json");
    for (const auto& path : {out1, out2})
        CHECK(run({"crossing", "--n", "6", "--trials", "100", "--seed", "9",
                   "--format", "json", "--out", path.c_str()}) == 0);
    std::ifstream a(out1), b(out2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK_FALSE(sa.str().empty());
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
}

TEST_CASE("config file provides defaults") {
    auto cfg = temp_file("perc_cli_spec.cfg");
    {
        std::ofstream f(cfg);
        f << "model = square-bond\np = 1.0\nn_list = 4\ntrials = 5\n"
          << "seed = 2\nstatistic = shortest_crossing\nconditioning = none\n"
          << "epsilon = 0.5\nwindow = 16\n";
    }
    auto out = temp_file("perc_cli_cfg_out.csv");
    CHECK(run({"crossing", "--config", cfg.c_str(), "--out", out.c_str()}) ==
          0);
    std::ifstream in(out);
    auto records = parse_csv_records(in);
    REQUIRE(records.size() == 3);
    CHECK(records[0].n == 4);
    CHECK(records[0].mean == 8.0);  // all-open box
    std::filesystem::remove(cfg);
    std::filesystem::remove(out);
}
