// Copyright 2026 The optcorr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "optcorr/cli.hpp"
#include "optcorr/error.hpp"
#include "optcorr/report.hpp"

using namespace optcorr;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "optcorr");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

std::string temp_path(const std::string &name) { return "optcorr_test_" + name; }

} // namespace

TEST_CASE("number formatting") {
    CHECK(format_double(0.0) == "0.00000000000e+00");
    CHECK(format_double(-1.5) == "-1.50000000000e+00");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(round12(0.1234567890123456) == 0.123456789012);
    CHECK(round12(1.0 / 3.0) == std::stod(format_double(1.0 / 3.0)));
}

TEST_CASE("csv header has the fixed column order") {
    CHECK(csv_header() ==
          "model,L,h,hx,r,strategy,S_A,S_B,S_AB,I,S_C,C,Q,C_max,theta_opt,phi_opt,"
          "n_optima,flat_theta,flat_phi,sx_mid,sz_mid");
}

TEST_CASE("grid parsing") {
    const Grid g = parse_grid("0:2:81");
    CHECK(g.lo == 0.0);
    CHECK(g.hi == 2.0);
    CHECK(g.count == 81);
    const Grid p = parse_grid("3.5");
    CHECK(p.count == 1);
    CHECK(p.lo == 3.5);
    CHECK_THROWS_AS(parse_grid("0:2"), Error);
    CHECK_THROWS_AS(parse_grid("0:2:0"), Error);
    CHECK_THROWS_AS(parse_grid("2:0:5"), Error);
    CHECK_THROWS_AS(parse_grid("a:b:c"), Error);
    CHECK(parse_bracket("3.0:3.3") == std::pair{3.0, 3.3});
    CHECK_THROWS_AS(parse_bracket("3.3:3.0"), Error);
}

TEST_CASE("sweep row counts and round trip") {
    const auto r = run({"sweep", "--model", "ising", "--L", "6", "--h", "0:2:81", "--r", "1",
                        "--strategies", "proj-z,sic,cic"});
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 244);
    CHECK(ls[0] == csv_header());
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const SweepRow row = parse_csv_row(ls[i]);
        CHECK(csv_row(row) == ls[i]);
    }
    const SweepRow last = parse_csv_row(ls.back());
    CHECK(last.h == 2.0);
    CHECK(last.strategy == Strategy::Cic);
    CHECK(last.model == "ising");
    CHECK(last.hx == 1e-6);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    const std::vector<std::string> args = {"sweep", "--model", "xyx", "--L", "6", "--h", "0:4:5",
                                           "--r", "1,2"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() == 1 + 5 * 2 * 5);

    ::setenv("OPTCORR_THREADS", "3", 1);
    const auto threaded = run(args);
    ::unsetenv("OPTCORR_THREADS");
    CHECK(threaded.out == a.out);
}

TEST_CASE("xxz point reports a flat phi line") {
    const auto r = run({"point", "--model", "xxz", "--L", "8", "--h", "0", "--strategy", "proj-rot"});
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    const SweepRow row = parse_csv_row(ls[1]);
    CHECK(row.flat_phi);
    CHECK(row.hx == 0.0);
    CHECK(std::abs(row.theta_opt - 1.5707963267948966) < 0.02);
}

TEST_CASE("json-lines output carries the full optimum list") {
    const auto r = run({"optimize", "--model", "xxz", "--L", "6", "--h", "0", "--strategy", "proj-rot"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(lines(r.out).at(0));
    CHECK(j["strategy"] == "proj-rot");
    CHECK(j["result"]["optima"].size() > 1);
    CHECK(j["result"]["optima"][0]["measurement"]["elements"].size() == 2);

    const auto p = run({"point", "--model", "ising", "--L", "6", "--h", "1", "--format", "jsonl",
                        "--strategy", "sic"});
    REQUIRE(p.status == 0);
    CHECK(nlohmann::json::parse(lines(p.out).at(0))["strategy"] == "sic");
}

TEST_CASE("factorize emits a single record") {
    const auto r = run({"factorize", "--model", "ising", "--L", "8", "--bracket", "0:0.2"});
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1);
    const auto j = nlohmann::json::parse(ls[0]);
    CHECK(j["h_min"].get<double>() < 1e-3);
    CHECK(j["I_min"].get<double>() < 1e-3);
    CHECK(j["h_f_formula"].get<double>() == 0.0);
}

TEST_CASE("fit from a data file") {
    const std::string path = temp_path("fit.csv");
    {
        std::ofstream f(path);
        f << "m,theta\n";
        for (int i = 0; i < 20; ++i) {
            const double m = 0.72 * i / 19.0;
            f << m << ',' << (0.824 - 0.709 * std::sqrt(0.0769 - std::pow(m, 8))) << '\n';
        }
    }
    const auto r = run({"fit", "--input", path, "--n", "8"});
    std::remove(path.c_str());
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(lines(r.out).at(0));
    CHECK(std::abs(j["B"].get<double>() - 0.0769) < 1e-4);
    CHECK(j["points"] == 20);
}

TEST_CASE("config file supplies defaults that flags override") {
    const std::string path = temp_path("config.toml");
    {
        std::ofstream f(path);
        f << "[point]\nmodel = \"xxz\"\nL = 6\nh = \"0.5\"\nstrategies = [\"proj-z\"]\n";
    }
    const auto from_file = run({"--config", path, "point"});
    REQUIRE(from_file.status == 0);
    const SweepRow a = parse_csv_row(lines(from_file.out).at(1));
    CHECK(a.model == "xxz");
    CHECK(a.sites == 6);
    CHECK(a.h == 0.5);

    const auto overridden = run({"--config", path, "point", "--L", "8", "--model", "ising"});
    std::remove(path.c_str());
    REQUIRE(overridden.status == 0);
    const SweepRow b = parse_csv_row(lines(overridden.out).at(1));
    CHECK(b.model == "ising");
    CHECK(b.sites == 8);
    CHECK(b.h == 0.5);
}

TEST_CASE("output to a file") {
    const std::string path = temp_path("rows.csv");
    const auto r = run({"point", "--model", "ising", "--L", "6", "--h", "1", "--strategy", "proj-z",
                        "-o", path});
    REQUIRE(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == csv_header());
    std::remove(path.c_str());
}

TEST_CASE("exit codes") {
    CHECK(run({}).status == 2);
    CHECK(run({"sweep", "--model", "nope"}).status == 2);
    CHECK(run({"sweep", "--h", "0:1"}).status == 2);
    CHECK(run({"sweep", "--L", "40"}).status == 2);
    CHECK(run({"sweep", "--L", "6", "--r", "9"}).status == 2);
    CHECK(run({"sweep", "--strategies", "proj-q"}).status == 2);
    CHECK(run({"sweep", "--format", "xml"}).status == 2);
    CHECK(run({"point", "--model", "custom", "--jx", "1", "--h", "0"}).status == 2);
    CHECK(run({"point", "--h", "1", "-o", "/nonexistent/dir/out.csv"}).status == 2);
    CHECK(run({"factorize", "--bracket", "1:0"}).status == 2);
    CHECK(run({"--help"}).status == 0);

    // A coupling-free chain cannot seed the coupling-oriented POVM: that row fails.
    const auto bad = run({"point", "--model", "custom", "--jx", "0", "--jy", "0", "--jz", "0",
                          "--L", "4", "--h", "1", "--strategies", "proj-rot,cic"});
    CHECK(bad.status == 1);
    CHECK(bad.err.find("strategy=cic") != std::string::npos);
    CHECK(lines(bad.out).size() == 3);
}
