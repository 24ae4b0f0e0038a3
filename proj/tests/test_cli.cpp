/*
 * Copyright 2026 The Pfafflow Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pfafflow/cli.hpp"
#include "pfafflow/json_io.hpp"

using namespace pfafflow;
using json_io::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pfafflow");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
    const std::string path = std::string(P_tmpdir) + "/pfafflow_test_" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("polynomial JSON round trip in graded-lex order") {
    using series::OddPoly;
    using series::Var;
    const OddPoly p = OddPoly::variable(Var{3}) * Rational(-2) +
                      OddPoly::variable(Var{1}) * OddPoly::variable(Var{1}) * OddPoly::variable(Var{1}) * ratio(1, 6) +
                      OddPoly::variable(Var{-1}) + OddPoly::constant(ratio(3, 4));
    const json j = json_io::to_json(p);
    REQUIRE(j.size() == 4);
    CHECK(j[0]["coeff"] == "3/4");
    CHECK(j[0]["exponents"].empty());
    CHECK(j[1]["exponents"]["t-1"] == 1);
    CHECK(j[3]["exponents"]["t3"] == 1);  // t1^3 precedes t3 at weight 3
    CHECK(j[3]["coeff"] == "-2/1");
    CHECK(json_io::poly_from_json(j) == p);
    CHECK(json_io::poly_from_json(json_io::to_json(p.times_sqrt2(1))) == p.times_sqrt2(1));
    CHECK_THROWS(json_io::poly_from_json(json::parse(R"([{"exponents": {"t2": 1}, "coeff": "1"}])")));
}

TEST_CASE("skew matrix JSON") {
    const auto m = json_io::skew_from_json(json::parse(R"({"n": 4, "upper": [[0, 1, "1/2"], [2, 3, 4]]})"));
    CHECK(m(0, 1) == ratio(1, 2));
    CHECK(m(3, 2) == -4);
    CHECK(json_io::to_json(m)["upper"].size() == 2);
    CHECK_THROWS_AS(json_io::skew_from_json(json::parse(R"({"n": 2, "upper": [[1, 0, "1"]]})")), std::invalid_argument);
    CHECK_THROWS_AS(json_io::skew_from_json(json::parse(R"({"n": 2, "upper": [[0, 2, "1"]]})")), std::invalid_argument);
}

TEST_CASE("schurq eval") {
    const Run r = run({"schurq", "eval", "--lambda", "3,1", "--x", "1/2,1/3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["value"] == "25/54");
    CHECK(j["lambda"] == json::array({3, 1}));
    const json p = json::parse(run({"schurq", "eval", "--lambda", "2,1"}).out);
    CHECK(p["value"].size() == 2);
    CHECK(run({"schurq", "eval", "--lambda", "1,2"}).code == cli::kUsage);
    CHECK(run({"--degree", "2", "schurq", "eval", "--lambda", "2,1"}).code == cli::kUsage);
}

TEST_CASE("measure rho, both methods") {
    const std::vector<std::string> base = {"measure", "rho", "--x", "0.4,0.2", "--y", "0.3,0.1", "--set", "2,1"};
    auto pf = base, brute = base;
    pf.insert(pf.end(), {"--method", "pf", "--tol", "1e-9"});
    brute.insert(brute.end(), {"--method", "brute"});
    const json a = json::parse(run(pf).out), b = json::parse(run(brute).out);
    CHECK(a["rho"].get<double>() == doctest::Approx(b["rho"].get<double>()).epsilon(1e-9));
    CHECK(a["tail_bound"].get<double>() <= 1e-9);
    CHECK(b["method"] == "brute");
    CHECK(run({"measure", "rho", "--x", "2", "--y", "0.1"}).code == cli::kUsage);
    CHECK(run({"measure", "rho", "--x", "0.5", "--y", "0.5", "--set", "x"}).code == cli::kUsage);
}

TEST_CASE("matrixpp corr") {
    const std::vector<std::string> base = {"matrixpp", "corr", "--points", "1,2,3,5,7", "--weights", "1,2,1,3,1", "--n", "3", "--S", "2,5"};
    auto direct = base;
    direct.insert(direct.end(), {"--method", "direct"});
    const json a = json::parse(run(base).out), b = json::parse(run(direct).out);
    CHECK(a["value"] == b["value"]);
    CHECK(a["method"] == "pf");
    CHECK(run({"matrixpp", "corr", "--points", "1,2", "--n", "2", "--S", "3"}).code == cli::kUsage);
}

TEST_CASE("bkp check exit codes") {
    const Run ok = run({"bkp", "check", "--equation", "mbkp1", "--g", "c=1/2,r=2,s=1", "--degree", "8"});
    CHECK(ok.code == cli::kOk);
    const json j = json::parse(ok.out);
    CHECK(j["residual_zero"] == true);
    CHECK(j["max_degree_checked"] == 8);
    CHECK(j["nonzero_terms"].empty());
    CHECK(run({"bkp", "check", "--equation", "mixed1", "--degree", "5", "--degree-minus", "2"}).code == cli::kOk);
    CHECK(run({"bkp", "check", "--equation", "negflow1", "--g", "c=1/3,r=2,s=0", "--degree", "5"}).code == cli::kOk);

    // 1 + t_3 is not a tau function
    const std::string bad = temp_file("tau.json", R"([{"exponents": {}, "coeff": "1"}, {"exponents": {"t3": 1}, "coeff": "1"}])");
    const Run fail = run({"bkp", "check", "--equation", "bkp-residue", "--tau", bad, "--degree", "6"});
    CHECK(fail.code == cli::kIdentityFailed);
    CHECK(json::parse(fail.out)["residual_zero"] == false);
    CHECK(!json::parse(fail.out)["nonzero_terms"].empty());
    std::remove(bad.c_str());

    CHECK(run({"bkp", "check", "--equation", "kp"}).code == cli::kUsage);
    CHECK(run({"bkp", "check", "--equation", "mbkp1", "--g", "c=1,r=1,s=2"}).code == cli::kUsage);
}

TEST_CASE("pfaffian pass-through") {
    const std::string path = temp_file("m.json", R"({"n": 3, "upper": [[0, 1, "2"], [0, 2, "3"], [1, 2, "5"]]})");
    const json j = json::parse(run({"pfaffian", "--matrix", path}).out);
    CHECK(j["pfaffian"] == "4/1");
    CHECK(j["route"] == "bordered");
    std::remove(path.c_str());
    CHECK(run({"pfaffian", "--matrix", "/nonexistent.json"}).code == cli::kUsage);
}

TEST_CASE("config file, flag precedence and table format") {
    const std::string cfg = temp_file("cfg.toml", "format = table\ndegree = 5\n");
    const Run t = run({"--config", cfg, "bkp", "check", "--equation", "bkp-residue"});
    CHECK(t.code == 0);
    CHECK(t.out.find("max_degree_checked  5") != std::string::npos);
    const Run j = run({"--config", cfg, "--format", "json", "--degree", "4", "bkp", "check", "--equation", "bkp-residue"});
    CHECK(json::parse(j.out)["max_degree_checked"] == 4);
    std::remove(cfg.c_str());
    CHECK(run({"--tol", "2", "selftest", "--suite", "pfaffian"}).code == cli::kUsage);
    CHECK(run({"--n-max", "4", "selftest", "--suite", "pfaffian"}).code == cli::kUsage);
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"nosuch"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({"selftest", "--suite", "nosuch"}).code == cli::kUsage);
}

TEST_CASE("identical inputs give byte-identical JSON") {
    const std::vector<std::string> args = {"--threads", "1", "matrixpp", "corr", "--points", "1,2,3,4,5,6", "--n", "4", "--S", "1,3"};
    const std::vector<std::string> args2 = {"--threads", "3", "matrixpp", "corr", "--points", "1,2,3,4,5,6", "--n", "4", "--S", "1,3", "--method", "direct"};
    CHECK(run(args).out == run(args).out);
    CHECK(run(args2).out == run(args2).out);
    CHECK(json::parse(run(args).out)["value"] == json::parse(run(args2).out)["value"]);
    const std::vector<std::string> b = {"bkp", "check", "--equation", "bkp-residue", "--g", "c=1/2,r=3,s=1", "--degree", "6"};
    CHECK(run(b).out == run(b).out);
}

TEST_CASE("selftest suite") {
    const Run r = run({"selftest", "--suite", "pfaffian"});
    CHECK(r.code == cli::kOk);
    const json j = json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["results"].size() == 1);
    CHECK(j["results"][0]["id"] == 5);
}
