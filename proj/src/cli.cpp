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

#include "pfafflow/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pfafflow/bkp.hpp"
#include "pfafflow/exec.hpp"
#include "pfafflow/json_io.hpp"
#include "pfafflow/matrixpp.hpp"
#include "pfafflow/measure.hpp"
#include "pfafflow/partitions.hpp"
#include "pfafflow/schurq.hpp"
#include "pfafflow/selftest.hpp"

namespace pfafflow::cli {

namespace {

using json_io::json;
using series::Caps;
using series::OddPoly;

struct Usage : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const Rational& v : parse_rational_list(text)) {
        if (v.get_den() != 1) throw Usage("expected integers, got '" + text + "'");
        out.push_back(static_cast<int>(v.get_num().get_si()));
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Usage(path + ": " + e.what());
    }
}

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_table(const json& report, std::ostream& out) {
    std::size_t width = 0;
    for (const auto& [k, v] : report.items()) width = std::max(width, k.size());
    for (const auto& [k, v] : report.items()) {
        if (v.is_array() && !v.empty() && v.front().is_object()) {
            out << k << ":\n";
            for (const auto& row : v) {
                out << " ";
                for (const auto& [rk, rv] : row.items()) out << " " << rk << "=" << cell(rv);
                out << "\n";
            }
            continue;
        }
        out << k << std::string(width - k.size() + 2, ' ') << cell(v) << "\n";
    }
}

json poly_report(const OddPoly& residual) { return json_io::to_json(residual); }

struct Checked {
    json report;
    bool ok;
};

Checked bkp_check(const std::string& equation, const std::string& g_text, const std::string& tau_file,
                  const std::string& z_text, const RunConfig& cfg) {
    const int d = cfg.degree, dm = cfg.degree_minus;
    const Rational z = parse_rational(z_text);
    const bkp::GSpec g = bkp::GSpec::parse(g_text);
    json report{{"equation", equation}, {"g", g.to_string()}, {"max_degree_checked", d}};
    OddPoly residual;
    if (!tau_file.empty() && equation != "bkp-residue") throw Usage("--tau is only read by bkp-residue");
    if (equation == "bkp-residue") {
        OddPoly tau = tau_file.empty() ? bkp::tau_from_g(g, d).body : json_io::poly_from_json(read_json_file(tau_file));
        if (!tau_file.empty()) {
            report.erase("g");
            report["tau"] = tau_file;
            tau = tau.truncated(d);
        }
        residual = bkp::bkp_residue_check(tau, d);
    } else if (equation == "mbkp1" || equation == "mbkp2") {
        const bool first = equation == "mbkp1";
        const auto op = series::HirotaOperator::parse(first ? "D1^3-D3" : "6D5-5D3D1^2-D1^5");
        const auto [t0, t1] = bkp::tau_pair_from_g(g, z, d + (first ? 3 : 5));
        residual = bkp::hirota_zero_check(op, t0.body, t1.body, Caps::uniform(d));
        report["z"] = pfafflow::to_string(z);
    } else if (equation == "negflow1") {
        const OddPoly tau = bkp::tau_two_sided(g, d + 3, dm + 1).body;
        residual = bkp::hirota_zero_check(series::HirotaOperator::parse("D-1D3-D-1D1^3"), tau, tau,
                                          Caps{d + dm, d, dm});
        report["max_minus_degree_checked"] = dm;
    } else if (equation == "mixed1") {
        const auto [t0, t1] = bkp::tau_pair_two_sided(g, z, d + 1, dm + 1);
        residual = bkp::hirota_zero_check(series::HirotaOperator::parse("D1D-1"), t0, t1, Caps{d + dm, d, dm});
        report["max_minus_degree_checked"] = dm;
        report["z"] = pfafflow::to_string(z);
    } else {
        throw Usage("unknown equation '" + equation + "'");
    }
    report["residual_zero"] = residual.is_zero();
    report["nonzero_terms"] = poly_report(residual);
    return {report, residual.is_zero()};
}

}  // namespace

void RunConfig::validate() const {
    if (n_max < 1 || n_max % 2 == 0) throw std::invalid_argument("n_max must be odd and positive");
    if (degree < 1 || degree_minus < 1) throw std::invalid_argument("degree caps must be positive");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");
    if (format != "json" && format != "table") throw std::invalid_argument("format must be json or table");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Schur Q functions, Pfaffian point processes and BKP identity checks", "pfafflow"};
    app.set_config("--config", "", "key=value configuration file; flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    RunConfig cfg;
    app.add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--threads", cfg.threads, "worker threads (default: PFAFFLOW_THREADS)");
    app.add_option("--n-max", cfg.n_max, "largest odd time index (N_max)");
    app.add_option("--degree", cfg.degree, "weighted degree cap D");
    app.add_option("--degree-minus", cfg.degree_minus, "t_- degree cap for two-sided checks");
    app.add_option("--tol", cfg.tol, "numeric tolerance");

    auto* schurq_cmd = app.add_subcommand("schurq", "Schur Q and P functions");
    auto* schurq_eval = schurq_cmd->add_subcommand("eval", "Q_lambda at a point or as a polynomial");
    schurq_cmd->require_subcommand(1);
    std::string lambda_text, x_text, kind = "Q";
    schurq_eval->add_option("--lambda", lambda_text, "strict partition, e.g. 3,1")->required();
    schurq_eval->add_option("--x", x_text, "specialization points (omit for Q_lambda(t/2))");
    schurq_eval->add_option("--kind", kind, "Q or P")->check(CLI::IsMember({"Q", "P"}));

    auto* measure_cmd = app.add_subcommand("measure", "shifted Schur measure");
    auto* measure_rho = measure_cmd->add_subcommand("rho", "correlation function rho(A)");
    measure_cmd->require_subcommand(1);
    std::string mx, my, set_text, measure_method = "pf";
    int cutoff = 40;
    measure_rho->add_option("--x", mx)->required();
    measure_rho->add_option("--y", my)->required();
    measure_rho->add_option("--set", set_text, "the set A, e.g. 2,1");
    measure_rho->add_option("--method", measure_method)->check(CLI::IsMember({"pf", "brute"}));
    measure_rho->add_option("--cutoff", cutoff, "largest part kept by the brute-force sum");

    auto* mpp_cmd = app.add_subcommand("matrixpp", "finite-space Pfaffian point processes");
    auto* mpp_corr = mpp_cmd->add_subcommand("corr", "correlation function R(S)");
    mpp_cmd->require_subcommand(1);
    std::string points_text, weights_text, s_text, mpp_method = "pf";
    int particles = 4;
    mpp_corr->add_option("--points", points_text)->required();
    mpp_corr->add_option("--weights", weights_text, "default: all 1");
    mpp_corr->add_option("--n", particles, "number of particles");
    mpp_corr->add_option("--S", s_text, "points of S");
    mpp_corr->add_option("--method", mpp_method)->check(CLI::IsMember({"pf", "direct"}));

    auto* bkp_cmd = app.add_subcommand("bkp", "BKP tau functions");
    auto* bkp_check_cmd = bkp_cmd->add_subcommand("check", "bilinear identity residual");
    bkp_cmd->require_subcommand(1);
    std::string equation, g_text, tau_file, z_text = "1/2";
    bkp_check_cmd->add_option("--equation", equation)
        ->required()
        ->check(CLI::IsMember({"bkp-residue", "mbkp1", "mbkp2", "negflow1", "mixed1"}));
    bkp_check_cmd->add_option("--g", g_text, "factors c=..,r=..,s=.. separated by ';' (default G = 1)");
    bkp_check_cmd->add_option("--tau", tau_file, "polynomial JSON file (bkp-residue only)");
    bkp_check_cmd->add_option("--z", z_text, "spectral parameter for tau_{n+1}");

    auto* pf_cmd = app.add_subcommand("pfaffian", "Pfaffian of a skew matrix");
    std::string matrix_file;
    pf_cmd->add_option("--matrix", matrix_file, "JSON {\"n\": n, \"upper\": [[i, j, \"p/q\"], ...]}")->required();

    auto* self_cmd = app.add_subcommand("selftest", "acceptance checks");
    std::string suite = "all";
    self_cmd->add_option("--suite", suite, "all, schurq, measure, pfaffian, matrixpp, bkp");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    json report;
    int status = kOk;
    try {
        cfg.validate();
        if (cfg.threads > 0) exec::set_thread_count(cfg.threads);
        if (schurq_eval->parsed()) {
            const StrictPartition lambda = StrictPartition::parse(lambda_text);
            report = {{"lambda", lambda.parts()}, {"kind", kind}};
            if (!x_text.empty()) {
                const auto x = parse_rational_list(x_text);
                const Rational v = kind == "Q" ? schurq::schur_q_value(lambda, x) : schurq::schur_p_value(lambda, x);
                report["value"] = json_io::to_json(v);
            } else {
                if (lambda.weight() > cfg.degree) throw Usage("|lambda| exceeds the degree cap D");
                if (lambda.weight() > cfg.n_max && lambda.weight() > 1)
                    throw Usage("Q_lambda(t/2) involves t_n beyond N_max");
                const OddPoly p = kind == "Q" ? schurq::schur_q_poly(lambda) : schurq::schur_p_poly(lambda);
                report["value"] = json_io::to_json(p);
            }
        } else if (measure_rho->parsed()) {
            const measure::SpecPair spec{parse_rational_list(mx), parse_rational_list(my)};
            spec.validate();
            const auto a = measure::normalize_set(parse_int_list(set_text));
            report = {{"set", a}, {"method", measure_method}};
            if (measure_method == "brute") {
                const measure::BruteResult b = measure::rho_brute(a, spec, cutoff);
                report["rho"] = b.rho.get_d();
                report["rho_exact"] = json_io::to_json(b.rho);
                report["tail_bound"] = b.tail_bound.get_d();
                report["cutoff"] = cutoff;
            } else {
                const measure::PfResult p = measure::rho_pf(a, spec, cfg.tol);
                report["rho"] = p.rho;
                report["tail_bound"] = p.error_bound;
            }
        } else if (mpp_corr->parsed()) {
            matrixpp::FiniteSpace space;
            space.points = parse_rational_list(points_text);
            space.weights = weights_text.empty() ? std::vector<Rational>(space.points.size(), Rational(1))
                                                 : parse_rational_list(weights_text);
            const matrixpp::ProcessSpec spec{particles, space};
            spec.validate();
            const auto s = parse_rational_list(s_text);
            const Rational v = mpp_method == "pf" ? matrixpp::corr_pf(spec, s) : matrixpp::corr_direct(spec, s);
            json sj = json::array();
            for (const auto& p : s) sj.push_back(json_io::to_json(p));
            report = {{"n", particles}, {"S", sj}, {"method", mpp_method}, {"value", json_io::to_json(v)}};
        } else if (bkp_check_cmd->parsed()) {
            const Checked c = bkp_check(equation, g_text, tau_file, z_text, cfg);
            report = c.report;
            if (!c.ok) status = kIdentityFailed;
        } else if (pf_cmd->parsed()) {
            const SkewMatrix<Rational> m = json_io::skew_from_json(read_json_file(matrix_file));
            const bool even = m.order() % 2 == 0;
            const Rational pf = even ? pfaffian_even(m) : pfaffian_debruijn(m);
            report = {{"n", m.order()}, {"route", even ? "even" : "bordered"}, {"pfaffian", json_io::to_json(pf)}};
        } else if (self_cmd->parsed()) {
            const auto results = selftest::run_suite(suite);
            json rows = json::array();
            bool all = true;
            for (const auto& r : results) {
                all = all && r.pass;
                rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            }
            report = {{"suite", suite}, {"all_pass", all}, {"results", rows}};
            if (!all) status = kIdentityFailed;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    if (cfg.format == "table") {
        print_table(report, out);
    } else {
        out << report.dump(2) << "\n";
    }
    return status;
}

}  // namespace pfafflow::cli
