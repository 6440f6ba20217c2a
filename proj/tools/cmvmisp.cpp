/*
   Copyright 2026 The cmvmisp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// cmvmisp command-line front end. JSON in, JSON out.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmvmisp/cmvmisp.hpp"
#include "cmvmisp/json_io.hpp"

namespace {

using namespace cmvmisp;
using io::json;

enum ExitCode : int { kOk = 0, kInternal = 1, kInvalid = 2, kFamily = 3, kInfeasible = 4 };

struct RunConfig {
    std::string input = "-";
    std::string output;
    std::string csv;
    std::uint64_t seed = 0;
    int trials = 100;
    int n = 4;
    std::optional<int> m;
    std::optional<double> tol_rank;
    std::optional<double> tol_degen;
    bool verbose = false;

    MispTolerances tolerances() const {
        MispTolerances t;
        if (tol_rank) t.interp.rank = *tol_rank;
        if (tol_degen) t.degeneracy = *tol_degen;
        return t;
    }
};

json read_input(const std::string& src) {
    std::string text;
    if (src == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!src.empty() && src.front() == '{') {
        text = src;
    } else {
        std::ifstream f(src);
        if (!f) throw io::ParseError("cannot open input file " + src);
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw io::ParseError(e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw io::ParseError("cannot open output file " + path);
    f << text;
}

void write_json(const RunConfig& cfg, const json& j) { write_text(cfg.output, j.dump(2) + "\n"); }

int cmd_spectrum(const RunConfig& cfg) {
    const auto params = io::params_from_json(read_input(cfg.input));
    const auto rep = spectrum_report(params);
    json out = io::spectrum_to_json(rep.zetas);
    if (rep.warning) out["warning"] = *rep.warning;
    write_json(cfg, out);
    return kOk;
}

int cmd_szego(const RunConfig& cfg) {
    const json in = read_input(cfg.input);
    if (in.contains("phi")) {
        const Polynomial phi = io::polynomial_from_json(in.at("phi"));
        const auto inv = szego_inverse(phi, phi.degree());
        write_json(cfg, {{"alphas", io::to_json(inv.alphas)}});
        return kOk;
    }
    const auto sys = szego_forward(io::params_from_json(in));
    json phis = json::array();
    for (const auto& p : sys.phis) phis.push_back(io::to_json(p));
    write_json(cfg, {{"phis", phis}, {"phi_tilde", io::to_json(sys.phi_tilde)}});
    return kOk;
}

int cmd_weyl(const RunConfig& cfg) {
    const json in = read_input(cfg.input);
    const auto params = io::params_from_json(in);
    const WeylData w = cfg.m ? weyl(params, *cfg.m) : weyl_from_prefix(params.alphas);
    write_json(cfg, {{"numerator", io::to_json(w.W.numerator)}, {"denominator", io::to_json(w.W.denominator)}});
    return kOk;
}

int cmd_interp(const RunConfig& cfg) {
    const auto problem = io::problem_from_json(read_input(cfg.input));
    if (problem.size() == 0) throw DomainError("interp: empty node list");
    const auto tol = cfg.tolerances();
    const auto gp = compute_generators(problem, tol.interp);
    json out = io::generators_to_json(gp);
    out["residuals"] = {{"r", residual(problem, gp.r)}, {"q", residual(problem, gp.q)}};
    const auto ind = inductive_solution(problem);
    out["inductive"] = {{"p", io::to_json(ind)}, {"height", height(ind).value()}, {"residual", residual(problem, ind)}};
    write_json(cfg, out);
    return kOk;
}

int cmd_misp(const RunConfig& cfg) {
    const auto input = io::misp_input_from_json(read_input(cfg.input));
    const auto out = solve_misp(input, cfg.tolerances());
    if (cfg.verbose) {
        const auto& d = out.diagnostics;
        std::cerr << "misp: " << out.tag() << " h_min=" << (d.h_min ? std::to_string(*d.h_min) : "-")
                  << " r1_gate=" << (d.r1_gate ? std::to_string(*d.r1_gate) : "-") << "\n";
    }
    write_json(cfg, io::to_json(out));
    if (out.is_unique()) return kOk;
    return out.is_family() ? kFamily : kInfeasible;
}

int cmd_roundtrip(const RunConfig& cfg) {
    const int m = cfg.m.value_or(1);
    const auto rep = roundtrip_experiment(cfg.n, m, cfg.seed, cfg.trials, cfg.tolerances());
    if (cfg.verbose)
        std::cerr << "roundtrip: " << rep.unique << " unique, " << rep.family << " family, " << rep.infeasible
                  << " infeasible of " << rep.runs() << " runs\n";
    write_json(cfg, io::to_json(rep));
    if (!cfg.csv.empty()) write_text(cfg.csv, io::roundtrip_csv(rep));
    return kOk;
}

int cmd_eigvec(const RunConfig& cfg) {
    const json in = read_input(cfg.input);
    const auto params = io::params_from_json(in);
    const std::vector<Complex> zetas =
        in.contains("zeta") ? std::vector<Complex>{io::complex_from_json(in.at("zeta"))} : spectrum(params);
    const auto c = assemble_cmv(params);
    json vecs = json::array();
    for (const Complex z : zetas) {
        const auto x = eigenvector(params, z);
        const Eigen::VectorXcd xv = Eigen::Map<const Eigen::VectorXcd>(x.data(), static_cast<Eigen::Index>(x.size()));
        const double res = (z * xv - c * xv).norm() / xv.norm();
        vecs.push_back({{"zeta", io::to_json(z)}, {"x", io::to_json(x)}, {"relative_residual", res}});
    }
    write_json(cfg, {{"eigenvectors", vecs}});
    return kOk;
}

void report_error(const char* kind, const std::string& message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed inverse spectral problem for finite CMV matrices"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--input,-i", cfg.input, "input JSON file, '-' for stdin, or inline JSON");
        sub->add_option("--output,-o", cfg.output, "output file (default stdout)");
        sub->add_option("--tol-rank", cfg.tol_rank, "relative singular value threshold")->check(CLI::PositiveNumber);
        sub->add_option("--tol-degen", cfg.tol_degen, "R1(0) degeneracy threshold")->check(CLI::PositiveNumber);
        sub->add_flag("--verbose,-v", cfg.verbose);
    };

    std::map<std::string, int (*)(const RunConfig&)> handlers = {
        {"spectrum", cmd_spectrum}, {"szego", cmd_szego}, {"weyl", cmd_weyl},   {"interp", cmd_interp},
        {"misp", cmd_misp},         {"roundtrip", cmd_roundtrip}, {"eigvec", cmd_eigvec}};

    add_io(app.add_subcommand("spectrum", "eigenvalues of the CMV matrix, sorted by argument"));
    add_io(app.add_subcommand("szego", "Szego polynomials; inverse recursion if the input has \"phi\""));
    auto* w = app.add_subcommand("weyl", "reciprocal Weyl function");
    add_io(w);
    w->add_option("--m", cfg.m, "use alpha_0..alpha_{n-m-3}");
    add_io(app.add_subcommand("interp", "minimal and second generators of an interpolation problem"));
    add_io(app.add_subcommand("misp", "solve the mixed inverse spectral problem"));
    auto* rt = app.add_subcommand("roundtrip", "seeded round-trip experiment");
    add_io(rt);
    rt->add_option("--n", cfg.n, "matrix size")->check(CLI::PositiveNumber);
    rt->add_option("--m", cfg.m, "number of unknown coefficients");
    rt->add_option("--seed", cfg.seed, "random seed");
    rt->add_option("--trials", cfg.trials, "number of trials")->check(CLI::NonNegativeNumber);
    rt->add_option("--csv", cfg.csv, "write per-run CSV here");
    add_io(app.add_subcommand("eigvec", "eigenvectors from the Szego polynomials"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        report_error("usage", e.what());
        return kInvalid;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return handlers.at(name)(cfg);
    } catch (const io::ParseError& e) {
        report_error("parse", e.what());
    } catch (const json::exception& e) {
        report_error("parse", e.what());
    } catch (const DomainError& e) {
        report_error("domain", e.what());
    } catch (const ContractError& e) {
        report_error("contract", e.what());
        return kInternal;
    } catch (const NumericalFailure& e) {
        report_error("numerical", e.what());
        return kInternal;
    } catch (const std::exception& e) {
        report_error("internal", e.what());
        return kInternal;
    }
    return kInvalid;
}
