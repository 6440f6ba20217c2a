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

#ifndef CMVMISP_JSON_IO_HPP
#define CMVMISP_JSON_IO_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmv.hpp"
#include "interp.hpp"
#include "misp.hpp"

namespace cmvmisp::io {

using json = nlohmann::json;

class ParseError : public Error {
public:
    using Error::Error;
};

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("expected a complex number [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const std::vector<Complex>& zs) {
    json out = json::array();
    for (const auto& z : zs) out.push_back(to_json(z));
    return out;
}

inline std::vector<Complex> complex_list_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of complex numbers");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

inline json to_json(const Polynomial& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_json(c));
    return out;
}

inline Polynomial polynomial_from_json(const json& j) { return Polynomial(complex_list_from_json(j)); }

inline json to_json(const VectorPolynomial& p) { return {{"p1", to_json(p.p1)}, {"p2", to_json(p.p2)}}; }

inline VectorPolynomial vector_polynomial_from_json(const json& j) {
    return {polynomial_from_json(field(j, "p1")), polynomial_from_json(field(j, "p2"))};
}

inline json to_json(const VerblunskyParams& p) { return {{"alphas", to_json(p.alphas)}, {"beta", to_json(p.beta)}}; }

inline VerblunskyParams params_from_json(const json& j) {
    VerblunskyParams p;
    p.alphas = complex_list_from_json(field(j, "alphas"));
    if (j.contains("beta")) p.beta = complex_from_json(j.at("beta"));
    p.validate();
    return p;
}

inline json spectrum_to_json(const std::vector<Complex>& zetas) { return {{"zetas", to_json(zetas)}}; }

inline std::vector<Complex> spectrum_from_json(const json& j) { return complex_list_from_json(field(j, "zetas")); }

inline json to_json(const InterpolationProblem& p) {
    json nodes = json::array();
    for (const auto& n : p.nodes) nodes.push_back({{"z", to_json(n.z)}, {"a1", to_json(n.a1)}, {"a2", to_json(n.a2)}});
    return {{"nodes", nodes}};
}

/// Accepts {"z", "a1", "a2"} nodes or {"z", "omega"} nodes with omega = [re, im] or "inf".
inline InterpolationProblem problem_from_json(const json& j) {
    const json& nodes = field(j, "nodes");
    if (!nodes.is_array()) throw ParseError("\"nodes\" must be an array");
    bool weighted = false;
    bool valued = false;
    std::vector<InterpolationNode> direct;
    std::vector<Complex> zs;
    std::vector<ExtendedComplex> omegas;
    for (const auto& n : nodes) {
        const Complex z = complex_from_json(field(n, "z"));
        if (n.contains("omega")) {
            valued = true;
            zs.push_back(z);
            const json& w = n.at("omega");
            if (w.is_string()) {
                if (w.get<std::string>() != "inf") throw ParseError("omega must be [re, im] or \"inf\"");
                omegas.emplace_back(std::nullopt);
            } else {
                omegas.emplace_back(complex_from_json(w));
            }
        } else {
            weighted = true;
            direct.push_back({z, complex_from_json(field(n, "a1")), complex_from_json(field(n, "a2"))});
        }
    }
    if (weighted && valued) throw ParseError("nodes mix the weighted and valued forms");
    if (valued) return from_values(zs, omegas);
    return InterpolationProblem(std::move(direct));
}

inline json to_json(const MispInput& in) {
    return {{"n", in.n}, {"m", in.m}, {"known_alphas", to_json(in.known_alphas)}, {"zetas", to_json(in.zetas)}};
}

inline MispInput misp_input_from_json(const json& j) {
    MispInput in;
    in.n = int_field(j, "n");
    in.m = int_field(j, "m");
    in.known_alphas = complex_list_from_json(field(j, "known_alphas"));
    in.zetas = complex_list_from_json(field(j, "zetas"));
    in.validate();
    return in;
}

inline json generators_to_json(const GeneratorPair& gp) {
    return {{"h_min", gp.h_min}, {"r", to_json(gp.r)}, {"h_second", gp.h_second}, {"q", to_json(gp.q)}};
}

inline json to_json(const MispOutcome& out) {
    const auto& d = out.diagnostics;
    json diag = {{"omegas", to_json(d.omegas)}};
    if (d.h_min) diag["h_min"] = *d.h_min;
    if (d.h_second) diag["h_second"] = *d.h_second;
    if (d.r1_at_0) diag["r1_at_0"] = to_json(*d.r1_at_0);
    if (d.r1_gate) diag["r1_gate"] = *d.r1_gate;
    json res = json::object();
    if (d.residual_r) res["r"] = *d.residual_r;
    if (d.residual_q) res["q"] = *d.residual_q;
    if (d.spectral_mismatch) res["spectrum"] = *d.spectral_mismatch;
    diag["residuals"] = res;

    json j = {{"tag", out.tag()}, {"diagnostics", diag}};
    if (const auto* u = std::get_if<UniqueSolution>(&out.result)) {
        j["alphas"] = to_json(u->alphas);
    } else if (const auto* f = std::get_if<FamilySolution>(&out.result)) {
        const auto& c = f->constrained;
        json fam = {{"free_parameter", f->free_parameter},
                    {"a", to_json(c.a)},
                    {"c", to_json(c.c)},
                    {"generators", generators_to_json(c.generators)}};
        json samples = json::array();
        for (const auto& s : f->samples) {
            json e = {{"t", to_json(s.t)}, {"valid", s.valid}};
            if (s.valid) e["alphas"] = to_json(s.alphas);
            else e["note"] = s.note;
            samples.push_back(e);
        }
        fam["samples"] = samples;
        j["family"] = fam;
        if (const auto v = f->first_valid()) j["alphas"] = to_json(v->alphas);
    } else {
        const auto& inf = std::get<Infeasibility>(out.result);
        j["stage"] = inf.stage;
        j["reason"] = inf.reason;
    }
    return j;
}

inline json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const RoundtripReport& r) {
    return {{"n", r.n},
            {"m", r.m},
            {"seed", r.seed},
            {"trials", r.trials},
            {"runs", r.runs()},
            {"unique", r.unique},
            {"family", r.family},
            {"infeasible", r.infeasible},
            {"unique_rate", r.unique_rate()},
            {"gate_rate", r.gate_rate()},
            {"gate_passed", r.gate_passed},
            {"gate_passed_recovered", r.gate_passed_recovered},
            {"max_unique_error", r.max_unique_error},
            {"min_r1_at_0", number_or_null(r.min_r1_at_0)},
            {"min_r1_gate", number_or_null(r.min_r1_gate)}};
}

inline std::string roundtrip_csv(const RoundtripReport& r) {
    auto num = [](double x) {
        if (!std::isfinite(x)) return std::string();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6e", x);
        return std::string(buf);
    };
    std::string out = "trial,subset,outcome,max_error,r1_at_0_modulus\n";
    for (const auto& row : r.rows)
        out += std::to_string(row.trial) + "," + row.subset + "," + row.outcome + "," + num(row.max_error) + "," +
               num(row.r1_at_0_modulus) + "\n";
    return out;
}

} // namespace cmvmisp::io

#endif // CMVMISP_JSON_IO_HPP
