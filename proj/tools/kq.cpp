// kq: command-line front end for graph enumeration, weight estimation,
// star-product expansion, verification suites, and the Moyal comparison.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 file not found or impossible request shape, 3 malformed JSON,
// 4 unsupported parameters (n, m, order, ...).

#include "kq/json_io.hpp"
#include "kq/star.hpp"
#include "kq/weyl.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace kq;
using nlohmann::json;

namespace {

constexpr int kExitFile = 2;
constexpr int kExitJson = 3;
constexpr int kExitUnsupported = 4;

#ifndef KQ_VERSION
#define KQ_VERSION "0.0.0"
#endif

struct CliError {
    int code;
    std::string message;
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitFile, "cannot open '" + path + "'"};
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw CliError{kExitJson, "malformed JSON in '" + path + "'"};
    return j;
}

json stochastic_header(long long samples, std::uint64_t seed) {
    return {{"samples", samples}, {"seed", seed}, {"version", KQ_VERSION}};
}

std::vector<int> parse_outdeg(const std::string& spec, int n) {
    std::vector<int> degs;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        degs.push_back(std::stoi(item));
    if (static_cast<int>(degs.size()) == 1 && n > 1) degs.assign(n, degs[0]);
    return degs;
}

std::vector<Poly> monomials_up_to(int d, int deg) {
    std::vector<Poly> out;
    MultiIndex e(d, 0);
    while (true) {
        if (mi_total(e) <= deg) out.push_back(Poly::monomial(d, e, Scalar(1)));
        int j = 0;
        while (j < d && ++e[j] > deg) e[j++] = 0;
        if (j == d) break;
    }
    return out;
}

PolyVectorField standard_symplectic(int d) {
    PolyVectorField pi(d, 2);
    for (int i = 1; i + 1 <= d; i += 2)
        pi.add_component({i, i + 1}, Poly::constant(d, Scalar(1)));
    return pi;
}

double poly_magnitude(const Poly& p) {
    double m = 0.0;
    for (const auto& [mi, c] : p.terms()) m = std::max(m, c.magnitude());
    return m;
}

// ---------------------------------------------------------------------------

int cmd_graphs(int n, int m, const std::string& outdeg, const std::string& dedup,
               bool connected) {
    if (2 * n + m - 2 < 0)
        throw CliError{kExitFile, "no admissible graphs: 2n+m-2 < 0"};
    std::vector<int> degs;
    try {
        degs = parse_outdeg(outdeg, n);
    } catch (const std::exception&) {
        throw CliError{kExitFile, "invalid out-degree list '" + outdeg + "'"};
    }
    std::vector<AdmissibleGraph> graphs;
    try {
        graphs = enumerate_graphs(n, m, degs, connected);
    } catch (const std::invalid_argument& e) {
        throw CliError{kExitFile, e.what()};
    }
    std::sort(graphs.begin(), graphs.end(),
              [](const AdmissibleGraph& a, const AdmissibleGraph& b) {
                  return std::tie(a.n, a.m, a.stars) < std::tie(b.n, b.m, b.stars);
              });
    if (dedup == "star-order") {
        std::set<std::string> seen;
        std::vector<AdmissibleGraph> unique;
        for (auto& g : graphs)
            if (seen.insert(star_order_key(g)).second) unique.push_back(std::move(g));
        graphs = std::move(unique);
    } else if (!dedup.empty()) {
        throw CliError{kExitFile, "unknown dedup mode '" + dedup + "'"};
    }
    for (const auto& g : graphs) std::cout << to_json(g).dump() << "\n";
    std::cout << json{{"count", graphs.size()}}.dump() << "\n";
    return 0;
}

void print_weight(const AdmissibleGraph& g, const WeightEstimate& est,
                  const std::string& format, bool header_done) {
    std::optional<Rational> an = analytic_weight(g);
    if (format == "csv") {
        if (!header_done) std::cout << "graph_key,mean,std_error,analytic\n";
        std::cout << est.graph_key << "," << est.mean << "," << est.std_error << ",";
        if (an) std::cout << an->get_d();
        std::cout << "\n";
    } else {
        json out{{"mean", est.mean},
                 {"std_error", est.std_error},
                 {"samples", est.samples},
                 {"seed", est.seed},
                 {"graph_key", est.graph_key}};
        if (an) out["analytic"] = an->get_d();
        std::cout << out.dump() << "\n";
    }
}

int cmd_weights(const std::string& graph_path, int n, long long samples,
                std::uint64_t seed, const std::string& format) {
    // Compute everything before emitting anything: no partial output on failure.
    std::vector<std::pair<AdmissibleGraph, WeightEstimate>> results;
    try {
        if (!graph_path.empty()) {
            AdmissibleGraph g;
            try {
                g = graph_from_json(load_json_file(graph_path));
            } catch (const std::invalid_argument& e) {
                throw CliError{kExitJson, e.what()};
            }
            results.emplace_back(g, mc_weight(g, samples, seed));
        } else {
            if (n < 1) throw CliError{kExitFile, "need --graph or --n for batch mode"};
            std::vector<AdmissibleGraph> reps;
            std::set<std::string> seen;
            for (auto& g : enumerate_graphs(n, 2, std::vector<int>(n, 2)))
                if (seen.insert(star_order_key(g)).second) reps.push_back(std::move(g));
            std::sort(reps.begin(), reps.end(),
                      [](const AdmissibleGraph& a, const AdmissibleGraph& b) {
                          return a.stars < b.stars;
                      });
            std::uint64_t offset = 0;
            for (const auto& g : reps)
                results.emplace_back(g, mc_weight(g, samples, seed + offset++));
        }
    } catch (const std::invalid_argument& e) {
        throw CliError{kExitUnsupported, e.what()};
    }
    if (format == "json") std::cout << stochastic_header(samples, seed).dump() << "\n";
    bool header_done = false;
    for (const auto& [g, est] : results) {
        print_weight(g, est, format, header_done);
        header_done = true;
    }
    return 0;
}

WeightSource make_source(const std::string& weights, long long samples, std::uint64_t seed) {
    if (weights == "analytic") return WeightSource::analytic_only();
    if (weights == "mc") return WeightSource::monte_carlo(samples, seed);
    throw CliError{kExitFile, "unknown weight source '" + weights + "'"};
}

PolyVectorField load_poisson(const std::string& path) {
    try {
        return polyvector_from_json(load_json_file(path));
    } catch (const std::invalid_argument& e) {
        throw CliError{kExitJson, e.what()};
    }
}

int cmd_star_expand(const std::string& poisson_path, int order, const std::string& weights,
                    long long samples, std::uint64_t seed, const std::string& format) {
    PolyVectorField pi = load_poisson(poisson_path);
    StarProduct s{OpSeries(0, MultiDiffOp(pi.dimension(), 2)), {}};
    try {
        s = assemble(pi, order, make_source(weights, samples, seed));
    } catch (const std::exception& e) {
        throw CliError{kExitUnsupported, e.what()};
    }
    if (format == "text") {
        for (int k = 0; k <= s.order(); ++k)
            std::cout << "hbar^" << k << ": " << s.terms.at(k).to_string() << "\n";
        return 0;
    }
    if (weights == "mc") std::cout << stochastic_header(samples, seed).dump() << "\n";
    for (int k = 0; k <= s.order(); ++k)
        std::cout << json{{"order", k}, {"coeff", to_json(s.terms.at(k))}}.dump() << "\n";
    return 0;
}

int cmd_star_verify(const std::string& poisson_path, int order, const std::string& weights,
                    long long samples, std::uint64_t seed, int degree, int depth) {
    PolyVectorField pi = load_poisson(poisson_path);
    try {
        StarProduct s = assemble(pi, order, make_source(weights, samples, seed));
        AssociativityReport rep = verify_associativity(s, degree, depth);
        std::cout << json{{"associative", rep.associative},
                          {"max_violation", rep.max_violation},
                          {"first_violation_order", rep.first_violation_order}}
                         .dump()
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        throw CliError{kExitUnsupported, e.what()};
    }
}

int cmd_star_formality(const std::string& poisson_path, int n, long long samples,
                       std::uint64_t seed) {
    PolyVectorField pi = load_poisson(poisson_path);
    const int d = pi.dimension();
    std::vector<Poly> fs{Poly::variable(d, 1) * Poly::variable(d, 1),
                         Poly::variable(d, std::max(1, d - 1)) * Poly::variable(d, d),
                         Poly::variable(d, 1)};
    try {
        FormalityReport rep = formality_residual(n, std::vector<PolyVectorField>(n, pi), fs,
                                                 WeightSource::monte_carlo(samples, seed));
        std::cout << stochastic_header(samples, seed).dump() << "\n";
        std::cout << json{{"n", n}, {"residual", rep.residual}, {"std_error", rep.std_error}}.dump()
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        throw CliError{kExitUnsupported, e.what()};
    }
}

// --- verification suites ---------------------------------------------------

bool suite_groenewold() {
    GroenewoldReport rep = groenewold_residual();
    bool ok = rep.poisson_side.is_zero() &&
              rep.operator_side == WeylOp::identity(1).scaled_hbar(Scalar(-3), 2);
    // The obstruction is +3(i hbar)^2 times the identity, i.e. −3ħ².
    std::cout << "groenewold residual: −3ħ² (i²-resolved)\n";
    return ok;
}

bool suite_moyal() {
    PolyVectorField pi = standard_symplectic(2);
    std::vector<std::vector<Scalar>> mat{{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}};
    StarProduct s = substitute_i_hbar(assemble(pi, 3, WeightSource::analytic_only()));
    for (const Poly& f : monomials_up_to(2, 3))
        for (const Poly& g : monomials_up_to(2, 3))
            if (!(s.product(f, g) == moyal_product(f, g, mat, 3))) return false;
    return true;
}

bool suite_chain_map() {
    // d_H (first-order coefficient of a polyvector) = 0.
    std::uint64_t state = 12345;
    auto next = [&state]() { return state = state * 6364136223846793005ULL + 1442695040888963407ULL; };
    for (int round = 0; round < 20; ++round) {
        int d = 2 + static_cast<int>(next() % 2);
        int k = 1 + static_cast<int>(next() % 3);
        PolyVectorField x(d, std::min(k, d));
        std::vector<int> idx;
        for (int i = 1; i <= std::min(k, d); ++i) idx.push_back(i);
        x.add_component(idx, Poly::variable(d, 1 + static_cast<int>(next() % d)));
        if (!modified_d(hkr(x)).is_zero()) return false;
    }
    return true;
}

bool suite_star() {
    PolyVectorField pi(3, 2);
    pi.add_component({1, 2}, Poly::variable(3, 3));
    pi.add_component({2, 3}, Poly::variable(3, 1));
    pi.add_component({3, 1}, Poly::variable(3, 2));
    StarProduct s = assemble(pi, 1, WeightSource::analytic_only());
    if (!(first_order_bracket(s) == pi)) return false;
    Poly one = Poly::constant(3, Scalar(1));
    Poly f = Poly::variable(3, 1) * Poly::variable(3, 2);
    auto lf = s.product(one, f);
    return lf.at(0) == f && lf.at(1).is_zero();
}

int cmd_verify(const std::string& suite) {
    struct Entry {
        const char* name;
        bool (*run)();
    };
    std::vector<Entry> entries;
    if (suite == "groenewold" || suite == "all") entries.push_back({"groenewold", suite_groenewold});
    if (suite == "moyal" || suite == "all") entries.push_back({"moyal", suite_moyal});
    if (suite == "chain-map" || suite == "all") entries.push_back({"chain-map", suite_chain_map});
    if (suite == "star" || suite == "all") entries.push_back({"star", suite_star});
    if (entries.empty()) throw CliError{kExitFile, "unknown suite '" + suite + "'"};
    bool all_ok = true;
    for (const auto& e : entries) {
        bool ok = e.run();
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS " : "FAIL ") << e.name << "\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_moyal(int d, int order) {
    if (d < 2 || d % 2 != 0)
        throw CliError{kExitUnsupported, "--d must be a positive even dimension"};
    if (order < 0 || order > 3) throw CliError{kExitUnsupported, "--order must be 0..3"};
    PolyVectorField pi = standard_symplectic(d);
    std::vector<std::vector<Scalar>> mat(d, std::vector<Scalar>(d, Scalar(0)));
    for (int i = 0; i + 1 < d; i += 2) {
        mat[i][i + 1] = Scalar(1);
        mat[i + 1][i] = Scalar(-1);
    }
    StarProduct s = substitute_i_hbar(assemble(pi, order, WeightSource::analytic_only()));
    double max_disc = 0.0;
    for (const Poly& f : monomials_up_to(d, 3))
        for (const Poly& g : monomials_up_to(d, 3)) {
            auto lhs = s.product(f, g);
            auto rhs = moyal_product(f, g, mat, order);
            for (int k = 0; k <= order; ++k)
                max_disc = std::max(max_disc, poly_magnitude(lhs.at(k) - rhs.at(k)));
        }
    std::cout << json{{"d", d}, {"order", order}, {"max_discrepancy", max_disc}}.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deformation-quantization toolkit"};
    app.require_subcommand(1);

    int n = 0, m = 0, order = 2, degree = 2, depth = -1, dim = 2;
    long long samples = 200000;
    std::uint64_t seed = 0;
    std::string outdeg = "2", dedup, graph_path, poisson_path, weights = "analytic";
    std::string format = "json", suite = "all";
    bool connected = false;

    auto* graphs = app.add_subcommand("graphs", "enumerate admissible graphs");
    graphs->add_option("--n", n)->required();
    graphs->add_option("--m", m)->required();
    graphs->add_option("--outdeg", outdeg);
    graphs->add_option("--dedup", dedup);
    graphs->add_flag("--connected", connected);

    auto* weights_cmd = app.add_subcommand("weights", "estimate graph weights");
    weights_cmd->add_option("--graph", graph_path);
    weights_cmd->add_option("--n", n);
    weights_cmd->add_option("--samples", samples);
    weights_cmd->add_option("--seed", seed);
    weights_cmd->add_option("--format", format);

    auto* star = app.add_subcommand("star", "star-product operations");
    star->require_subcommand(1);
    auto* expand = star->add_subcommand("expand", "emit per-order coefficients");
    expand->add_option("--poisson", poisson_path)->required();
    expand->add_option("--order", order);
    expand->add_option("--weights", weights);
    expand->add_option("--samples", samples);
    expand->add_option("--seed", seed);
    expand->add_option("--format", format);
    auto* sverify = star->add_subcommand("verify", "associativity report");
    sverify->add_option("--poisson", poisson_path)->required();
    sverify->add_option("--order", order);
    sverify->add_option("--weights", weights);
    sverify->add_option("--samples", samples);
    sverify->add_option("--seed", seed);
    sverify->add_option("--degree", degree);
    sverify->add_option("--depth", depth);
    auto* formality = star->add_subcommand("formality", "formality-equation residual");
    formality->add_option("--poisson", poisson_path)->required();
    formality->add_option("--n", n)->default_val(2);
    formality->add_option("--samples", samples);
    formality->add_option("--seed", seed);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite);

    auto* moyal = app.add_subcommand("moyal", "assembled vs closed-form comparison");
    moyal->add_option("--d", dim);
    moyal->add_option("--order", order)->default_val(3);

    CLI11_PARSE(app, argc, argv);

    try {
        if (graphs->parsed()) return cmd_graphs(n, m, outdeg, dedup, connected);
        if (weights_cmd->parsed()) return cmd_weights(graph_path, n, samples, seed, format);
        if (star->parsed()) {
            if (expand->parsed())
                return cmd_star_expand(poisson_path, order, weights, samples, seed, format);
            if (sverify->parsed())
                return cmd_star_verify(poisson_path, order, weights, samples, seed, degree, depth);
            if (formality->parsed()) return cmd_star_formality(poisson_path, n, samples, seed);
        }
        if (verify->parsed()) return cmd_verify(suite);
        if (moyal->parsed()) return cmd_moyal(dim, order);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    }
    return 0;
}
