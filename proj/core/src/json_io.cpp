#include "kq/json_io.hpp"

#include <stdexcept>

namespace kq {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("json: " + what);
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

MultiIndex multi_index(const json& j, int d) {
    if (!j.is_array() || static_cast<int>(j.size()) != d)
        bad("multi-index must be an array of length d");
    MultiIndex mi(d, 0);
    for (int i = 0; i < d; ++i) {
        if (!j[i].is_number_integer() || j[i].get<int>() < 0)
            bad("multi-index entries must be non-negative integers");
        mi[i] = j[i].get<int>();
    }
    return mi;
}

Rational rational_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) bad(std::string("field '") + key + "' must be a fraction string");
    try {
        return rational_from_string(v.get<std::string>());
    } catch (const std::exception&) {
        bad(std::string("field '") + key + "' is not a valid fraction");
    }
}

} // namespace

json to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& [exp, c] : p.terms())
        terms.push_back({{"exp", exp},
                         {"re", rational_to_string(c.re)},
                         {"im", rational_to_string(c.im)}});
    return {{"d", p.dimension()}, {"terms", terms}};
}

Poly poly_from_json(const json& j) {
    int d = int_field(j, "d");
    if (d < 1) bad("dimension must be positive");
    const json& terms = field(j, "terms");
    if (!terms.is_array()) bad("'terms' must be an array");
    Poly p(d);
    for (const json& t : terms)
        p.add_term(multi_index(field(t, "exp"), d),
                   Scalar(rational_field(t, "re"), rational_field(t, "im")));
    return p;
}

json to_json(const MultiDiffOp& op) {
    json terms = json::array();
    for (const auto& [key, coeff] : op.terms()) {
        json derivs = json::array();
        for (const MultiIndex& mi : key) derivs.push_back(mi);
        terms.push_back({{"derivs", derivs}, {"coeff", to_json(coeff)}});
    }
    return {{"d", op.dimension()}, {"arity", op.arity()}, {"terms", terms}};
}

MultiDiffOp multidiffop_from_json(const json& j) {
    int d = int_field(j, "d");
    int arity = int_field(j, "arity");
    if (d < 1 || arity < 0) bad("bad operator shape");
    const json& terms = field(j, "terms");
    if (!terms.is_array()) bad("'terms' must be an array");
    MultiDiffOp op(d, arity);
    for (const json& t : terms) {
        const json& derivs = field(t, "derivs");
        if (!derivs.is_array() || static_cast<int>(derivs.size()) != arity)
            bad("'derivs' must list one multi-index per argument");
        MultiDiffOp::DerivKey key;
        for (const json& mi : derivs) key.push_back(multi_index(mi, d));
        Poly coeff = poly_from_json(field(t, "coeff"));
        if (coeff.dimension() != d) bad("coefficient dimension mismatch");
        op.add_term(key, coeff);
    }
    return op;
}

json to_json(const PolyVectorField& x) {
    json coeffs = json::array();
    for (const auto& [idx, poly] : x.coeffs())
        coeffs.push_back({{"idx", idx}, {"poly", to_json(poly)}});
    return {{"d", x.dimension()}, {"k", x.degree()}, {"coeffs", coeffs}};
}

PolyVectorField polyvector_from_json(const json& j) {
    int d = int_field(j, "d");
    int k = int_field(j, "k");
    if (d < 1 || k < 0 || k > d) bad("bad polyvector shape");
    const json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array()) bad("'coeffs' must be an array");
    PolyVectorField x(d, k);
    for (const json& c : coeffs) {
        const json& idx = field(c, "idx");
        if (!idx.is_array() || static_cast<int>(idx.size()) != k)
            bad("'idx' must be an array of k axes");
        std::vector<int> tuple;
        for (const json& i : idx) {
            if (!i.is_number_integer() || i.get<int>() < 1 || i.get<int>() > d)
                bad("'idx' entries must be axes in 1..d");
            tuple.push_back(i.get<int>());
        }
        Poly poly = poly_from_json(field(c, "poly"));
        if (poly.dimension() != d) bad("component dimension mismatch");
        x.add_component(tuple, poly);
    }
    return x;
}

json to_json(const AdmissibleGraph& g) {
    return {{"n", g.n}, {"m", g.m}, {"stars", g.stars}};
}

AdmissibleGraph graph_from_json(const json& j) {
    AdmissibleGraph g;
    g.n = int_field(j, "n");
    g.m = int_field(j, "m");
    const json& stars = field(j, "stars");
    if (!stars.is_array()) bad("'stars' must be an array");
    for (const json& star : stars) {
        if (!star.is_array()) bad("each star must be an array of targets");
        std::vector<int> s;
        for (const json& t : star) {
            if (!t.is_number_integer() || t.get<int>() == 0)
                bad("targets must be nonzero integers");
            s.push_back(t.get<int>());
        }
        g.stars.push_back(std::move(s));
    }
    g.validate();
    return g;
}

json to_json(const WeightEstimate& w) {
    return {{"mean", w.mean},
            {"std_error", w.std_error},
            {"samples", w.samples},
            {"seed", w.seed},
            {"graph_key", w.graph_key}};
}

WeightEstimate weight_estimate_from_json(const json& j) {
    WeightEstimate w;
    const json& mean = field(j, "mean");
    const json& se = field(j, "std_error");
    if (!mean.is_number() || !se.is_number()) bad("'mean'/'std_error' must be numbers");
    w.mean = mean.get<double>();
    w.std_error = se.get<double>();
    const json& samples = field(j, "samples");
    const json& seed = field(j, "seed");
    if (!samples.is_number_integer() || !seed.is_number_unsigned())
        bad("'samples'/'seed' must be integers");
    w.samples = samples.get<long long>();
    w.seed = seed.get<std::uint64_t>();
    if (j.contains("graph_key")) {
        if (!j.at("graph_key").is_string()) bad("'graph_key' must be a string");
        w.graph_key = j.at("graph_key").get<std::string>();
    }
    return w;
}

} // namespace kq
