/*
 * json_io.hpp
 * -----------
 * JSON encodings used by the CLI and golden files:
 *   Poly             {"d": 2, "terms": [{"exp": [1,0], "re": "1/2", "im": "0"}]}
 *   MultiDiffOp      {"d", "arity", "terms": [{"derivs": [[..],..], "coeff": <Poly>}]}
 *   PolyVectorField  {"d", "k", "coeffs": [{"idx": [i1..ik], "poly": <Poly>}]}
 *   AdmissibleGraph  {"n", "m", "stars": [[t1,t2,..],..]}  (ground targets negative)
 *   WeightEstimate   {"mean", "std_error", "samples", "seed", "graph_key"}
 * Rational parts are decimal fraction strings so round trips are exact.
 * Schema violations raise std::invalid_argument.
 */
#pragma once

#include "kq/graphs.hpp"
#include "kq/polyvector.hpp"
#include "kq/weights.hpp"

#include "json.hpp"

namespace kq {

nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const MultiDiffOp& op);
nlohmann::json to_json(const PolyVectorField& x);
nlohmann::json to_json(const AdmissibleGraph& g);
nlohmann::json to_json(const WeightEstimate& w);

Poly poly_from_json(const nlohmann::json& j);
MultiDiffOp multidiffop_from_json(const nlohmann::json& j);
PolyVectorField polyvector_from_json(const nlohmann::json& j);
AdmissibleGraph graph_from_json(const nlohmann::json& j);
WeightEstimate weight_estimate_from_json(const nlohmann::json& j);

} // namespace kq
