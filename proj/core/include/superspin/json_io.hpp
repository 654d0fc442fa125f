#pragma once

// JSON forms of the library types.
//
//   Supernumber   [{"index": [i1, ..., ik], "coeff": c}, ...], indices 1-based
//                 and strictly increasing; c is a number, or a "p/q" string
//                 (exact in rational mode). Output uses shortest round-trip
//                 numbers in float64 mode and "p/q" strings in rational mode.
//   SuperMatrix   {"shape": {"m": m, "n": n}, "parity": "even"|"odd"|"general",
//                  "entries": [row-major supernumbers]}
//   real matrix   [[row], ...]
//   GammaForm     {"eta": [supernumbers], "n": n} or {"p": p, "q": q, "n": n}
//   GroupElement  {"g": real matrix, "n": SuperMatrix}
//
// Parse failures throw ParseError (or the relevant validation error) with
// the JSON pointer of the offending value in where().

#include <nlohmann/json.hpp>

#include "superspin/metric.hpp"
#include "superspin/super_group.hpp"

namespace superspin {

using json = nlohmann::json;

AlgebraConfig config_from_json(const json& j, const std::string& path = "");
json config_to_json(const AlgebraConfig& config);

template <class S>
json scalar_to_json(const S& x);
template <class S>
S scalar_from_json(const json& j, const std::string& path = "");

template <class S>
json to_json(const Supernumber<S>& z);
template <class S>
Supernumber<S> supernumber_from_json(const json& j, const AlgebraConfig& config, const std::string& path = "");

template <class S>
json to_json(const SuperMatrix<S>& a);
template <class S>
SuperMatrix<S> matrix_from_json(const json& j, const AlgebraConfig& config, const std::string& path = "");

template <class S>
json to_json(const DenseMatrix<S>& a);
template <class S>
DenseMatrix<S> real_matrix_from_json(const json& j, const std::string& path = "");

template <class S>
json to_json(const GammaForm<S>& gamma);
template <class S>
GammaForm<S> gamma_from_json(const json& j, const AlgebraConfig& config, const std::string& path = "");

template <class S>
json to_json(const GroupElement<S>& h);
template <class S>
GroupElement<S> group_element_from_json(const json& j, const AlgebraConfig& config, const std::string& path = "");

/// {"P", "Gamma", "d", "reducibility", "body_reducible"}.
template <class S>
json to_json(const CanonicalizationResult<S>& result);

}  // namespace superspin
