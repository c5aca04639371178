#pragma once

#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dsc/corpus.hpp"
#include "dsc/semantics.hpp"
#include "dsc/semimodule.hpp"
#include "dsc/semiring.hpp"
#include "dsc/syntax.hpp"

namespace dsc {

// Key order is fixed at insertion so equal data always prints byte-identically.
using Json = nlohmann::ordered_json;

Json violations_to_json(const std::vector<Violation>& violations);

Json config_to_json(const CategoryConfig& config);
CategoryConfig config_from_json(const Json& j);

Json analysis_to_json(const ObjectAnalysis& a);

Json model_to_json(const SemanticModel& m, std::string_view semiring_name);

// Restores a model from its serialized form and re-checks its invariants.
// Returns the model (without sentence analyses) and the recorded semiring
// name. Throws ModelFormat on anything out of shape.
std::pair<SemanticModel, std::string> model_from_json(const Json& j);

template <Semiring S>
Json value_to_json(const typename S::Value& v) {
  if constexpr (std::is_same_v<typename S::Value, bool>)
    return Json(v);
  else
    return Json(S::to_text(v));
}

template <Semiring S>
typename S::Value value_from_json(const Json& j) {
  if (j.is_boolean()) return S::from_text(j.get<bool>() ? "true" : "false");
  if (j.is_string()) return S::from_text(j.get<std::string>());
  throw DscError("BadNumber", "expected a coefficient encoded as string or boolean");
}

inline Json basis_to_json(const std::vector<InstanceRef>& basis) {
  Json out = Json::array();
  for (const auto& ref : basis) out.push_back(Json::array({ref.sentence, ref.position}));
  return out;
}

template <Semiring S>
Json vector_to_json(const std::vector<InstanceRef>& basis, const SparseVec<S>& v) {
  Json out;
  out["basis"] = basis_to_json(basis);
  Json coeffs = Json::object();
  for (const auto& [i, c] : v.coeffs()) coeffs[std::to_string(i)] = value_to_json<S>(c);
  out["coeffs"] = std::move(coeffs);
  return out;
}

template <Semiring S>
SparseVec<S> vector_from_json(const Json& j, std::size_t basis_size) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_object())
    throw DscError("BadVector", "expected an object with a 'coeffs' field");
  SparseVec<S> v(basis_size);
  for (const auto& [key, val] : j.at("coeffs").items()) {
    std::size_t idx = 0;
    try {
      idx = std::stoull(key);
    } catch (const std::exception&) {
      throw DscError("BadVector", "coefficient key '" + key + "' is not an index");
    }
    v.set(idx, value_from_json<S>(val));
  }
  return v;
}

}  // namespace dsc
