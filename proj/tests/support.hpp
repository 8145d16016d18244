#pragma once

#include <json.hpp>

#include "debond/model.hpp"

namespace testing_support {

// Problem document with the given overrides merged over a small default.
inline nlohmann::json problem_doc(const nlohmann::json& patch = nlohmann::json::object()) {
  nlohmann::json doc = {{"epsilon", 0.1},
                        {"nu", 1.0},
                        {"ell0", 1.0},
                        {"t_end", 0.5},
                        {"ds", 4e-3},
                        {"toughness", {{"kind", "constant"}, {"kappa0", 0.5}}},
                        {"loading", {{"kind", "constant"}, {"value", 0.9}}},
                        {"u0", {{"kind", "affine"}}},
                        {"u1", {{"kind", "zero"}}}};
  if (patch.is_object()) doc.merge_patch(patch);
  return doc;
}

inline debond::Problem problem(const nlohmann::json& patch = nlohmann::json::object()) {
  return debond::parse_problem(problem_doc(patch));
}

}  // namespace testing_support
