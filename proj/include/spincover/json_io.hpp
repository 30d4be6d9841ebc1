#pragma once

#include <nlohmann/json_fwd.hpp>

#include "spincover/rep_matrix.hpp"
#include "spincover/spin.hpp"

namespace spincover {

// Wire formats.  Throws InputError on malformed or inconsistent documents.
//
//   multivector    {"p":1,"q":1,"field":"real","terms":[{"index":[1],"re":1.0}]}
//   matrix         {"p":1,"q":1,"matrix":[[...],...]}   row b, column a
//   dense matrix   {"order":2,"complex":true,"rows":[[{"re":..,"im":..},...],...]}
//   lift result    {"T_plus":<multivector>,"norm_type":"+e","groups":[...],
//                   "component":"...","matrix_component":"...","residual":..}

nlohmann::json multivector_to_json(const Multivector& u);
Multivector multivector_from_json(const nlohmann::json& j);

nlohmann::json orthogonal_to_json(const OrthogonalMatrix& m);
OrthogonalMatrix orthogonal_from_json(const nlohmann::json& j, double tol = eps_rel);

nlohmann::json dense_to_json(const DenseMatrix& m, bool complex_entries);
DenseMatrix dense_from_json(const nlohmann::json& j);

nlohmann::json lift_result_to_json(const LiftResult& r);

}  // namespace spincover
