#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mvop/family.hpp"
#include "mvop/lax.hpp"
#include "mvop/weight.hpp"

namespace mvop {

/// Rows of [re, im] pairs.
nlohmann::json cmatrix_to_json(const CMatrix& m);
/// Accepts rows of [re, im] pairs or plain reals.
CMatrix cmatrix_from_json(const nlohmann::json& j);

/// Keys: N, alpha, s, B, tt_poly, normalize_gamma0, dg1 {nu}. A dg1 block
/// determines B and tt_poly and wins over an explicit B. A zero B without
/// tt_poly gets tt_poly = [I] so moments use the closed form.
WeightSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const WeightSpec& spec);
WeightSpec load_spec_file(const std::string& path);

nlohmann::json family_to_json(const Family& fam);
nlohmann::json lax_to_json(const LaxQuantities& lq);

}  // namespace mvop
