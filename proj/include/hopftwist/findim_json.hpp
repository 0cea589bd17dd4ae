#ifndef HOPFTWIST_FINDIM_JSON_HPP
#define HOPFTWIST_FINDIM_JSON_HPP

#include <json.hpp>

#include "hopftwist/findim.hpp"

namespace hopftwist {

// finhopf.json: {"dim": n, "mul": [[i,j,k,"re","im"],...], "comul": [[i,j,k,"re","im"],...],
// "unit": [...], "counit": [...], "antipode": [[...],...]}. mul entry (i,j,k,c) means
// e_i e_j has coefficient c on e_k; comul entry (i,j,k,c) means Delta e_i has c on
// e_j (x) e_k. Scalars are "p/q" strings or ["re","im"] pairs; antipode rows are
// matrix rows. "unit" may be omitted and is then solved for from the product.
nlohmann::json finhopf_to_json(const FinHopf& H);
FinHopf finhopf_from_json(const nlohmann::json& j);  // Parse, DimensionMismatch

// cocycle.json: {"side": "dual"|"algebra", "data": [[i,j,"re","im"],...]}.
nlohmann::json cocycle_to_json(const Cocycle& c);
Cocycle cocycle_from_json(const FinHopf& H, const nlohmann::json& j);

nlohmann::json scalar_to_json(const GaussQ& c);
GaussQ scalar_from_json(const nlohmann::json& j);

}  // namespace hopftwist

#endif
