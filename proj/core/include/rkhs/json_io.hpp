#pragma once

#include <string>
#include <string_view>

#include "rkhs/kernels.hpp"
#include "rkhs/mdm.hpp"
#include "rkhs/types.hpp"
#include "rkhs/worst_case.hpp"

namespace rkhs::json {

// Schemas:
//   kernel:  {"family": "gaussian" | "hermite", "params": [..]}
//   rule:    {"nodes": [[..], ..], "weights": [..]}
//   method:  rule fields plus "index_set": [[..], ..] and "coeffs": [[..], ..]
//   cost:    {"mode": "unit"} or {"mode": "dollar", "table": [..]}
//   plan:    {"active_sets": [[..]], "levels": [..], "budgets": [..],
//             "flattened": <rule>, "cost": x, "dedup_anchor": b}
// Coordinates in "active_sets" are 1-based. Malformed input throws a usage error.

std::string dump(const KernelSpec& spec);
std::string dump(const QuadratureRule& rule);
std::string dump(const SamplingMethod& method);
std::string dump(const CostModel& model);
std::string dump(const MdmPlan& plan);

KernelSpec parse_kernel(std::string_view text);
QuadratureRule parse_rule(std::string_view text);
SamplingMethod parse_method(std::string_view text);
CostModel parse_cost_model(std::string_view text);
MdmPlan parse_plan(std::string_view text);

}  // namespace rkhs::json
