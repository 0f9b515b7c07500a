#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rkhs/kernels.hpp"
#include "rkhs/param_sequence.hpp"
#include "rkhs/types.hpp"
#include "rkhs/worst_case.hpp"

namespace rkhs {

/// Sorted, 0-based coordinate indices.
using Coords = std::vector<std::size_t>;

/// Largest |u| accepted by anchored_component_eval.
inline constexpr std::size_t kMaxAnchoredOrder = 20;

/// f_u(x) = sum_{v subset u} (-1)^{|u \ v|} f(x_v, 0). `x` must vanish
/// outside u.
double anchored_component_eval(const Function& f, std::span<const std::size_t> u, Point x);

/// Multivariate decomposition method
///   A(f) = f(0) + sum_{u in active_sets} B_u(f_u),
/// where B_u is the Smolyak rule of level levels[k] over the coordinates u
/// built from Gauss-Hermite rules with m_i = i points.
struct MdmPlan {
  std::vector<Coords> active_sets;
  std::vector<int> levels;
  /// Node count n_u of each B_u.
  std::vector<std::size_t> budgets;
  /// Evaluation points (all coordinates outside the listed sets are zero)
  /// and weights of A. The leading rows are anchor rows: one for f(0) and,
  /// unless the anchor is de-duplicated, one per active set.
  QuadratureRule flattened;
  /// rule_cost of the flattened rule.
  double cost = 0.0;
  bool dedup_anchor = false;

  /// Number of coordinates of the flattened nodes (at least one).
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(flattened.dimension()); }
};

struct MdmOptions {
  /// Evaluate the anchor once instead of once per component.
  bool dedup_anchor = false;
  /// Coordinates >= this are never activated.
  std::size_t max_coordinates = 4096;
};

/// Plan for explicitly given sets and Smolyak levels (levels[k] >= |u_k|).
MdmPlan mdm_plan(std::vector<Coords> active_sets, std::vector<int> levels, const CostModel& model,
                 bool dedup_anchor = false);

/// Greedy cost-benefit planner. Sets u are scored by prod_{j in u} beta_j
/// (beta from the integration relation for Gaussian kernels); the predicted
/// error of u at level q is score(u) * r_u^{q - 2|u| + 1} with r_u the
/// largest beta in u, and score(u) before activation. Each step grants one
/// level to the set with the largest predicted decrease per unit of exact
/// incremental cost among the steps that still fit into `budget`; equal
/// ratios go to the lexicographically smaller set. New sets become eligible
/// once all their proper non-empty subsets are active.
MdmPlan mdm_build(const InfiniteKernel& kernel, double budget, const CostModel& model,
                  const MdmOptions& options = {});

/// Applies the flattened rule. `f` receives points of plan.dimension() coordinates.
double mdm_apply(const MdmPlan& plan, const Function& f);

/// Applies f(0) + sum_u B_u(f_u), evaluating each f_u by anchored_component_eval.
double mdm_apply_components(const MdmPlan& plan, const Function& f);

/// Worst-case integration error of the plan on H(M) for a finite kernel with
/// at least plan.dimension() coordinates; computed factor by factor without
/// forming the Gram matrix of the flattened rule. tail_bound is zero.
TruncatedError mdm_wce(const MdmPlan& plan, const KernelSpec& spec);

/// Same for an infinite-variate kernel, with the infinite products cut at
/// `trunc` coordinates; the exact error lies within tail_bound of value.
TruncatedError mdm_wce(const MdmPlan& plan, const InfiniteKernel& kernel, std::size_t trunc);

}  // namespace rkhs
