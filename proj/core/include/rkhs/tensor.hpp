#pragma once

#include <span>
#include <vector>

#include "rkhs/hermite_basis.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/types.hpp"
#include "rkhs/worst_case.hpp"

namespace rkhs {

/// Largest node count of a product or sparse-grid rule.
inline constexpr double kRuleBudget = 1e6;

/// The n-point Gauss-Hermite rule as a rule on the (univariate) space `spec`.
QuadratureRule gh_rule_on_space(int n, const KernelSpec& spec);

/// Full product grid; node i enumerates factor indices with the first
/// coordinate varying slowest.
QuadratureRule tensor_rule(std::span<const hermite::QuadratureRule1D> factors);

/// Product Gauss-Hermite rule with n_j = ceil(ln(d / eps) / zeta_j) and
/// zeta_j = ln(1 + 1 / (2 sigma_j^2)).
struct TensorChoice {
  std::vector<int> points;
  std::vector<double> zeta;
  /// sum_j exp(-n_j zeta_j), at most eps by construction.
  double guaranteed_bound = 0.0;
  /// Rule for the requested family: Gauss-Hermite on the Hermite space with
  /// beta_j = 2 sigma_j^2 / (1 + 2 sigma_j^2), or its transferred twin on the
  /// Gaussian space.
  QuadratureRule rule;
};

TensorChoice tensor_rule_for_eps(double eps, std::span<const double> sigma, Family family);

/// Univariate rule on `nodes` with optimal weights for the given kernel.
hermite::QuadratureRule1D optimal_weights_1d(std::span<const double> nodes, Family family,
                                             double param);

/// Worst-case integration error of the product of univariate rules
/// (factors[j] acting on coordinate j) without forming the grid:
/// e^2 = prod_j II_j - 2 prod_j m_j + prod_j K_j.
double wce_integration_product(std::span<const hermite::QuadratureRule1D> factors,
                               const KernelSpec& spec);

/// Worst-case integration error of a product rule on the Hermite space
/// H(K_beta) from the per-axis spectral sums
/// t_j = sum_{nu >= 1} beta_j^nu q_j(nu)^2, q_j(nu) = sum_a w_a h_nu(x_a), as
/// e^2 = (1 - prod_j q_j(0))^2 + prod_j q_j(0)^2 (prod_j (1 + t_j / q_j(0)^2) - 1),
/// evaluated with log1p/expm1 so that errors far
/// below sqrt(machine epsilon) are resolved. Degrees above `degree` are
/// covered by tail_bound.
TruncatedError wce_integration_product_hermite(std::span<const hermite::QuadratureRule1D> factors,
                                               std::span<const double> beta, int degree);

}  // namespace rkhs
