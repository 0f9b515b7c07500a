#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rkhs/mdm.hpp"
#include "rkhs/param_sequence.hpp"
#include "rkhs/types.hpp"
#include "rkhs/worst_case.hpp"

namespace rkhs {

struct CostErrorPair {
  double cost = 0.0;
  double error = 0.0;
};

/// Fitted error ~ exp(intercept) * cost^(-exponent).
struct DecayEstimate {
  double exponent = 0.0;
  double intercept = 0.0;
  std::size_t points_used = 0;
  double r_squared = 0.0;
};

/// Log-log least squares over the points with the largest costs (the upper
/// half, at least three).
DecayEstimate decay_estimate(std::vector<CostErrorPair> pairs);

enum class ErrorCriterion { absolute, normalized };

/// Smallest recorded cost with error <= eps (absolute) or <= eps * e0
/// (normalized); +inf when no point qualifies.
double empirical_info_complexity(std::span<const CostErrorPair> curve, double eps, double e0,
                                 ErrorCriterion criterion);

/// Worker count: RKHS_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
std::size_t thread_count();

/// Runs body(0..n-1) on up to thread_count() threads. The first exception
/// thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// One row of the univariate convergence study of Gauss-Hermite rules.
struct UnivariateDecayRow {
  int n = 0;
  double error = 0.0;
  /// (1/2) (beta/2)^{2n} (n+1)^{-2}, times (1 + 4 sigma^2)^{-1/4} on the
  /// Gaussian side.
  double t4_lower = 0.0;
  /// Slope of ln(error) against n over rows 1..n; NaN for n = 1.
  double rate_fit = 0.0;
};

/// n-point Gauss-Hermite rules on H(k_beta), or their transferred twins on
/// H(l_sigma) with beta = 2 sigma^2 / (1 + 2 sigma^2), for n = 1..n_max.
/// Errors come from the spectral expansion, which stays accurate far below
/// the round-off floor of the Gram identity.
std::vector<UnivariateDecayRow> univariate_decay(Family family, double param, int n_max);

struct TensorDecayRow {
  double eps = 0.0;
  std::vector<int> points;
  std::size_t size = 0;
  double error = 0.0;
};

/// tensor_rule_for_eps on the Gaussian space for each eps, with the exact
/// worst-case error of the resulting product rule.
std::vector<TensorDecayRow> tensor_decay(std::span<const double> sigma, std::span<const double> eps);

struct MdmRunRow {
  double budget = 0.0;
  double cost = 0.0;
  double error = 0.0;
  double tail_bound = 0.0;
};

/// mdm_build for each budget and mdm_wce with `trunc` coordinates.
std::vector<MdmRunRow> mdm_run(const InfiniteKernel& kernel, std::span<const double> budgets,
                               const CostModel& model, std::size_t trunc,
                               const MdmOptions& options = {});

/// Shortest decimal text that reads back to the same double ("%.17g" style,
/// locale independent).
std::string format_double(double value);

std::string univariate_decay_csv(const std::vector<UnivariateDecayRow>& rows);
std::string tensor_decay_csv(const std::vector<TensorDecayRow>& rows);
std::string mdm_run_csv(const std::vector<MdmRunRow>& rows);

}  // namespace rkhs
