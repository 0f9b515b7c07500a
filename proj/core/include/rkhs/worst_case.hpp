#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rkhs/kernels.hpp"
#include "rkhs/multi_index.hpp"
#include "rkhs/types.hpp"

namespace rkhs {

/// Linear sampling method A(f) = sum_i f(x_i) a_i. Row i of `coeffs` holds the
/// coefficients of a_i in the orthonormal eigenbasis {e_nu : nu in index_set}
/// of the spectral system the method is used with.
struct SamplingMethod {
  NodeMatrix nodes;
  Eigen::MatrixXd coeffs;
  MultiIndexSet index_set;

  Eigen::Index size() const noexcept { return nodes.rows(); }
  Eigen::Index dimension() const noexcept { return nodes.cols(); }
};

/// A truncated worst-case error: the true error lies in
/// [value, value + tail_bound].
struct TruncatedError {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Mercer decomposition of a tensor kernel with respect to the standard
/// normal measure, restricted to a downward-closed index set.
///
/// Hermite kernels: eigenfunctions h_nu, eigenvalues prod_j beta_j^nu_j.
/// Gaussian kernels: eigenfunctions prod_j c_j^{1/2} phi_{c_j}(x_j)
/// h_{nu_j}(c_j x_j) and eigenvalues prod_j (1 - beta_j) beta_j^nu_j, with
/// 1 - beta_j = 2 / (1 + (1 + 8 sigma_j^2)^{1/2}) and c_j = (1 + 8 sigma_j^2)^{1/4}.
class SpectralSystem {
 public:
  using Index = MultiIndexSet::Index;

  SpectralSystem(KernelSpec spec, MultiIndexSet index_set);

  const KernelSpec& spec() const noexcept { return spec_; }
  const MultiIndexSet& index_set() const noexcept { return index_set_; }
  std::size_t dimension() const noexcept { return spec_.dimension(); }
  std::size_t size() const noexcept { return index_set_.size(); }

  /// Per-axis eigenvalue ratio beta_j.
  double axis_base(std::size_t j) const { return base_[j]; }
  /// Per-axis dilation c_j (1 for Hermite kernels).
  double axis_dilation(std::size_t j) const { return dilation_[j]; }
  /// Per-axis leading eigenvalue (1 - beta_j for Gaussian, 1 for Hermite).
  double axis_leading(std::size_t j) const { return leading_[j]; }

  double eigenvalue(const Index& nu) const;
  double eigenvalue(std::size_t k) const { return eigenvalues_[k]; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

  double eigenfunction_value(const Index& nu, Point x) const;
  /// (e_nu(x))_{nu in index_set}, ordered like the index set.
  Eigen::VectorXd eigenfunction_row(Point x) const;

  /// Integral of e_nu against the standard normal measure.
  double eigenfunction_integral(const Index& nu) const;

  /// Upper bound on sup_nu |e_nu(x)|, from |h_nu(t)| <= 1.1 exp(t^2 / 4).
  double eigenfunction_envelope(Point x) const;

  /// Largest eigenvalue outside the index set.
  double tail_eigenvalue_max() const;
  /// Upper bound on the sum of all eigenvalues outside the index set.
  double tail_eigenvalue_sum() const;

 private:
  KernelSpec spec_;
  MultiIndexSet index_set_;
  std::vector<double> base_;
  std::vector<double> dilation_;
  std::vector<double> leading_;
  std::vector<double> eigenvalues_;
};

/// Constant in the envelope |h_nu(t)| <= kHermiteEnvelope * exp(t^2 / 4).
inline constexpr double kHermiteEnvelope = 1.1;

/// Threshold below which a negative squared error is treated as round-off.
inline constexpr double kNegativeVarianceTolerance = 1e-12;

/// Worst-case integration error by the Gram identity
/// e^2 = I(I M) - 2 sum_i a_i m(x_i) + sum_{i,j} a_i a_j M(x_i, x_j).
double wce_integration(const QuadratureRule& rule, const KernelSpec& spec);

/// Worst-case integration error through the spectral expansion
/// e^2 = sum_nu lambda_nu (I(e_nu) - sum_i a_i e_nu(x_i))^2, free of the
/// cancellation in the Gram identity. Indices outside the system are covered
/// by the returned tail bound.
TruncatedError wce_integration_spectral(const QuadratureRule& rule, const SpectralSystem& sys);

/// Weights minimizing the worst-case integration error for fixed nodes
/// (G w = m). Throws a conditioning error for (near) singular Gram matrices.
QuadratureRule optimal_weights(const NodeMatrix& nodes, const KernelSpec& spec);

/// Index sets up to this size use a dense singular value computation in
/// wce_approximation; larger ones use Lanczos iteration.
inline constexpr Eigen::Index kDenseNormLimit = 256;

/// Worst-case L2 approximation error: the spectral norm of
/// G_{m,nu} = sqrt(lambda_nu) (delta_{m,nu} - sum_i e_nu(x_i) coeffs(i, m))
/// over the index set, plus a rigorous bound for the indices outside it.
TruncatedError wce_approximation(const SamplingMethod& method, const SpectralSystem& sys);

/// Minimal-norm interpolation a_i = sum_j (G^{-1})_{ij} M(., x_j), expanded in
/// the eigenbasis of `sys`.
SamplingMethod spline_method(const NodeMatrix& nodes, const SpectralSystem& sys);

/// Cost of a single evaluation: constant one, or $(Act(x)) with a
/// non-decreasing $ : N_0 -> [1, inf).
class CostModel {
 public:
  enum class Mode { unit, dollar };

  static CostModel unit();
  /// $(m) = table[m] for m < table.size(); larger m is a domain error.
  static CostModel dollar_table(std::vector<double> table);
  /// $(m) = fn(m), checked on every query.
  static CostModel dollar(std::function<double(std::size_t)> fn, std::string description);

  Mode mode() const noexcept { return mode_; }
  const std::vector<double>& table() const noexcept { return table_; }
  const std::string& description() const noexcept { return description_; }

  /// Cost of one evaluation at a point with `active` non-zero coordinates.
  double evaluation_cost(std::size_t active) const;

  /// Checks c1 m <= $(m) <= exp(c2 m) for 1 <= m <= m_max; throws a domain
  /// error naming the first violation. Unit mode is exempt.
  void check_growth(double c1, double c2, std::size_t m_max) const;

 private:
  Mode mode_ = Mode::unit;
  std::vector<double> table_;
  std::function<double(std::size_t)> fn_;
  std::string description_ = "unit";
};

/// Number of non-zero coordinates.
std::size_t active_variables(Point x);

double rule_cost(const NodeMatrix& nodes, const CostModel& model);
inline double rule_cost(const QuadratureRule& rule, const CostModel& model) {
  return rule_cost(rule.nodes, model);
}
inline double rule_cost(const SamplingMethod& method, const CostModel& model) {
  return rule_cost(method.nodes, model);
}

}  // namespace rkhs
