#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rkhs/types.hpp"

namespace rkhs {

/// Tensor-product kernel over finitely many coordinates: Gaussian kernels
/// exp(-sigma_j^2 (x-y)^2) with sigma_j > 0, or Hermite kernels
/// sum_nu beta_j^nu h_nu(x) h_nu(y) with 0 < beta_j < 1.
class KernelSpec {
 public:
  static KernelSpec gaussian(std::vector<double> sigma);
  static KernelSpec hermite(std::vector<double> beta);
  static KernelSpec make(Family family, std::vector<double> params);

  Family family() const noexcept { return family_; }
  std::size_t dimension() const noexcept { return params_.size(); }
  const std::vector<double>& params() const noexcept { return params_; }
  double param(std::size_t j) const { return params_.at(j); }

  /// Kernel over the listed coordinates only, in the given order.
  KernelSpec restricted(std::span<const std::size_t> coords) const;

 private:
  KernelSpec(Family family, std::vector<double> params);

  Family family_;
  std::vector<double> params_;
};

namespace kernels {

double gaussian_kernel(double sigma, double x, double y);

/// Hermite kernel by the closed Mehler form.
double hermite_kernel(double beta, double x, double y);

double univariate_kernel(Family family, double param, double x, double y);

/// m(x) = integral of k(x, y) against the standard normal in y.
double univariate_mean_embedding(Family family, double param, double x);

/// Double integral of k against the product of standard normals.
double univariate_double_integral(Family family, double param);

/// Initial error of a univariate factor (the tensor initial error is the
/// product of these).
double univariate_initial_error(Family family, double param, Problem problem);

double product_kernel_eval(const KernelSpec& spec, Point x, Point y);
double mean_embedding(const KernelSpec& spec, Point x);
double double_integral(const KernelSpec& spec);
double initial_error(const KernelSpec& spec, Problem problem);

/// Gram matrix G_ij = M(x_i, x_j) over the rows of `nodes`.
Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const NodeMatrix& nodes);

/// Vector of mean embeddings m(x_i) over the rows of `nodes`.
Eigen::VectorXd mean_embeddings(const KernelSpec& spec, const NodeMatrix& nodes);

}  // namespace kernels
}  // namespace rkhs
