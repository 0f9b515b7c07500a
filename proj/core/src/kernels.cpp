#include "rkhs/kernels.hpp"

#include <cmath>
#include <string>

#include "rkhs/error.hpp"

namespace rkhs {

KernelSpec::KernelSpec(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
  if (params_.empty()) throw Error(ErrorKind::shape, "kernel dimension must be positive");
  for (std::size_t j = 0; j < params_.size(); ++j) {
    const double p = params_[j];
    const bool ok = family_ == Family::gaussian ? (std::isfinite(p) && p > 0.0)
                                                : (p > 0.0 && p < 1.0);
    if (!ok) {
      throw Error(ErrorKind::domain,
                  std::string(family_ == Family::gaussian ? "shape parameter sigma_"
                                                          : "base parameter beta_") +
                      std::to_string(j) + " = " + std::to_string(p) +
                      (family_ == Family::gaussian ? " must be > 0" : " must lie in (0, 1)"));
    }
  }
}

KernelSpec KernelSpec::gaussian(std::vector<double> sigma) {
  return KernelSpec(Family::gaussian, std::move(sigma));
}

KernelSpec KernelSpec::hermite(std::vector<double> beta) {
  return KernelSpec(Family::hermite, std::move(beta));
}

KernelSpec KernelSpec::make(Family family, std::vector<double> params) {
  return KernelSpec(family, std::move(params));
}

KernelSpec KernelSpec::restricted(std::span<const std::size_t> coords) const {
  std::vector<double> sub;
  sub.reserve(coords.size());
  for (std::size_t j : coords) sub.push_back(params_.at(j));
  return KernelSpec(family_, std::move(sub));
}

namespace kernels {

namespace {

void check_dimension(const KernelSpec& spec, Point x) {
  if (x.size() != spec.dimension()) {
    throw Error(ErrorKind::shape, "point has dimension " + std::to_string(x.size()) +
                                      ", kernel has " + std::to_string(spec.dimension()));
  }
}

}  // namespace

double gaussian_kernel(double sigma, double x, double y) {
  const double diff = x - y;
  return std::exp(-sigma * sigma * diff * diff);
}

double hermite_kernel(double beta, double x, double y) {
  const double b2 = beta * beta;
  const double one_minus = 1.0 - b2;
  return std::exp(-(b2 * (x * x + y * y) - 2.0 * beta * x * y) / (2.0 * one_minus)) /
         std::sqrt(one_minus);
}

double univariate_kernel(Family family, double param, double x, double y) {
  return family == Family::gaussian ? gaussian_kernel(param, x, y) : hermite_kernel(param, x, y);
}

double univariate_mean_embedding(Family family, double param, double x) {
  if (family == Family::hermite) return 1.0;
  const double s2 = param * param;
  const double denom = 1.0 + 2.0 * s2;
  return std::exp(-s2 * x * x / denom) / std::sqrt(denom);
}

double univariate_double_integral(Family family, double param) {
  if (family == Family::hermite) return 1.0;
  return 1.0 / std::sqrt(1.0 + 4.0 * param * param);
}

double univariate_initial_error(Family family, double param, Problem problem) {
  if (family == Family::hermite) return 1.0;
  const double s2 = param * param;
  if (problem == Problem::integration) return std::pow(1.0 + 4.0 * s2, -0.25);
  return std::sqrt(2.0) / std::sqrt(1.0 + std::sqrt(1.0 + 8.0 * s2));
}

double product_kernel_eval(const KernelSpec& spec, Point x, Point y) {
  check_dimension(spec, x);
  check_dimension(spec, y);
  double value = 1.0;
  const auto& p = spec.params();
  if (spec.family() == Family::gaussian) {
    // One exponential for the whole product.
    double exponent = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double diff = x[j] - y[j];
      exponent += p[j] * p[j] * diff * diff;
    }
    return std::exp(-exponent);
  }
  for (std::size_t j = 0; j < p.size(); ++j) value *= hermite_kernel(p[j], x[j], y[j]);
  return value;
}

double mean_embedding(const KernelSpec& spec, Point x) {
  check_dimension(spec, x);
  if (spec.family() == Family::hermite) return 1.0;
  double value = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    value *= univariate_mean_embedding(Family::gaussian, spec.param(j), x[j]);
  }
  return value;
}

double double_integral(const KernelSpec& spec) {
  double value = 1.0;
  for (double p : spec.params()) value *= univariate_double_integral(spec.family(), p);
  return value;
}

double initial_error(const KernelSpec& spec, Problem problem) {
  double value = 1.0;
  for (double p : spec.params()) value *= univariate_initial_error(spec.family(), p, problem);
  return value;
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const NodeMatrix& nodes) {
  if (static_cast<std::size_t>(nodes.cols()) != spec.dimension()) {
    throw Error(ErrorKind::shape, "node matrix has " + std::to_string(nodes.cols()) +
                                      " columns, kernel dimension is " +
                                      std::to_string(spec.dimension()));
  }
  const Eigen::Index n = nodes.rows();
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = product_kernel_eval(spec, node_row(nodes, i), node_row(nodes, i));
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = product_kernel_eval(spec, node_row(nodes, i), node_row(nodes, j));
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  return gram;
}

Eigen::VectorXd mean_embeddings(const KernelSpec& spec, const NodeMatrix& nodes) {
  if (static_cast<std::size_t>(nodes.cols()) != spec.dimension()) {
    throw Error(ErrorKind::shape, "node matrix has " + std::to_string(nodes.cols()) +
                                      " columns, kernel dimension is " +
                                      std::to_string(spec.dimension()));
  }
  Eigen::VectorXd m(nodes.rows());
  for (Eigen::Index i = 0; i < nodes.rows(); ++i) m(i) = mean_embedding(spec, node_row(nodes, i));
  return m;
}

}  // namespace kernels
}  // namespace rkhs
