#include "rkhs/transference.hpp"

#include <cmath>
#include <string>

#include "rkhs/error.hpp"
#include "rkhs/hermite_basis.hpp"

namespace rkhs {

namespace {

void check_positive(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::domain, "shape parameter must be positive and finite, got " +
                                       std::to_string(sigma));
  }
}

void check_dimension(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw Error(ErrorKind::shape, std::string(what) + ": dimension " + std::to_string(got) +
                                      " does not match " + std::to_string(expected));
  }
}

double product(std::span<const double> v) {
  double p = 1.0;
  for (double x : v) p *= x;
  return p;
}

// exp(-sum_j sigma_j^2 x_j^2 / (1 + 2 sigma_j^2)), i.e. phi_c(x / tau).
double integration_damping(std::span<const double> sigma, Point x) {
  double s = 0.0;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    const double s2 = sigma[j] * sigma[j];
    s += s2 * x[j] * x[j] / (1.0 + 2.0 * s2);
  }
  return std::exp(-s);
}

std::vector<double> integration_scale(std::span<const double> sigma) {
  std::vector<double> e(sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    check_positive(sigma[j]);
    const double s2 = sigma[j] * sigma[j];
    e[j] = std::sqrt((1.0 + 4.0 * s2) / (1.0 + 2.0 * s2));
  }
  return e;
}

}  // namespace

double beta_from_sigma(Problem problem, double sigma) {
  check_positive(sigma);
  const double s2 = sigma * sigma;
  if (problem == Problem::integration) return 2.0 * s2 / (1.0 + 2.0 * s2);
  const double root = std::sqrt(1.0 + 8.0 * s2);
  return (root - 1.0) / (root + 1.0);
}

double sigma_from_beta(Problem problem, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw Error(ErrorKind::domain, "base parameter must lie in (0, 1), got " +
                                       std::to_string(beta));
  }
  if (problem == Problem::integration) return std::sqrt(beta / (2.0 * (1.0 - beta)));
  // root = (1 + beta) / (1 - beta) and root^2 = 1 + 8 sigma^2.
  return std::sqrt(beta / 2.0) / (1.0 - beta);
}

TransferConstants TransferConstants::make(Problem problem, std::vector<double> sigma) {
  TransferConstants k;
  k.problem = problem;
  const std::size_t d = sigma.size();
  k.beta.resize(d);
  k.c.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    k.beta[j] = beta_from_sigma(problem, sigma[j]);
    const double s2 = sigma[j] * sigma[j];
    if (problem == Problem::integration) {
      k.c[j] = std::sqrt(1.0 + 4.0 * s2);
      k.tau.push_back(std::sqrt(1.0 + 2.0 * s2));
      k.e.push_back(k.c[j] / k.tau[j]);
      k.gauss_prefactor *= std::pow(1.0 + 4.0 * s2, -0.25);
    } else {
      k.c[j] = std::pow(1.0 + 8.0 * s2, 0.25);
      k.gauss_prefactor *= std::sqrt(1.0 - k.beta[j]);
    }
  }
  k.sigma = std::move(sigma);
  return k;
}

double phi_c(std::span<const double> c, Point x) {
  check_dimension(c.size(), x.size(), "phi_c");
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += (c[j] * c[j] - 1.0) * x[j] * x[j];
  return std::exp(-s / 4.0);
}

double q_c_apply(std::span<const double> c, const Function& f, Point x) {
  check_dimension(c.size(), x.size(), "q_c_apply");
  std::vector<double> cx(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) cx[j] = c[j] * x[j];
  return std::sqrt(product(c)) * phi_c(c, x) * f(cx);
}

double q_c_inverse_apply(std::span<const double> c, const Function& g, Point y) {
  check_dimension(c.size(), y.size(), "q_c_inverse_apply");
  std::vector<double> x(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) x[j] = y[j] / c[j];
  return g(x) / (std::sqrt(product(c)) * phi_c(c, x));
}

QuadratureRule transfer_quadrature_to_hermite(const QuadratureRule& rule,
                                              std::span<const double> sigma) {
  check_dimension(sigma.size(), static_cast<std::size_t>(rule.dimension()),
                  "transfer_quadrature_to_hermite");
  const std::vector<double> e = integration_scale(sigma);
  const double e_star = product(e);
  QuadratureRule out;
  out.nodes.resize(rule.size(), rule.dimension());
  out.weights.resize(rule.size());
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const Point x = node_row(rule.nodes, i);
    for (std::size_t j = 0; j < e.size(); ++j) out.nodes(i, j) = e[j] * x[j];
    out.weights(i) = e_star * integration_damping(sigma, x) * rule.weights(i);
  }
  return out;
}

QuadratureRule transfer_quadrature_to_gaussian(const QuadratureRule& rule,
                                               std::span<const double> sigma) {
  check_dimension(sigma.size(), static_cast<std::size_t>(rule.dimension()),
                  "transfer_quadrature_to_gaussian");
  const std::vector<double> e = integration_scale(sigma);
  const double e_star = product(e);
  QuadratureRule out;
  out.nodes.resize(rule.size(), rule.dimension());
  out.weights.resize(rule.size());
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    for (std::size_t j = 0; j < e.size(); ++j) out.nodes(i, j) = rule.nodes(i, j) / e[j];
    out.weights(i) = rule.weights(i) / (e_star * integration_damping(sigma, node_row(out.nodes, i)));
  }
  return out;
}

namespace {

void check_pair(const SamplingMethod& method, const SpectralSystem& gaussian,
                const SpectralSystem& hermite) {
  if (gaussian.spec().family() != Family::gaussian || hermite.spec().family() != Family::hermite) {
    throw Error(ErrorKind::usage, "sampling transfer needs a Gaussian and a Hermite system");
  }
  check_dimension(gaussian.dimension(), hermite.dimension(), "sampling transfer systems");
  check_dimension(gaussian.dimension(), static_cast<std::size_t>(method.dimension()),
                  "sampling method");
  if (!(gaussian.index_set() == hermite.index_set()) || !(method.index_set == gaussian.index_set())) {
    throw Error(ErrorKind::shape, "sampling method and both systems must share one index set");
  }
  if (method.coeffs.rows() != method.size() ||
      method.coeffs.cols() != static_cast<Eigen::Index>(gaussian.size())) {
    throw Error(ErrorKind::shape, "coefficient table must be n x |index set|");
  }
  for (std::size_t j = 0; j < gaussian.dimension(); ++j) {
    const double bg = gaussian.axis_base(j);
    const double bh = hermite.axis_base(j);
    if (std::fabs(bg - bh) > 1e-12 * bg) {
      throw Error(ErrorKind::consistency,
                  "Hermite base " + std::to_string(bh) + " on coordinate " + std::to_string(j) +
                      " does not match the Gaussian system's " + std::to_string(bg));
    }
  }
}

std::vector<double> dilations(const SpectralSystem& gaussian) {
  std::vector<double> c(gaussian.dimension());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = gaussian.axis_dilation(j);
  return c;
}

}  // namespace

SamplingMethod transfer_sampling_to_hermite(const SamplingMethod& method,
                                            const SpectralSystem& gaussian,
                                            const SpectralSystem& hermite) {
  check_pair(method, gaussian, hermite);
  const std::vector<double> c = dilations(gaussian);
  const double root_c = std::sqrt(product(c));
  SamplingMethod out{NodeMatrix(method.size(), method.dimension()), method.coeffs,
                     method.index_set};
  for (Eigen::Index i = 0; i < method.size(); ++i) {
    const Point x = node_row(method.nodes, i);
    for (std::size_t j = 0; j < c.size(); ++j) out.nodes(i, j) = c[j] * x[j];
    out.coeffs.row(i) *= root_c * phi_c(c, x);
  }
  return out;
}

SamplingMethod transfer_sampling_to_gaussian(const SamplingMethod& method,
                                             const SpectralSystem& gaussian,
                                             const SpectralSystem& hermite) {
  check_pair(method, gaussian, hermite);
  const std::vector<double> c = dilations(gaussian);
  const double root_c = std::sqrt(product(c));
  SamplingMethod out{NodeMatrix(method.size(), method.dimension()), method.coeffs,
                     method.index_set};
  for (Eigen::Index i = 0; i < method.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) out.nodes(i, j) = method.nodes(i, j) / c[j];
    out.coeffs.row(i) /= root_c * phi_c(c, node_row(out.nodes, i));
  }
  return out;
}

SamplingMethod transfer_sampling_to_hermite_by_projection(const SamplingMethod& method,
                                                          const SpectralSystem& gaussian,
                                                          const SpectralSystem& hermite,
                                                          int points_per_axis) {
  check_pair(method, gaussian, hermite);
  const std::size_t d = gaussian.dimension();
  const std::vector<double> c = dilations(gaussian);
  const double root_c = std::sqrt(product(c));
  const hermite::QuadratureRule1D gh = hermite::gauss_hermite_rule(points_per_axis);
  const auto n = static_cast<std::size_t>(points_per_axis);
  double total = 1.0;
  for (std::size_t j = 0; j < d; ++j) total *= static_cast<double>(n);
  if (total > 1e6) throw Error(ErrorKind::budget, "projection grid exceeds 10^6 points");

  // M(m, k) = integral of (Q_c^{-1} e^G_m)(z) h_k(z) against mu.
  const auto size = static_cast<Eigen::Index>(gaussian.size());
  Eigen::MatrixXd change = Eigen::MatrixXd::Zero(size, size);
  std::vector<std::size_t> digit(d, 0);
  std::vector<double> z(d);
  std::vector<double> x(d);
  for (std::size_t flat = 0; flat < static_cast<std::size_t>(total); ++flat) {
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      z[j] = gh.nodes[digit[j]];
      x[j] = z[j] / c[j];
      w *= gh.weights[digit[j]];
    }
    const double factor = w / (root_c * phi_c(c, x));
    change.noalias() += factor * gaussian.eigenfunction_row(x) * hermite.eigenfunction_row(z).transpose();
    for (std::size_t j = 0; j < d; ++j) {
      if (++digit[j] < n) break;
      digit[j] = 0;
    }
  }

  SamplingMethod out{NodeMatrix(method.size(), method.dimension()), method.coeffs * change,
                     method.index_set};
  for (Eigen::Index i = 0; i < method.size(); ++i) {
    const Point xi = node_row(method.nodes, i);
    for (std::size_t j = 0; j < d; ++j) out.nodes(i, j) = c[j] * xi[j];
    out.coeffs.row(i) *= root_c * phi_c(c, xi);
  }
  return out;
}

}  // namespace rkhs
