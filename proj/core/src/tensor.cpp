#include "rkhs/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "linalg.hpp"
#include "rkhs/error.hpp"
#include "rkhs/transference.hpp"

namespace rkhs {

QuadratureRule gh_rule_on_space(int n, const KernelSpec& spec) {
  if (spec.dimension() != 1) {
    throw Error(ErrorKind::shape, "gh_rule_on_space needs a univariate kernel");
  }
  const hermite::QuadratureRule1D gh = hermite::gauss_hermite_rule(n);
  QuadratureRule rule;
  rule.nodes = Eigen::Map<const Eigen::VectorXd>(gh.nodes.data(), n);
  rule.weights = Eigen::Map<const Eigen::VectorXd>(gh.weights.data(), n);
  return rule;
}

QuadratureRule tensor_rule(std::span<const hermite::QuadratureRule1D> factors) {
  if (factors.empty()) throw Error(ErrorKind::shape, "tensor rule needs at least one factor");
  double total = 1.0;
  for (const auto& f : factors) {
    if (f.size() == 0) throw Error(ErrorKind::shape, "tensor rule factor is empty");
    total *= static_cast<double>(f.size());
  }
  if (total > kRuleBudget) {
    std::ostringstream msg;
    msg << "tensor rule has " << total << " nodes, budget is " << kRuleBudget;
    throw Error(ErrorKind::budget, msg.str());
  }
  const std::size_t d = factors.size();
  const auto n = static_cast<Eigen::Index>(total);
  QuadratureRule rule;
  rule.nodes.resize(n, static_cast<Eigen::Index>(d));
  rule.weights.resize(n);
  std::vector<std::size_t> digit(d, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      rule.nodes(i, static_cast<Eigen::Index>(j)) = factors[j].nodes[digit[j]];
      w *= factors[j].weights[digit[j]];
    }
    rule.weights(i) = w;
    for (std::size_t j = d; j-- > 0;) {
      if (++digit[j] < factors[j].size()) break;
      digit[j] = 0;
    }
  }
  return rule;
}

TensorChoice tensor_rule_for_eps(double eps, std::span<const double> sigma, Family family) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::domain, "eps must lie in (0, 1), got " + std::to_string(eps));
  }
  if (sigma.empty()) throw Error(ErrorKind::shape, "sigma must not be empty");
  const double d = static_cast<double>(sigma.size());
  TensorChoice choice;
  double total = 1.0;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    if (!(sigma[j] > 0.0) || !std::isfinite(sigma[j])) {
      throw Error(ErrorKind::domain, "sigma_" + std::to_string(j) + " must be positive");
    }
    const double zeta = std::log1p(1.0 / (2.0 * sigma[j] * sigma[j]));
    double n = std::ceil(std::log(d / eps) / zeta);
    // Guard the rounding of the quotient so exp(-n zeta) <= eps / d holds as computed.
    while (std::exp(-n * zeta) > eps / d) n += 1.0;
    n = std::max(n, 1.0);
    total *= n;
    if (n > hermite::kMaxRuleSize || total > kRuleBudget) {
      std::ostringstream msg;
      msg << "tensor rule for eps = " << eps << " needs n_" << j << " = " << n
          << " (running size " << total << ", budget " << kRuleBudget << ")";
      throw Error(ErrorKind::budget, msg.str());
    }
    choice.points.push_back(static_cast<int>(n));
    choice.zeta.push_back(zeta);
    choice.guaranteed_bound += std::exp(-n * zeta);
  }
  std::vector<hermite::QuadratureRule1D> factors;
  for (int n : choice.points) factors.push_back(hermite::gauss_hermite_rule(n));
  choice.rule = tensor_rule(factors);
  if (family == Family::gaussian) {
    choice.rule = transfer_quadrature_to_gaussian(choice.rule, sigma);
  }
  return choice;
}

hermite::QuadratureRule1D optimal_weights_1d(std::span<const double> nodes, Family family,
                                             double param) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd means(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    means(i) = kernels::univariate_mean_embedding(family, param, nodes[i]);
    for (Eigen::Index j = 0; j <= i; ++j) {
      gram(i, j) = gram(j, i) = kernels::univariate_kernel(family, param, nodes[i], nodes[j]);
    }
  }
  const Eigen::VectorXd w = linalg::spd_solve(gram, means);
  return {std::vector<double>(nodes.begin(), nodes.end()), std::vector<double>(w.begin(), w.end())};
}

double wce_integration_product(std::span<const hermite::QuadratureRule1D> factors,
                               const KernelSpec& spec) {
  if (factors.size() != spec.dimension()) {
    throw Error(ErrorKind::shape, "one univariate factor per coordinate required");
  }
  double ii = 1.0;
  double mm = 1.0;
  double kk = 1.0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto& f = factors[j];
    const Family family = spec.family();
    const double p = spec.param(j);
    ii *= kernels::univariate_double_integral(family, p);
    double m = 0.0;
    double k = 0.0;
    for (std::size_t a = 0; a < f.size(); ++a) {
      m += f.weights[a] * kernels::univariate_mean_embedding(family, p, f.nodes[a]);
      double row = 0.0;
      for (std::size_t b = 0; b < f.size(); ++b) {
        row += f.weights[b] * kernels::univariate_kernel(family, p, f.nodes[a], f.nodes[b]);
      }
      k += f.weights[a] * row;
    }
    mm *= m;
    kk *= k;
  }
  const double e2 = ii - 2.0 * mm + kk;
  if (e2 < -kNegativeVarianceTolerance) {
    throw Error(ErrorKind::consistency, "negative squared error " + std::to_string(e2));
  }
  return std::sqrt(std::max(0.0, e2));
}

TruncatedError wce_integration_product_hermite(std::span<const hermite::QuadratureRule1D> factors,
                                               std::span<const double> beta, int degree) {
  if (factors.size() != beta.size()) {
    throw Error(ErrorKind::shape, "one univariate factor per coordinate required");
  }
  if (degree < 1 || degree > hermite::kMaxDegree) {
    throw Error(ErrorKind::unsupported_degree, "spectral degree must lie in [1, " +
                                                   std::to_string(hermite::kMaxDegree) + "]");
  }
  double log_head = 0.0;
  double log_full = 0.0;
  double mass = 1.0;
  double mass_sq = 1.0;
  double plain_head = 1.0;
  double plain_full = 1.0;
  std::vector<double> row;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto& f = factors[j];
    const double b = beta[j];
    if (!(b > 0.0 && b < 1.0)) throw Error(ErrorKind::domain, "beta must lie in (0, 1)");
    std::vector<double> applied(static_cast<std::size_t>(degree) + 1, 0.0);
    double envelope = 0.0;
    for (std::size_t a = 0; a < f.size(); ++a) {
      hermite::hermite_row(degree, f.nodes[a], row);
      for (int nu = 0; nu <= degree; ++nu) applied[nu] += f.weights[a] * row[nu];
      envelope += std::fabs(f.weights[a]) * kHermiteEnvelope * std::exp(f.nodes[a] * f.nodes[a] / 4.0);
    }
    double t = 0.0;
    double power = 1.0;
    for (int nu = 1; nu <= degree; ++nu) {
      power *= b;
      t += power * applied[nu] * applied[nu];
    }
    const double tail = envelope * envelope * power * b / (1.0 - b);
    const double q0 = applied[0] * applied[0];
    mass *= applied[0];
    mass_sq *= q0;
    plain_head *= q0 + t;
    plain_full *= q0 + t + tail;
    if (q0 > 0.0) {
      log_head += std::log1p(t / q0);
      log_full += std::log1p((t + tail) / q0);
    }
  }
  if (mass_sq == 0.0) {
    TruncatedError out;
    out.value = std::sqrt(1.0 + plain_head);
    out.tail_bound = std::sqrt(1.0 + plain_full) - out.value;
    return out;
  }
  // nu = 0 contributes (1 - prod q_j(0))^2, every other nu the product of
  // beta_j^nu_j q_j(nu_j)^2.
  const double zero = (1.0 - mass) * (1.0 - mass);
  TruncatedError out;
  out.value = std::sqrt(zero + mass_sq * std::expm1(log_head));
  out.tail_bound = std::sqrt(zero + mass_sq * std::expm1(log_full)) - out.value;
  return out;
}

}  // namespace rkhs
