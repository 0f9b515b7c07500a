#include "rkhs/hermite_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rkhs/error.hpp"

namespace rkhs::hermite {

namespace {

void check_degree(int nu) {
  if (nu < 0 || nu > kMaxDegree) {
    throw Error(ErrorKind::unsupported_degree,
                "Hermite degree " + std::to_string(nu) + " outside [0, " +
                    std::to_string(kMaxDegree) + "]");
  }
}

}  // namespace

double hermite_normalized(int nu, double x) {
  check_degree(nu);
  if (nu == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < nu; ++k) {
    const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                        std::sqrt(static_cast<double>(k + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_row(int nu_max, double x, std::vector<double>& out) {
  check_degree(nu_max);
  out.resize(static_cast<std::size_t>(nu_max) + 1);
  out[0] = 1.0;
  if (nu_max == 0) return;
  out[1] = x;
  for (int k = 1; k < nu_max; ++k) {
    out[k + 1] = (x * out[k] - std::sqrt(static_cast<double>(k)) * out[k - 1]) /
                 std::sqrt(static_cast<double>(k + 1));
  }
}

std::vector<double> hermite_row(int nu_max, double x) {
  std::vector<double> out;
  hermite_row(nu_max, x, out);
  return out;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e,
                                            std::vector<double>* first_components) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return {};
  if (static_cast<int>(e.size()) != n - 1) {
    throw Error(ErrorKind::shape, "tridiagonal off-diagonal must have length n-1");
  }
  e.push_back(0.0);
  std::vector<double> z(static_cast<std::size_t>(n), 0.0);
  z[0] = 1.0;
  constexpr int kMaxIterations = 60;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iterations = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iterations++ == kMaxIterations) {
          throw Error(ErrorKind::numerical,
                      "tridiagonal QL did not converge for eigenvalue " + std::to_string(l) +
                          " of " + std::to_string(n) + " (residual coupling " +
                          std::to_string(e[l]) + ")");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        bool deflated = false;
        for (; i >= l; --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          const double zf = z[i + 1];
          z[i + 1] = s * z[i] + c * zf;
          z[i] = c * z[i] - s * zf;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> values(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < order.size(); ++k) values[k] = d[order[k]];
  if (first_components != nullptr) {
    first_components->resize(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < order.size(); ++k) (*first_components)[k] = z[order[k]];
  }
  return values;
}

QuadratureRule1D gauss_hermite_rule(int n) {
  if (n < 1 || n > kMaxRuleSize) {
    throw Error(ErrorKind::unsupported_size, "Gauss-Hermite rule size " + std::to_string(n) +
                                                 " outside [1, " + std::to_string(kMaxRuleSize) +
                                                 "]");
  }
  const auto size = static_cast<std::size_t>(n);
  // Jacobi matrix of the normalized probabilists' recurrence.
  std::vector<double> diag(size, 0.0);
  std::vector<double> off(size - 1);
  for (std::size_t k = 0; k + 1 < size; ++k) off[k] = std::sqrt(static_cast<double>(k + 1));
  std::vector<double> nodes = tridiagonal_eigenvalues(std::move(diag), std::move(off));

  // Newton polish on h_n, h_n' = sqrt(n) h_{n-1}.
  std::vector<double> row;
  for (double& x : nodes) {
    for (int it = 0; it < 3; ++it) {
      hermite_row(n, x, row);
      const double derivative = std::sqrt(static_cast<double>(n)) * row[size - 1];
      if (derivative == 0.0) break;
      const double step = row[size] / derivative;
      if (!(std::fabs(step) < 1e-6 * (1.0 + std::fabs(x)))) break;
      x -= step;
      if (std::fabs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(x))) {
        break;
      }
    }
  }

  QuadratureRule1D rule;
  rule.nodes.assign(size, 0.0);
  for (std::size_t i = 0; i < size / 2; ++i) {
    const double mag = 0.5 * (std::fabs(nodes[i]) + std::fabs(nodes[size - 1 - i]));
    rule.nodes[i] = -mag;
    rule.nodes[size - 1 - i] = mag;
  }

  // Christoffel weights 1 / sum_k h_k(x_i)^2, equal to the squared first
  // eigenvector component but accurate in relative terms for tiny weights.
  rule.weights.assign(size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    hermite_row(n - 1, rule.nodes[i], row);
    double sum = 0.0;
    for (double h : row) sum += h * h;
    rule.weights[i] = 1.0 / sum;
  }
  for (std::size_t i = 0; i < size / 2; ++i) {
    const double w = 0.5 * (rule.weights[i] + rule.weights[size - 1 - i]);
    rule.weights[i] = w;
    rule.weights[size - 1 - i] = w;
  }
  return rule;
}

double integrate_gh(const std::function<double(double)>& f, int n) {
  const QuadratureRule1D rule = gauss_hermite_rule(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double value = f(rule.nodes[k]);
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::evaluation,
                  "integrand is not finite at node " + std::to_string(rule.nodes[k]));
    }
    sum += rule.weights[k] * value;
  }
  return sum;
}

}  // namespace rkhs::hermite
