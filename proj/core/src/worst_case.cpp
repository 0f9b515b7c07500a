#include "rkhs/worst_case.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "linalg.hpp"
#include "rkhs/error.hpp"
#include "rkhs/hermite_basis.hpp"

namespace rkhs {

namespace {

double clamp_squared_error(double e2, const char* where) {
  if (e2 < -kNegativeVarianceTolerance) {
    std::ostringstream msg;
    msg << where << ": squared worst-case error " << e2 << " is below -"
        << kNegativeVarianceTolerance;
    throw Error(ErrorKind::consistency, msg.str());
  }
  return std::sqrt(std::max(0.0, e2));
}

void check_rule(const QuadratureRule& rule, std::size_t dimension) {
  if (rule.weights.size() != rule.nodes.rows()) {
    throw Error(ErrorKind::shape, "rule has " + std::to_string(rule.nodes.rows()) + " nodes but " +
                                      std::to_string(rule.weights.size()) + " weights");
  }
  if (static_cast<std::size_t>(rule.nodes.cols()) != dimension) {
    throw Error(ErrorKind::shape, "rule nodes have dimension " +
                                      std::to_string(rule.nodes.cols()) + ", expected " +
                                      std::to_string(dimension));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SpectralSystem

SpectralSystem::SpectralSystem(KernelSpec spec, MultiIndexSet index_set)
    : spec_(std::move(spec)), index_set_(std::move(index_set)) {
  if (index_set_.dimension() != spec_.dimension()) {
    throw Error(ErrorKind::shape, "index set dimension " + std::to_string(index_set_.dimension()) +
                                      " differs from kernel dimension " +
                                      std::to_string(spec_.dimension()));
  }
  const std::size_t d = spec_.dimension();
  base_.resize(d);
  dilation_.resize(d);
  leading_.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double p = spec_.param(j);
    if (spec_.family() == Family::hermite) {
      base_[j] = p;
      dilation_[j] = 1.0;
      leading_[j] = 1.0;
    } else {
      const double root = std::sqrt(1.0 + 8.0 * p * p);
      leading_[j] = 2.0 / (1.0 + root);
      base_[j] = (root - 1.0) / (root + 1.0);
      dilation_[j] = std::sqrt(root);
    }
    if (index_set_.max_degree(j) > hermite::kMaxDegree) {
      throw Error(ErrorKind::unsupported_degree, "index set degree exceeds the Hermite guard");
    }
  }
  eigenvalues_.reserve(index_set_.size());
  for (const Index& nu : index_set_.indices()) eigenvalues_.push_back(eigenvalue(nu));
}

double SpectralSystem::eigenvalue(const Index& nu) const {
  double value = 1.0;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    value *= leading_[j] * std::pow(base_[j], nu[j]);
  }
  return value;
}

double SpectralSystem::eigenfunction_value(const Index& nu, Point x) const {
  if (x.size() != dimension() || nu.size() != dimension()) {
    throw Error(ErrorKind::shape, "eigenfunction argument dimension mismatch");
  }
  double value = 1.0;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    const double c = dilation_[j];
    const double envelope = spec_.family() == Family::hermite
                                ? 1.0
                                : std::sqrt(c) * std::exp(-(c * c - 1.0) * x[j] * x[j] / 4.0);
    value *= envelope * hermite::hermite_normalized(nu[j], c * x[j]);
  }
  return value;
}

Eigen::VectorXd SpectralSystem::eigenfunction_row(Point x) const {
  if (x.size() != dimension()) {
    throw Error(ErrorKind::shape, "eigenfunction argument has dimension " +
                                      std::to_string(x.size()) + ", system has " +
                                      std::to_string(dimension()));
  }
  std::vector<std::vector<double>> axis(dimension());
  for (std::size_t j = 0; j < dimension(); ++j) {
    const double c = dilation_[j];
    hermite::hermite_row(index_set_.max_degree(j), c * x[j], axis[j]);
    if (spec_.family() == Family::gaussian) {
      const double envelope = std::sqrt(c) * std::exp(-(c * c - 1.0) * x[j] * x[j] / 4.0);
      for (double& v : axis[j]) v *= envelope;
    }
  }
  Eigen::VectorXd row(static_cast<Eigen::Index>(size()));
  for (std::size_t k = 0; k < size(); ++k) {
    const Index& nu = index_set_[k];
    double value = 1.0;
    for (std::size_t j = 0; j < nu.size(); ++j) value *= axis[j][nu[j]];
    row(static_cast<Eigen::Index>(k)) = value;
  }
  return row;
}

double SpectralSystem::eigenfunction_integral(const Index& nu) const {
  double value = 1.0;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    if (nu[j] % 2 != 0) return 0.0;
    if (spec_.family() == Family::hermite) {
      if (nu[j] != 0) return 0.0;
      continue;
    }
    // Generating-function identity: the integral of c^{1/2} phi_c(x) h_{2k}(c x)
    // equals c^{1/2} (2 / (c^2 + 1))^{1/2} (gamma / 2)^k sqrt((2k)!) / k!
    // with gamma = (c^2 - 1) / (c^2 + 1).
    const double c = dilation_[j];
    const double c2 = c * c;
    const double gamma = (c2 - 1.0) / (c2 + 1.0);
    double term = std::sqrt(c) * std::sqrt(2.0 / (c2 + 1.0));
    for (int k = 1; k <= nu[j] / 2; ++k) {
      term *= 0.5 * gamma * std::sqrt(2.0 * k * (2.0 * k - 1.0)) / k;
    }
    value *= term;
  }
  return value;
}

double SpectralSystem::eigenfunction_envelope(Point x) const {
  double value = 1.0;
  for (std::size_t j = 0; j < dimension(); ++j) {
    value *= kHermiteEnvelope * std::sqrt(dilation_[j]) * std::exp(x[j] * x[j] / 4.0);
  }
  return value;
}

double SpectralSystem::tail_eigenvalue_max() const {
  double best = 0.0;
  for (const Index& mu : index_set_.outer_boundary()) best = std::max(best, eigenvalue(mu));
  return best;
}

double SpectralSystem::tail_eigenvalue_sum() const {
  // Each index outside the set dominates a boundary index mu; the eigenvalues
  // over the cone above mu sum to eigenvalue(mu) / prod_j (1 - beta_j).
  double cone = 1.0;
  for (double b : base_) cone /= (1.0 - b);
  double sum = 0.0;
  for (const Index& mu : index_set_.outer_boundary()) sum += eigenvalue(mu) * cone;
  return sum;
}

// ---------------------------------------------------------------------------
// Integration

double wce_integration(const QuadratureRule& rule, const KernelSpec& spec) {
  check_rule(rule, spec.dimension());
  const Eigen::Index n = rule.size();
  double linear = 0.0;
  double quadratic = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double wi = rule.weights(i);
    if (wi == 0.0) continue;
    const Point xi = node_row(rule.nodes, i);
    linear += wi * kernels::mean_embedding(spec, xi);
    double row = 0.5 * wi * kernels::product_kernel_eval(spec, xi, xi);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double wj = rule.weights(j);
      if (wj == 0.0) continue;
      row += wj * kernels::product_kernel_eval(spec, xi, node_row(rule.nodes, j));
    }
    quadratic += 2.0 * wi * row;
  }
  const double e2 = kernels::double_integral(spec) - 2.0 * linear + quadratic;
  return clamp_squared_error(e2, "wce_integration");
}

TruncatedError wce_integration_spectral(const QuadratureRule& rule, const SpectralSystem& sys) {
  check_rule(rule, sys.dimension());
  const auto size = static_cast<Eigen::Index>(sys.size());
  Eigen::VectorXd applied = Eigen::VectorXd::Zero(size);
  double weighted_envelope = 0.0;
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const double wi = rule.weights(i);
    if (wi == 0.0) continue;
    const Point xi = node_row(rule.nodes, i);
    applied += wi * sys.eigenfunction_row(xi);
    weighted_envelope += std::fabs(wi) * sys.eigenfunction_envelope(xi);
  }
  double e2 = 0.0;
  for (Eigen::Index k = 0; k < size; ++k) {
    const auto& nu = sys.index_set()[static_cast<std::size_t>(k)];
    const double diff = sys.eigenfunction_integral(nu) - applied(k);
    e2 += sys.eigenvalue(static_cast<std::size_t>(k)) * diff * diff;
  }
  // |I(e_nu)| <= ||e_nu||_{L2} = 1 for every index outside the set.
  const double tail = (1.0 + weighted_envelope) * (1.0 + weighted_envelope) *
                      sys.tail_eigenvalue_sum();
  TruncatedError out;
  out.value = std::sqrt(e2);
  out.tail_bound = std::sqrt(e2 + tail) - out.value;
  return out;
}

QuadratureRule optimal_weights(const NodeMatrix& nodes, const KernelSpec& spec) {
  const Eigen::MatrixXd gram = kernels::gram_matrix(spec, nodes);
  const Eigen::VectorXd means = kernels::mean_embeddings(spec, nodes);
  QuadratureRule rule;
  rule.nodes = nodes;
  rule.weights = linalg::spd_solve(gram, means);
  return rule;
}

// ---------------------------------------------------------------------------
// Approximation

namespace {

void check_method(const SamplingMethod& method, const SpectralSystem& sys) {
  if (static_cast<std::size_t>(method.dimension()) != sys.dimension()) {
    throw Error(ErrorKind::shape, "sampling method dimension " +
                                      std::to_string(method.dimension()) +
                                      " differs from system dimension " +
                                      std::to_string(sys.dimension()));
  }
  if (!(method.index_set == sys.index_set())) {
    throw Error(ErrorKind::shape, "sampling method index set differs from the system's");
  }
  if (method.coeffs.rows() != method.size() ||
      method.coeffs.cols() != static_cast<Eigen::Index>(sys.size())) {
    throw Error(ErrorKind::shape, "coefficient table must be n x |index set|");
  }
}

}  // namespace

TruncatedError wce_approximation(const SamplingMethod& method, const SpectralSystem& sys) {
  check_method(method, sys);
  const auto size = static_cast<Eigen::Index>(sys.size());
  const Eigen::Index n = method.size();

  Eigen::MatrixXd values(n, size);
  Eigen::VectorXd envelope(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point xi = node_row(method.nodes, i);
    values.row(i) = sys.eigenfunction_row(xi).transpose();
    envelope(i) = sys.eigenfunction_envelope(xi);
  }

  Eigen::VectorXd root_lambda(size);
  for (Eigen::Index k = 0; k < size; ++k) {
    root_lambda(k) = std::sqrt(sys.eigenvalue(static_cast<std::size_t>(k)));
  }
  double head = 0.0;
  if (size <= kDenseNormLimit) {
    Eigen::MatrixXd op = -method.coeffs.transpose() * values;
    op.diagonal().array() += 1.0;
    head = linalg::spectral_norm(op * root_lambda.asDiagonal());
  } else {
    // G = (I - C^T E) diag(sqrt(lambda)) applied in O(n |index set|).
    const Eigen::MatrixXd& c = method.coeffs;
    auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
      const Eigen::VectorXd scaled = root_lambda.cwiseProduct(x);
      return scaled - c.transpose() * (values * scaled);
    };
    auto apply_t = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
      return root_lambda.cwiseProduct(y - values.transpose() * (c * y));
    };
    head = linalg::largest_singular_value(apply, apply_t, size);
  }

  // Full operator [[head block, C], [0, D]] with D diagonal (sqrt lambda_nu
  // outside the set) and ||C|| <= c. Its norm is at most the square root of
  // the largest eigenvalue of [[a^2, a c], [a c, c^2 + d^2]].
  const Eigen::VectorXd column_bound = method.coeffs.cwiseAbs().transpose() * envelope;
  const double c = std::sqrt(column_bound.squaredNorm() * sys.tail_eigenvalue_sum());
  const double d = std::sqrt(sys.tail_eigenvalue_max());
  const double a = head;
  TruncatedError out;
  out.value = head;
  if (c == 0.0) {
    out.tail_bound = std::max(0.0, d - a);
    return out;
  }
  const double a2 = a * a;
  const double trace = a2 + c * c + d * d;
  const double disc = std::sqrt(std::max(0.0, trace * trace - 4.0 * a2 * d * d));
  const double excess = 0.5 * (c * c + d * d - a2 + disc);  // lambda_max - a^2
  const double lambda_max = a2 + excess;
  out.tail_bound = std::max(0.0, excess / (std::sqrt(lambda_max) + a));
  return out;
}

SamplingMethod spline_method(const NodeMatrix& nodes, const SpectralSystem& sys) {
  const Eigen::MatrixXd gram = kernels::gram_matrix(sys.spec(), nodes);
  const auto size = static_cast<Eigen::Index>(sys.size());
  Eigen::MatrixXd rhs(nodes.rows(), size);
  for (Eigen::Index i = 0; i < nodes.rows(); ++i) {
    rhs.row(i) = sys.eigenfunction_row(node_row(nodes, i)).transpose();
  }
  for (Eigen::Index k = 0; k < size; ++k) rhs.col(k) *= sys.eigenvalue(static_cast<std::size_t>(k));
  SamplingMethod method{nodes, linalg::spd_solve(gram, rhs), sys.index_set()};
  return method;
}

// ---------------------------------------------------------------------------
// Cost

CostModel CostModel::unit() { return CostModel(); }

CostModel CostModel::dollar_table(std::vector<double> table) {
  if (table.empty()) throw Error(ErrorKind::domain, "dollar cost table must not be empty");
  for (std::size_t m = 0; m < table.size(); ++m) {
    if (!(table[m] >= 1.0) || !std::isfinite(table[m])) {
      throw Error(ErrorKind::domain, "dollar cost $(" + std::to_string(m) + ") = " +
                                         std::to_string(table[m]) + " is not in [1, inf)");
    }
    if (m > 0 && table[m] < table[m - 1]) {
      throw Error(ErrorKind::domain, "dollar cost table decreases at m = " + std::to_string(m));
    }
  }
  CostModel model;
  model.mode_ = Mode::dollar;
  model.table_ = std::move(table);
  model.description_ = "table";
  return model;
}

CostModel CostModel::dollar(std::function<double(std::size_t)> fn, std::string description) {
  CostModel model;
  model.mode_ = Mode::dollar;
  model.fn_ = std::move(fn);
  model.description_ = std::move(description);
  return model;
}

double CostModel::evaluation_cost(std::size_t active) const {
  if (mode_ == Mode::unit) return 1.0;
  if (!fn_) {
    if (active >= table_.size()) {
      throw Error(ErrorKind::domain, "dollar cost table covers m <= " +
                                         std::to_string(table_.size() - 1) + ", queried m = " +
                                         std::to_string(active));
    }
    return table_[active];
  }
  const double value = fn_(active);
  if (!(value >= 1.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::domain, "dollar cost $(" + std::to_string(active) + ") = " +
                                       std::to_string(value) + " is not in [1, inf)");
  }
  if (active > 0 && fn_(active - 1) > value) {
    throw Error(ErrorKind::domain, "dollar cost decreases at m = " + std::to_string(active));
  }
  return value;
}

void CostModel::check_growth(double c1, double c2, std::size_t m_max) const {
  if (mode_ == Mode::unit) return;
  for (std::size_t m = 1; m <= m_max; ++m) {
    const double value = evaluation_cost(m);
    const double md = static_cast<double>(m);
    if (value < c1 * md || value > std::exp(c2 * md)) {
      std::ostringstream msg;
      msg << "$(" << m << ") = " << value << " violates " << c1 << " m <= $(m) <= exp(" << c2
          << " m)";
      throw Error(ErrorKind::domain, msg.str());
    }
  }
}

std::size_t active_variables(Point x) {
  return static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](double v) { return v != 0.0; }));
}

double rule_cost(const NodeMatrix& nodes, const CostModel& model) {
  if (model.mode() == CostModel::Mode::unit) return static_cast<double>(nodes.rows());
  double total = 0.0;
  for (Eigen::Index i = 0; i < nodes.rows(); ++i) {
    total += model.evaluation_cost(active_variables(node_row(nodes, i)));
  }
  return total;
}

}  // namespace rkhs
