#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rkhs/hermite_basis.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/worst_case.hpp"
#include "support.hpp"

using namespace rkhs;
using testing::close;

namespace {

QuadratureRule rule_1d(std::vector<double> nodes, std::vector<double> weights) {
  QuadratureRule r;
  r.nodes.resize(static_cast<Eigen::Index>(nodes.size()), 1);
  r.weights.resize(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    r.nodes(static_cast<Eigen::Index>(i), 0) = nodes[i];
    r.weights(static_cast<Eigen::Index>(i)) = weights[i];
  }
  return r;
}

// ||(I - C^T E) diag(sqrt(lambda))|| for a Hermite-space method, assembled
// from monomial-expansion Hermite values.
double dense_hermite_error(const SamplingMethod& m, const std::vector<double>& beta) {
  const auto& set = m.index_set;
  const auto n = static_cast<Eigen::Index>(set.size());
  Eigen::MatrixXd e(m.nodes.rows(), n);
  Eigen::VectorXd root(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double lambda = 1.0;
    for (std::size_t j = 0; j < beta.size(); ++j) lambda *= std::pow(beta[j], set[k][j]);
    root(k) = std::sqrt(lambda);
    for (Eigen::Index i = 0; i < m.nodes.rows(); ++i) {
      double v = 1.0;
      for (std::size_t j = 0; j < beta.size(); ++j) {
        v *= hermite::hermite_normalized(set[k][j], m.nodes(i, static_cast<Eigen::Index>(j)));
      }
      e(i, k) = v;
    }
  }
  const Eigen::MatrixXd a =
      (Eigen::MatrixXd::Identity(n, n) - m.coeffs.transpose() * e) * root.asDiagonal();
  return Eigen::BDCSVD<Eigen::MatrixXd>(a).singularValues()(0);
}

}  // namespace

TEST_SUITE("worst_case") {
  TEST_CASE("integration error by the Gram formula") {
    const QuadratureRule zero = rule_1d({0.3, -1.0}, {0.0, 0.0});
    CHECK(wce_integration(zero, KernelSpec::hermite({0.7})) == doctest::Approx(1.0).epsilon(1e-15));

    const QuadratureRule a = rule_1d({0.0}, {1.0 / std::sqrt(2.0)});
    const double expected = std::sqrt(1.0 / std::sqrt(3.0) - 2.0 / std::sqrt(2.0) * std::pow(2.0, -0.5) + 0.5);
    CHECK(wce_integration(a, KernelSpec::gaussian({std::sqrt(0.5)})) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.27811917).epsilon(1e-8));

    const QuadratureRule b = rule_1d({0.0}, {1.0});
    CHECK(wce_integration(b, KernelSpec::hermite({0.5})) ==
          doctest::Approx(std::sqrt(2.0 / std::sqrt(3.0) - 1.0)).epsilon(1e-12));
  }

  TEST_CASE("shape errors") {
    CHECK_ERROR_KIND(wce_integration(rule_1d({0.0}, {1.0}), KernelSpec::hermite({0.5, 0.5})), ErrorKind::shape);
    QuadratureRule bad = rule_1d({0.0, 1.0}, {1.0, 1.0});
    bad.weights.resize(1);
    CHECK_ERROR_KIND(wce_integration(bad, KernelSpec::hermite({0.5})), ErrorKind::shape);
  }

  TEST_CASE("optimal weights") {
    NodeMatrix origin(1, 1);
    origin << 0.0;
    const QuadratureRule h = optimal_weights(origin, KernelSpec::hermite({0.5}));
    CHECK(h.weights(0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
    CHECK(std::pow(wce_integration(h, KernelSpec::hermite({0.5})), 2) ==
          doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-12));

    const QuadratureRule g = optimal_weights(origin, KernelSpec::gaussian({1.0}));
    CHECK(g.weights(0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(std::pow(wce_integration(g, KernelSpec::gaussian({1.0})), 2) ==
          doctest::Approx(1.0 / std::sqrt(5.0) - 1.0 / 3.0).epsilon(1e-12));

    NodeMatrix twice(2, 1);
    twice << 0.4, 0.4;
    CHECK_ERROR_KIND(optimal_weights(twice, KernelSpec::gaussian({1.0})), ErrorKind::conditioning);
  }

  TEST_CASE("optimal weights minimise the error") {
    NodeMatrix nodes(4, 2);
    nodes << 0.0, 0.0, 1.0, 0.5, -0.8, 1.2, 0.3, -1.4;
    const KernelSpec spec = KernelSpec::gaussian({0.6, 0.9});
    QuadratureRule opt = optimal_weights(nodes, spec);
    const double best = wce_integration(opt, spec);
    for (Eigen::Index i = 0; i < 4; ++i) {
      QuadratureRule moved = opt;
      moved.weights(i) += 1e-3;
      CHECK(wce_integration(moved, spec) > best);
    }
  }

  TEST_CASE("spectral system eigenvalues") {
    const SpectralSystem h(KernelSpec::hermite({0.5}), MultiIndexSet::tensor(1, 5));
    CHECK(h.eigenvalue(SpectralSystem::Index{3}) == doctest::Approx(0.125).epsilon(1e-15));
    const SpectralSystem g(KernelSpec::gaussian({1.0}), MultiIndexSet::tensor(1, 5));
    CHECK(g.eigenvalue(SpectralSystem::Index{0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.eigenvalue(SpectralSystem::Index{2}) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g.eigenvalue(SpectralSystem::Index{0}) ==
          doctest::Approx(std::pow(kernels::initial_error(KernelSpec::gaussian({1.0}), Problem::approximation), 2)));
  }

  TEST_CASE("Gaussian eigenpairs reproduce the kernel and integrate correctly") {
    const double sigma = 0.8;
    const SpectralSystem sys(KernelSpec::gaussian({sigma}), MultiIndexSet::tensor(1, 120));
    for (double x : {-1.5, 0.0, 0.9}) {
      for (double y : {-0.4, 1.2}) {
        const std::vector<double> px{x};
        const std::vector<double> py{y};
        const Eigen::VectorXd ex = sys.eigenfunction_row(px);
        const Eigen::VectorXd ey = sys.eigenfunction_row(py);
        double sum = 0.0;
        for (std::size_t k = 0; k < sys.size(); ++k) sum += sys.eigenvalue(k) * ex(k) * ey(k);
        CHECK(close(sum, kernels::gaussian_kernel(sigma, x, y), 1e-12));
      }
    }
    for (int nu : {0, 2, 4, 7}) {
      const SpectralSystem::Index idx{nu};
      const double oracle = testing::normal_integral([&](double x) {
        const std::vector<double> p{x};
        return sys.eigenfunction_value(idx, p);
      });
      CHECK(close(sys.eigenfunction_integral(idx), oracle, 1e-10, 1e-13));
    }
  }

  TEST_CASE("spectral integration error agrees with the Gram formula") {
    std::mt19937_64 rng(11);
    for (auto family : {Family::gaussian, Family::hermite}) {
      const KernelSpec spec = KernelSpec::make(family, family == Family::gaussian ? std::vector<double>{0.7, 1.1}
                                                                                  : std::vector<double>{0.4, 0.6});
      const SpectralSystem sys(spec, MultiIndexSet::tensor(2, 70));
      QuadratureRule r;
      r.nodes.resize(5, 2);
      r.weights.resize(5);
      std::normal_distribution<double> normal;
      for (int i = 0; i < 5; ++i) {
        r.nodes(i, 0) = normal(rng);
        r.nodes(i, 1) = normal(rng);
        r.weights(i) = 0.2;
      }
      const TruncatedError s = wce_integration_spectral(r, sys);
      const double g = wce_integration(r, spec);
      CHECK(s.value <= g + 1e-12);
      CHECK(g <= s.value + s.tail_bound + 1e-12);
      CHECK(s.tail_bound < 1e-8);
    }
  }

  TEST_CASE("approximation error of the zero method") {
    const SpectralSystem h(KernelSpec::hermite({0.5}), MultiIndexSet::tensor(1, 40));
    SamplingMethod zero{NodeMatrix::Zero(2, 1), Eigen::MatrixXd::Zero(2, 41), h.index_set()};
    const TruncatedError eh = wce_approximation(zero, h);
    CHECK(eh.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eh.tail_bound <= 1e-15);

    const SpectralSystem g(KernelSpec::gaussian({1.0}), MultiIndexSet::tensor(1, 40));
    zero.index_set = g.index_set();
    CHECK(wce_approximation(zero, g).value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  }

  TEST_CASE("approximation error of evaluation at the origin") {
    const SpectralSystem h(KernelSpec::hermite({0.5}), MultiIndexSet::tensor(1, 60));
    SamplingMethod m{NodeMatrix::Zero(1, 1), Eigen::MatrixXd::Zero(1, 61), h.index_set()};
    m.coeffs(0, 0) = 1.0;
    const TruncatedError e = wce_approximation(m, h);
    CHECK(close(e.value, dense_hermite_error(m, {0.5}), 1e-13));
    CHECK(e.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(e.tail_bound < 1e-8);
  }

  TEST_CASE("iterative norm matches a dense SVD") {
    const std::vector<double> beta{0.6, 0.5};
    const SpectralSystem h(KernelSpec::hermite(beta), MultiIndexSet::tensor(2, 20));
    REQUIRE(static_cast<Eigen::Index>(h.size()) > kDenseNormLimit);
    NodeMatrix nodes(5, 2);
    nodes << 0.0, 0.0, 1.0, -0.5, -1.2, 0.8, 0.6, 1.5, -0.3, -1.1;
    const SamplingMethod m = spline_method(nodes, h);
    CHECK(close(wce_approximation(m, h).value, dense_hermite_error(m, beta), 1e-10));
  }

  TEST_CASE("spline method") {
    const SpectralSystem h(KernelSpec::hermite({0.5}), MultiIndexSet::tensor(1, 30));
    const SamplingMethod m = spline_method(NodeMatrix::Zero(1, 1), h);
    REQUIRE(m.coeffs.rows() == 1);
    for (int nu = 0; nu <= 30; ++nu) {
      const double expected = std::pow(0.5, nu) * hermite::hermite_normalized(nu, 0.0) * std::sqrt(3.0) / 2.0;
      CHECK(std::fabs(m.coeffs(0, nu) - expected) < 1e-15);
    }
    const SpectralSystem one(KernelSpec::hermite({0.5}), MultiIndexSet::tensor(1, 0));
    CHECK(spline_method(NodeMatrix::Zero(1, 1), one).coeffs.cols() == 1);

    NodeMatrix twice(2, 1);
    twice << 1.0, 1.0;
    CHECK_ERROR_KIND(spline_method(twice, h), ErrorKind::conditioning);
  }

  TEST_CASE("spline method interpolates the kernel") {
    const SpectralSystem h(KernelSpec::hermite({0.4}), MultiIndexSet::tensor(1, 60));
    NodeMatrix nodes(3, 1);
    nodes << -1.0, 0.2, 1.4;
    const SamplingMethod m = spline_method(nodes, h);
    for (Eigen::Index i = 0; i < 3; ++i) {
      const Eigen::VectorXd row = h.eigenfunction_row(node_row(nodes, i));
      for (Eigen::Index k = 0; k < 3; ++k) {
        CHECK(std::fabs(m.coeffs.row(k).dot(row) - (i == k ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }

  TEST_CASE("cost models") {
    NodeMatrix three = NodeMatrix::Zero(3, 2);
    CHECK(rule_cost(three, CostModel::unit()) == 3.0);

    NodeMatrix one(1, 3);
    one << 0.0, 2.5, 0.0;
    const CostModel linear = CostModel::dollar([](std::size_t m) { return 1.0 + static_cast<double>(m); }, "1+m");
    CHECK(rule_cost(one, linear) == 2.0);

    NodeMatrix two(2, 3);
    two << 1.0, 1.0, 0.0, 0.0, 0.0, 0.0;
    CHECK(rule_cost(two, CostModel::dollar_table({1.0, 2.0, 4.0, 8.0})) == 5.0);

    CHECK_ERROR_KIND(CostModel::dollar_table({1.0, 0.5}), ErrorKind::domain);
    CHECK_ERROR_KIND(CostModel::dollar_table({0.5}), ErrorKind::domain);
    CHECK_ERROR_KIND(CostModel::dollar_table({1.0}).evaluation_cost(1), ErrorKind::domain);
    CHECK_NOTHROW(linear.check_growth(0.5, 1.0, 50));
    CHECK_NOTHROW(CostModel::unit().check_growth(0.5, 1.0, 10));
    CHECK_ERROR_KIND(CostModel::dollar_table(std::vector<double>(11, 1.0)).check_growth(0.5, 1.0, 10),
                     ErrorKind::domain);
    CHECK(active_variables(std::vector<double>{0.0, -0.0, 3.0}) == 1);
  }
}
