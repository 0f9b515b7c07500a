#include <cmath>
#include <random>
#include <vector>

#include "rkhs/kernels.hpp"
#include "rkhs/transference.hpp"
#include "rkhs/worst_case.hpp"
#include "support.hpp"

using namespace rkhs;
using testing::close;

namespace {

QuadratureRule random_rule(std::mt19937_64& rng, int n, int d) {
  QuadratureRule r;
  r.nodes.resize(n, d);
  r.weights.resize(n);
  std::normal_distribution<double> normal(0.0, 1.5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) r.nodes(i, j) = normal(rng);
    r.weights(i) = unit(rng);
  }
  return r;
}

}  // namespace

TEST_SUITE("transference") {
  TEST_CASE("beta and sigma relations") {
    CHECK(beta_from_sigma(Problem::integration, std::sqrt(0.5)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(beta_from_sigma(Problem::approximation, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(beta_from_sigma(Problem::integration, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(sigma_from_beta(Problem::integration, 0.5) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(sigma_from_beta(Problem::approximation, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sigma_from_beta(Problem::integration, 2.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    for (double s : {0.05, 0.4, 1.7, 3.0}) {
      for (auto p : {Problem::integration, Problem::approximation}) {
        CHECK(sigma_from_beta(p, beta_from_sigma(p, s)) == doctest::Approx(s).epsilon(1e-13));
      }
    }
    CHECK_ERROR_KIND(sigma_from_beta(Problem::integration, 1.0), ErrorKind::domain);
  }

  TEST_CASE("phi_c") {
    const std::vector<double> c3{std::sqrt(3.0)};
    const std::vector<double> c1{1.0};
    const std::vector<double> zero{0.0};
    const std::vector<double> one{1.0};
    CHECK(phi_c(c3, zero) == 1.0);
    CHECK(phi_c(c3, one) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(phi_c(c1, std::vector<double>{7.5}) == 1.0);
  }

  TEST_CASE("Q_c and its inverse") {
    const std::vector<double> c{std::sqrt(3.0)};
    const Function unit = [](Point) { return 1.0; };
    const Function h1 = [](Point x) { return x[0]; };
    CHECK(q_c_apply(c, unit, std::vector<double>{0.0}) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-15));
    CHECK(q_c_apply(c, h1, std::vector<double>{1.0}) ==
          doctest::Approx(std::pow(3.0, 0.25) * std::exp(-0.5) * std::sqrt(3.0)).epsilon(1e-14));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<double> cc{1.0 + std::fabs(u(rng)), 1.0 + std::fabs(u(rng))};
      const double a = u(rng), b = u(rng), d = u(rng);
      const Function f = [&](Point x) { return a + b * x[0] * x[1] + d * x[1] * x[1] * x[1]; };
      const Function g = [&](Point x) { return q_c_apply(cc, f, x); };
      const std::vector<double> x{u(rng), u(rng)};
      CHECK(close(q_c_inverse_apply(cc, g, x), f(x), 1e-12, 1e-14));
    }
  }

  TEST_CASE("quadrature transfer examples") {
    const std::vector<double> sigma{std::sqrt(0.5)};
    QuadratureRule a;
    a.nodes = NodeMatrix::Zero(1, 1);
    a.weights = Eigen::VectorXd::Constant(1, 1.0 / std::sqrt(2.0));
    const QuadratureRule b = transfer_quadrature_to_hermite(a, sigma);
    CHECK(b.nodes(0, 0) == 0.0);
    CHECK(b.weights(0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
    CHECK(wce_integration(b, KernelSpec::hermite({0.5})) == doctest::Approx((std::sqrt(3.0) - 1.0) / 2.0).epsilon(1e-12));
    CHECK(wce_integration(a, KernelSpec::gaussian(sigma)) ==
          doctest::Approx(std::pow(3.0, -0.25) * (std::sqrt(3.0) - 1.0) / 2.0).epsilon(1e-12));

    const QuadratureRule back = transfer_quadrature_to_gaussian(b, sigma);
    CHECK(back.weights(0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    QuadratureRule node1;
    node1.nodes = NodeMatrix::Constant(1, 1, 1.0);
    node1.weights = Eigen::VectorXd::Ones(1);
    const QuadratureRule t = transfer_quadrature_to_hermite(node1, sigma);
    CHECK(t.nodes(0, 0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
    CHECK(t.weights(0) == doctest::Approx(std::sqrt(1.5) * std::exp(-0.25)).epsilon(1e-14));
  }

  TEST_CASE("zero rules map to zero rules") {
    std::mt19937_64 rng(5);
    QuadratureRule a = random_rule(rng, 4, 2);
    a.weights.setZero();
    const std::vector<double> sigma{0.7, 1.9};
    const TransferConstants k = TransferConstants::make(Problem::integration, sigma);
    const QuadratureRule b = transfer_quadrature_to_hermite(a, sigma);
    CHECK(b.weights.cwiseAbs().maxCoeff() == 0.0);
    CHECK(wce_integration(b, k.hermite_spec()) == doctest::Approx(1.0));
    CHECK(wce_integration(a, k.gaussian_spec()) == doctest::Approx(k.gauss_prefactor).epsilon(1e-14));
    CHECK(transfer_quadrature_to_gaussian(b, sigma).weights.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("quadrature transfer is a bijection") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> s(0.05, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
      const int d = 1 + trial % 3;
      const QuadratureRule a = random_rule(rng, 1 + trial % 8, d);
      std::vector<double> sigma(d);
      for (double& v : sigma) v = s(rng);
      const QuadratureRule back = transfer_quadrature_to_gaussian(transfer_quadrature_to_hermite(a, sigma), sigma);
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        CHECK(close(back.weights(i), a.weights(i), 1e-14));
        for (int j = 0; j < d; ++j) CHECK(close(back.nodes(i, j), a.nodes(i, j), 1e-14));
      }
    }
  }

  TEST_CASE("normalized errors of transferred optimal rules coincide") {
    std::mt19937_64 rng(9);
    for (int n = 1; n <= 6; ++n) {
      const std::vector<double> sigma{0.8, 0.5};
      const TransferConstants k = TransferConstants::make(Problem::integration, sigma);
      const QuadratureRule a = optimal_weights(random_rule(rng, n, 2).nodes, k.gaussian_spec());
      const QuadratureRule b = transfer_quadrature_to_hermite(a, sigma);
      const QuadratureRule b_opt = optimal_weights(b.nodes, k.hermite_spec());
      const double na = wce_integration(a, k.gaussian_spec()) / kernels::initial_error(k.gaussian_spec(), Problem::integration);
      CHECK(close(na, wce_integration(b, k.hermite_spec()), 1e-10));
      CHECK(close(na, wce_integration(b_opt, k.hermite_spec()), 1e-8));
    }
  }

  TEST_CASE("sampling transfer") {
    const std::vector<double> sigma{1.0};
    const TransferConstants k = TransferConstants::make(Problem::approximation, sigma);
    const SpectralSystem g(k.gaussian_spec(), MultiIndexSet::tensor(1, 60));
    const SpectralSystem h(k.hermite_spec(), MultiIndexSet::tensor(1, 60));

    SamplingMethod zero{NodeMatrix::Zero(2, 1), Eigen::MatrixXd::Zero(2, 61), g.index_set()};
    zero.nodes(1, 0) = 0.8;
    const SamplingMethod zt = transfer_sampling_to_hermite(zero, g, h);
    CHECK(zt.coeffs.cwiseAbs().maxCoeff() == 0.0);
    CHECK(wce_approximation(zero, g).value ==
          doctest::Approx(k.gauss_prefactor * wce_approximation(zt, h).value).epsilon(1e-14));

    // A node at the origin stays put; its row picks up the factor c^{1/2}.
    SamplingMethod origin{NodeMatrix::Zero(1, 1), Eigen::MatrixXd::Zero(1, 61), g.index_set()};
    origin.coeffs(0, 0) = 1.0;
    const SamplingMethod ot = transfer_sampling_to_hermite(origin, g, h);
    CHECK(ot.nodes(0, 0) == 0.0);
    CHECK(ot.coeffs(0, 0) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-14));
    CHECK(ot.coeffs.rightCols(60).cwiseAbs().maxCoeff() == 0.0);

    NodeMatrix nodes(4, 1);
    nodes << -1.3, -0.2, 0.6, 1.7;
    const SamplingMethod a = spline_method(nodes, g);
    const SamplingMethod b = transfer_sampling_to_hermite(a, g, h);
    const TruncatedError ea = wce_approximation(a, g);
    const TruncatedError eb = wce_approximation(b, h);
    CHECK(ea.tail_bound < 1e-8);
    CHECK(eb.tail_bound < 1e-8);
    CHECK(std::fabs(ea.value - k.gauss_prefactor * eb.value) <= 1e-6);

    const SamplingMethod p = transfer_sampling_to_hermite_by_projection(a, g, h, 64);
    CHECK((p.coeffs - b.coeffs).cwiseAbs().maxCoeff() < 1e-10);

    const SamplingMethod back = transfer_sampling_to_gaussian(b, g, h);
    CHECK((back.coeffs - a.coeffs).cwiseAbs().maxCoeff() <= 1e-14 * a.coeffs.cwiseAbs().maxCoeff());
    CHECK((back.nodes - a.nodes).cwiseAbs().maxCoeff() <= 1e-15);
  }

  TEST_CASE("sampling transfer rejects mismatched systems") {
    const TransferConstants k = TransferConstants::make(Problem::approximation, {1.0});
    const SpectralSystem g(k.gaussian_spec(), MultiIndexSet::tensor(1, 10));
    const SpectralSystem h(k.hermite_spec(), MultiIndexSet::tensor(1, 12));
    const SpectralSystem wrong(KernelSpec::hermite({0.3}), MultiIndexSet::tensor(1, 10));
    const SamplingMethod a{NodeMatrix::Zero(1, 1), Eigen::MatrixXd::Zero(1, 11), g.index_set()};
    CHECK_ERROR_KIND(transfer_sampling_to_hermite(a, g, h), ErrorKind::shape);
    CHECK_ERROR_KIND(transfer_sampling_to_hermite(a, g, wrong), ErrorKind::consistency);
  }

  TEST_CASE("cost is invariant under transfer") {
    std::mt19937_64 rng(13);
    const CostModel model = CostModel::dollar_table({1.0, 2.0, 4.0, 8.0});
    for (int trial = 0; trial < 10; ++trial) {
      QuadratureRule a = random_rule(rng, 6, 3);
      for (int i = 0; i < 6; ++i) a.nodes(i, i % 3) = 0.0;
      const std::vector<double> sigma{0.3, 1.0, 2.0};
      const QuadratureRule b = transfer_quadrature_to_hermite(a, sigma);
      CHECK(rule_cost(a, model) == rule_cost(b, model));
    }
  }
}
