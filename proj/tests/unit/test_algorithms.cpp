#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "rkhs/hermite_basis.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/mdm.hpp"
#include "rkhs/param_sequence.hpp"
#include "rkhs/smolyak.hpp"
#include "rkhs/tensor.hpp"
#include "rkhs/transference.hpp"
#include "rkhs/worst_case.hpp"
#include "support.hpp"

using namespace rkhs;
using testing::close;

namespace {

double apply(const QuadratureRule& r, const Function& f) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) sum += r.weights(i) * f(node_row(r.nodes, i));
  return sum;
}

double moment(int p) {
  if (p % 2 == 1) return 0.0;
  double m = 1.0;
  for (int k = p - 1; k > 0; k -= 2) m *= k;
  return m;
}

QuadratureRule pad(const QuadratureRule& r, Eigen::Index dim) {
  QuadratureRule out;
  out.nodes = NodeMatrix::Zero(r.size(), dim);
  out.nodes.leftCols(r.dimension()) = r.nodes;
  out.weights = r.weights;
  return out;
}

const CostModel& linear_cost() {
  static const CostModel model =
      CostModel::dollar([](std::size_t m) { return 1.0 + static_cast<double>(m); }, "1+m");
  return model;
}

}  // namespace

TEST_SUITE("algorithms") {
  TEST_CASE("Gauss-Hermite rules on the two spaces") {
    const QuadratureRule h1 = gh_rule_on_space(1, KernelSpec::hermite({0.5}));
    CHECK(wce_integration(h1, KernelSpec::hermite({0.5})) == doctest::Approx(0.39331989).epsilon(1e-8));

    const KernelSpec g = KernelSpec::gaussian({std::sqrt(0.5)});
    const QuadratureRule g1 = gh_rule_on_space(1, g);
    CHECK(wce_integration(g1, g) ==
          doctest::Approx(std::sqrt(1.0 / std::sqrt(3.0) - std::sqrt(2.0) + 1.0)).epsilon(1e-12));

    const QuadratureRule h2 = gh_rule_on_space(2, KernelSpec::hermite({0.5}));
    const double e2 = -1.0 + 0.5 * (testing::mehler(0.5, 1.0, 1.0) + testing::mehler(0.5, 1.0, -1.0));
    CHECK(wce_integration(h2, KernelSpec::hermite({0.5})) == doctest::Approx(std::sqrt(e2)).epsilon(1e-12));
    CHECK_ERROR_KIND(gh_rule_on_space(2, KernelSpec::hermite({0.5, 0.5})), ErrorKind::shape);
  }

  TEST_CASE("tensor rules") {
    const std::vector<hermite::QuadratureRule1D> ones(2, hermite::gauss_hermite_rule(1));
    const QuadratureRule r1 = tensor_rule(ones);
    CHECK(r1.size() == 1);
    CHECK(r1.weights(0) == doctest::Approx(1.0));
    CHECK(r1.nodes.cwiseAbs().maxCoeff() == 0.0);

    const std::vector<hermite::QuadratureRule1D> twos(2, hermite::gauss_hermite_rule(2));
    const QuadratureRule r2 = tensor_rule(twos);
    REQUIRE(r2.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
      CHECK(std::fabs(r2.nodes(i, 0)) == doctest::Approx(1.0));
      CHECK(std::fabs(r2.nodes(i, 1)) == doctest::Approx(1.0));
      CHECK(r2.weights(i) == doctest::Approx(0.25));
    }
    const std::vector<hermite::QuadratureRule1D> mixed{hermite::gauss_hermite_rule(3), hermite::gauss_hermite_rule(5),
                                                       hermite::gauss_hermite_rule(2)};
    CHECK(tensor_rule(mixed).weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("eps-driven tensor choice") {
    const std::vector<double> s2{1.0, 1.0};
    const TensorChoice c = tensor_rule_for_eps(0.1, s2, Family::gaussian);
    CHECK(c.zeta[0] == doctest::Approx(std::log(1.5)).epsilon(1e-14));
    CHECK(c.points == std::vector<int>{8, 8});
    CHECK(c.rule.size() == 64);
    CHECK(c.guaranteed_bound <= 0.1);

    const std::vector<double> s1{1.0};
    CHECK(tensor_rule_for_eps(0.5, s1, Family::hermite).points == std::vector<int>{2});
    CHECK_ERROR_KIND(tensor_rule_for_eps(1.0, s1, Family::gaussian), ErrorKind::domain);
    CHECK_ERROR_KIND(tensor_rule_for_eps(1e-300, std::vector<double>(6, 2.0), Family::gaussian), ErrorKind::budget);
  }

  TEST_CASE("Gaussian tensor choice is the transferred Hermite choice") {
    const std::vector<double> sigma{0.6, 1.2};
    const TensorChoice g = tensor_rule_for_eps(0.05, sigma, Family::gaussian);
    const TensorChoice h = tensor_rule_for_eps(0.05, sigma, Family::hermite);
    const QuadratureRule t = transfer_quadrature_to_gaussian(h.rule, sigma);
    CHECK((t.nodes - g.rule.nodes).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((t.weights - g.rule.weights).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("product errors match the Gram formula") {
    const std::vector<hermite::QuadratureRule1D> f{hermite::gauss_hermite_rule(3), hermite::gauss_hermite_rule(4)};
    const QuadratureRule r = tensor_rule(f);
    for (const KernelSpec& spec : {KernelSpec::gaussian({0.5, 0.9}), KernelSpec::hermite({0.3, 0.6})}) {
      CHECK(close(wce_integration_product(f, spec), wce_integration(r, spec), 1e-10));
    }
    const std::vector<double> beta{0.3, 0.6};
    const TruncatedError s = wce_integration_product_hermite(f, beta, 200);
    CHECK(close(s.value, wce_integration(r, KernelSpec::hermite(beta)), 1e-10));
  }

  TEST_CASE("one-dimensional optimal weights") {
    const std::vector<double> nodes{-1.0, 0.0, 1.5};
    const hermite::QuadratureRule1D w = optimal_weights_1d(nodes, Family::gaussian, 0.8);
    NodeMatrix m(3, 1);
    m << -1.0, 0.0, 1.5;
    const QuadratureRule full = optimal_weights(m, KernelSpec::gaussian({0.8}));
    for (int i = 0; i < 3; ++i) CHECK(w.weights[i] == doctest::Approx(full.weights(i)).epsilon(1e-12));
  }

  TEST_CASE("Smolyak rules") {
    const SmolyakLevels levels = SmolyakLevels::linear(5);
    const QuadratureRule uni = smolyak_rule(1, levels);
    const auto gh = hermite::gauss_hermite_rule(5);
    REQUIRE(uni.size() == 5);
    for (int i = 0; i < 5; ++i) {
      CHECK(uni.nodes(i, 0) == doctest::Approx(gh.nodes[i]).epsilon(1e-14));
      CHECK(uni.weights(i) == doctest::Approx(gh.weights[i]).epsilon(1e-13));
    }
    const QuadratureRule base = smolyak_rule(2, SmolyakLevels::linear(2));
    REQUIRE(base.size() == 1);
    CHECK(base.weights(0) == doctest::Approx(1.0));
    CHECK(base.nodes.cwiseAbs().maxCoeff() == 0.0);
    for (std::size_t d = 1; d <= 4; ++d) {
      CHECK(smolyak_rule(d, SmolyakLevels::linear(static_cast<int>(d) + 3)).weights.sum() ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(smolyak_size(3, SmolyakLevels::linear(6)) ==
          static_cast<std::size_t>(smolyak_rule(3, SmolyakLevels::linear(6)).size()));
    CHECK_ERROR_KIND(smolyak_rule(3, SmolyakLevels::linear(2)), ErrorKind::domain);
    CHECK_ERROR_KIND(SmolyakLevels({2, 1}, 2), ErrorKind::domain);
  }

  TEST_CASE("Smolyak degree exactness") {
    const QuadratureRule r4 = smolyak_rule(2, SmolyakLevels::linear(4));
    const QuadratureRule r5 = smolyak_rule(2, SmolyakLevels::linear(5));
    for (int a = 0; a <= 5; ++a) {
      for (int b = 0; b <= 5; ++b) {
        const Function f = [&](Point x) { return std::pow(x[0], a) * std::pow(x[1], b); };
        const double exact = moment(a) * moment(b);
        // Level q is exact on the sum of P_{2 i_1 - 1} x P_{2 i_2 - 1} over i_1 + i_2 = q.
        const auto exact_at = [&](int q) {
          for (int i1 = 1; i1 < q; ++i1) {
            if (a <= 2 * i1 - 1 && b <= 2 * (q - i1) - 1) return true;
          }
          return false;
        };
        if (exact_at(4)) CHECK(apply(r4, f) == doctest::Approx(exact).epsilon(1e-12));
        if (exact_at(5)) CHECK(apply(r5, f) == doctest::Approx(exact).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("anchored components") {
    const Function product = [](Point x) { return x[0] * x[1]; };
    const std::vector<std::size_t> u01{0, 1};
    const std::vector<std::size_t> u1{1};
    CHECK(anchored_component_eval(product, u01, std::vector<double>{2.0, -3.0}) == doctest::Approx(-6.0));
    const Function constant = [](Point) { return 4.2; };
    CHECK(anchored_component_eval(constant, u01, std::vector<double>{1.0, 1.0}) == 0.0);
    const Function first = [](Point x) { return x[0]; };
    CHECK(anchored_component_eval(first, u1, std::vector<double>{0.0, 5.0}) == 0.0);
  }

  TEST_CASE("explicit plans") {
    const MdmPlan plan = mdm_plan({{0}, {1}, {0, 1}}, {3, 3, 4}, CostModel::unit());
    CHECK(plan.budgets == std::vector<std::size_t>{3, 3, smolyak_size(2, SmolyakLevels::linear(4))});
    CHECK(plan.cost == rule_cost(plan.flattened, CostModel::unit()));
    CHECK(mdm_apply(plan, [](Point) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(mdm_apply(plan, [](Point x) { return x[0]; })) < 1e-14);
    CHECK(mdm_apply(plan, [](Point x) { return x[0] * x[0]; }) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(mdm_apply(plan, [](Point x) { return x[0] * x[0] * x[1] * x[1]; }) == doctest::Approx(1.0).epsilon(1e-13));
    for (Eigen::Index i = 0; i < plan.flattened.size(); ++i) {
      CHECK(active_variables(node_row(plan.flattened.nodes, i)) <= 2);
    }
    CHECK_ERROR_KIND(mdm_plan({{0, 1}}, {1}, CostModel::unit()), ErrorKind::domain);
  }

  TEST_CASE("flattened rule equals the component form") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (bool dedup : {false, true}) {
      const MdmPlan plan = mdm_plan({{0}, {2}, {0, 2}, {1}}, {4, 3, 5, 2}, CostModel::unit(), dedup);
      for (int trial = 0; trial < 5; ++trial) {
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        const Function f = [&](Point x) {
          return a + b * x[0] * x[0] * x[2] + c * std::exp(0.3 * x[1] - 0.2 * x[2]) + d * x[0] * x[0] * x[0];
        };
        CHECK(close(mdm_apply(plan, f), mdm_apply_components(plan, f), 1e-12, 1e-13));
      }
    }
  }

  TEST_CASE("factorized plan error matches the Gram formula") {
    for (bool dedup : {false, true}) {
      const MdmPlan plan = mdm_plan({{0}, {1}, {0, 1}, {2}}, {4, 3, 4, 2}, CostModel::unit(), dedup);
      for (const KernelSpec& spec : {KernelSpec::gaussian({0.9, 0.6, 0.4, 0.2}), KernelSpec::hermite({0.5, 0.3, 0.2, 0.1})}) {
        const double gram = wce_integration(pad(plan.flattened, 4), spec);
        const TruncatedError fact = mdm_wce(plan, spec);
        CHECK(close(fact.value, gram, 1e-8));
        CHECK(fact.tail_bound == 0.0);
      }
    }
  }

  TEST_CASE("anchor-only plan") {
    const InfiniteKernel kernel(Family::hermite, SequenceRule::power(2.0, 0.5));
    const MdmPlan plan = mdm_build(kernel, linear_cost().evaluation_cost(0), linear_cost());
    CHECK(plan.active_sets.empty());
    REQUIRE(plan.flattened.size() == 1);
    CHECK(plan.flattened.weights(0) == 1.0);
    CHECK(plan.flattened.nodes.cwiseAbs().maxCoeff() == 0.0);
    double log_k00 = 0.0;
    for (std::size_t j = 1; j <= 2000000; ++j) {
      const double b = 0.5 / (static_cast<double>(j) * static_cast<double>(j));
      log_k00 -= 0.5 * std::log1p(-b * b);
    }
    const double oracle = std::sqrt(1.0 - 2.0 + std::exp(log_k00));
    const TruncatedError e = mdm_wce(plan, kernel, 1000);
    CHECK(e.value <= oracle + 1e-12);
    CHECK(oracle <= e.value + e.tail_bound + 1e-12);
  }

  TEST_CASE("truncation levels agree within the tail bound") {
    const InfiniteKernel kernel(Family::gaussian, SequenceRule::geometric(0.5));
    const MdmPlan plan = mdm_build(kernel, 1.0, linear_cost());
    const TruncatedError short_cut = mdm_wce(plan, kernel, 20);
    const TruncatedError long_cut = mdm_wce(plan, kernel, 60);
    CHECK(std::fabs(short_cut.value - long_cut.value) <= short_cut.tail_bound + 1e-15);
    CHECK(long_cut.tail_bound <= short_cut.tail_bound);
  }

  TEST_CASE("adding a component does not hurt after re-weighting") {
    const KernelSpec spec = KernelSpec::gaussian({0.5, 0.25, 0.125, 0.0625});
    const MdmPlan anchor = mdm_plan({}, {}, CostModel::unit(), true);
    const MdmPlan one = mdm_plan({{0}}, {3}, CostModel::unit(), true);
    const double e_anchor = wce_integration(pad(anchor.flattened, 4), spec);
    const QuadratureRule reweighted = optimal_weights(pad(one.flattened, 4).nodes, spec);
    CHECK(wce_integration(reweighted, spec) <= e_anchor);
  }

  TEST_CASE("greedy planner") {
    const InfiniteKernel kernel(Family::gaussian, SequenceRule::power(1.5));
    const MdmPlan plan = mdm_build(kernel, 1000.0, linear_cost());
    CHECK(plan.cost <= 1000.0);
    CHECK(plan.cost == rule_cost(plan.flattened, linear_cost()));
    CHECK(!plan.active_sets.empty());
    // Downward closed: every non-empty proper subset of an active set is active.
    std::map<Coords, bool> active;
    for (const auto& u : plan.active_sets) active[u] = true;
    for (const auto& u : plan.active_sets) {
      for (std::size_t drop = 0; drop < u.size() && u.size() > 1; ++drop) {
        Coords v = u;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(drop));
        CHECK(active.count(v) == 1);
      }
    }
    const MdmPlan again = mdm_build(kernel, 1000.0, linear_cost());
    CHECK(again.active_sets == plan.active_sets);
    CHECK(again.levels == plan.levels);

    const MdmPlan bigger = mdm_build(kernel, 3000.0, linear_cost());
    CHECK(mdm_wce(bigger, kernel, 10000).value < mdm_wce(plan, kernel, 10000).value);
    CHECK_ERROR_KIND(mdm_build(kernel, 0.5, linear_cost()), ErrorKind::budget);
  }
}
