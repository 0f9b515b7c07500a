#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "rkhs/experiments.hpp"
#include "rkhs/param_sequence.hpp"
#include "support.hpp"

using namespace rkhs;

TEST_SUITE("experiments") {
  TEST_CASE("decay estimate on exact power laws") {
    std::vector<CostErrorPair> pairs;
    for (int n = 2; n <= 64; n += 2) pairs.push_back({double(n), 1.0 / (double(n) * n)});
    const DecayEstimate est = decay_estimate(pairs);
    CHECK(std::fabs(est.exponent - 2.0) < 1e-10);
    CHECK(est.r_squared == doctest::Approx(1.0));
    CHECK(est.points_used == 16);

    std::vector<CostErrorPair> flat{{1, 0.3}, {2, 0.3}, {4, 0.3}, {8, 0.3}};
    CHECK(decay_estimate(flat).exponent == 0.0);
  }

  TEST_CASE("decay estimate recovers rates under a polylog factor") {
    for (double tau : {0.5, 1.0, 2.0}) {
      std::vector<CostErrorPair> pairs;
      for (int k = 0; k <= 30; ++k) {
        const double cost = std::pow(10.0, 3.0 + 0.1 * k);
        pairs.push_back({cost, std::pow(cost, -tau) * std::pow(std::log(cost), 0.25)});
      }
      CHECK(std::fabs(decay_estimate(pairs).exponent - tau) < 0.05);
    }
  }

  TEST_CASE("decay estimate errors") {
    CHECK_ERROR_KIND(decay_estimate({{1.0, 0.5}}), ErrorKind::insufficient_data);
    CHECK_ERROR_KIND(decay_estimate({{1.0, 0.5}, {2.0, 0.0}, {3.0, 0.1}}), ErrorKind::domain);
    CHECK_ERROR_KIND(decay_estimate({{2.0, 0.5}, {2.0, 0.4}, {2.0, 0.1}}), ErrorKind::insufficient_data);
  }

  TEST_CASE("empirical information complexity") {
    const std::vector<CostErrorPair> curve{{1, 0.5}, {2, 0.05}};
    CHECK(empirical_info_complexity(curve, 0.1, 1.0, ErrorCriterion::absolute) == 2.0);
    CHECK(empirical_info_complexity(curve, 0.1, 1.0, ErrorCriterion::normalized) == 2.0);
    CHECK(empirical_info_complexity(curve, 0.1, 6.0, ErrorCriterion::normalized) == 1.0);
    CHECK(std::isinf(empirical_info_complexity(curve, 1e-3, 1.0, ErrorCriterion::absolute)));
  }

  TEST_CASE("thread count") {
    ::setenv("RKHS_THREADS", "3", 1);
    CHECK(thread_count() == 3);
    ::setenv("RKHS_THREADS", "zero", 1);
    CHECK(thread_count() >= 1);
    ::unsetenv("RKHS_THREADS");
    std::vector<int> hit(50, 0);
    parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
    for (int h : hit) CHECK(h == 1);
  }

  TEST_CASE("univariate decay study") {
    const auto rows = univariate_decay(Family::hermite, 0.5, 20);
    REQUIRE(rows.size() == 20);
    CHECK(std::isnan(rows[0].rate_fit));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].n == static_cast<int>(i) + 1);
      CHECK(rows[i].error >= rows[i].t4_lower);
      if (i > 0) CHECK(rows[i].error <= rows[i - 1].error);
    }
    CHECK(rows[0].error == doctest::Approx(0.39331989).epsilon(1e-8));

    const double sigma = 0.5;
    const auto g = univariate_decay(Family::gaussian, sigma, 10);
    const auto h = univariate_decay(Family::hermite, 2.0 * sigma * sigma / (1.0 + 2.0 * sigma * sigma), 10);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g[i].error == doctest::Approx(std::pow(1.0 + 4.0 * sigma * sigma, -0.25) * h[i].error).epsilon(1e-9));
    }
    CHECK_ERROR_KIND(univariate_decay(Family::hermite, 0.5, 0), ErrorKind::unsupported_size);
  }

  TEST_CASE("tensor decay study") {
    const std::vector<double> sigma{1.0, 1.0};
    const std::vector<double> eps{0.5, 0.1, 0.01};
    const auto rows = tensor_decay(sigma, eps);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].points == std::vector<int>{8, 8});
    CHECK(rows[1].size == 64);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].error < rows[i - 1].error);
    CHECK(tensor_decay_csv(rows).rfind("eps,n_j,size,error\n0.5,", 0) == 0);
    CHECK(tensor_decay_csv(rows).find(",8x8,64,") != std::string::npos);
  }

  TEST_CASE("CSV formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(std::strtod(format_double(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
    const auto rows = univariate_decay(Family::hermite, 0.5, 3);
    const std::string csv = univariate_decay_csv(rows);
    CHECK(csv.rfind("n,error,t4_lower,rate_fit\n1,", 0) == 0);
    CHECK(csv == univariate_decay_csv(univariate_decay(Family::hermite, 0.5, 3)));
    CHECK(mdm_run_csv({{10.0, 9.0, 0.25, 0.0}}) == "budget,cost,error,tail_bound\n10,9,0.25,0\n");
  }

  TEST_CASE("sequence rules") {
    const SequenceRule p = SequenceRule::parse("j^-1.5");
    CHECK(p.kind() == SequenceRule::Kind::power);
    CHECK(p.value(0) == 1.0);
    CHECK(p.value(3) == doctest::Approx(std::pow(4.0, -1.5)));
    const SequenceRule g = SequenceRule::parse("0.5*0.8^j");
    CHECK(g.kind() == SequenceRule::Kind::geometric);
    CHECK(g.value(1) == doctest::Approx(0.5 * 0.64));
    CHECK_ERROR_KIND(SequenceRule::parse("sin(j)"), ErrorKind::usage);
    CHECK_ERROR_KIND(SequenceRule::parse("1.5^j"), ErrorKind::domain);
    CHECK_ERROR_KIND(InfiniteKernel(Family::gaussian, SequenceRule::power(0.4)), ErrorKind::domain);
    CHECK_ERROR_KIND(InfiniteKernel(Family::hermite, SequenceRule::power(1.0)), ErrorKind::domain);

    double sum = 0.0;
    for (std::size_t i = 10; i < 2000000; ++i) sum += std::pow(p.value(i), 2.0);
    CHECK(sum <= p.tail_power_sum(10, 2.0));
    CHECK(p.tail_power_sum(10, 2.0) <= 1.25 * sum);
  }
}
