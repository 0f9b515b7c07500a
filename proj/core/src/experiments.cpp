#include "rkhs/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "rkhs/error.hpp"
#include "rkhs/tensor.hpp"
#include "rkhs/transference.hpp"

namespace rkhs {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  // A flat response is fitted exactly.
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace

DecayEstimate decay_estimate(std::vector<CostErrorPair> pairs) {
  for (const auto& p : pairs) {
    if (!(p.error > 0.0)) {
      throw Error(ErrorKind::domain, "decay_estimate: errors must be positive, got " +
                                         format_double(p.error));
    }
    if (!(p.cost > 0.0) || !std::isfinite(p.cost)) {
      throw Error(ErrorKind::domain, "decay_estimate: costs must be positive and finite");
    }
  }
  if (pairs.size() < 3) {
    throw Error(ErrorKind::insufficient_data,
                "decay_estimate needs at least 3 pairs, got " + std::to_string(pairs.size()));
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const CostErrorPair& a, const CostErrorPair& b) { return a.cost < b.cost; });
  const std::size_t used = std::max<std::size_t>(3, (pairs.size() + 1) / 2);
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = pairs.size() - used; i < pairs.size(); ++i) {
    x.push_back(std::log(pairs[i].cost));
    y.push_back(std::log(pairs[i].error));
  }
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
    throw Error(ErrorKind::insufficient_data, "decay_estimate needs at least two distinct costs");
  }
  const LineFit fit = least_squares(x, y);
  DecayEstimate est;
  est.exponent = fit.slope == 0.0 ? 0.0 : -fit.slope;
  est.intercept = fit.intercept;
  est.points_used = used;
  est.r_squared = fit.r_squared;
  return est;
}

double empirical_info_complexity(std::span<const CostErrorPair> curve, double eps, double e0,
                                 ErrorCriterion criterion) {
  const double threshold = criterion == ErrorCriterion::absolute ? eps : eps * e0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : curve) {
    if (p.error <= threshold) best = std::min(best, p.cost);
  }
  return best;
}

std::size_t thread_count() {
  if (const char* env = std::getenv("RKHS_THREADS")) {
    std::size_t value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(n, thread_count());
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::mutex mutex;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      std::size_t i = 0;
      {
        std::lock_guard<std::mutex> lock(mutex);
        if (next >= n || failure) return;
        i = next++;
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<UnivariateDecayRow> univariate_decay(Family family, double param, int n_max) {
  if (n_max < 1 || n_max > hermite::kMaxRuleSize) {
    throw Error(ErrorKind::unsupported_size, "n_max must lie in [1, " +
                                                 std::to_string(hermite::kMaxRuleSize) + "]");
  }
  const KernelSpec spec = KernelSpec::make(family, {param});
  const double beta =
      family == Family::hermite ? param : beta_from_sigma(Problem::integration, param);
  const double prefactor =
      family == Family::hermite ? 1.0 : std::pow(1.0 + 4.0 * param * param, -0.25);
  // Spectral truncation: eigenvalue ratio of the space's own Mercer system.
  const SpectralSystem probe(spec, MultiIndexSet::tensor(1, 0));
  const double ratio = probe.axis_base(0);
  const int degree = std::clamp(static_cast<int>(std::ceil(std::log(1e-40) / std::log(ratio))),
                                2 * n_max + 8, hermite::kMaxDegree);
  const SpectralSystem sys(spec, MultiIndexSet::tensor(1, degree));

  std::vector<UnivariateDecayRow> rows(static_cast<std::size_t>(n_max));
  parallel_for(rows.size(), [&](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    QuadratureRule rule = gh_rule_on_space(n, KernelSpec::hermite({beta}));
    if (family == Family::gaussian) {
      const double sigma[] = {param};
      rule = transfer_quadrature_to_gaussian(rule, sigma);
    }
    rows[i].n = n;
    rows[i].error = wce_integration_spectral(rule, sys).value;
    rows[i].t4_lower = prefactor * 0.5 * std::pow(beta / 2.0, 2 * n) / ((n + 1.0) * (n + 1.0));
  });
  std::vector<double> x;
  std::vector<double> y;
  for (auto& row : rows) {
    x.push_back(row.n);
    y.push_back(std::log(row.error));
    row.rate_fit = x.size() < 2 ? std::numeric_limits<double>::quiet_NaN() : least_squares(x, y).slope;
  }
  return rows;
}

std::vector<TensorDecayRow> tensor_decay(std::span<const double> sigma, std::span<const double> eps) {
  const TransferConstants constants =
      TransferConstants::make(Problem::integration, std::vector<double>(sigma.begin(), sigma.end()));
  std::vector<TensorDecayRow> rows(eps.size());
  parallel_for(eps.size(), [&](std::size_t i) {
    const TensorChoice choice = tensor_rule_for_eps(eps[i], sigma, Family::gaussian);
    std::vector<hermite::QuadratureRule1D> factors;
    for (int n : choice.points) factors.push_back(hermite::gauss_hermite_rule(n));
    // The rule is the transferred twin of a product Gauss-Hermite rule, so
    // its error is the prefactor times the Hermite-side error.
    const TruncatedError hermite_error =
        wce_integration_product_hermite(factors, constants.beta, hermite::kMaxDegree);
    rows[i].eps = eps[i];
    rows[i].points = choice.points;
    rows[i].size = static_cast<std::size_t>(choice.rule.size());
    rows[i].error = constants.gauss_prefactor * hermite_error.value;
  });
  return rows;
}

std::vector<MdmRunRow> mdm_run(const InfiniteKernel& kernel, std::span<const double> budgets,
                               const CostModel& model, std::size_t trunc,
                               const MdmOptions& options) {
  std::vector<MdmRunRow> rows(budgets.size());
  parallel_for(budgets.size(), [&](std::size_t i) {
    const MdmPlan plan = mdm_build(kernel, budgets[i], model, options);
    const TruncatedError err = mdm_wce(plan, kernel, std::max(trunc, plan.dimension()));
    rows[i] = {budgets[i], plan.cost, err.value, err.tail_bound};
  });
  return rows;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string univariate_decay_csv(const std::vector<UnivariateDecayRow>& rows) {
  std::string out = "n,error,t4_lower,rate_fit\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + format_double(r.error) + ',' + format_double(r.t4_lower) +
           ',' + format_double(r.rate_fit) + '\n';
  }
  return out;
}

std::string tensor_decay_csv(const std::vector<TensorDecayRow>& rows) {
  std::string out = "eps,n_j,size,error\n";
  for (const auto& r : rows) {
    std::string choice;
    for (std::size_t j = 0; j < r.points.size(); ++j) {
      if (j > 0) choice += 'x';
      choice += std::to_string(r.points[j]);
    }
    out += format_double(r.eps) + ',' + choice + ',' + std::to_string(r.size) + ',' +
           format_double(r.error) + '\n';
  }
  return out;
}

std::string mdm_run_csv(const std::vector<MdmRunRow>& rows) {
  std::string out = "budget,cost,error,tail_bound\n";
  for (const auto& r : rows) {
    out += format_double(r.budget) + ',' + format_double(r.cost) + ',' + format_double(r.error) +
           ',' + format_double(r.tail_bound) + '\n';
  }
  return out;
}

}  // namespace rkhs
