#include "rkhs/smolyak.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

#include "rkhs/error.hpp"
#include "rkhs/tensor.hpp"

namespace rkhs {

SmolyakLevels::SmolyakLevels(std::vector<int> schedule, int level)
    : schedule_(std::move(schedule)), level_(level) {
  if (schedule_.empty() || schedule_.front() < 1) {
    throw Error(ErrorKind::domain, "Smolyak schedule must start at m_1 >= 1");
  }
  for (std::size_t i = 1; i < schedule_.size(); ++i) {
    if (schedule_[i] <= schedule_[i - 1]) {
      throw Error(ErrorKind::domain, "Smolyak schedule must be strictly increasing");
    }
  }
  if (level_ < 1) throw Error(ErrorKind::domain, "Smolyak level must be positive");
}

SmolyakLevels SmolyakLevels::linear(int level) {
  if (level < 1) throw Error(ErrorKind::domain, "Smolyak level must be positive");
  std::vector<int> schedule(static_cast<std::size_t>(level));
  for (int i = 0; i < level; ++i) schedule[static_cast<std::size_t>(i)] = i + 1;
  return SmolyakLevels(std::move(schedule), level);
}

int SmolyakLevels::size_at(int i) const {
  if (i < 1 || static_cast<std::size_t>(i) > schedule_.size()) {
    throw Error(ErrorKind::domain, "Smolyak schedule has no entry m_" + std::to_string(i));
  }
  return schedule_[static_cast<std::size_t>(i - 1)];
}

const hermite::QuadratureRule1D& cached_gauss_hermite_rule(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<hermite::QuadratureRule1D>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<hermite::QuadratureRule1D>(hermite::gauss_hermite_rule(n));
  return *slot;
}

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Calls visit(i, coefficient) for every multi-index of the combination formula.
template <class Visit>
void for_each_term(std::size_t k, const SmolyakLevels& levels, Visit&& visit) {
  const int q = levels.level();
  const int dim = static_cast<int>(k);
  if (q < dim) {
    throw Error(ErrorKind::domain, "Smolyak level " + std::to_string(q) +
                                       " is below the dimension " + std::to_string(dim));
  }
  const int top = q - dim + 1;
  if (static_cast<std::size_t>(top) > levels.schedule().size()) {
    throw Error(ErrorKind::domain, "Smolyak schedule too short for level " + std::to_string(q));
  }
  std::vector<int> idx(k, 1);
  int sum = dim;
  while (true) {
    if (sum >= q - dim + 1) {
      const int gap = q - sum;
      const double coeff = (gap % 2 == 0 ? 1.0 : -1.0) * binomial(dim - 1, gap);
      visit(idx, coeff);
    }
    // Next multi-index with |idx| <= q, last coordinate fastest.
    std::size_t j = k;
    while (j > 0) {
      --j;
      if (sum < q) {
        ++idx[j];
        ++sum;
        break;
      }
      sum -= idx[j] - 1;
      idx[j] = 1;
      if (j == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace

std::vector<SmolyakTerm> smolyak_terms(std::size_t dimension, const SmolyakLevels& levels) {
  if (dimension == 0) throw Error(ErrorKind::shape, "Smolyak rule needs |u| >= 1");
  std::vector<SmolyakTerm> terms;
  for_each_term(dimension, levels, [&](const std::vector<int>& idx, double coeff) {
    terms.push_back({idx, coeff});
  });
  return terms;
}

std::size_t smolyak_size(std::size_t dimension, const SmolyakLevels& levels) {
  return static_cast<std::size_t>(smolyak_rule(dimension, levels).size());
}

QuadratureRule smolyak_rule(std::size_t dimension, const SmolyakLevels& levels) {
  if (dimension == 0) throw Error(ErrorKind::shape, "Smolyak rule needs |u| >= 1");
  double raw = 0.0;
  for_each_term(dimension, levels, [&](const std::vector<int>& idx, double) {
    double n = 1.0;
    for (int i : idx) n *= levels.size_at(i);
    raw += n;
  });
  if (raw > kRuleBudget) {
    std::ostringstream msg;
    msg << "Smolyak rule would combine " << raw << " nodes, budget is " << kRuleBudget;
    throw Error(ErrorKind::budget, msg.str());
  }

  std::map<std::vector<double>, double> merged;
  std::vector<const hermite::QuadratureRule1D*> factors(dimension);
  std::vector<std::size_t> digit(dimension);
  std::vector<double> node(dimension);
  for_each_term(dimension, levels, [&](const std::vector<int>& idx, double coeff) {
    for (std::size_t j = 0; j < dimension; ++j) {
      factors[j] = &cached_gauss_hermite_rule(levels.size_at(idx[j]));
      digit[j] = 0;
    }
    while (true) {
      double w = coeff;
      for (std::size_t j = 0; j < dimension; ++j) {
        node[j] = factors[j]->nodes[digit[j]];
        w *= factors[j]->weights[digit[j]];
      }
      merged[node] += w;
      std::size_t j = dimension;
      while (j > 0) {
        --j;
        if (++digit[j] < factors[j]->size()) break;
        digit[j] = 0;
        if (j == 0) return;
      }
    }
  });

  std::size_t kept = 0;
  for (const auto& [x, w] : merged) kept += (w != 0.0);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<Eigen::Index>(kept), static_cast<Eigen::Index>(dimension));
  rule.weights.resize(static_cast<Eigen::Index>(kept));
  Eigen::Index i = 0;
  for (const auto& [x, w] : merged) {
    if (w == 0.0) continue;
    for (std::size_t j = 0; j < dimension; ++j) rule.nodes(i, static_cast<Eigen::Index>(j)) = x[j];
    rule.weights(i) = w;
    ++i;
  }
  return rule;
}

}  // namespace rkhs
