#include "rkhs/mdm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "rkhs/error.hpp"
#include "rkhs/smolyak.hpp"
#include "rkhs/transference.hpp"

namespace rkhs {

double anchored_component_eval(const Function& f, std::span<const std::size_t> u, Point x) {
  if (u.size() > kMaxAnchoredOrder) {
    throw Error(ErrorKind::budget, "anchored component of order " + std::to_string(u.size()) +
                                       " exceeds the limit " +
                                       std::to_string(kMaxAnchoredOrder));
  }
  std::vector<double> point(x.begin(), x.end());
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (point[j] != 0.0 && std::find(u.begin(), u.end(), j) == u.end()) {
      throw Error(ErrorKind::domain, "point is non-zero on coordinate " + std::to_string(j) +
                                         " outside u");
    }
  }
  for (std::size_t j : u) {
    if (j >= point.size()) throw Error(ErrorKind::shape, "coordinate outside the point");
  }
  const std::size_t k = u.size();
  double sum = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    int dropped = 0;
    for (std::size_t l = 0; l < k; ++l) {
      const bool keep = (mask >> l) & 1u;
      point[u[l]] = keep ? x[u[l]] : 0.0;
      dropped += keep ? 0 : 1;
    }
    const double value = f(point);
    sum += (dropped % 2 == 0) ? value : -value;
  }
  return sum;
}

namespace {

// Nodes of the |u|-variate Smolyak rule with every coordinate non-zero; the
// others never contribute to B_u(f_u).
struct LocalRule {
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  std::size_t full_size = 0;
};

const LocalRule& local_rule(std::size_t k, int level) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, std::unique_ptr<LocalRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{k, level}];
  if (!slot) {
    const QuadratureRule rule = smolyak_rule(k, SmolyakLevels::linear(level));
    slot = std::make_unique<LocalRule>();
    slot->full_size = static_cast<std::size_t>(rule.size());
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
      const Point z = node_row(rule.nodes, i);
      if (std::any_of(z.begin(), z.end(), [](double v) { return v == 0.0; })) continue;
      slot->nodes.emplace_back(z.begin(), z.end());
      slot->weights.push_back(rule.weights(i));
    }
  }
  return *slot;
}

// Sparse point (coordinate, value) pairs packed into bytes, used as a hash key.
using NodeKey = std::string;

NodeKey make_key(const std::vector<std::pair<std::size_t, double>>& entries) {
  NodeKey key(entries.size() * (sizeof(std::uint64_t) + sizeof(double)), '\0');
  char* out = key.data();
  for (const auto& [j, v] : entries) {
    const auto coord = static_cast<std::uint64_t>(j);
    std::memcpy(out, &coord, sizeof coord);
    out += sizeof coord;
    std::memcpy(out, &v, sizeof v);
    out += sizeof v;
  }
  return key;
}

std::vector<std::pair<std::size_t, double>> decode_key(const NodeKey& key) {
  std::vector<std::pair<std::size_t, double>> entries(key.size() /
                                                      (sizeof(std::uint64_t) + sizeof(double)));
  const char* in = key.data();
  for (auto& [j, v] : entries) {
    std::uint64_t coord = 0;
    std::memcpy(&coord, in, sizeof coord);
    in += sizeof coord;
    std::memcpy(&v, in, sizeof v);
    in += sizeof v;
    j = static_cast<std::size_t>(coord);
  }
  return entries;
}

struct Projection {
  NodeKey key;
  std::size_t active = 0;
  double weight = 0.0;
};

// Every (z_v, 0) with v a non-empty subset of u, z a node of B_u, weighted by
// (-1)^{|u \ v|} w_z. Duplicates within one set are merged.
std::vector<Projection> projections(const Coords& u, int level) {
  const LocalRule& rule = local_rule(u.size(), level);
  const std::size_t k = u.size();
  std::unordered_map<NodeKey, std::size_t> position;
  std::vector<Projection> out;
  std::vector<std::pair<std::size_t, double>> entries;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      entries.clear();
      for (std::size_t l = 0; l < k; ++l) {
        if ((mask >> l) & 1u) entries.emplace_back(u[l], rule.nodes[i][l]);
      }
      const double sign = (k - entries.size()) % 2 == 0 ? 1.0 : -1.0;
      NodeKey key = make_key(entries);
      auto [it, inserted] = position.emplace(key, out.size());
      if (inserted) {
        out.push_back({std::move(key), entries.size(), sign * rule.weights[i]});
      } else {
        out[it->second].weight += sign * rule.weights[i];
      }
    }
  }
  return out;
}

double anchor_weight(const Coords& u, int level) {
  const LocalRule& rule = local_rule(u.size(), level);
  double sum = 0.0;
  for (double w : rule.weights) sum += w;
  return u.size() % 2 == 0 ? sum : -sum;
}

void check_sets(const std::vector<Coords>& sets, const std::vector<int>& levels) {
  if (sets.size() != levels.size()) {
    throw Error(ErrorKind::shape, "one Smolyak level per active set required");
  }
  std::set<Coords> seen;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const Coords& u = sets[s];
    if (u.empty()) throw Error(ErrorKind::domain, "active sets must be non-empty");
    if (u.size() > kMaxAnchoredOrder) {
      throw Error(ErrorKind::budget, "active set of order " + std::to_string(u.size()) +
                                         " exceeds the limit " +
                                         std::to_string(kMaxAnchoredOrder));
    }
    if (!std::is_sorted(u.begin(), u.end()) ||
        std::adjacent_find(u.begin(), u.end()) != u.end()) {
      throw Error(ErrorKind::domain, "active set coordinates must be strictly increasing");
    }
    if (!seen.insert(u).second) throw Error(ErrorKind::domain, "duplicate active set");
    if (levels[s] < static_cast<int>(u.size())) {
      throw Error(ErrorKind::domain, "Smolyak level below |u|");
    }
  }
}

}  // namespace

MdmPlan mdm_plan(std::vector<Coords> active_sets, std::vector<int> levels, const CostModel& model,
                 bool dedup_anchor) {
  check_sets(active_sets, levels);
  std::size_t dim = 1;
  for (const Coords& u : active_sets) dim = std::max(dim, u.back() + 1);

  std::vector<double> anchors{1.0};
  std::map<NodeKey, std::pair<std::size_t, double>> merged;
  MdmPlan plan;
  for (std::size_t s = 0; s < active_sets.size(); ++s) {
    const Coords& u = active_sets[s];
    plan.budgets.push_back(local_rule(u.size(), levels[s]).full_size);
    const double a = anchor_weight(u, levels[s]);
    if (dedup_anchor) {
      anchors.front() += a;
    } else {
      anchors.push_back(a);
    }
    for (Projection& p : projections(u, levels[s])) {
      auto [it, inserted] = merged.emplace(std::move(p.key), std::make_pair(p.active, p.weight));
      if (!inserted) it->second.second += p.weight;
    }
  }

  const auto rows = static_cast<Eigen::Index>(anchors.size() + merged.size());
  plan.flattened.nodes = NodeMatrix::Zero(rows, static_cast<Eigen::Index>(dim));
  plan.flattened.weights.resize(rows);
  Eigen::Index row = 0;
  for (double a : anchors) plan.flattened.weights(row++) = a;
  for (const auto& [key, entry] : merged) {
    for (const auto& [j, v] : decode_key(key)) plan.flattened.nodes(row, static_cast<Eigen::Index>(j)) = v;
    plan.flattened.weights(row++) = entry.second;
  }
  plan.active_sets = std::move(active_sets);
  plan.levels = std::move(levels);
  plan.dedup_anchor = dedup_anchor;
  plan.cost = rule_cost(plan.flattened, model);
  return plan;
}

namespace {

struct Candidate {
  int next_level = 0;
  double benefit = 0.0;
  double delta_cost = 0.0;
  bool valid = false;
  std::vector<Projection> next_nodes;
};

class Planner {
 public:
  Planner(const InfiniteKernel& kernel, const CostModel& model, const MdmOptions& options)
      : kernel_(kernel), model_(model), options_(options) {}

  MdmPlan run(double budget) {
    const double anchor = model_.evaluation_cost(0);
    if (!(budget >= anchor)) {
      std::ostringstream msg;
      msg << "budget " << budget << " is below the anchor evaluation cost " << anchor;
      throw Error(ErrorKind::budget, msg.str());
    }
    cost_ = anchor;
    add_candidate({0});
    while (true) {
      const Coords* best = nullptr;
      double best_ratio = -1.0;
      for (auto& [u, cand] : candidates_) {
        if (!cand.valid) evaluate(u, cand);
        if (cost_ + cand.delta_cost > budget) continue;
        const double ratio = cand.delta_cost > 0.0 ? cand.benefit / cand.delta_cost
                                                   : std::numeric_limits<double>::infinity();
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best = &u;
        }
      }
      if (best == nullptr) break;
      const Coords chosen = *best;
      apply(chosen);
    }
    std::vector<Coords> sets;
    std::vector<int> levels;
    for (const auto& [u, q] : levels_) {
      sets.push_back(u);
      levels.push_back(q);
    }
    MdmPlan plan = mdm_plan(std::move(sets), std::move(levels), model_, options_.dedup_anchor);
    if (std::fabs(plan.cost - cost_) > 1e-9 * std::max(1.0, cost_)) {
      std::ostringstream msg;
      msg << "planner cost " << cost_ << " disagrees with the flattened rule cost " << plan.cost;
      throw Error(ErrorKind::consistency, msg.str());
    }
    return plan;
  }

 private:
  double beta(std::size_t j) const {
    const double p = kernel_.param(j);
    return kernel_.family() == Family::hermite ? p : beta_from_sigma(Problem::integration, p);
  }

  double predicted_error(const Coords& u, int level) const {
    double score = 1.0;
    double r = 0.0;
    for (std::size_t j : u) {
      score *= beta(j);
      r = std::max(r, beta(j));
    }
    const int k = static_cast<int>(u.size());
    if (level < 2 * k) return score;
    return score * std::pow(r, level - 2 * k + 1);
  }

  void add_candidate(const Coords& u) {
    Candidate cand;
    auto it = levels_.find(u);
    const int current = it == levels_.end() ? 0 : it->second;
    cand.next_level = current == 0 ? 2 * static_cast<int>(u.size()) : current + 1;
    cand.benefit = predicted_error(u, current == 0 ? 0 : current) -
                   predicted_error(u, cand.next_level);
    candidates_[u] = std::move(cand);
  }

  void evaluate(const Coords& u, Candidate& cand) {
    cand.next_nodes = projections(u, cand.next_level);
    std::unordered_set<NodeKey> old_keys;
    auto it = levels_.find(u);
    double delta = 0.0;
    if (it != levels_.end()) {
      for (Projection& p : projections(u, it->second)) old_keys.insert(std::move(p.key));
    } else if (!options_.dedup_anchor) {
      delta += model_.evaluation_cost(0);
    }
    for (const Projection& p : cand.next_nodes) {
      if (old_keys.erase(p.key) > 0) continue;
      if (refcount_.find(p.key) == refcount_.end()) delta += model_.evaluation_cost(p.active);
    }
    for (const NodeKey& key : old_keys) {
      if (refcount_.at(key).count == 1) delta -= model_.evaluation_cost(refcount_.at(key).active);
    }
    cand.delta_cost = delta;
    cand.valid = true;
  }

  void apply(const Coords& u) {
    Candidate cand = std::move(candidates_.at(u));
    auto it = levels_.find(u);
    const bool fresh = it == levels_.end();
    if (!fresh) {
      for (const Projection& p : projections(u, it->second)) release(p.key);
    }
    for (const Projection& p : cand.next_nodes) acquire(p.key, p.active);
    cost_ += cand.delta_cost;
    levels_[u] = cand.next_level;

    for (auto& [v, other] : candidates_) {
      if (intersects(u, v)) other.valid = false;
    }
    add_candidate(u);
    if (fresh) {
      if (u.size() == 1 && u.front() + 1 < options_.max_coordinates) add_candidate({u.front() + 1});
      extend(u);
    }
  }

  // Sets u + {j} all of whose |u|-subsets are now active.
  void extend(const Coords& u) {
    for (const auto& [single, q] : levels_) {
      if (single.size() != 1) continue;
      const std::size_t j = single.front();
      if (std::binary_search(u.begin(), u.end(), j)) continue;
      Coords w = u;
      w.insert(std::upper_bound(w.begin(), w.end(), j), j);
      if (w.size() > kMaxAnchoredOrder || levels_.count(w) || candidates_.count(w)) continue;
      bool ready = true;
      for (std::size_t drop = 0; drop < w.size() && ready; ++drop) {
        Coords sub;
        for (std::size_t l = 0; l < w.size(); ++l) {
          if (l != drop) sub.push_back(w[l]);
        }
        ready = levels_.count(sub) > 0;
      }
      if (ready) add_candidate(w);
    }
  }

  static bool intersects(const Coords& a, const Coords& b) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return true;
      if (a[i] < b[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return false;
  }

  struct Usage {
    std::size_t count = 0;
    std::size_t active = 0;
  };

  void acquire(const NodeKey& key, std::size_t active) {
    Usage& usage = refcount_[key];
    ++usage.count;
    usage.active = active;
  }

  void release(const NodeKey& key) {
    auto it = refcount_.find(key);
    if (--it->second.count == 0) refcount_.erase(it);
  }

  const InfiniteKernel& kernel_;
  const CostModel& model_;
  MdmOptions options_;
  double cost_ = 0.0;
  std::map<Coords, int> levels_;
  std::map<Coords, Candidate> candidates_;
  std::unordered_map<NodeKey, Usage> refcount_;
};

}  // namespace

MdmPlan mdm_build(const InfiniteKernel& kernel, double budget, const CostModel& model,
                  const MdmOptions& options) {
  return Planner(kernel, model, options).run(budget);
}

double mdm_apply(const MdmPlan& plan, const Function& f) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < plan.flattened.size(); ++i) {
    const double w = plan.flattened.weights(i);
    const double value = f(node_row(plan.flattened.nodes, i));
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::evaluation, "integrand is not finite at flattened node " +
                                             std::to_string(i));
    }
    sum += w * value;
  }
  return sum;
}

double mdm_apply_components(const MdmPlan& plan, const Function& f) {
  const std::size_t dim = plan.dimension();
  std::vector<double> x(dim, 0.0);
  double sum = f(x);
  for (std::size_t s = 0; s < plan.active_sets.size(); ++s) {
    const Coords& u = plan.active_sets[s];
    const LocalRule& rule = local_rule(u.size(), plan.levels[s]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      std::fill(x.begin(), x.end(), 0.0);
      for (std::size_t l = 0; l < u.size(); ++l) x[u[l]] = rule.nodes[i][l];
      sum += rule.weights[i] * anchored_component_eval(f, u, x);
    }
  }
  return sum;
}

namespace {

// Per-coordinate kernel quantities of the factorized error formula. Each
// B_u(f_u) is a sum of tensor terms c (x)_{j in u} D_{j,m} with
// D_{j,m} = R_m - s_m delta_0, R_m the m-point Gauss-Hermite rule and s_m its
// weight sum; every other coordinate carries delta_0.
class CoordinateTable {
 public:
  CoordinateTable(Family family, double param) : family_(family), param_(param) {
    ii_ = kernels::univariate_double_integral(family, param);
    m0_ = kernels::univariate_mean_embedding(family, param, 0.0);
    k00_ = kernels::univariate_kernel(family, param, 0.0, 0.0);
  }

  double ii() const { return ii_; }
  double m0() const { return m0_; }
  double k00() const { return k00_; }

  // D(m) / m(0)
  double mean_ratio(int m) {
    auto it = mean_.find(m);
    if (it != mean_.end()) return it->second;
    const auto& rule = cached_gauss_hermite_rule(m);
    double sum = 0.0;
    for (std::size_t a = 0; a < rule.size(); ++a) {
      sum += rule.weights[a] * kernels::univariate_mean_embedding(family_, param_, rule.nodes[a]);
    }
    const double value = (sum - weight_sum(m) * m0_) / m0_;
    mean_.emplace(m, value);
    return value;
  }

  // (D x delta_0)(K) / K(0, 0)
  double single_ratio(int m) {
    auto it = single_.find(m);
    if (it != single_.end()) return it->second;
    const double value = (row_sum(m) - weight_sum(m) * k00_) / k00_;
    single_.emplace(m, value);
    return value;
  }

  // (D_m x D_m')(K) / K(0, 0)
  double pair_ratio(int m, int mp) {
    if (m > mp) std::swap(m, mp);
    const auto key = std::make_pair(m, mp);
    auto it = pair_.find(key);
    if (it != pair_.end()) return it->second;
    const auto& r = cached_gauss_hermite_rule(m);
    const auto& s = cached_gauss_hermite_rule(mp);
    double full = 0.0;
    for (std::size_t a = 0; a < r.size(); ++a) {
      double row = 0.0;
      for (std::size_t b = 0; b < s.size(); ++b) {
        row += s.weights[b] * kernels::univariate_kernel(family_, param_, r.nodes[a], s.nodes[b]);
      }
      full += r.weights[a] * row;
    }
    const double sm = weight_sum(m);
    const double smp = weight_sum(mp);
    const double value = (full - smp * row_sum(m) - sm * row_sum(mp) + sm * smp * k00_) / k00_;
    pair_.emplace(key, value);
    return value;
  }

 private:
  double weight_sum(int m) const {
    const auto& rule = cached_gauss_hermite_rule(m);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    return sum;
  }

  double row_sum(int m) const {
    const auto& rule = cached_gauss_hermite_rule(m);
    double sum = 0.0;
    for (std::size_t a = 0; a < rule.size(); ++a) {
      sum += rule.weights[a] * kernels::univariate_kernel(family_, param_, rule.nodes[a], 0.0);
    }
    return sum;
  }

  Family family_;
  double param_;
  double ii_ = 0.0;
  double m0_ = 0.0;
  double k00_ = 0.0;
  std::map<int, double> mean_;
  std::map<int, double> single_;
  std::map<std::pair<int, int>, double> pair_;
};

struct Term {
  Coords coords;
  std::vector<int> sizes;
  double coeff = 0.0;
};

std::vector<Term> plan_terms(const MdmPlan& plan) {
  std::vector<Term> terms;
  for (std::size_t s = 0; s < plan.active_sets.size(); ++s) {
    const Coords& u = plan.active_sets[s];
    const SmolyakLevels levels = SmolyakLevels::linear(plan.levels[s]);
    for (const SmolyakTerm& t : smolyak_terms(u.size(), levels)) {
      // A one-point factor is delta_0, so its difference vanishes.
      if (std::any_of(t.index.begin(), t.index.end(), [](int i) { return i == 1; })) continue;
      Term term{u, {}, t.coeff};
      for (int i : t.index) term.sizes.push_back(levels.size_at(i));
      terms.push_back(std::move(term));
    }
  }
  return terms;
}

// Sums of the factorized formula relative to the anchor-only rule:
// A(m) = M * linear, (A x A)(K) = K * quadratic with M, K the products of
// m_j(0) and K_j(0, 0).
struct FactorSums {
  double linear = 1.0;
  double quadratic = 1.0;
};

FactorSums factor_sums(const MdmPlan& plan, std::vector<CoordinateTable>& table) {
  const std::vector<Term> terms = plan_terms(plan);
  FactorSums sums;
  std::vector<double> single(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    double lin = terms[k].coeff;
    double sgl = terms[k].coeff;
    for (std::size_t l = 0; l < terms[k].coords.size(); ++l) {
      CoordinateTable& t = table[terms[k].coords[l]];
      lin *= t.mean_ratio(terms[k].sizes[l]);
      sgl *= t.single_ratio(terms[k].sizes[l]);
    }
    sums.linear += lin;
    sums.quadratic += 2.0 * sgl;
    single[k] = sgl;
  }
  for (std::size_t a = 0; a < terms.size(); ++a) {
    const Term& p = terms[a];
    double row = 0.0;
    for (std::size_t b = 0; b <= a; ++b) {
      const Term& q = terms[b];
      double value = p.coeff * q.coeff;
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < p.coords.size() || j < q.coords.size()) {
        if (j == q.coords.size() || (i < p.coords.size() && p.coords[i] < q.coords[j])) {
          value *= table[p.coords[i]].single_ratio(p.sizes[i]);
          ++i;
        } else if (i == p.coords.size() || q.coords[j] < p.coords[i]) {
          value *= table[q.coords[j]].single_ratio(q.sizes[j]);
          ++j;
        } else {
          value *= table[p.coords[i]].pair_ratio(p.sizes[i], q.sizes[j]);
          ++i;
          ++j;
        }
      }
      row += b == a ? value : 2.0 * value;
    }
    sums.quadratic += row;
  }
  return sums;
}

double clamp_error(double e2) {
  if (e2 < -kNegativeVarianceTolerance) {
    throw Error(ErrorKind::consistency, "mdm_wce: negative squared error " + std::to_string(e2));
  }
  return std::sqrt(std::max(0.0, e2));
}

}  // namespace

TruncatedError mdm_wce(const MdmPlan& plan, const KernelSpec& spec) {
  if (spec.dimension() < plan.dimension()) {
    throw Error(ErrorKind::shape, "kernel has fewer coordinates than the plan");
  }
  std::vector<CoordinateTable> table;
  double ii = 1.0;
  double mm = 1.0;
  double kk = 1.0;
  for (std::size_t j = 0; j < spec.dimension(); ++j) {
    table.emplace_back(spec.family(), spec.param(j));
    ii *= table.back().ii();
    mm *= table.back().m0();
    kk *= table.back().k00();
  }
  const FactorSums sums = factor_sums(plan, table);
  return {clamp_error(ii - 2.0 * mm * sums.linear + kk * sums.quadratic), 0.0};
}

TruncatedError mdm_wce(const MdmPlan& plan, const InfiniteKernel& kernel, std::size_t trunc) {
  if (trunc < plan.dimension()) {
    throw Error(ErrorKind::shape, "plan uses coordinate " + std::to_string(plan.dimension() - 1) +
                                      " beyond the truncation " + std::to_string(trunc));
  }
  std::vector<CoordinateTable> table;
  double ii = 1.0;
  double mm = 1.0;
  double kk = 1.0;
  for (std::size_t j = 0; j < trunc; ++j) {
    table.emplace_back(kernel.family(), kernel.param(j));
    ii *= table.back().ii();
    mm *= table.back().m0();
    kk *= table.back().k00();
  }
  const FactorSums sums = factor_sums(plan, table);
  const double linear = mm * sums.linear;
  const double quadratic = kk * sums.quadratic;
  const double e2 = ii - 2.0 * linear + quadratic;

  // Omitted coordinates multiply II by a, M by m and K by k. Gaussian: k = 1,
  // 1 - m <= 1 - exp(-S) and m^2 <= a <= m^2 exp(2 S4) with S, S4 the tail
  // sums of sigma_j^2 and sigma_j^4, so the change of e^2,
  // II (a - 1) - 2 A(m) (m - 1) = 2 (m - 1) (II - A(m)) + II (a - 2m + 1),
  // is bounded by 2 (1 - m) |II - A(m)| + II ((1 - m)^2 + m^2 expm1(2 S4)).
  // Hermite: a = m = 1 and 0 <= ln k <= S / (2 (1 - b^2)) with S the tail sum
  // of beta_j^2 and b the largest omitted beta_j.
  const double tail_sum = kernel.rule().tail_power_sum(trunc, 2.0);
  double delta = 0.0;
  if (kernel.family() == Family::gaussian) {
    const double gap = -std::expm1(-tail_sum);
    const double quartic = kernel.rule().tail_power_sum(trunc, 4.0);
    delta = 2.0 * gap * std::fabs(ii - linear) + ii * (gap * gap + std::expm1(2.0 * quartic));
  } else {
    const double b = kernel.param(trunc);
    delta = std::fabs(quadratic) * std::expm1(0.5 * tail_sum / (1.0 - b * b));
  }
  TruncatedError out;
  out.value = clamp_error(e2);
  out.tail_bound = out.value > 0.0 ? std::min(std::sqrt(delta), delta / out.value) : std::sqrt(delta);
  return out;
}

}  // namespace rkhs
