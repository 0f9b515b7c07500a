#pragma once

#include <cstddef>
#include <vector>

#include "rkhs/hermite_basis.hpp"
#include "rkhs/types.hpp"

namespace rkhs {

/// Univariate rule sizes m_1 < m_2 < ... and a Smolyak level q.
class SmolyakLevels {
 public:
  SmolyakLevels(std::vector<int> schedule, int level);
  /// Schedule m_i = i for i = 1..level.
  static SmolyakLevels linear(int level);

  int level() const noexcept { return level_; }
  const std::vector<int>& schedule() const noexcept { return schedule_; }
  /// m_i for 1 <= i <= schedule().size().
  int size_at(int i) const;

 private:
  std::vector<int> schedule_;
  int level_;
};

/// One tensor term coeff * (x)_j B_{m_{index_j}} of the combination formula.
struct SmolyakTerm {
  std::vector<int> index;
  double coeff = 0.0;
};

/// Terms with q - k + 1 <= |i| <= q, last coordinate varying fastest.
std::vector<SmolyakTerm> smolyak_terms(std::size_t dimension, const SmolyakLevels& levels);

/// Combination-technique Smolyak rule over `dimension` coordinates built from
/// Gauss-Hermite rules: sum over q - k + 1 <= |i| <= q of
/// (-1)^{q-|i|} binom(k-1, q-|i|) (x)_j B_{m_{i_j}}, with exactly equal nodes
/// merged and exact-zero weights dropped. Nodes are sorted lexicographically.
QuadratureRule smolyak_rule(std::size_t dimension, const SmolyakLevels& levels);

/// Number of nodes of smolyak_rule(dimension, levels).
std::size_t smolyak_size(std::size_t dimension, const SmolyakLevels& levels);

/// Shared cache of Gauss-Hermite rules; thread-safe.
const hermite::QuadratureRule1D& cached_gauss_hermite_rule(int n);

}  // namespace rkhs
