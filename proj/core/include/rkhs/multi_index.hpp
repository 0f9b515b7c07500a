#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace rkhs {

/// Finite, downward-closed set of d-dimensional multi-indices, stored in
/// lexicographic order.
class MultiIndexSet {
 public:
  using Index = std::vector<int>;

  /// Throws a shape error for ragged or negative entries and a domain error
  /// when the set is empty or not downward closed.
  MultiIndexSet(std::size_t dimension, std::vector<Index> indices);

  /// {nu : 0 <= nu_j <= max_degree for all j}.
  static MultiIndexSet tensor(std::size_t dimension, int max_degree);
  /// {nu : sum_j nu_j <= max_degree}.
  static MultiIndexSet total_degree(std::size_t dimension, int max_degree);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const Index& operator[](std::size_t k) const { return indices_[k]; }
  const std::vector<Index>& indices() const noexcept { return indices_; }

  std::optional<std::size_t> find(const Index& nu) const;
  bool contains(const Index& nu) const { return find(nu).has_value(); }

  /// Largest entry along coordinate j.
  int max_degree(std::size_t j) const { return max_degree_[j]; }

  /// Indices outside the set whose every predecessor lies inside; every index
  /// outside the set dominates one of them componentwise.
  std::vector<Index> outer_boundary() const;

  bool operator==(const MultiIndexSet& other) const {
    return dimension_ == other.dimension_ && indices_ == other.indices_;
  }

 private:
  std::size_t dimension_;
  std::vector<Index> indices_;
  std::map<Index, std::size_t> position_;
  std::vector<int> max_degree_;
};

}  // namespace rkhs
