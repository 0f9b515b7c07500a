#include "rkhs/multi_index.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "rkhs/error.hpp"

namespace rkhs {

MultiIndexSet::MultiIndexSet(std::size_t dimension, std::vector<Index> indices)
    : dimension_(dimension), indices_(std::move(indices)), max_degree_(dimension, 0) {
  if (dimension_ == 0) throw Error(ErrorKind::shape, "multi-index dimension must be positive");
  if (indices_.empty()) throw Error(ErrorKind::domain, "multi-index set must not be empty");
  for (const Index& nu : indices_) {
    if (nu.size() != dimension_) {
      throw Error(ErrorKind::shape, "multi-index of length " + std::to_string(nu.size()) +
                                        " in a set of dimension " + std::to_string(dimension_));
    }
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (nu[j] < 0) throw Error(ErrorKind::shape, "multi-index entries must be non-negative");
      max_degree_[j] = std::max(max_degree_[j], nu[j]);
    }
  }
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  for (std::size_t k = 0; k < indices_.size(); ++k) position_.emplace(indices_[k], k);
  for (const Index& nu : indices_) {
    Index pred = nu;
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (nu[j] == 0) continue;
      --pred[j];
      if (!position_.contains(pred)) {
        throw Error(ErrorKind::domain, "multi-index set is not downward closed");
      }
      ++pred[j];
    }
  }
}

MultiIndexSet MultiIndexSet::tensor(std::size_t dimension, int max_degree) {
  std::vector<Index> out;
  Index nu(dimension, 0);
  while (true) {
    out.push_back(nu);
    std::size_t j = 0;
    while (j < dimension && nu[j] == max_degree) nu[j++] = 0;
    if (j == dimension) break;
    ++nu[j];
  }
  return MultiIndexSet(dimension, std::move(out));
}

MultiIndexSet MultiIndexSet::total_degree(std::size_t dimension, int max_degree) {
  std::vector<Index> out;
  Index nu(dimension, 0);
  while (true) {
    int total = 0;
    for (int v : nu) total += v;
    if (total <= max_degree) out.push_back(nu);
    std::size_t j = 0;
    while (j < dimension && nu[j] == max_degree) nu[j++] = 0;
    if (j == dimension) break;
    ++nu[j];
  }
  return MultiIndexSet(dimension, std::move(out));
}

std::optional<std::size_t> MultiIndexSet::find(const Index& nu) const {
  const auto it = position_.find(nu);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::vector<MultiIndexSet::Index> MultiIndexSet::outer_boundary() const {
  std::set<Index> boundary;
  for (const Index& nu : indices_) {
    Index next = nu;
    for (std::size_t j = 0; j < dimension_; ++j) {
      ++next[j];
      if (!position_.contains(next)) boundary.insert(next);
      --next[j];
    }
  }
  return {boundary.begin(), boundary.end()};
}

}  // namespace rkhs
