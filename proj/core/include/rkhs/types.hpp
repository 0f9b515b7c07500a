#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace rkhs {

/// Univariate kernel family of a tensor-product kernel.
enum class Family { gaussian, hermite };

/// Which worst-case problem an error or constant refers to.
enum class Problem { integration, approximation };

std::string_view to_string(Family family) noexcept;
std::string_view to_string(Problem problem) noexcept;

using Point = std::span<const double>;

/// Real function of a point.
using Function = std::function<double(Point)>;

/// One node per row; row-major so that a row is a contiguous Point.
using NodeMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Point node_row(const NodeMatrix& nodes, Eigen::Index i) {
  return {nodes.data() + i * nodes.cols(), static_cast<std::size_t>(nodes.cols())};
}

/// Node matrix plus real weights: A(f) = sum_i a_i f(x_i).
struct QuadratureRule {
  NodeMatrix nodes;
  Eigen::VectorXd weights;

  Eigen::Index size() const noexcept { return nodes.rows(); }
  Eigen::Index dimension() const noexcept { return nodes.cols(); }
};

inline std::string_view to_string(Family family) noexcept {
  return family == Family::gaussian ? "gaussian" : "hermite";
}

inline std::string_view to_string(Problem problem) noexcept {
  return problem == Problem::integration ? "integration" : "approximation";
}

}  // namespace rkhs
