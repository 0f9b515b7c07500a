#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace rkhs::hermite {

/// Largest polynomial degree accepted by the recurrences.
inline constexpr int kMaxDegree = 512;
/// Largest Gauss-Hermite rule size.
inline constexpr int kMaxRuleSize = 256;

/// Gauss-Hermite rule for the standard normal distribution.
///
/// Nodes are strictly increasing and exactly antisymmetric
/// (node[i] == -node[n-1-i]); weights are positive and sum to one.
struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Probabilists' Hermite polynomial of degree `nu`, normalized in L2 of the
/// standard normal distribution, via the three-term recurrence
/// h_{k+1}(x) = (x h_k(x) - sqrt(k) h_{k-1}(x)) / sqrt(k+1).
double hermite_normalized(int nu, double x);

/// (h_0(x), ..., h_{nu_max}(x)) in one recurrence pass. Entries agree
/// bitwise with hermite_normalized.
std::vector<double> hermite_row(int nu_max, double x);

/// Same as hermite_row, writing into `out` (resized to nu_max + 1).
void hermite_row(int nu_max, double x, std::vector<double>& out);

/// The n-point Gauss-Hermite rule, exact for polynomials of degree <= 2n-1.
QuadratureRule1D gauss_hermite_rule(int n);

/// sum_k w_k f(x_k) over the n-point rule. Throws an evaluation error when f
/// returns a non-finite value at a node.
double integrate_gh(const std::function<double(double)>& f, int n);

/// Symmetric tridiagonal eigenvalues by implicit-shift QL.
///
/// `diagonal` has length n, `offdiagonal` length n-1 (entry i couples i and
/// i+1). Returns eigenvalues sorted ascending; when `first_components` is
/// non-null it receives the first component of each normalized eigenvector in
/// matching order.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diagonal,
                                            std::vector<double> offdiagonal,
                                            std::vector<double>* first_components = nullptr);

}  // namespace rkhs::hermite
