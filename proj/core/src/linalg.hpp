#pragma once

#include <functional>

#include <Eigen/Dense>

namespace rkhs::linalg {

/// Largest reciprocal-condition violation accepted by spd_solve.
inline constexpr double kMaxCondition = 1e14;

/// Solves G X = B for symmetric positive definite G by Cholesky, without any
/// regularization. Throws a conditioning error, naming the estimated
/// condition number, when the factorization fails or cond(G) > kMaxCondition.
Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& gram, const Eigen::MatrixXd& rhs);

/// Largest singular value, from the dense symmetric eigenvalues of the
/// smaller Gram product.
double spectral_norm(const Eigen::MatrixXd& matrix);

/// Largest singular value of an operator A given by products x -> A x and
/// y -> A^T y, by Lanczos iteration on A^T A with full reorthogonalization.
/// The result never exceeds the true value (Ritz values interlace) and stops
/// once the Ritz residual falls below `rel_tol` times the Ritz value.
double largest_singular_value(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                              const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply_t,
                              Eigen::Index cols, double rel_tol = 1e-14);

}  // namespace rkhs::linalg
