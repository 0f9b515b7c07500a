#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>
#include <sstream>

#include "rkhs/error.hpp"

namespace rkhs::linalg {

Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& gram, const Eigen::MatrixXd& rhs) {
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  double condition = std::numeric_limits<double>::infinity();
  if (llt.info() == Eigen::Success) {
    const double rcond = llt.rcond();
    if (rcond > 0.0) condition = 1.0 / rcond;
  }
  if (!(condition <= kMaxCondition)) {
    std::ostringstream msg;
    msg << "Gram matrix of size " << gram.rows() << " is singular or ill-conditioned "
        << "(estimated 1-norm condition number " << condition << ", limit " << kMaxCondition
        << ")";
    throw Error(ErrorKind::conditioning, msg.str());
  }
  return llt.solve(rhs);
}

double spectral_norm(const Eigen::MatrixXd& matrix) {
  if (matrix.size() == 0) return 0.0;
  const Eigen::MatrixXd product = matrix.rows() <= matrix.cols()
                                      ? Eigen::MatrixXd(matrix * matrix.transpose())
                                      : Eigen::MatrixXd(matrix.transpose() * matrix);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(product, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical, "symmetric eigensolver did not converge");
  }
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double largest_singular_value(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                              const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply_t,
                              Eigen::Index cols, double rel_tol) {
  if (cols == 0) return 0.0;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd q(cols);
  for (Eigen::Index i = 0; i < cols; ++i) q(i) = unit(rng);
  q.normalize();

  const Eigen::Index max_steps = std::min<Eigen::Index>(cols, 400);
  Eigen::MatrixXd basis(cols, max_steps);
  std::vector<double> alpha;
  std::vector<double> beta;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < max_steps; ++k) {
    basis.col(k) = q;
    Eigen::VectorXd w = apply_t(apply(q));
    alpha.push_back(q.dot(w));
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
    }
    const double b = w.norm();

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorKind::numerical, "Lanczos tridiagonal eigensolver did not converge");
    }
    theta = solver.eigenvalues()(m - 1);
    const double residual = b * std::fabs(solver.eigenvectors()(m - 1, m - 1));
    if (residual <= rel_tol * std::fabs(theta) || b <= 1e-300) break;
    if (k + 1 == max_steps) {
      std::ostringstream msg;
      msg << "Lanczos did not converge in " << max_steps << " steps (residual " << residual
          << ", Ritz value " << theta << ")";
      throw Error(ErrorKind::numerical, msg.str());
    }
    beta.push_back(b);
    q = w / b;
  }
  return std::sqrt(std::max(0.0, theta));
}

}  // namespace rkhs::linalg
