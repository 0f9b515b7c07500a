#pragma once

#include <span>
#include <vector>

#include "rkhs/kernels.hpp"
#include "rkhs/types.hpp"
#include "rkhs/worst_case.hpp"

namespace rkhs {

/// Per-coordinate constants linking a Gaussian space H(L_sigma) to its Hermite
/// twin H(K_beta) for one problem. `tau` and `e` are only set for integration.
struct TransferConstants {
  Problem problem = Problem::integration;
  std::vector<double> sigma;
  std::vector<double> beta;
  std::vector<double> c;
  std::vector<double> tau;
  std::vector<double> e;
  /// Product of the per-coordinate ratios e(A, L) / e(B, K).
  double gauss_prefactor = 1.0;

  static TransferConstants make(Problem problem, std::vector<double> sigma);

  KernelSpec gaussian_spec() const { return KernelSpec::gaussian(sigma); }
  KernelSpec hermite_spec() const { return KernelSpec::hermite(beta); }
};

/// integration: 2 sigma^2 / (1 + 2 sigma^2);
/// approximation: 1 - 2 / (1 + sqrt(1 + 8 sigma^2)).
double beta_from_sigma(Problem problem, double sigma);
double sigma_from_beta(Problem problem, double beta);

/// phi_c(x) = exp(-sum_j (c_j^2 - 1) x_j^2 / 4).
double phi_c(std::span<const double> c, Point x);

/// (Q_c f)(x) = (prod c_j)^{1/2} phi_c(x) f(c x).
double q_c_apply(std::span<const double> c, const Function& f, Point x);
/// (Q_c^{-1} g)(y) = (prod c_j)^{-1/2} g(y / c) / phi_c(y / c).
double q_c_inverse_apply(std::span<const double> c, const Function& g, Point y);

/// Twin rule B on the Hermite space with e(A, L_sigma) = prefactor * e(B, K_beta):
/// nodes e o x_i, weights (prod e_j) exp(-sum_j sigma_j^2 x_ij^2 / (1 + 2 sigma_j^2)) a_i.
QuadratureRule transfer_quadrature_to_hermite(const QuadratureRule& rule,
                                              std::span<const double> sigma);
/// Inverse of transfer_quadrature_to_hermite.
QuadratureRule transfer_quadrature_to_gaussian(const QuadratureRule& rule,
                                               std::span<const double> sigma);

/// Twin sampling method B = Q_c^{-1} A Q_c on the Hermite space. `gaussian`
/// must be a Gaussian system and `hermite` the Hermite system with the
/// matching (approximation) base parameters and the same index set. Nodes map
/// to c o x_i; row i of the coefficient table picks up the factor
/// (prod c_j)^{1/2} phi_c(x_i) of (Q_c g)(x_i) = ... g(c x_i).
SamplingMethod transfer_sampling_to_hermite(const SamplingMethod& method,
                                            const SpectralSystem& gaussian,
                                            const SpectralSystem& hermite);
SamplingMethod transfer_sampling_to_gaussian(const SamplingMethod& method,
                                             const SpectralSystem& gaussian,
                                             const SpectralSystem& hermite);

/// Cross-check for transfer_sampling_to_hermite: evaluates each
/// b_i = (prod c_j)^{1/2} phi_c(x_i) Q_c^{-1} a_i pointwise and projects it
/// onto the Hermite basis by tensor Gauss-Hermite quadrature with
/// `points_per_axis` nodes.
SamplingMethod transfer_sampling_to_hermite_by_projection(const SamplingMethod& method,
                                                          const SpectralSystem& gaussian,
                                                          const SpectralSystem& hermite,
                                                          int points_per_axis);

}  // namespace rkhs
