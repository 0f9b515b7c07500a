#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <doctest.h>

#include "rkhs/error.hpp"

#define CHECK_ERROR_KIND(expr, expected_kind)                  \
  do {                                                         \
    bool thrown_ = false;                                      \
    try {                                                      \
      (void)(expr);                                            \
    } catch (const rkhs::Error& e) {                           \
      thrown_ = true;                                          \
      CHECK_MESSAGE(e.kind() == (expected_kind), e.what());    \
    }                                                          \
    CHECK_MESSAGE(thrown_, "expected an rkhs::Error: " #expr); \
  } while (false)

namespace testing {

inline bool close(double a, double b, double rel, double abs = 0.0) {
  return std::fabs(a - b) <= std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
}

// Probabilists' Hermite polynomial from its explicit monomial expansion,
// divided by sqrt(n!).
inline double hermite_monomial(int n, double x) {
  double sum = 0.0;
  for (int m = 0; 2 * m <= n; ++m) {
    sum += std::pow(-1.0, m) * std::pow(x, n - 2 * m) /
           (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0) * std::pow(2.0, m));
  }
  return sum * std::sqrt(std::tgamma(n + 1.0));
}

// Mehler kernel written out directly.
inline double mehler(double b, double x, double y) {
  return std::exp(-(b * b * (x * x + y * y) - 2.0 * b * x * y) / (2.0 * (1.0 - b * b))) /
         std::sqrt(1.0 - b * b);
}

// Standard-normal integral by the composite trapezoid rule on [-12, 12].
inline double normal_integral(const std::function<double(double)>& f, int panels = 4000) {
  const double h = 24.0 / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double x = -12.0 + h * i;
    const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
    sum += w * f(x) * std::exp(-0.5 * x * x);
  }
  return sum * h / std::sqrt(2.0 * M_PI);
}

}  // namespace testing
