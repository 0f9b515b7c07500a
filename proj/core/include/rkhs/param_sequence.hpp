#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "rkhs/kernels.hpp"

namespace rkhs {

/// Generator for an infinite parameter sequence indexed by coordinate
/// i = 0, 1, 2, ... (coordinate i carries the one-based label j = i + 1).
///
/// Two shapes are supported: power decay scale * j^(-p) and geometric decay
/// scale * r^j with 0 < r < 1.
class SequenceRule {
 public:
  enum class Kind { power, geometric };

  static SequenceRule power(double exponent, double scale = 1.0);
  static SequenceRule geometric(double ratio, double scale = 1.0);

  /// Parses "j^-p", "c*j^-p", "r^j" or "c*r^j".
  static SequenceRule parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double rate() const noexcept { return rate_; }
  double scale() const noexcept { return scale_; }

  double value(std::size_t i) const;

  /// Rigorous upper bound on sum_{i >= start} value(i)^q; +inf when divergent.
  double tail_power_sum(std::size_t start, double q) const;

  std::string to_string() const;

 private:
  SequenceRule(Kind kind, double rate, double scale);

  Kind kind_;
  double rate_;
  double scale_;
};

/// Tensor kernel over infinitely many coordinates, given by a family and a
/// parameter generator. Gaussian rules must be square summable, Hermite rules
/// summable with every entry in (0, 1).
class InfiniteKernel {
 public:
  InfiniteKernel(Family family, SequenceRule rule);

  Family family() const noexcept { return family_; }
  const SequenceRule& rule() const noexcept { return rule_; }
  double param(std::size_t i) const { return rule_.value(i); }

  /// Finite kernel over coordinates 0 .. count-1.
  KernelSpec prefix(std::size_t count) const;

 private:
  Family family_;
  SequenceRule rule_;
};

}  // namespace rkhs
