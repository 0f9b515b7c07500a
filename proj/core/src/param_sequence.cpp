#include "rkhs/param_sequence.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "rkhs/error.hpp"

namespace rkhs {

namespace {

double parse_number(std::string_view text, std::string_view whole) {
  std::string buffer(text);
  char* end = nullptr;
  const double value = std::strtod(buffer.c_str(), &end);
  if (buffer.empty() || end != buffer.c_str() + buffer.size()) {
    throw Error(ErrorKind::usage, "cannot parse number '" + buffer + "' in sequence rule '" +
                                      std::string(whole) + "'");
  }
  return value;
}

}  // namespace

SequenceRule::SequenceRule(Kind kind, double rate, double scale)
    : kind_(kind), rate_(rate), scale_(scale) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw Error(ErrorKind::domain, "sequence scale must be positive and finite");
  }
  if (kind_ == Kind::power && !(rate_ > 0.0)) {
    throw Error(ErrorKind::domain, "power-decay exponent must be positive");
  }
  if (kind_ == Kind::geometric && !(rate_ > 0.0 && rate_ < 1.0)) {
    throw Error(ErrorKind::domain, "geometric ratio must lie in (0, 1)");
  }
}

SequenceRule SequenceRule::power(double exponent, double scale) {
  return SequenceRule(Kind::power, exponent, scale);
}

SequenceRule SequenceRule::geometric(double ratio, double scale) {
  return SequenceRule(Kind::geometric, ratio, scale);
}

SequenceRule SequenceRule::parse(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (ch != ' ') compact.push_back(ch);
  }
  std::string_view body = compact;
  double scale = 1.0;
  if (const auto star = body.find('*'); star != std::string_view::npos) {
    scale = parse_number(body.substr(0, star), text);
    body = body.substr(star + 1);
  }
  if (body.starts_with("j^")) {
    return power(-parse_number(body.substr(2), text), scale);
  }
  if (body.ends_with("^j")) {
    return geometric(parse_number(body.substr(0, body.size() - 2), text), scale);
  }
  throw Error(ErrorKind::usage, "sequence rule '" + std::string(text) +
                                    "' is neither 'j^-p' nor 'r^j' (optionally 'c*' prefixed)");
}

double SequenceRule::value(std::size_t i) const {
  const double j = static_cast<double>(i + 1);
  if (kind_ == Kind::power) return scale_ * std::pow(j, -rate_);
  return scale_ * std::pow(rate_, j);
}

double SequenceRule::tail_power_sum(std::size_t start, double q) const {
  const double scale_q = std::pow(scale_, q);
  if (kind_ == Kind::geometric) {
    const double rq = std::pow(rate_, q);
    return scale_q * std::pow(rate_, q * static_cast<double>(start + 1)) / (1.0 - rq);
  }
  const double a = rate_ * q;
  if (a <= 1.0) return std::numeric_limits<double>::infinity();
  // j^{-a} <= integral_{j-1}^{j} x^{-a} dx for j >= 2.
  if (start == 0) return scale_q * (1.0 + 1.0 / (a - 1.0));
  return scale_q * std::pow(static_cast<double>(start), 1.0 - a) / (a - 1.0);
}

std::string SequenceRule::to_string() const {
  std::ostringstream out;
  out.precision(17);
  if (scale_ != 1.0) out << scale_ << '*';
  if (kind_ == Kind::power) {
    out << "j^" << -rate_;
  } else {
    out << rate_ << "^j";
  }
  return out.str();
}

InfiniteKernel::InfiniteKernel(Family family, SequenceRule rule)
    : family_(family), rule_(rule) {
  if (family_ == Family::gaussian) {
    if (!std::isfinite(rule_.tail_power_sum(0, 2.0))) {
      throw Error(ErrorKind::domain, "Gaussian shape sequence " + rule_.to_string() +
                                         " is not square summable");
    }
  } else {
    if (!std::isfinite(rule_.tail_power_sum(0, 1.0))) {
      throw Error(ErrorKind::domain,
                  "Hermite base sequence " + rule_.to_string() + " is not summable");
    }
    // The sequence is non-increasing, so the first entry bounds all others.
    if (!(rule_.value(0) < 1.0)) {
      throw Error(ErrorKind::domain,
                  "Hermite base sequence " + rule_.to_string() + " has entries >= 1");
    }
  }
}

KernelSpec InfiniteKernel::prefix(std::size_t count) const {
  std::vector<double> params(count);
  for (std::size_t i = 0; i < count; ++i) params[i] = rule_.value(i);
  return KernelSpec::make(family_, std::move(params));
}

}  // namespace rkhs
