#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rkhs {

/// Category of a library failure. Every thrown rkhs::Error carries one.
enum class ErrorKind {
  unsupported_degree,
  unsupported_size,
  numerical,
  evaluation,
  shape,
  domain,
  conditioning,
  budget,
  consistency,
  insufficient_data,
  usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::unsupported_degree: return "unsupported-degree";
    case ErrorKind::unsupported_size: return "unsupported-size";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::evaluation: return "evaluation";
    case ErrorKind::shape: return "shape";
    case ErrorKind::domain: return "domain";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::budget: return "budget";
    case ErrorKind::consistency: return "numerical-consistency";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

}  // namespace rkhs
