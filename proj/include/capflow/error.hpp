// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace capflow {

/// Failure categories shared by the C++ core and the C API.
enum class ErrorKind {
  domain,        // argument outside the mathematical domain
  cone,          // curvature vector outside the required Garding cone
  parabolicity,  // capillary denominator V0 - cos(theta)<Y,nu> not positive
  convexity,     // principal curvatures lost positivity
  numerical,     // non-finite values, Newton failure
  validation,    // input data violates a modelling hypothesis
  io,            // file format or filesystem problem
  usage,         // invalid configuration value
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::cone: return "cone";
    case ErrorKind::parabolicity: return "parabolicity";
    case ErrorKind::convexity: return "convexity";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::validation: return "validation";
    case ErrorKind::io: return "io";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace capflow
