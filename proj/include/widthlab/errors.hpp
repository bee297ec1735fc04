#pragma once

#include <stdexcept>
#include <string>

namespace widthlab {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: dimension mismatch, exponent out of range, nonpositive radius.
class domain_error : public error {
 public:
  using error::error;
};

// The hypotheses of a theorem (or of one of its regimes) do not hold.
class regime_error : public error {
 public:
  using error::error;
};

class unsupported_pair_error : public error {
 public:
  using error::error;
};

// Numerical oracle asked to work above the configured dimension cap.
class desk_scale_error : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  using error::error;
};

// An internal consistency check failed. Indicates a bug, not bad input.
class internal_error : public error {
 public:
  using error::error;
};

}  // namespace widthlab
