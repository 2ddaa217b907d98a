#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace schur2 {

/// Weights, block indices and matrix entries are all 64-bit unsigned.
/// Arithmetic that could leave the representable range throws instead of
/// wrapping; exactness is non-negotiable in this library.
using Weight = std::uint64_t;

class overflow_error : public std::overflow_error {
 public:
  explicit overflow_error(const std::string& what)
      : std::overflow_error(what) {}
};

/// Violation of a proved combinatorial identity (or of an internal
/// invariant backed by one). These indicate a bug, never expected flow.
class invariant_error : public std::logic_error {
 public:
  explicit invariant_error(const std::string& what)
      : std::logic_error(what) {}
};

inline Weight checked_add(Weight a, Weight b) {
  Weight r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw overflow_error("checked_add: " + std::to_string(a) + " + " +
                         std::to_string(b) + " overflows 64 bits");
  return r;
}

inline Weight checked_sub(Weight a, Weight b) {
  if (b > a)
    throw overflow_error("checked_sub: " + std::to_string(a) + " - " +
                         std::to_string(b) + " underflows");
  return a - b;
}

inline Weight checked_mul(Weight a, Weight b) {
  Weight r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw overflow_error("checked_mul: " + std::to_string(a) + " * " +
                         std::to_string(b) + " overflows 64 bits");
  return r;
}

/// base^exp with overflow checking.
inline Weight checked_pow(Weight base, Weight exp) {
  Weight r = 1;
  for (Weight i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

inline bool is_prime(Weight n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (Weight d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline bool is_power_of_two(Weight n) { return n != 0 && (n & (n - 1)) == 0; }

#define SCHUR2_CHECK(cond, msg)                                   \
  do {                                                            \
    if (!(cond)) throw ::schur2::invariant_error(msg);            \
  } while (0)

}  // namespace schur2
