#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schur2/common.hpp"

namespace schur2 {

/// Base-p leading part of n+1: the unique pair with digit in 1..p-1 and
/// digit*p^exponent <= n+1 < (digit+1)*p^exponent. Equivalently, exponent
/// is one less than the number of base-p digits of n+1 and digit is its
/// leading digit.
struct LeadingPart {
  Weight digit;     // c, 1 <= c <= p-1
  Weight exponent;  // k
  Weight power;     // p^k

  bool operator==(const LeadingPart&) const = default;
};

inline LeadingPart leading_part(Weight n, Weight p) {
  Weight np1 = checked_add(n, 1);
  Weight pk = 1;
  Weight k = 0;
  while (pk <= np1 / p) {
    pk *= p;
    ++k;
  }
  return LeadingPart{np1 / pk, k, pk};
}

/// The socle map on classical weights: with n = c*p^k + n0 for the
/// canonical leading part (so -1 <= n0 <= p^k - 2), returns c*p^k - 2 - n0,
/// i.e. 2*c*p^k - n - 2. Fixed points are exactly the n with n+1 = c*p^k.
inline Weight sigma_bar(Weight n, Weight p) {
  LeadingPart lp = leading_part(n, p);
  Weight cpk = lp.digit * lp.power;  // <= n+1, no overflow
  return checked_sub(checked_mul(2, cpk), checked_add(n, 2));
}

/// The order-reversing bijection I_c -> I_{c-1} on block indices at level
/// k: m = c*p^k + m0 with 0 <= m0 < p^k maps to c*p^k - m0 - 1. Undefined
/// on I_0 (c = 0), which is an error rather than a sentinel.
inline Weight sigma_index(Weight m, Weight k, Weight p) {
  Weight pk = checked_pow(p, k);
  if (m < pk)
    throw std::invalid_argument(
        "sigma_index: index " + std::to_string(m) + " lies in I_0 at level " +
        std::to_string(k) + " (sigma is undefined there)");
  Weight c = m / pk;
  return checked_sub(checked_mul(2, checked_mul(c, pk)), checked_add(m, 1));
}

/// Trailing-digit stripping: t is maximal with m = -1 (mod p^t), and
/// reduced = (m+1)/p^t - 1 satisfies reduced != -1 (mod p).
struct StripResult {
  Weight t;
  Weight reduced;

  bool operator==(const StripResult&) const = default;
};

inline StripResult strip_trailing(Weight m, Weight p) {
  Weight x = checked_add(m, 1);
  Weight t = 0;
  while (x % p == 0) {
    x /= p;
    ++t;
  }
  return StripResult{t, x - 1};
}

/// Classical standard module of weight n is simple iff n+1 = c*p^k for
/// some digit c, i.e. iff sigma_bar fixes n.
inline bool is_simple_standard_classical(Weight n, Weight p) {
  LeadingPart lp = leading_part(n, p);
  return lp.digit * lp.power == checked_add(n, 1);
}

/// Quantum standard module of weight n is simple iff n <= ell-1, or
/// n+1 = ell*a*p^k with a in 2..p — equivalently n+1 = ell*u where
/// u >= 2 and the classical weight u-1 is sigma_bar-fixed.
inline bool is_simple_standard_quantum(Weight n, Weight ell, Weight p) {
  if (n <= ell - 1) return true;
  Weight np1 = checked_add(n, 1);
  if (np1 % ell != 0) return false;
  Weight u = np1 / ell;
  return u >= 2 && is_simple_standard_classical(u - 1, p);
}

enum class Variant { Classical, Quantum };

inline const char* to_string(Variant v) {
  return v == Variant::Classical ? "classical" : "quantum";
}

/// Identifies a block of S(2,r) or S_q(2,r): the modular parameters, the
/// residue of its lowest weight, and the number of simple modules. The
/// multiplicity matrices depend only on (p, size); variant, ell and
/// lowest materialize absolute weights and drive linkage identification.
struct BlockSpec {
  Variant variant = Variant::Classical;
  Weight p = 2;
  Weight ell = 2;     // quantum only; classical uses p in its place
  Weight lowest = 0;  // residue i of the lowest weight, 0 <= i <= period-2
  Weight size = 1;    // number of simple modules, >= 1

  static BlockSpec classical(Weight p, Weight lowest, Weight size) {
    return BlockSpec{Variant::Classical, p, p, lowest, size};
  }
  static BlockSpec quantum(Weight p, Weight ell, Weight lowest, Weight size) {
    return BlockSpec{Variant::Quantum, p, ell, lowest, size};
  }

  /// ell for quantum blocks, p for classical ones.
  Weight period() const { return variant == Variant::Quantum ? ell : p; }

  /// The paired residue: i + ibar = period - 2.
  Weight cobar() const { return period() - 2 - lowest; }

  /// True when i == ibar (even period), so both parities of index carry
  /// the same residue.
  bool residues_coincide() const { return lowest == cobar(); }

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (!is_prime(p)) out.push_back("p = " + std::to_string(p) + " is not prime");
    if (variant == Variant::Quantum) {
      if (ell < 2) out.push_back("ell = " + std::to_string(ell) + " must be >= 2");
      else if (ell % p == 0)
        out.push_back("p = " + std::to_string(p) + " divides ell = " +
                      std::to_string(ell));
    }
    Weight per = period();
    if (per >= 2 && lowest > per - 2)
      out.push_back("lowest = " + std::to_string(lowest) +
                    " exceeds period - 2 = " + std::to_string(per - 2));
    if (size < 1) out.push_back("size must be >= 1");
    return out;
  }

  void ensure_valid() const {
    auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid block parameters:";
    for (const auto& s : v) msg += "\n  - " + s;
    throw std::invalid_argument(msg);
  }

  /// Residue carried by index m: lowest for even m, its pair for odd m.
  Weight residue_of_index(Weight m) const {
    return m % 2 == 0 ? lowest : cobar();
  }

  /// Absolute weight of block index m: period*m + residue_of_index(m).
  Weight weight_of_index(Weight m) const {
    if (m >= size)
      throw std::invalid_argument("weight_of_index: index " + std::to_string(m) +
                                  " out of range for block of size " +
                                  std::to_string(size));
    return checked_add(checked_mul(period(), m), residue_of_index(m));
  }

  /// Inverse of weight_of_index; rejects weights not lying in the block.
  Weight index_of_weight(Weight w) const {
    Weight per = period();
    Weight m = w / per;
    Weight res = w % per;
    if (m >= size || res != residue_of_index(m))
      throw std::invalid_argument("index_of_weight: weight " + std::to_string(w) +
                                  " does not lie in this block");
    return m;
  }

  bool operator==(const BlockSpec&) const = default;
};

}  // namespace schur2
