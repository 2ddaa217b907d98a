#pragma once

#include <unordered_map>
#include <utility>

#include "schur2/sparse_row.hpp"
#include "schur2/weights.hpp"

namespace schur2 {

enum class RowKind { Decomposition, Tilting };

inline const char* to_string(RowKind k) {
  return k == RowKind::Decomposition ? "decomp" : "tilt";
}

/// Memoized rows of the classical multiplicity recursions for one prime:
/// Decomposition rows are the composition-factor supports of standard
/// modules, Tilting rows the standard-filtration supports of
/// indecomposable tilting modules, both over absolute classical weights.
///
/// The recursion, with m = p*m1 + j:
///   (i)   m <= p-1:                   {m}
///   (ii)  j == p-1 (m = p*m' - 1):    rows of m'-1, mapped u -> p(u+1)-1
///   (iii) 0 <= j <= p-2, m1 >= 1:
///           decomp:  {p*u + j : u in row(m1)} u {p*u + (p-2-j) : u in row(m1-1)}
///           tilting: {p(u+1)+j, p*u + (p-2-j) : u in row(m1-1)}
///
/// Every multiplicity these rows represent is 0 or 1; a step producing a
/// repeated weight throws invariant_error, in release builds too.
///
/// Rows for weights below memo_cap are cached; larger rows are rebuilt on
/// demand (their small descendants still hit the cache). The cap bounds
/// memory on property sweeps over random weights, where row supports grow
/// like a power of the weight. Tables only ever grow; there is no eviction.
class ClassicalRows {
 public:
  static constexpr Weight kDefaultMemoCap = Weight{1} << 14;

  ClassicalRows(Weight p, RowKind kind, Weight memo_cap = kDefaultMemoCap)
      : p_(p), kind_(kind), memo_cap_(memo_cap) {
    SCHUR2_CHECK(is_prime(p), "ClassicalRows: p must be prime");
  }

  Weight prime() const { return p_; }
  RowKind kind() const { return kind_; }
  std::size_t cached_rows() const { return memo_.size(); }

  SparseRow row(Weight m) {
    if (m < memo_cap_) {
      auto it = memo_.find(m);
      if (it != memo_.end()) return it->second;
      SparseRow r = compute(m);
      memo_.emplace(m, r);
      return r;
    }
    return compute(m);
  }

  /// Insert an externally provided row (persistent cache load). Returns
  /// false and keeps the table unchanged if the row fails cheap validity
  /// checks, so corrupted caches degrade to recomputation.
  bool seed(Weight m, SparseRow r) {
    if (m >= memo_cap_) return false;
    if (r.empty() || r.max() != m) return false;
    if (kind_ == RowKind::Tilting && !is_power_of_two(r.size())) return false;
    memo_.insert_or_assign(m, std::move(r));
    return true;
  }

  template <typename F>
  void for_each_cached(F&& f) const {
    for (const auto& [m, r] : memo_) f(m, r);
  }

 private:
  SparseRow compute(Weight m) {
    if (m <= p_ - 1) return SparseRow{m};
    Weight j = m % p_;
    Weight m1 = m / p_;
    SparseRow r;
    if (j == p_ - 1) {
      // Steinberg layer: twist the row of (m+1)/p - 1 by u -> p(u+1)-1.
      r = row(m1).affine(p_, p_ - 1);
    } else if (kind_ == RowKind::Decomposition) {
      r = SparseRow::disjoint_union(row(m1).affine(p_, j),
                                    row(m1 - 1).affine(p_, p_ - 2 - j));
    } else {
      SparseRow base = row(m1 - 1);
      std::vector<Weight> out;
      out.reserve(2 * base.size());
      for (Weight u : base) {
        out.push_back(checked_add(checked_mul(p_, u), p_ - 2 - j));
        out.push_back(checked_add(checked_mul(p_, checked_add(u, 1)), j));
      }
      r = SparseRow(std::move(out));  // ctor rejects any collision
    }
    SCHUR2_CHECK(r.max() == m, "classical row must be unitriangular");
    return r;
  }

  Weight p_;
  RowKind kind_;
  Weight memo_cap_;
  std::unordered_map<Weight, SparseRow> memo_;
};

}  // namespace schur2
