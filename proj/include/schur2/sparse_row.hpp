#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "schur2/common.hpp"

namespace schur2 {

/// A row of a 0/1 multiplicity matrix: the strictly increasing list of
/// indices carrying a 1. All multiplicities inside a block are 0 or 1;
/// any operation that would produce a repeated index throws, since a
/// duplicate would mean a multiplicity of 2 and falsify that fact.
class SparseRow {
 public:
  SparseRow() = default;

  explicit SparseRow(std::vector<Weight> indices) : indices_(std::move(indices)) {
    for (std::size_t i = 1; i < indices_.size(); ++i)
      SCHUR2_CHECK(indices_[i - 1] < indices_[i],
                   "SparseRow: indices not strictly increasing");
  }

  SparseRow(std::initializer_list<Weight> indices)
      : SparseRow(std::vector<Weight>(indices)) {}

  bool contains(Weight v) const {
    return std::binary_search(indices_.begin(), indices_.end(), v);
  }

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  Weight min() const { return indices_.front(); }
  Weight max() const { return indices_.back(); }

  const std::vector<Weight>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool operator==(const SparseRow& other) const = default;

  /// Entries strictly below `bound` (rows embed in larger blocks; columns
  /// and Cartan products are what truncation actually cuts).
  SparseRow truncated(Weight bound) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), bound);
    return SparseRow(std::vector<Weight>(indices_.begin(), it));
  }

  /// Entries within [lo, hi).
  SparseRow slice(Weight lo, Weight hi) const {
    auto l = std::lower_bound(indices_.begin(), indices_.end(), lo);
    auto h = std::lower_bound(indices_.begin(), indices_.end(), hi);
    return SparseRow(std::vector<Weight>(l, h));
  }

  /// v -> a*v + b, entrywise. Order is preserved; overflow is checked.
  SparseRow affine(Weight a, Weight b) const {
    std::vector<Weight> out;
    out.reserve(indices_.size());
    for (Weight v : indices_) out.push_back(checked_add(checked_mul(a, v), b));
    return SparseRow(std::move(out));
  }

  /// Merge of two disjoint rows; a common index is an invariant violation.
  static SparseRow disjoint_union(const SparseRow& a, const SparseRow& b) {
    std::vector<Weight> out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      SCHUR2_CHECK(*ia != *ib,
                   "disjoint_union: duplicate index " + std::to_string(*ia) +
                       " (multiplicity would exceed 1)");
      out.push_back(*ia < *ib ? *ia++ : *ib++);
    }
    out.insert(out.end(), ia, a.end());
    out.insert(out.end(), ib, b.end());
    return SparseRow(std::move(out));
  }

  std::size_t intersection_size(const SparseRow& other) const {
    std::size_t n = 0;
    auto ia = begin(), ib = other.begin();
    while (ia != end() && ib != other.end()) {
      if (*ia < *ib)
        ++ia;
      else if (*ib < *ia)
        ++ib;
      else
        ++n, ++ia, ++ib;
    }
    return n;
  }

 private:
  std::vector<Weight> indices_;
};

}  // namespace schur2
