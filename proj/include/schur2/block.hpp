#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "schur2/classical.hpp"

namespace schur2 {

/// Factorization of a full block size w = a*p^k with 2 <= a <= p. Sizes
/// not of this form (including w = 1) have no shape.
struct BlockShape {
  Weight a;
  Weight k;
  Weight pk;  // p^k

  bool operator==(const BlockShape&) const = default;
};

inline std::optional<BlockShape> full_block_shape(Weight w, Weight p) {
  Weight x = w;
  Weight t = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++t;
  }
  if (x == 1 && t >= 1) return BlockShape{p, t - 1, w / p};
  if (x >= 2 && x <= p - 1) return BlockShape{x, t, checked_pow(p, t)};
  return std::nullopt;
}

inline BlockShape require_full_block_shape(Weight w, Weight p) {
  auto s = full_block_shape(w, p);
  if (!s)
    throw std::invalid_argument("block size " + std::to_string(w) +
                                " is not of the form a*p^k with 2 <= a <= " +
                                std::to_string(p));
  return *s;
}

/// Interval of index m at level k (intervals partition a block of size
/// a*p^k into a runs of p^k consecutive indices).
inline Weight interval_of(Weight m, Weight pk) { return m / pk; }

/// The block-index rows of the decomposition and tilting matrices for one
/// prime. Blocks of every size share these rows: the matrix of a block
/// with w simple modules is the leading w x w submatrix (rows are lower
/// unitriangular, so no column truncation is ever needed), and classical
/// and quantum blocks of equal size have identical matrices.
///
/// Row m of the decomposition matrix is the union of the classical rows
/// of m and m-1; row m of the tilting matrix is the union of {u, u+1}
/// over the classical tilting row of m-1.
class BlockTable {
 public:
  explicit BlockTable(Weight p, Weight memo_cap = ClassicalRows::kDefaultMemoCap)
      : p_(p),
        memo_cap_(memo_cap),
        cdec_(p, RowKind::Decomposition, memo_cap),
        ctil_(p, RowKind::Tilting, memo_cap) {}

  Weight prime() const { return p_; }
  ClassicalRows& classical_decomp() { return cdec_; }
  ClassicalRows& classical_tilt() { return ctil_; }

  SparseRow decomp_row(Weight m) { return cached(dmemo_, m, RowKind::Decomposition); }
  SparseRow tilt_row(Weight m) { return cached(tmemo_, m, RowKind::Tilting); }

 private:
  SparseRow cached(std::unordered_map<Weight, SparseRow>& memo, Weight m,
                   RowKind kind) {
    if (m < memo_cap_) {
      auto it = memo.find(m);
      if (it != memo.end()) return it->second;
      SparseRow r = compute(m, kind);
      memo.emplace(m, r);
      return r;
    }
    return compute(m, kind);
  }

  SparseRow compute(Weight m, RowKind kind) {
    if (m == 0) return SparseRow{0};
    if (kind == RowKind::Decomposition)
      return SparseRow::disjoint_union(cdec_.row(m), cdec_.row(m - 1));
    SparseRow base = ctil_.row(m - 1);
    std::vector<Weight> out;
    out.reserve(2 * base.size());
    for (Weight u : base) {
      out.push_back(u);
      out.push_back(checked_add(u, 1));
    }
    return SparseRow(std::move(out));
  }

  Weight p_;
  Weight memo_cap_;
  ClassicalRows cdec_;
  ClassicalRows ctil_;
  std::unordered_map<Weight, SparseRow> dmemo_;
  std::unordered_map<Weight, SparseRow> tmemo_;
};

/// Square sparse 0/1 matrix over block indices 0..size-1.
struct MultiplicityMatrix {
  Weight size = 0;
  std::vector<SparseRow> rows;

  bool entry(Weight m, Weight n) const { return rows[m].contains(n); }

  SparseRow column(Weight n) const {
    std::vector<Weight> out;
    for (Weight s = n; s < size; ++s)  // lower triangular: support starts at n
      if (rows[s].contains(n)) out.push_back(s);
    return SparseRow(std::move(out));
  }

  bool operator==(const MultiplicityMatrix&) const = default;
};

/// Dense symmetric matrix of small nonnegative integers (Cartan data).
struct IntMatrix {
  Weight size = 0;
  std::vector<std::uint64_t> data;

  explicit IntMatrix(Weight n = 0) : size(n), data(n * n, 0) {}

  std::uint64_t& at(Weight m, Weight n) { return data[m * size + n]; }
  std::uint64_t at(Weight m, Weight n) const { return data[m * size + n]; }

  bool operator==(const IntMatrix&) const = default;
};

/// Dense Cartan-type matrices are materialized only up to this size;
/// beyond it use cartan_entry / ringel_cartan_entry on sparse rows.
inline constexpr Weight kDenseCartanLimit = 4096;

namespace detail {

/// Per-row invariant checks run during matrix assembly. The intrinsic
/// interval of index m (leading base-p digit c of m, level k) bounds the
/// support: row m lives in I_{c-1} u I_c, and the socle index
/// sigma_bar(m-1) always carries a 1.
inline void validate_decomp_row(const SparseRow& r, Weight m, Weight p) {
  SCHUR2_CHECK(!r.empty() && r.max() == m,
               "decomposition row " + std::to_string(m) + " must end at its diagonal");
  if (m == 0) return;
  SCHUR2_CHECK(r.contains(sigma_bar(m - 1, p)),
               "decomposition row " + std::to_string(m) + " misses its socle entry");
  LeadingPart lp = leading_part(m - 1, p);  // c*p^k <= m < (c+1)*p^k
  Weight lower = (lp.digit - 1) * lp.power;
  SCHUR2_CHECK(r.min() >= lower, "decomposition row " + std::to_string(m) +
                                     " escapes its interval pair");
}

inline void validate_tilt_row(const SparseRow& r, Weight m, Weight p) {
  SCHUR2_CHECK(!r.empty() && r.max() == m,
               "tilting row " + std::to_string(m) + " must end at its diagonal");
  SCHUR2_CHECK(is_power_of_two(r.size()),
               "tilting row " + std::to_string(m) + " has non-power-of-2 support");
  if (m > 0)
    SCHUR2_CHECK(r.min() == sigma_bar(m - 1, p),
                 "tilting row " + std::to_string(m) + " must start at sigma(m)");
}

}  // namespace detail

/// Assemble the decomposition matrix of a block. Validates the spec and
/// the per-row invariants, and round-trips every index through the
/// absolute-weight maps of the given block.
inline MultiplicityMatrix decomp_matrix(BlockTable& table, const BlockSpec& spec) {
  spec.ensure_valid();
  SCHUR2_CHECK(table.prime() == spec.p, "block table prime does not match spec");
  MultiplicityMatrix out;
  out.size = spec.size;
  out.rows.reserve(spec.size);
  for (Weight m = 0; m < spec.size; ++m) {
    SparseRow r = table.decomp_row(m);
    detail::validate_decomp_row(r, m, table.prime());
    SCHUR2_CHECK(spec.index_of_weight(spec.weight_of_index(m)) == m,
                 "weight/index maps disagree");
    out.rows.push_back(std::move(r));
  }
  return out;
}

inline MultiplicityMatrix tilt_matrix(BlockTable& table, const BlockSpec& spec) {
  spec.ensure_valid();
  SCHUR2_CHECK(table.prime() == spec.p, "block table prime does not match spec");
  MultiplicityMatrix out;
  out.size = spec.size;
  out.rows.reserve(spec.size);
  for (Weight m = 0; m < spec.size; ++m) {
    SparseRow r = table.tilt_row(m);
    detail::validate_tilt_row(r, m, table.prime());
    out.rows.push_back(std::move(r));
  }
  return out;
}

/// Gram matrix sum_v v (x) v over the given sparse vectors.
inline IntMatrix gram(const std::vector<SparseRow>& vectors, Weight size) {
  IntMatrix out(size);
  for (const SparseRow& v : vectors)
    for (Weight m : v)
      for (Weight n : v) ++out.at(m, n);
  return out;
}

inline std::vector<SparseRow> transpose_rows(const std::vector<SparseRow>& rows,
                                             Weight size) {
  std::vector<std::vector<Weight>> cols(size);
  for (Weight m = 0; m < size; ++m)
    for (Weight n : rows[m]) cols[n].push_back(m);
  std::vector<SparseRow> out;
  out.reserve(size);
  for (auto& c : cols) out.emplace_back(std::move(c));
  return out;
}

/// Cartan matrix C = D^T D of the block of size w: C(m,n) counts the s < w
/// with d(s,m) = d(s,n) = 1.
inline IntMatrix cartan_matrix(BlockTable& table, Weight w) {
  if (w > kDenseCartanLimit)
    throw std::invalid_argument("cartan_matrix: size " + std::to_string(w) +
                                " exceeds dense limit " +
                                std::to_string(kDenseCartanLimit) +
                                "; use cartan_entry");
  std::vector<SparseRow> rows;
  rows.reserve(w);
  for (Weight s = 0; s < w; ++s) rows.push_back(table.decomp_row(s));
  return gram(rows, w);
}

/// Ringel-dual Cartan matrix C' = T T^T: C'(m,n) counts the common
/// standard quotients of the tilting rows m and n.
inline IntMatrix ringel_cartan_matrix(BlockTable& table, Weight w) {
  if (w > kDenseCartanLimit)
    throw std::invalid_argument("ringel_cartan_matrix: size " + std::to_string(w) +
                                " exceeds dense limit " +
                                std::to_string(kDenseCartanLimit) +
                                "; use ringel_cartan_entry");
  std::vector<SparseRow> rows;
  rows.reserve(w);
  for (Weight m = 0; m < w; ++m) rows.push_back(table.tilt_row(m));
  return gram(transpose_rows(rows, w), w);
}

/// Single Cartan entries from sparse rows, for sizes past the dense limit.
inline std::uint64_t cartan_entry(BlockTable& table, Weight w, Weight m, Weight n) {
  std::uint64_t total = 0;
  for (Weight s = std::max(m, n); s < w; ++s) {
    SparseRow r = table.decomp_row(s);
    if (r.contains(m) && r.contains(n)) ++total;
  }
  return total;
}

inline std::uint64_t ringel_cartan_entry(BlockTable& table, Weight w, Weight m,
                                         Weight n) {
  (void)w;
  return table.tilt_row(m).intersection_size(table.tilt_row(n));
}

/// Standard quotients of the projective cover of L(mu) in the block of
/// size w: the mu-column of the decomposition matrix, truncated to the
/// block. Projective covers genuinely depend on w.
inline SparseRow projective_column(BlockTable& table, Weight w, Weight mu) {
  if (mu >= w)
    throw std::invalid_argument("projective_column: index out of range");
  std::vector<Weight> out;
  for (Weight s = mu; s < w; ++s)
    if (table.decomp_row(s).contains(mu)) out.push_back(s);
  return SparseRow(std::move(out));
}

/// Image of an indecomposable projective under the torsion functor for
/// the canonical projective-injective generator of a block of size a*p^k.
struct TorsionImage {
  enum class Tag { FullProjective, Tilting, Simple, Unsupported };

  Tag tag = Tag::Unsupported;
  std::optional<Weight> index;  // tilting/simple index when determined

  bool operator==(const TorsionImage&) const = default;
};

/// For lambda outside the top interval, t(P) = P is itself the tilting
/// module with the inverse-sigma index. In the top interval, the maximal
/// weight maps to the simple socle index; for a = 2 the remaining images
/// are tilting modules; for a > 2 they are not characterized here.
inline TorsionImage torsion_image(Weight lambda, Weight w, Weight p) {
  BlockShape shape = require_full_block_shape(w, p);
  if (lambda >= w)
    throw std::invalid_argument("torsion_image: index out of range");
  Weight d = interval_of(lambda, shape.pk);
  if (d + 2 <= shape.a) {
    // P(lambda) is projective-injective: tilting index is the sigma-partner
    // one interval up, 2(d+1)p^k - 1 - lambda.
    Weight partner =
        checked_sub(checked_mul(2, checked_mul(d + 1, shape.pk)), lambda + 1);
    return TorsionImage{TorsionImage::Tag::FullProjective, partner};
  }
  if (lambda == w - 1)
    return TorsionImage{TorsionImage::Tag::Simple, sigma_index(lambda, shape.k, p)};
  if (shape.a == 2)
    return TorsionImage{TorsionImage::Tag::Tilting, sigma_index(lambda, shape.k, p)};
  return TorsionImage{TorsionImage::Tag::Unsupported, std::nullopt};
}

}  // namespace schur2
