#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "schur2/block.hpp"

namespace schur2 {

/// Which Schur algebra family the whole-algebra operations act on.
struct SchurParams {
  Variant variant = Variant::Classical;
  Weight p = 2;
  Weight ell = 2;  // quantum only

  static SchurParams classical(Weight p) { return {Variant::Classical, p, p}; }
  static SchurParams quantum(Weight p, Weight ell) {
    return {Variant::Quantum, p, ell};
  }

  Weight period() const { return variant == Variant::Quantum ? ell : p; }

  BlockSpec spec(Weight lowest, Weight size) const {
    return BlockSpec{variant, p, variant == Variant::Quantum ? ell : p, lowest,
                     size};
  }

  void ensure_valid() const { spec(0, 1).ensure_valid(); }
};

/// Weights of S(2,r) / S_q(2,r), identified with lambda1 - lambda2:
/// {r mod 2, r mod 2 + 2, ..., r}, ascending.
inline std::vector<Weight> weight_list(Weight r) {
  std::vector<Weight> out;
  out.reserve(r / 2 + 1);
  for (Weight s = r % 2; s <= r; s += 2) out.push_back(s);
  return out;
}

/// Composition-factor support of the quantum standard module of absolute
/// weight n. Residue ell-1 weights factor through the classical layer via
/// v -> ell(v+1)-1; other residues split across the classical rows of n/ell
/// and n/ell - 1.
inline SparseRow quantum_decomp_row_abs(Weight n, Weight ell,
                                        ClassicalRows& classical_decomp) {
  if (n <= ell - 1) return SparseRow{n};
  Weight j = n % ell;
  Weight m = n / ell;
  if (j == ell - 1) return classical_decomp.row(m).affine(ell, ell - 1);
  return SparseRow::disjoint_union(
      classical_decomp.row(m).affine(ell, j),
      classical_decomp.row(m - 1).affine(ell, ell - 2 - j));
}

/// A linkage class of weights of one Schur algebra.
struct BlockComponent {
  std::vector<Weight> weights;  // ascending
  bool primitive = false;
  // For primitive components: this component's own block data. For
  // imprimitive ones: the primitive (classical) block reached after
  // dividing out the congruence structure.
  std::optional<BlockSpec> identified;
  Weight ell_strips = 0;  // quantum layers divided out (0 or 1)
  Weight p_strips = 0;    // classical layers divided out
};

/// Weight set of the displayed primitive-block form: is the component
/// exactly {period*m + i or ibar by parity of m : m = 0..w-1}? Returns
/// (lowest residue, size) on a match.
inline std::optional<std::pair<Weight, Weight>> match_primitive_shape(
    const std::vector<Weight>& weights, Weight period) {
  if (weights.empty() || period < 2) return std::nullopt;
  Weight i = weights.front();
  if (i > period - 2) return std::nullopt;
  Weight ibar = period - 2 - i;
  for (Weight m = 0; m < weights.size(); ++m) {
    Weight expected = checked_add(checked_mul(period, m), m % 2 == 0 ? i : ibar);
    if (weights[m] != expected) return std::nullopt;
  }
  return std::make_pair(i, static_cast<Weight>(weights.size()));
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

/// Strip the congruence layers of an imprimitive component down to a
/// primitive classical block, counting layers; throws if the weights ever
/// mix congruence classes or fail the primitive form at the bottom.
inline BlockSpec identify_stripped_classical(std::vector<Weight> ws, Weight p,
                                             Weight& p_strips) {
  auto all_congruent = [&](const std::vector<Weight>& v) {
    return std::all_of(v.begin(), v.end(),
                       [&](Weight s) { return s % p == p - 1; });
  };
  auto any_congruent = [&](const std::vector<Weight>& v) {
    return std::any_of(v.begin(), v.end(),
                       [&](Weight s) { return s % p == p - 1; });
  };
  while (any_congruent(ws)) {
    SCHUR2_CHECK(all_congruent(ws),
                 "component mixes congruent and non-congruent weights");
    for (Weight& s : ws) s = (s + 1) / p - 1;
    ++p_strips;
  }
  auto shape = match_primitive_shape(ws, p);
  SCHUR2_CHECK(shape.has_value(),
               "stripped component does not match a primitive classical block");
  return BlockSpec::classical(p, shape->first, shape->second);
}

}  // namespace detail

/// Partition the weights of S(2,r) or S_q(2,r) into blocks: connected
/// components of the decomposition-support relation, sorted by lowest
/// weight, each classified as primitive or imprimitive and identified.
/// A component that neither matches the primitive form nor consists of
/// congruent weights throws: it would falsify the block description.
inline std::vector<BlockComponent> block_partition(Weight r, const SchurParams& params,
                                                   BlockTable& table) {
  params.ensure_valid();
  SCHUR2_CHECK(table.prime() == params.p, "block table prime does not match spec");
  std::vector<Weight> weights = weight_list(r);
  const Weight parity = r % 2;
  auto pos = [&](Weight w) { return static_cast<std::size_t>((w - parity) / 2); };

  detail::UnionFind uf(weights.size());
  for (Weight n : weights) {
    SparseRow row = params.variant == Variant::Quantum
                        ? quantum_decomp_row_abs(n, params.ell,
                                                 table.classical_decomp())
                        : table.classical_decomp().row(n);
    for (Weight v : row) uf.unite(pos(v), pos(n));
  }

  std::vector<std::vector<Weight>> groups(weights.size());
  for (Weight n : weights) groups[uf.find(pos(n))].push_back(n);

  std::vector<BlockComponent> out;
  const Weight period = params.period();
  for (auto& g : groups) {
    if (g.empty()) continue;
    BlockComponent comp;
    comp.weights = std::move(g);  // ascending by construction
    bool any_congruent = std::any_of(comp.weights.begin(), comp.weights.end(),
                                     [&](Weight s) { return s % period == period - 1; });
    if (!any_congruent) {
      comp.primitive = true;
      auto shape = match_primitive_shape(comp.weights, period);
      SCHUR2_CHECK(shape.has_value(),
                   "primitive component does not match the displayed block form");
      comp.identified = params.spec(shape->first, shape->second);
    } else {
      comp.primitive = false;
      std::vector<Weight> stripped = comp.weights;
      if (params.variant == Variant::Quantum) {
        SCHUR2_CHECK(std::all_of(stripped.begin(), stripped.end(),
                                 [&](Weight s) { return s % period == period - 1; }),
                     "component mixes congruent and non-congruent weights");
        for (Weight& s : stripped) s = (s + 1) / period - 1;
        comp.ell_strips = 1;
      }
      comp.identified =
          detail::identify_stripped_classical(stripped, params.p, comp.p_strips);
    }
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const BlockComponent& a, const BlockComponent& b) {
    return a.weights.front() < b.weights.front();
  });
  return out;
}

/// The decomposition matrix of a component over its own sorted index set,
/// computed from absolute-weight rows. Every factor must land inside the
/// component (linkage closure); anything else throws.
inline MultiplicityMatrix component_index_matrix(const BlockComponent& comp,
                                                 const SchurParams& params,
                                                 BlockTable& table) {
  MultiplicityMatrix out;
  out.size = comp.weights.size();
  out.rows.reserve(comp.weights.size());
  for (Weight s : comp.weights) {
    SparseRow abs_row = params.variant == Variant::Quantum
                            ? quantum_decomp_row_abs(s, params.ell,
                                                     table.classical_decomp())
                            : table.classical_decomp().row(s);
    std::vector<Weight> idx;
    idx.reserve(abs_row.size());
    for (Weight v : abs_row) {
      auto it = std::lower_bound(comp.weights.begin(), comp.weights.end(), v);
      SCHUR2_CHECK(it != comp.weights.end() && *it == v,
                   "composition factor escapes its linkage class");
      idx.push_back(static_cast<Weight>(it - comp.weights.begin()));
    }
    out.rows.emplace_back(std::move(idx));
  }
  return out;
}

}  // namespace schur2
