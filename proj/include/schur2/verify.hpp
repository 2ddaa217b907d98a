#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "schur2/block.hpp"
#include "schur2/linkage.hpp"
#include "schur2/rowcache.hpp"

namespace schur2 {

/// First counterexample of a failed check: the indices involved and the
/// two computed values, enough to re-evaluate both sides independently.
struct Witness {
  Weight lambda = 0;
  Weight rho = 0;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  std::string note;
};

struct VerificationReport {
  std::string theorem;
  BlockSpec params;
  bool pass = true;
  std::optional<Witness> witness;
  std::uint64_t pairs_checked = 0;
  double millis = 0.0;

  VerificationReport() = default;
  VerificationReport(std::string id, BlockSpec spec)
      : theorem(std::move(id)), params(std::move(spec)) {}
};

namespace detail {

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// First index where two sorted 0/1 supports differ (the lexicographically
/// smallest counterexample column), with the two entry values there.
inline std::optional<std::tuple<Weight, bool, bool>> first_support_difference(
    const SparseRow& a, const SparseRow& b) {
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) {
      ++ia;
      ++ib;
    } else if (*ia < *ib) {
      return std::make_tuple(*ia, true, false);
    } else {
      return std::make_tuple(*ib, false, true);
    }
  }
  if (ia != a.end()) return std::make_tuple(*ia, true, false);
  if (ib != b.end()) return std::make_tuple(*ib, false, true);
  return std::nullopt;
}

inline std::vector<SparseRow> decomp_rows(BlockTable& table, Weight w) {
  std::vector<SparseRow> rows;
  rows.reserve(w);
  for (Weight m = 0; m < w; ++m) rows.push_back(table.decomp_row(m));
  return rows;
}

inline std::vector<SparseRow> tilt_rows(BlockTable& table, Weight w) {
  std::vector<SparseRow> rows;
  rows.reserve(w);
  for (Weight m = 0; m < w; ++m) rows.push_back(table.tilt_row(m));
  return rows;
}

/// Size-1 blocks have no intervals above I_0; every identity below is
/// vacuously true there.
inline bool trivial_block(Weight w) { return w == 1; }

inline BlockShape shape_or_throw(const BlockSpec& spec) {
  return require_full_block_shape(spec.size, spec.p);
}

}  // namespace detail

/// Tilting rows against decomposition columns: t(lambda, rho) must equal
/// d(rho, sigma(lambda)) for every lambda above I_0 and every rho. The two
/// sides come from independent recursions, so agreement is a global
/// consistency check of both.
inline VerificationReport verify_prop_4_1(BlockTable& table, const BlockSpec& spec,
                                          Weight resume_lambda = 0) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  VerificationReport rep{"prop4.1", spec};
  const Weight w = spec.size;
  if (!detail::trivial_block(w)) {
    BlockShape shape = detail::shape_or_throw(spec);
    auto rows = detail::decomp_rows(table, w);
    auto cols = transpose_rows(rows, w);
    for (Weight lambda = std::max(shape.pk, resume_lambda); lambda < w; ++lambda) {
      SparseRow trow = table.tilt_row(lambda);
      Weight sl = sigma_index(lambda, shape.k, spec.p);
      rep.pairs_checked += w;
      if (auto diff = detail::first_support_difference(trow, cols[sl])) {
        auto [rho, lhs, rhs] = *diff;
        rep.pass = false;
        rep.witness = Witness{lambda, rho, lhs, rhs,
                              "t(lambda,rho) != d(rho,sigma lambda)"};
        break;
      }
    }
  }
  rep.millis = timer.millis();
  return rep;
}

/// Column symmetry about interval boundaries (part a) and the
/// sigma-transport between the two matrices (part b).
inline VerificationReport verify_prop_4_4(BlockTable& table, const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  VerificationReport rep{"prop4.4", spec};
  const Weight w = spec.size;
  if (detail::trivial_block(w)) {
    rep.millis = timer.millis();
    return rep;
  }
  BlockShape shape = detail::shape_or_throw(spec);
  const Weight pk = shape.pk;
  auto rows = detail::decomp_rows(table, w);
  auto cols = transpose_rows(rows, w);

  // (a) d(rho, mu) = d(sigma rho, mu) for mu one interval below rho
  for (Weight c = 1; c < shape.a && rep.pass; ++c) {
    for (Weight rho = c * pk; rho < (c + 1) * pk; ++rho) {
      Weight srho = sigma_index(rho, shape.k, spec.p);
      SparseRow lhs = rows[rho].slice((c - 1) * pk, c * pk);
      SparseRow rhs = rows[srho].slice((c - 1) * pk, c * pk);
      rep.pairs_checked += pk;
      if (auto diff = detail::first_support_difference(lhs, rhs)) {
        auto [mu, l, r] = *diff;
        rep.pass = false;
        rep.witness = Witness{rho, mu, l, r, "part a: d(rho,mu) != d(sigma rho,mu)"};
        break;
      }
    }
  }

  // (b) t(sigma lambda, sigma rho) = d(rho, lambda) for lambda, rho in I_c
  for (Weight c = 1; c < shape.a && rep.pass; ++c) {
    for (Weight lambda = c * pk; lambda < (c + 1) * pk; ++lambda) {
      Weight sl = sigma_index(lambda, shape.k, spec.p);
      // pull the tilting row of sigma(lambda) back through sigma
      SparseRow timage = table.tilt_row(sl).slice((c - 1) * pk, c * pk);
      std::vector<Weight> pulled(timage.size());
      for (std::size_t i = 0; i < timage.size(); ++i)
        pulled[timage.size() - 1 - i] =
            2 * c * pk - timage.indices()[i] - 1;  // sigma^{-1}, order-reversing
      SparseRow lhs(std::move(pulled));
      SparseRow rhs = cols[lambda].slice(c * pk, (c + 1) * pk);
      rep.pairs_checked += pk;
      if (auto diff = detail::first_support_difference(lhs, rhs)) {
        auto [rho, l, r] = *diff;
        rep.pass = false;
        rep.witness = Witness{lambda, rho, l, r,
                              "part b: t(sigma lambda, sigma rho) != d(rho,lambda)"};
        break;
      }
    }
  }
  rep.millis = timer.millis();
  return rep;
}

/// T(lambda) and P(sigma lambda) have the same standard quotients for
/// lambda above I_0 (so those projectives are tilting modules).
inline VerificationReport verify_cor_4_3(BlockTable& table, const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  VerificationReport rep{"cor4.3", spec};
  const Weight w = spec.size;
  if (!detail::trivial_block(w)) {
    BlockShape shape = detail::shape_or_throw(spec);
    for (Weight lambda = shape.pk; lambda < w && rep.pass; ++lambda) {
      Weight sl = sigma_index(lambda, shape.k, spec.p);
      SparseRow trow = table.tilt_row(lambda);
      SparseRow pcol = projective_column(table, w, sl);
      rep.pairs_checked += w;
      if (auto diff = detail::first_support_difference(trow, pcol)) {
        auto [rho, lhs, rhs] = *diff;
        rep.pass = false;
        rep.witness =
            Witness{lambda, rho, lhs, rhs, "tilting row != projective column"};
      }
    }
  }
  rep.millis = timer.millis();
  return rep;
}

/// The maximal weight of each interval has exactly one composition factor
/// one interval down, namely its sigma image.
inline VerificationReport verify_lemma_3_10(BlockTable& table, const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  VerificationReport rep{"lemma3.10", spec};
  const Weight w = spec.size;
  if (!detail::trivial_block(w)) {
    BlockShape shape = detail::shape_or_throw(spec);
    const Weight pk = shape.pk;
    for (Weight c = 1; c < shape.a && rep.pass; ++c) {
      Weight rho = (c + 1) * pk - 1;
      SparseRow below = table.decomp_row(rho).slice((c - 1) * pk, c * pk);
      ++rep.pairs_checked;
      if (below.size() != 1 || below.min() != sigma_index(rho, shape.k, spec.p)) {
        rep.pass = false;
        rep.witness = Witness{rho, below.empty() ? 0 : below.min(), below.size(), 1,
                              "maximal-weight row must meet I_{c-1} exactly at sigma"};
      }
    }
  }
  rep.millis = timer.millis();
  return rep;
}

/// Exactly the interval minima above I_0 have two-element tilting rows.
inline VerificationReport verify_lemma_3_11(BlockTable& table, const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  VerificationReport rep{"lemma3.11", spec};
  const Weight w = spec.size;
  if (!detail::trivial_block(w)) {
    BlockShape shape = detail::shape_or_throw(spec);
    for (Weight lambda = shape.pk; lambda < w && rep.pass; ++lambda) {
      bool two = table.tilt_row(lambda).size() == 2;
      bool minimal = lambda % shape.pk == 0;
      ++rep.pairs_checked;
      if (two != minimal) {
        rep.pass = false;
        rep.witness = Witness{lambda, 0, table.tilt_row(lambda).size(), 2,
                              "two standard quotients iff interval minimum"};
      }
    }
  }
  rep.millis = timer.millis();
  return rep;
}

/// Row supports stay inside the two intervals I_{c-1} and I_c.
inline VerificationReport verify_interval_support(BlockTable& table,
                                                  const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  VerificationReport rep{"interval", spec};
  const Weight w = spec.size;
  if (!detail::trivial_block(w)) {
    BlockShape shape = detail::shape_or_throw(spec);
    const Weight pk = shape.pk;
    for (Weight m = 0; m < w && rep.pass; ++m) {
      SparseRow row = table.decomp_row(m);
      Weight c = interval_of(m, pk);
      Weight lower = c == 0 ? 0 : (c - 1) * pk;
      ++rep.pairs_checked;
      if (row.min() < lower || row.max() > m) {
        rep.pass = false;
        rep.witness = Witness{m, row.min() < lower ? row.min() : row.max(), 0, 1,
                              "row support escapes I_{c-1} u I_c"};
      }
    }
  }
  rep.millis = timer.millis();
  return rep;
}

/// The socle entry d(m, sigma m) = 1, with sigma m = sigma_bar(m-1).
inline VerificationReport verify_socle(BlockTable& table, const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  VerificationReport rep{"socle", spec};
  for (Weight m = 1; m < spec.size && rep.pass; ++m) {
    Weight sm = sigma_bar(m - 1, spec.p);
    ++rep.pairs_checked;
    if (!table.decomp_row(m).contains(sm)) {
      rep.pass = false;
      rep.witness = Witness{m, sm, 0, 1, "socle entry missing"};
    }
  }
  rep.millis = timer.millis();
  return rep;
}

/// Tilting row sizes, and decomposition column supports below the top
/// interval, are powers of 2.
inline VerificationReport verify_power_of_two(BlockTable& table,
                                              const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  VerificationReport rep{"power2", spec};
  const Weight w = spec.size;
  for (Weight m = 0; m < w && rep.pass; ++m) {
    std::size_t sz = table.tilt_row(m).size();
    ++rep.pairs_checked;
    if (!is_power_of_two(sz)) {
      rep.pass = false;
      rep.witness = Witness{m, 0, sz, 0, "tilting row size not a power of 2"};
    }
  }
  if (rep.pass && !detail::trivial_block(w)) {
    BlockShape shape = detail::shape_or_throw(spec);
    auto cols = transpose_rows(detail::decomp_rows(table, w), w);
    for (Weight mu = 0; mu < (shape.a - 1) * shape.pk && rep.pass; ++mu) {
      ++rep.pairs_checked;
      if (!is_power_of_two(cols[mu].size())) {
        rep.pass = false;
        rep.witness =
            Witness{mu, 0, cols[mu].size(), 0, "column support not a power of 2"};
      }
    }
  }
  rep.millis = timer.millis();
  return rep;
}

/// Truncated blocks (size not of the form a*p^k) always exhibit a
/// diagonal Cartan number that is not a power of 2; the predicted index is
/// sigma of the first excluded weight, and its value has the form 2^t - 1.
inline VerificationReport verify_lemma_4_6(BlockTable& table, const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  const Weight w = spec.size;
  if (w < 2 || full_block_shape(w, spec.p))
    throw std::invalid_argument(
        "verify_lemma_4_6 expects a size >= 2 not of the form a*p^k");
  VerificationReport rep{"lemma4.6", spec};

  // the largest full block strictly inside, and the sigma level of the
  // enclosing full block
  Weight best = 0, best_a = 0, best_k = 0;
  for (Weight k = 0;; ++k) {
    Weight pk = checked_pow(spec.p, k);
    if (pk >= w) break;
    for (Weight a = 2; a <= spec.p; ++a) {
      Weight s = a * pk;
      if (s < w && s > best) best = s, best_a = a, best_k = k;
    }
  }
  SCHUR2_CHECK(best >= 2, "no full block below size " + std::to_string(w));
  Weight level = best_a < spec.p ? best_k : best_k + 1;
  Weight predicted = sigma_index(w, level, spec.p);

  auto cols = transpose_rows(detail::decomp_rows(table, w), w);
  std::optional<Weight> first_found;
  bool predicted_works = false;
  for (Weight mu = 0; mu < w; ++mu) {
    rep.pairs_checked += cols[mu].size();
    if (!is_power_of_two(cols[mu].size())) {
      if (!first_found) first_found = mu;
      if (mu == predicted) predicted_works = true;
    }
  }
  std::uint64_t predicted_value = cols[predicted].size();
  if (!first_found || !predicted_works || !is_power_of_two(predicted_value + 1)) {
    rep.pass = false;
    rep.witness = Witness{predicted, first_found.value_or(w), predicted_value, 0,
                          "expected a non-power-of-2 diagonal Cartan number"};
  } else {
    rep.witness = Witness{*first_found, predicted, cols[*first_found].size(),
                          predicted_value, "witness found; predicted index confirmed"};
  }
  rep.millis = timer.millis();
  return rep;
}

/// Ringel self-duality of blocks with 2*p^k simple modules, at the level
/// this library can see: the torsion images of the projectives enumerate
/// all tilting indices exactly once; the composition multiplicities of
/// T(sigma lambda) and P(lambda) agree over I_0; and the Cartan matrix
/// equals the Ringel-dual one under the index reversal m -> w-1-m.
inline VerificationReport verify_ringel_self_duality(BlockTable& table,
                                                     const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  BlockShape shape = detail::shape_or_throw(spec);
  if (shape.a != 2)
    throw std::invalid_argument("verify_ringel_self_duality expects size 2*p^k");
  VerificationReport rep{"ringel", spec};
  const Weight w = spec.size;
  const Weight pk = shape.pk;

  // (i) torsion images cover every tilting index exactly once
  std::vector<bool> seen(w, false);
  for (Weight lambda = 0; lambda < w && rep.pass; ++lambda) {
    TorsionImage ti = torsion_image(lambda, w, spec.p);
    ++rep.pairs_checked;
    if (!ti.index || seen[*ti.index]) {
      rep.pass = false;
      rep.witness = Witness{lambda, ti.index.value_or(w), 0, 1,
                            "torsion images must enumerate tilting indices"};
      break;
    }
    seen[*ti.index] = true;
  }

  auto rows = detail::decomp_rows(table, w);
  auto cols = transpose_rows(rows, w);

  // (ii) composition multiplicities over I_0: T(sigma lambda) vs P(lambda)
  for (Weight lambda = pk; lambda + 1 < w && rep.pass; ++lambda) {
    Weight sl = sigma_index(lambda, shape.k, spec.p);
    std::vector<std::uint64_t> lhs(pk, 0), rhs(pk, 0);
    for (Weight rho : table.tilt_row(sl))
      for (Weight mu : rows[rho].truncated(pk)) ++lhs[mu];
    for (Weight s : cols[lambda])
      for (Weight mu : rows[s].truncated(pk)) ++rhs[mu];
    for (Weight mu = 0; mu < pk; ++mu) {
      ++rep.pairs_checked;
      if (lhs[mu] != rhs[mu]) {
        rep.pass = false;
        rep.witness = Witness{lambda, mu, lhs[mu], rhs[mu],
                              "[T(sigma lambda):L(mu)] != [P(lambda):L(mu)]"};
        break;
      }
    }
  }

  // (iii) Cartan involution: C(mu, lambda) = C'(w-1-mu, w-1-lambda)
  if (rep.pass) {
    IntMatrix cartan = gram(rows, w);
    IntMatrix ringel = gram(transpose_rows(detail::tilt_rows(table, w), w), w);
    for (Weight mu = 0; mu < w && rep.pass; ++mu)
      for (Weight lambda = 0; lambda < w; ++lambda) {
        ++rep.pairs_checked;
        if (cartan.at(mu, lambda) != ringel.at(w - 1 - mu, w - 1 - lambda)) {
          rep.pass = false;
          rep.witness = Witness{mu, lambda, cartan.at(mu, lambda),
                                ringel.at(w - 1 - mu, w - 1 - lambda),
                                "Cartan involution mismatch"};
          break;
        }
      }
  }
  rep.millis = timer.millis();
  return rep;
}

/// Twisted-tensor factorization of the projectives indexed by the top
/// interval: the standard quotients of P(lambda) computed through the
/// stripped classical projective must reproduce the projective column.
inline VerificationReport verify_factorization(BlockTable& table,
                                               const BlockSpec& spec) {
  detail::Stopwatch timer;
  spec.ensure_valid();
  BlockShape shape = detail::shape_or_throw(spec);
  VerificationReport rep{"factorization", spec};
  const Weight w = spec.size;
  const Weight pk = shape.pk;
  const Weight c = shape.a - 1;  // top interval index; lambda below is in I_c
  if (c >= 1 && shape.k >= 1) {
    for (Weight m = c * pk; m + 1 < w && rep.pass; ++m) {
      StripResult sr = strip_trailing(m, spec.p);
      SCHUR2_CHECK(sr.t < shape.k, "non-maximal index strips below the block level");
      Weight x = shape.k - 1 - sr.t;
      Weight pt = checked_pow(spec.p, sr.t);
      // locate the stripped weight inside its primitive classical block
      Weight u0 = sr.reduced / spec.p;
      Weight res = sr.reduced % spec.p;
      Weight j0 = u0 % 2 == 0 ? res : spec.p - 2 - res;
      Weight px = checked_pow(spec.p, x);
      Weight members = shape.a * px;
      SCHUR2_CHECK(u0 >= c * px && u0 < members,
                   "stripped index must land in the top interval one level down");
      // standard quotients of the truncated classical projective, mapped
      // back through v = p^t - 1 + p^t * weight
      std::vector<Weight> q;
      for (Weight u = 0; u < members; ++u) {
        Weight nu = spec.p * u + (u % 2 == 0 ? j0 : spec.p - 2 - j0);
        Weight v = pt - 1 + pt * nu;
        ++rep.pairs_checked;
        if (table.classical_decomp().row(v).contains(m)) {
          q.push_back(v);
          q.push_back(v + 1);
        }
      }
      SparseRow factored(std::move(q));  // throws if the pairs collide
      SparseRow column = projective_column(table, w, m);
      if (auto diff = detail::first_support_difference(factored, column)) {
        auto [rho, lhs, rhs] = *diff;
        rep.pass = false;
        rep.witness = Witness{m, rho, lhs, rhs,
                              "factored quotients != projective column"};
      }
    }
  }
  rep.millis = timer.millis();
  return rep;
}

// --------------------------------------------------------------------------
// Suite runner

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s = {
      "prop4.1", "prop4.4", "cor4.3", "lemmas", "lemma4.6", "ringel",
      "factorization"};
  return s;
}

struct VerifyOptions {
  std::vector<std::string> suites = {"all"};
  std::vector<Weight> primes = {2, 3, 5, 7};
  std::vector<Weight> ells = {2, 3, 4, 5, 7};
  bool include_classical = true;
  bool include_quantum = true;
  Weight max_size = 1000;
  std::optional<Weight> k_max;
  std::optional<Weight> exact_size;
  unsigned jobs = 1;
  Weight memo_cap = ClassicalRows::kDefaultMemoCap;
  std::string cache_dir;  // persistent classical-row cache, optional
};

namespace detail {

struct VerifyTask {
  std::string check;  // concrete check id ("prop4.1", "lemma3.10", ...)
  BlockSpec spec;
};

inline VerificationReport run_task(const VerifyTask& task, BlockTable& table) {
  if (task.check == "prop4.1") return verify_prop_4_1(table, task.spec);
  if (task.check == "prop4.4") return verify_prop_4_4(table, task.spec);
  if (task.check == "cor4.3") return verify_cor_4_3(table, task.spec);
  if (task.check == "lemma3.10") return verify_lemma_3_10(table, task.spec);
  if (task.check == "lemma3.11") return verify_lemma_3_11(table, task.spec);
  if (task.check == "interval") return verify_interval_support(table, task.spec);
  if (task.check == "socle") return verify_socle(table, task.spec);
  if (task.check == "power2") return verify_power_of_two(table, task.spec);
  if (task.check == "lemma4.6") return verify_lemma_4_6(table, task.spec);
  if (task.check == "ringel") return verify_ringel_self_duality(table, task.spec);
  if (task.check == "factorization") return verify_factorization(table, task.spec);
  throw std::invalid_argument("unknown check: " + task.check);
}

inline std::vector<std::string> expand_suite(const std::string& suite) {
  if (suite == "lemmas")
    return {"lemma3.10", "lemma3.11", "interval", "socle", "power2"};
  return {suite};
}

}  // namespace detail

/// Parameter sets swept by the suites: classical mode plus every quantum
/// ell coprime to p. The multiplicity matrices depend only on (p, size),
/// so the variants re-run the same checks through differently
/// materialized blocks.
inline std::vector<BlockSpec> verification_specs(const VerifyOptions& opt, Weight p,
                                                 bool full_sizes,
                                                 bool ringel_only = false) {
  std::vector<BlockSpec> out;
  std::vector<std::pair<Variant, Weight>> modes;
  if (opt.include_classical) modes.emplace_back(Variant::Classical, p);
  if (opt.include_quantum)
    for (Weight ell : opt.ells)
      if (ell % p != 0) modes.emplace_back(Variant::Quantum, ell);

  std::vector<Weight> sizes;
  if (full_sizes) {
    for (Weight k = 0;; ++k) {
      if (opt.k_max && k > *opt.k_max) break;
      Weight pk = checked_pow(p, k);
      if (2 * pk > opt.max_size) break;
      for (Weight a = 2; a <= p && a * pk <= opt.max_size; ++a)
        if (!ringel_only || a == 2) sizes.push_back(a * pk);
    }
  } else {
    for (Weight w = 2; w <= opt.max_size; ++w)
      if (!full_block_shape(w, p)) sizes.push_back(w);
  }
  if (opt.exact_size)
    std::erase_if(sizes, [&](Weight w) { return w != *opt.exact_size; });

  for (auto [variant, ell] : modes)
    for (Weight w : sizes)
      out.push_back(variant == Variant::Classical
                        ? BlockSpec::classical(p, 0, w)
                        : BlockSpec::quantum(p, ell, 0, w));
  return out;
}

namespace detail {

/// A task must never take down the whole run: anything thrown inside
/// (including invariant violations triggered by a poisoned cache) becomes
/// a failing report carrying the message. Usage errors in the options are
/// raised before tasks are built and still throw.
inline VerificationReport run_task_guarded(const VerifyTask& task,
                                           BlockTable& table) {
  try {
    return run_task(task, table);
  } catch (const invariant_error& e) {
    VerificationReport rep{task.check, task.spec};
    rep.pass = false;
    rep.witness = Witness{0, 0, 0, 0, e.what()};
    return rep;
  }
}

}  // namespace detail

/// Run the requested suites over the whole parameter grid. Tasks are
/// verified independently (each worker owns its tables), and reports come
/// back in deterministic task order regardless of scheduling.
inline std::vector<VerificationReport> run_verification(const VerifyOptions& opt) {
  std::vector<detail::VerifyTask> tasks;
  std::vector<std::string> suites;
  for (const auto& s : opt.suites) {
    if (s == "all") {
      for (const auto& t : all_suites())
        for (const auto& c : detail::expand_suite(t)) suites.push_back(c);
    } else {
      for (const auto& c : detail::expand_suite(s)) suites.push_back(c);
    }
  }
  for (const auto& check : suites)
    for (Weight p : opt.primes) {
      bool full = check != "lemma4.6";
      for (const auto& spec :
           verification_specs(opt, p, full, check == "ringel"))
        tasks.push_back({check, spec});
    }

  using TableMap = std::unordered_map<Weight, std::unique_ptr<BlockTable>>;
  auto table_for = [&](TableMap& tables, Weight p) -> BlockTable& {
    auto& slot = tables[p];
    if (!slot) {
      slot = std::make_unique<BlockTable>(p, opt.memo_cap);
      if (!opt.cache_dir.empty()) load_row_cache(opt.cache_dir, *slot);
    }
    return *slot;
  };
  std::mutex save_mutex;
  auto save_tables = [&](TableMap& tables) {
    if (opt.cache_dir.empty()) return;
    std::lock_guard<std::mutex> lock(save_mutex);
    for (auto& [p, table] : tables) save_row_cache(opt.cache_dir, *table);
  };

  std::vector<VerificationReport> reports(tasks.size());
  unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    // share one table per prime across the whole sequential run
    TableMap tables;
    for (std::size_t i = 0; i < tasks.size(); ++i)
      reports[i] =
          detail::run_task_guarded(tasks[i], table_for(tables, tasks[i].spec.p));
    save_tables(tables);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      // per-worker tables: confinement, no shared mutable state
      TableMap tables;
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) break;
        reports[i] =
            detail::run_task_guarded(tasks[i], table_for(tables, tasks[i].spec.p));
      }
      save_tables(tables);
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return reports;
}

}  // namespace schur2
