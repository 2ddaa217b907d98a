#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>

#include "schur2/weights.hpp"

using namespace schur2;

namespace {

// Independent oracle: scan all (c, k) until the digit bounds hold.
std::optional<LeadingPart> leading_part_by_scan(Weight n, Weight p) {
  Weight pk = 1;
  for (Weight k = 0; k <= 64; ++k) {
    for (Weight c = 1; c < p; ++c) {
      if (c * pk <= n + 1 && n + 1 < (c + 1) * pk)
        return LeadingPart{c, k, pk};
    }
    if (pk > (n + 1) / p) break;
    pk *= p;
  }
  return std::nullopt;
}

// Independent oracle: largest t with p^t dividing m+1, by explicit
// divisibility tests against increasing powers.
Weight strip_exponent_by_powers(Weight m, Weight p) {
  Weight t = 0;
  while (true) {
    Weight pt = checked_pow(p, t + 1);
    if ((m + 1) % pt != 0) return t;
    ++t;
  }
}

const Weight kPrimes[] = {2, 3, 5, 7, 11};

}  // namespace

TEST_CASE("leading_part on pinned examples") {
  CHECK(leading_part(24, 5) == LeadingPart{1, 2, 25});
  CHECK(leading_part(8, 5) == *leading_part_by_scan(8, 5));
  CHECK(leading_part(8, 5) == LeadingPart{1, 1, 5});
  CHECK(leading_part(3, 5) == LeadingPart{4, 0, 1});
  CHECK(leading_part(0, 2) == LeadingPart{1, 0, 1});
}

TEST_CASE("leading_part agrees with the scan oracle and round-trips") {
  std::mt19937_64 rng(20240901);
  for (Weight p : kPrimes) {
    for (int iter = 0; iter < 20000; ++iter) {
      Weight n = rng() % 1000000;
      LeadingPart lp = leading_part(n, p);
      CHECK(lp == *leading_part_by_scan(n, p));
      REQUIRE(lp.digit >= 1);
      REQUIRE(lp.digit <= p - 1);
      REQUIRE(lp.power == checked_pow(p, lp.exponent));
      REQUIRE(lp.digit * lp.power <= n + 1);
      REQUIRE(n + 1 < (lp.digit + 1) * lp.power);
    }
    // exhaustive on a small prefix
    for (Weight n = 0; n < 3000; ++n)
      REQUIRE(leading_part(n, p) == *leading_part_by_scan(n, p));
  }
}

TEST_CASE("leading_part digit bounds hold at the million-sample scale") {
  std::mt19937_64 rng(1048573);
  for (Weight p : kPrimes) {
    std::uint64_t bad = 0;
    for (int iter = 0; iter < 1000000; ++iter) {
      Weight n = rng() % (Weight{1} << 40);
      LeadingPart lp = leading_part(n, p);
      Weight cpk = lp.digit * lp.power;
      bool ok = lp.digit >= 1 && lp.digit <= p - 1 && cpk <= n + 1 &&
                n + 1 < (lp.digit + 1) * lp.power &&
                cpk + ((n + 1) - cpk) == n + 1;  // digit decomposition of n+1
      bad += ok ? 0 : 1;
    }
    REQUIRE(bad == 0);
  }
}

TEST_CASE("leading_part overflow is a checked error") {
  CHECK_THROWS_AS(leading_part(~Weight{0}, 2), overflow_error);
}

TEST_CASE("sigma_bar on pinned examples") {
  CHECK(sigma_bar(5, 5) == 3);    // soc of the standard module of weight 5
  CHECK(sigma_bar(24, 5) == 24);  // 24 = 5*5 - 1 is a fixed point
  CHECK(sigma_bar(0, 2) == 0);
}

TEST_CASE("sigma_bar fixed points are exactly the simple standards") {
  for (Weight p : kPrimes)
    for (Weight n = 0; n < 5000; ++n) {
      bool fixed = sigma_bar(n, p) == n;
      CHECK(fixed == is_simple_standard_classical(n, p));
      LeadingPart lp = leading_part(n, p);
      CHECK(fixed == (lp.digit * lp.power == n + 1));
    }
}

TEST_CASE("sigma_index on pinned examples") {
  CHECK(sigma_index(6, 1, 5) == 3);
  CHECK(sigma_index(9, 1, 5) == 0);  // lowest-column entry of row 9
  for (Weight p : kPrimes)
    for (Weight k = 0; k < 5; ++k) {
      Weight pk = checked_pow(p, k);
      CHECK(sigma_index(pk, k, p) == pk - 1);
    }
}

TEST_CASE("sigma_index errors on I_0") {
  CHECK_THROWS_AS(sigma_index(4, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(sigma_index(0, 0, 2), std::invalid_argument);
}

TEST_CASE("sigma_index is an order-reversing bijection I_c -> I_{c-1}") {
  for (Weight p : {Weight{2}, Weight{5}})
    for (Weight k = 0; k <= 3; ++k)
      for (Weight c = 1; c < p; ++c) {
        Weight pk = checked_pow(p, k);
        Weight prev = 0;
        bool first = true;
        for (Weight m = c * pk; m < (c + 1) * pk; ++m) {
          Weight s = sigma_index(m, k, p);
          REQUIRE(s >= (c - 1) * pk);
          REQUIRE(s < c * pk);
          if (!first) REQUIRE(s == prev - 1);  // strictly order-reversing
          prev = s;
          first = false;
        }
        // endpoints: smallest -> largest
        REQUIRE(sigma_index(c * pk, k, p) == c * pk - 1);
        REQUIRE(sigma_index((c + 1) * pk - 1, k, p) == (c - 1) * pk);
        // the square lands two intervals down, or is undefined from I_1
        for (Weight m = c * pk; m < (c + 1) * pk; ++m) {
          Weight s = sigma_index(m, k, p);
          if (c == 1) {
            REQUIRE_THROWS_AS(sigma_index(s, k, p), std::invalid_argument);
          } else {
            Weight ss = sigma_index(s, k, p);
            REQUIRE(ss / pk == c - 2);
          }
        }
      }
}

TEST_CASE("sigma_index agrees with sigma_bar of m-1 at matching level") {
  std::mt19937_64 rng(77);
  for (Weight p : kPrimes)
    for (int iter = 0; iter < 2000; ++iter) {
      Weight m = 1 + rng() % 100000;
      LeadingPart lp = leading_part(m - 1, p);
      REQUIRE(m >= lp.power);  // digit >= 1
      CHECK(sigma_index(m, lp.exponent, p) == sigma_bar(m - 1, p));
    }
}

TEST_CASE("strip_trailing on pinned examples") {
  CHECK(strip_trailing(49, 5) == StripResult{2, 1});
  CHECK(strip_trailing(6, 5) == StripResult{0, 6});
  CHECK(strip_trailing(9, 5) == StripResult{1, 1});
}

TEST_CASE("strip_trailing matches the power-divisibility oracle") {
  std::mt19937_64 rng(4242);
  for (Weight p : kPrimes)
    for (int iter = 0; iter < 20000; ++iter) {
      Weight m = rng() % 10000000;
      StripResult s = strip_trailing(m, p);
      CHECK(s.t == strip_exponent_by_powers(m, p));
      REQUIRE((m + 1) == checked_pow(p, s.t) * (s.reduced + 1));
      REQUIRE((s.reduced + 1) % p != 0);
    }
}

TEST_CASE("is_simple_standard on pinned examples") {
  CHECK(is_simple_standard_classical(24, 5));    // 25 = 5*5^1
  CHECK_FALSE(is_simple_standard_classical(5, 5));
  CHECK(is_simple_standard_quantum(4, 5, 3));    // n = ell - 1
  CHECK(is_simple_standard_quantum(1, 2, 3));
  CHECK(is_simple_standard_quantum(11, 2, 3));   // 12 = 2*2*3
  CHECK_FALSE(is_simple_standard_quantum(7, 2, 3));
}

TEST_CASE("quantum simplicity matches the a*p^k characterization") {
  for (Weight p : {Weight{2}, Weight{3}, Weight{5}})
    for (Weight ell : {Weight{2}, Weight{3}, Weight{4}, Weight{5}, Weight{7}}) {
      if (ell % p == 0) continue;
      for (Weight n = 0; n < 2000; ++n) {
        bool expected = n <= ell - 1;
        if (!expected) {
          // scan a in 2..p, k >= 0 for n+1 = ell*a*p^k
          for (Weight a = 2; a <= p && !expected; ++a)
            for (Weight apk = a; ell * apk <= n + 1; apk *= p)
              if (ell * apk == n + 1) {
                expected = true;
                break;
              }
        }
        CHECK(is_simple_standard_quantum(n, ell, p) == expected);
      }
    }
}

TEST_CASE("weight_of_index on pinned examples") {
  CHECK(BlockSpec::quantum(3, 5, 1, 10).weight_of_index(0) == 1);
  CHECK(BlockSpec::quantum(3, 5, 1, 10).weight_of_index(3) == 17);
  CHECK(BlockSpec::quantum(3, 2, 0, 10).weight_of_index(2) == 4);
}

TEST_CASE("weight_of_index and index_of_weight are mutually inverse") {
  std::mt19937_64 rng(99);
  std::vector<BlockSpec> specs;
  for (Weight p : {Weight{2}, Weight{3}, Weight{5}, Weight{7}}) {
    for (Weight low = 0; low + 2 <= p; ++low)
      specs.push_back(BlockSpec::classical(p, low, 64));
    for (Weight ell : {Weight{2}, Weight{3}, Weight{4}, Weight{5}, Weight{7}}) {
      if (ell % p == 0) continue;
      for (Weight low = 0; low + 2 <= ell; ++low)
        specs.push_back(BlockSpec::quantum(p, ell, low, 64));
    }
  }
  for (const auto& spec : specs) {
    REQUIRE(spec.violations().empty());
    for (Weight m = 0; m < spec.size; ++m)
      REQUIRE(spec.index_of_weight(spec.weight_of_index(m)) == m);
    // weights are strictly increasing in the index
    for (Weight m = 1; m < spec.size; ++m)
      REQUIRE(spec.weight_of_index(m - 1) < spec.weight_of_index(m));
    for (int iter = 0; iter < 200; ++iter) {
      Weight w = rng() % (spec.period() * spec.size);
      bool in_block = false;
      for (Weight m = 0; m < spec.size && !in_block; ++m)
        in_block = spec.weight_of_index(m) == w;
      if (in_block)
        REQUIRE(spec.weight_of_index(spec.index_of_weight(w)) == w);
      else
        REQUIRE_THROWS_AS(spec.index_of_weight(w), std::invalid_argument);
    }
  }
}

TEST_CASE("index_of_weight rejects weights outside the block") {
  auto spec = BlockSpec::quantum(3, 5, 1, 10);
  CHECK_THROWS_AS(spec.index_of_weight(2), std::invalid_argument);   // wrong residue
  CHECK_THROWS_AS(spec.index_of_weight(4), std::invalid_argument);   // residue ell-1
  CHECK_THROWS_AS(spec.index_of_weight(7 + 5 * 10), std::invalid_argument);
}

TEST_CASE("BlockSpec validation lists every violated constraint") {
  BlockSpec bad = BlockSpec::quantum(4, 8, 9, 0);
  auto v = bad.violations();
  CHECK(v.size() == 4);  // p not prime, p | ell, lowest range, size
  CHECK_THROWS_AS(bad.ensure_valid(), std::invalid_argument);
  CHECK(BlockSpec::classical(5, 3, 25).violations().empty());
  CHECK_FALSE(BlockSpec::classical(5, 4, 25).violations().empty());
}

TEST_CASE("degenerate paired residue: even period forces i == ibar at i = (ell-2)/2") {
  auto spec = BlockSpec::quantum(3, 2, 0, 8);
  CHECK(spec.residues_coincide());
  for (Weight m = 0; m < 8; ++m) CHECK(spec.residue_of_index(m) == 0);
  auto spec4 = BlockSpec::quantum(3, 4, 1, 8);
  CHECK(spec4.residues_coincide());
  CHECK_FALSE(BlockSpec::quantum(3, 4, 0, 8).residues_coincide());
}
