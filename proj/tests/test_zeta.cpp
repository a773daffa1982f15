#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jac3/branch.hpp"
#include "jac3/zeta.hpp"

using namespace jac3;

static Form3 quartic_from(const Level* lv, const std::vector<std::tuple<u32, u32, i64>>& terms) {
  Form3 F(lv, 4);
  for (const auto& [i, j, v] : terms) F.set(i, j, lv->from_int(v));
  return F;
}

static Form3 klein(const Level* lv) {
  return quartic_from(lv, {{3, 1, 1}, {0, 3, 1}, {1, 0, 1}});
}

static Form3 fermat(const Level* lv) {
  return quartic_from(lv, {{4, 0, 1}, {0, 4, 1}, {0, 0, 1}});
}

// accepted classes with no doubled fiber are exactly the smooth ones
static TrigonalData find_valid(CurveCtx& ctx) {
  std::vector<Divisor> pool;
  for (const Place& P : places_of_degree(ctx, 2)) {
    Divisor D;
    D.add(P, 1);
    pool.push_back(D);
  }
  const auto& d1 = places_of_degree(ctx, 1);
  for (size_t i = 0; i < d1.size(); ++i)
    for (size_t j = i; j < d1.size(); ++j) {
      Divisor D;
      D.add(d1[i], 1);
      D.add(d1[j], 1);
      pool.push_back(D);
    }
  for (const Divisor& A : pool)
    for (const Divisor& B : pool) {
      if (A == B) continue;
      try {
        TrigonalData td(ctx, A - B);
        if (!sigma_prime_test(td).has_value()) return td;
      } catch (const error&) {
      }
    }
  throw error("no valid twisting class found");
}

TEST_CASE("real weil validity separates bounded real spectra") {
  // x^4 - 5x^2 + 6: roots at sqrt 2 and sqrt 3, inside the interval for Q = 2
  CHECK(real_weil_valid({Big(0), Big(-5), Big(0), Big(6)}, 2));
  // x^2 - 9: roots at 3, outside for Q = 2 but inside for Q = 3
  CHECK(!real_weil_valid({Big(0), Big(-9)}, 2));
  CHECK(real_weil_valid({Big(0), Big(-9)}, 3));
  // x^2 - 8: roots exactly at the ends of the interval for Q = 2
  CHECK(real_weil_valid({Big(0), Big(-8)}, 2));
  // x^2 + 1: complex spectrum
  CHECK(!real_weil_valid({Big(0), Big(1)}, 2));
  // (x - 1)^2: repeated real root
  CHECK(real_weil_valid({Big(2), Big(1)}, 2));
  // x^3 - x and a stretched copy that escapes the interval
  CHECK(real_weil_valid({Big(0), Big(-1), Big(0)}, 2));
  CHECK(!real_weil_valid({Big(0), Big(-16), Big(0)}, 2));
}

TEST_CASE("four counts fit genus four but cannot pin it down alone") {
  // counts generated from the spectrum sqrt 2, -sqrt 2, sqrt 3, -sqrt 3 at Q = 2
  GenusCertificate c = genus_from_counts(2, {3, 11, 9, 39});
  CHECK(c.fit_ok);
  CHECK(c.weil_ok);
  CHECK(c.real_coeffs == std::vector<Big>{Big(0), Big(-5), Big(0), Big(6)});
  CHECK(c.g2_excluded);
  CHECK(c.g3_excluded);
  CHECK(!c.g5_excluded);  // a degree-five completion exists at this depth
  CHECK(!c.ok);
}

TEST_CASE("plane curve counts stay consistent with genus three") {
  Tower tw(2);
  CurveCtx ctx(tw, klein(tw.base()));
  std::vector<i64> N;
  for (u32 m = 1; m <= 6; ++m) {
    i64 n = 0;
    for (u32 d = 1; d <= m; ++d)
      if (m % d == 0) n += (i64)d * (i64)places_of_degree(ctx, d).size();
    N.push_back(n);
  }
  CHECK(N[0] == 3);
  GenusCertificate c = genus_from_counts(2, N);
  CHECK(!c.g3_excluded);
  CHECK(!c.ok);
}

TEST_CASE("quotient counts certify genus four in characteristic two") {
  Tower tw(2);
  CurveCtx ctx(tw, klein(tw.base()));
  TrigonalData td = find_valid(ctx);
  GenusCertificate c = genus_certificate(td);
  CHECK(c.method == "zeta");
  REQUIRE(c.counts.size() == 6);
  CHECK(c.fit_ok);
  CHECK(c.weil_ok);
  CHECK(c.g2_excluded);
  CHECK(c.g3_excluded);
  CHECK(c.g5_excluded);
  CHECK(c.ok);
}

TEST_CASE("ramification certifies genus four in characteristic five") {
  Tower tw(5);
  CurveCtx ctx(tw, fermat(tw.base()));
  TrigonalData td = find_valid(ctx);
  GenusCertificate c = genus_certificate(td);
  CHECK(c.method == "ramification");
  CHECK(c.ramification == 12);
  CHECK(c.ok);
}

TEST_CASE("double cover counts stay within the weil interval") {
  Tower tw(2);
  CurveCtx ctx(tw, klein(tw.base()));
  TrigonalData td = find_valid(ctx);
  CHECK(tilde_counts_within_weil(td, 2));
}
