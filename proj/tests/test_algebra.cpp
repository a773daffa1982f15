#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "jac3/field.hpp"
#include "jac3/linalg.hpp"
#include "jac3/poly.hpp"
#include "jac3/rng.hpp"

using namespace jac3;

static Fq rand_elem(const Level* lv, Rng& rng) {
  std::vector<u32> c(lv->deg);
  for (u32& v : c) v = (u32)rng.below(lv->p);
  return Fq(lv, std::move(c));
}

TEST_CASE("prime level uses modulus x and behaves like Z/p") {
  for (u32 p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    Tower tw(p);
    const Level* lv = tw.base();
    CHECK(lv->deg == 1);
    REQUIRE(lv->modulus.size() == 2);
    CHECK(lv->modulus[0] == 0);
    CHECK(lv->modulus[1] == 1);
    for (u32 a = 0; a < p; ++a)
      for (u32 b = 0; b < p; ++b) {
        CHECK((lv->from_int(a) * lv->from_int(b)) == lv->from_int((i64)(a * b % p)));
        CHECK((lv->from_int(a) + lv->from_int(b)) == lv->from_int((i64)((a + b) % p)));
      }
    for (u32 a = 1; a < p; ++a) CHECK((lv->from_int(a) * lv->from_int(a).inv()).is_one());
  }
}

TEST_CASE("F4 gets modulus x^2+x+1 and its least trace-one element is the generator") {
  Tower tw(2);
  const Level* l2 = tw.level(2);
  REQUIRE(l2->modulus == std::vector<u32>({1, 1, 1}));
  // enumerate in canonical order, find first with absolute trace 1
  for (u64 i = 0; i < 4; ++i) {
    Fq e = l2->from_index(i);
    if (abs_trace(e) == 1) {
      CHECK(e == l2->gen());
      break;
    }
  }
  CHECK(abs_trace(l2->gen()) == 1);
}

TEST_CASE("field axioms hold on random samples") {
  Rng rng(7);
  for (u32 p : {2u, 3u, 13u}) {
    for (u32 d : {1u, 2u, 3u, 6u}) {
      Tower tw(p);
      const Level* lv = tw.level(d);
      for (int it = 0; it < 40; ++it) {
        Fq a = rand_elem(lv, rng), b = rand_elem(lv, rng), c = rand_elem(lv, rng);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + (-a) == lv->zero());
        if (!a.is_zero()) {
          CHECK((a * a.inv()).is_one());
          CHECK(a.pow(lv->card() - 1).is_one());
        }
        CHECK(a.pow(lv->card()) == a);
      }
    }
  }
}

TEST_CASE("frobenius matrix agrees with p-th power") {
  Rng rng(11);
  for (u32 p : {2u, 3u, 5u}) {
    Tower tw(p);
    const Level* lv = tw.level(4);
    for (int it = 0; it < 30; ++it) {
      Fq a = rand_elem(lv, rng);
      CHECK(frobenius(a) == a.pow(p));
      CHECK(frobenius(a, 2) == a.pow((u64)p * p));
      CHECK(frobenius(a, 4) == a);
    }
  }
}

TEST_CASE("embeddings are ring maps, commute over the base, and descend") {
  Rng rng(5);
  for (u32 p : {2u, 3u, 5u}) {
    for (u32 n : {1u, 2u}) {
      Tower tw(p, n);
      const Level* la = tw.level(2 * n);
      const Level* lc = tw.level(6 * n);
      for (int it = 0; it < 25; ++it) {
        Fq a = rand_elem(la, rng), b = rand_elem(la, rng);
        CHECK(tw.embed(a * b, lc) == tw.embed(a, lc) * tw.embed(b, lc));
        CHECK(tw.embed(a + b, lc) == tw.embed(a, lc) + tw.embed(b, lc));
        // descent inverts the embedding
        auto back = tw.descend(tw.embed(a, lc), la);
        REQUIRE(back.has_value());
        CHECK(*back == a);
      }
      // base-rooted triangle commutes: base -> 2n -> 6n equals base -> 6n
      const Level* lb = tw.base();
      for (u64 i = 0; i < std::min<u64>(32, (u64)1 << lb->deg); ++i) {
        Fq e = lb->from_index(i);
        CHECK(tw.embed(tw.embed(e, la), lc) == tw.embed(e, lc));
      }
    }
  }
}

TEST_CASE("subfield membership matches Frobenius fixedness") {
  Rng rng(23);
  Tower tw(3);
  const Level* l6 = tw.level(6);
  int in2 = 0;
  for (int it = 0; it < 200; ++it) {
    Fq a = rand_elem(l6, rng);
    bool fixed = frobenius(a, 2) == a;  // fixed by x -> x^{p^2}
    CHECK(tw.in_subfield(a, 2) == fixed);
    in2 += fixed;
  }
  CHECK(in2 >= 1);  // 9/729 chance each; at 200 draws hitting none is unlikely but fine
}

TEST_CASE("tower construction is deterministic across instances") {
  Tower t1(5, 2, 1), t2(5, 2, 99);
  CHECK(t1.level(4)->modulus == t2.level(4)->modulus);
  CHECK(t1.embedding(2, 4).gen_image == t2.embedding(2, 4).gen_image);
  CHECK(t1.embedding(2, 8).gen_image == t2.embedding(2, 8).gen_image);
}

TEST_CASE("linear_roots finds exactly the roots found by brute force") {
  Rng rng(31);
  for (u32 p : {2u, 3u, 5u}) {
    Tower tw(p);
    const Level* lv = tw.level(2);
    u64 q = (u64)p * p;
    for (int it = 0; it < 20; ++it) {
      int d = 2 + (int)rng.below(5);
      std::vector<Fq> cs;
      for (int i = 0; i <= d; ++i) cs.push_back(rand_elem(lv, rng));
      cs[d] = lv->one();
      Poly<Fq> f(lv->zero(), cs);
      std::set<std::string> brute;
      for (u64 i = 0; i < q; ++i) {
        Fq x = lv->from_index(i);
        if (eval(f, x).is_zero()) brute.insert(fq_repr(x));
      }
      std::set<std::string> fast;
      for (const Fq& r : linear_roots(lv, f.c, 17)) fast.insert(fq_repr(r));
      CHECK(fast == brute);
    }
  }
}

TEST_CASE("polynomial divrem, gcd and powmod identities") {
  Rng rng(41);
  Tower tw(7);
  const Level* lv = tw.level(2);
  for (int it = 0; it < 30; ++it) {
    auto rp = [&](int dmax) {
      std::vector<Fq> cs;
      int d = 1 + (int)rng.below(dmax);
      for (int i = 0; i <= d; ++i) cs.push_back(rand_elem(lv, rng));
      return Poly<Fq>(lv->zero(), cs);
    };
    Poly<Fq> a = rp(8), b = rp(5);
    if (b.is_zero()) continue;
    auto [q, r] = divrem(a, b);
    CHECK(q * b + r == a);
    CHECK(r.deg() < b.deg());
    Poly<Fq> g = gcd(a, b);
    if (!g.is_zero()) {
      CHECK(divrem(a, g).second.is_zero());
      CHECK(divrem(b, g).second.is_zero());
    }
    Poly<Fq> m = rp(4);
    if (m.deg() >= 1) {
      Poly<Fq> x = Poly<Fq>::monomial(lv->one(), 1);
      CHECK(powmod(a, 5, m) == (a * a * a * a * a) % m);
      CHECK(powmod(x, lv->card(), m).deg() < m.deg());
    }
  }
}

TEST_CASE("rank-nullity and solve on random matrices") {
  Rng rng(59);
  Tower tw(5);
  const Level* lv = tw.base();
  for (int it = 0; it < 40; ++it) {
    u32 r = 1 + (u32)rng.below(6), c = 1 + (u32)rng.below(6);
    Mat<Fq> m(lv->zero(), r, c);
    for (u32 i = 0; i < r; ++i)
      for (u32 j = 0; j < c; ++j) m.at(i, j) = rand_elem(lv, rng);
    u32 rk = rank(m);
    auto ker = kernel(m);
    CHECK(rk + ker.size() == c);
    for (auto& v : ker) {
      auto mv = m.mul_vec(v);
      for (auto& e : mv) CHECK(e.is_zero());
    }
    // right-hand side in the column span must be solvable
    std::vector<Fq> x0(c);
    for (auto& e : x0) e = rand_elem(lv, rng);
    auto rhs = m.mul_vec(x0);
    auto sol = solve(m, rhs);
    REQUIRE(sol.has_value());
    CHECK(m.mul_vec(*sol) == rhs);
  }
}

TEST_CASE("determinants: gaussian and fraction-free agree over a poly ring") {
  Rng rng(61);
  Tower tw(5);
  const Level* lv = tw.base();
  // matrix of small polynomials; compare det_bareiss against evaluation
  for (int it = 0; it < 10; ++it) {
    u32 n = 2 + (u32)rng.below(3);
    Poly<Fq> zp(lv->zero());
    Mat<Poly<Fq>> m(zp, n, n);
    for (u32 i = 0; i < n; ++i)
      for (u32 j = 0; j < n; ++j) {
        std::vector<Fq> cs;
        for (int k = 0; k <= (int)rng.below(3); ++k) cs.push_back(rand_elem(lv, rng));
        m.at(i, j) = Poly<Fq>(lv->zero(), cs);
      }
    Poly<Fq> d = det_bareiss(m, one_like(zp));
    for (u64 t = 0; t < 5; ++t) {
      Fq x = lv->from_index(t);
      Mat<Fq> mv(lv->zero(), n, n);
      for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) mv.at(i, j) = eval(m.at(i, j), x);
      CHECK(det(mv) == eval(d, x));
    }
  }
}

TEST_CASE("element order anchors: least nonsquare and least trace-one") {
  // odd q: first nonsquare in enumeration order
  auto least_nonsquare = [](u32 p, u32 d) {
    Tower tw(p);
    const Level* lv = tw.level(d);
    Big e = (lv->card() - 1) / 2;
    u64 q = 1;
    for (u32 i = 0; i < d; ++i) q *= p;
    for (u64 i = 0; i < q; ++i) {
      Fq x = lv->from_index(i);
      if (x.is_zero()) continue;
      if (!x.pow(e).is_one()) return fq_repr(x);
    }
    return std::string("none");
  };
  CHECK(least_nonsquare(3, 1) == "2");
  CHECK(least_nonsquare(5, 1) == "2");
  CHECK(least_nonsquare(7, 1) == "3");
  CHECK(least_nonsquare(13, 1) == "2");
}

#include "jac3/factor.hpp"
#include "jac3/ratfunc.hpp"

TEST_CASE("factorize: multiply-back oracle with multiplicities") {
  Rng rng(71);
  for (u32 p : {2u, 3u, 5u, 13u}) {
    for (u32 d : {1u, 2u}) {
      Tower tw(p);
      const Level* lv = tw.level(d);
      for (int it = 0; it < 15; ++it) {
        // random product with forced repetitions
        Poly<Fq> f = one_like(Poly<Fq>(lv->zero()));
        int nf = 1 + (int)rng.below(3);
        for (int k = 0; k < nf; ++k) {
          std::vector<Fq> cs;
          int dd = 1 + (int)rng.below(3);
          for (int i = 0; i <= dd; ++i) {
            std::vector<u32> cc(lv->deg);
            for (u32& v : cc) v = (u32)rng.below(p);
            cs.emplace_back(lv, std::move(cc));
          }
          cs.back() = lv->one();
          Poly<Fq> g(lv->zero(), cs);
          u32 mult = 1 + (u32)rng.below(3);
          for (u32 m = 0; m < mult; ++m) f = f * g;
        }
        auto fac = factorize(f, 1234 + it);
        Poly<Fq> back = one_like(f);
        for (auto& u : fac) {
          CHECK(is_irreducible_poly(u.f));
          CHECK(u.f.lc().is_one());
          for (u32 m = 0; m < u.mult; ++m) back = back * u.f;
        }
        CHECK(back == make_monic(f));
      }
    }
  }
}

TEST_CASE("factorize handles pure p-th powers") {
  Tower tw(2);
  const Level* lv = tw.level(2);
  // (x^2 + g x + 1)^4 has zero derivative at every odd layer
  Poly<Fq> g(lv->zero(), {lv->one(), lv->gen(), lv->one()});
  Poly<Fq> f = one_like(g);
  for (int i = 0; i < 4; ++i) f = f * g;
  auto fac = factorize(f, 5);
  Poly<Fq> back = one_like(f);
  u32 total = 0;
  for (auto& u : fac) {
    for (u32 m = 0; m < u.mult; ++m) back = back * u.f;
    total += u.mult * (u32)u.f.deg();
  }
  CHECK(back == f);
  CHECK(total == 8);
}

TEST_CASE("rational functions form a field and reduce") {
  Rng rng(83);
  Tower tw(5);
  const Level* lv = tw.base();
  auto rp = [&](int dmax) {
    std::vector<Fq> cs;
    for (int i = 0; i <= dmax; ++i) cs.push_back(lv->from_index(rng.below(5)));
    return Poly<Fq>(lv->zero(), cs);
  };
  for (int it = 0; it < 40; ++it) {
    Poly<Fq> a = rp(4), b = rp(3), c = rp(2);
    if (b.is_zero() || c.is_zero()) continue;
    RF x(a, b), y(c, one_like(c));
    CHECK((x + y) - y == x);
    if (!x.is_zero()) CHECK((x * x.inv()).is_one());
    CHECK(x.den.lc().is_one());
    CHECK(gcd(x.num, x.den).deg() <= 0);
    // field: polynomials over RF admit divrem
    Poly<RF> f(zero_like(x));
    f.c = {x, y, one_like(x)};
    f.norm();
    Poly<RF> g(zero_like(x));
    g.c = {y, one_like(x)};
    g.norm();
    if (!g.is_zero() && f.deg() >= g.deg()) {
      auto [q, r] = divrem(f, g);
      CHECK(q * g + r == f);
    }
  }
}
