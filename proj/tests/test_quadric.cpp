#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jac3/quadform.hpp"
#include "jac3/rng.hpp"

using namespace jac3;

static QuadForm hyperbolic(const Level* lv) {
  QuadForm Q(lv);
  Q.set(0, 1, lv->one());
  Q.set(2, 3, lv->one());
  return Q;
}

static Fq least_nonsquare(const Level* lv) {
  Big e = (lv->card() - 1) / 2;
  for (u64 i = 1;; ++i) {
    Fq x = lv->from_index(i);
    if (!x.pow(e).is_one()) return x;
  }
}

static Fq least_trace_one(const Level* lv) {
  for (u64 i = 0;; ++i) {
    Fq x = lv->from_index(i);
    if (abs_trace(x) == 1) return x;
  }
}

static QuadForm random_form(const Level* lv, Rng& rng) {
  QuadForm Q(lv);
  for (Fq& v : Q.c) v = lv->from_index(rng.below((u64)lv->card()));
  return Q;
}

static std::array<Fq, 4> random_vec(const Level* lv, Rng& rng) {
  return {lv->from_index(rng.below((u64)lv->card())), lv->from_index(rng.below((u64)lv->card())),
          lv->from_index(rng.below((u64)lv->card())), lv->from_index(rng.below((u64)lv->card()))};
}

TEST_CASE("hyperbolic form is split in every characteristic") {
  for (u32 p : {2u, 3u, 5u, 7u, 13u}) {
    Tower tw(p);
    auto cl = classify(hyperbolic(tw.base()));
    CHECK(cl.nondegenerate);
    CHECK(cl.split);
    CHECK(cl.invariant_bit == 0);
    CHECK(has_isotropic_plane(hyperbolic(tw.base())));
  }
  Tower t3(3);
  auto cl9 = classify(hyperbolic(t3.level(2)));
  CHECK(cl9.split);
  Tower t2(2);
  auto cl4 = classify(hyperbolic(t2.level(2)));
  CHECK(cl4.split);
}

TEST_CASE("norm-residue forms are nondegenerate and not split") {
  for (u32 p : {3u, 5u, 7u, 13u}) {
    Tower tw(p);
    const Level* lv = tw.base();
    QuadForm Q(lv);
    Q.set(0, 1, lv->one());
    Q.set(2, 2, lv->one());
    Q.set(3, 3, -least_nonsquare(lv));
    auto cl = classify(Q);
    CHECK(cl.nondegenerate);
    CHECK(!cl.split);
    CHECK(cl.invariant_bit == 1);
    CHECK(!has_isotropic_plane(Q));
  }
  for (u32 d : {1u, 2u}) {
    Tower tw(2);
    const Level* lv = tw.level(d);
    QuadForm Q(lv);
    Q.set(0, 1, lv->one());
    Q.set(2, 2, lv->one());
    Q.set(2, 3, lv->one());
    Q.set(3, 3, least_trace_one(lv));
    auto cl = classify(Q);
    CHECK(cl.nondegenerate);
    CHECK(!cl.split);
    CHECK(cl.invariant_bit == 1);
    CHECK(!has_isotropic_plane(Q));
  }
}

TEST_CASE("rank deficient forms are flagged degenerate") {
  for (u32 p : {2u, 5u}) {
    Tower tw(p);
    const Level* lv = tw.base();
    QuadForm Q(lv);
    Q.set(0, 1, lv->one());  // rank two
    CHECK(!classify(Q).nondegenerate);
    QuadForm R(lv);
    R.set(0, 0, lv->one());
    R.set(1, 1, lv->one());
    R.set(2, 2, lv->one());  // rank three, no x3
    CHECK(!classify(R).nondegenerate);
  }
}

TEST_CASE("split classification matches the exhaustive plane search") {
  Rng rng(909);
  int nonsplit_seen = 0;
  for (u32 p : {2u, 3u, 5u, 7u}) {
    Tower tw(p);
    int done = 0;
    for (int it = 0; it < 400 && done < 60; ++it) {
      QuadForm Q = random_form(tw.base(), rng);
      auto cl = classify(Q);
      if (!cl.nondegenerate) continue;
      ++done;
      CHECK(cl.split == has_isotropic_plane(Q));
      if (!cl.split) ++nonsplit_seen;
    }
    CHECK(done == 60);
  }
  // quadratic extensions: F4 and F9
  for (u32 p : {2u, 3u}) {
    Tower tw(p);
    const Level* lv = tw.level(2);
    int done = 0;
    for (int it = 0; it < 400 && done < 40; ++it) {
      QuadForm Q = random_form(lv, rng);
      auto cl = classify(Q);
      if (!cl.nondegenerate) continue;
      ++done;
      CHECK(cl.split == has_isotropic_plane(Q));
    }
    CHECK(done == 40);
  }
  CHECK(nonsplit_seen > 20);
}

TEST_CASE("ruling class is invariant under linear substitutions") {
  Rng rng(1111);
  for (u32 p : {2u, 3u, 7u}) {
    Tower tw(p);
    const Level* lv = tw.base();
    int done = 0;
    while (done < 25) {
      QuadForm Q = random_form(lv, rng);
      auto cl = classify(Q);
      if (!cl.nondegenerate) continue;
      Mat<Fq> T(lv->zero(), 4, 4);
      for (u32 i = 0; i < 4; ++i)
        for (u32 j = 0; j < 4; ++j) T.at(i, j) = lv->from_index(rng.below(p));
      if (det(T).is_zero()) continue;
      auto cl2 = classify(pullback(Q, T));
      CHECK(cl2.nondegenerate);
      CHECK(cl2.split == cl.split);
      CHECK(cl2.invariant_bit == cl.invariant_bit);
      ++done;
    }
  }
}

TEST_CASE("point sets pin down the quadric through them") {
  Tower tw(5);
  const Level* lv = tw.base();
  // segre image of P1 x P1: z = (u0 v0, u1 v0, u0 v1, u1 v1)
  std::vector<std::array<Fq, 4>> pts;
  for (u64 a = 0; a < 6; ++a)
    for (u64 b = 0; b < 6; ++b) {
      Fq u0 = a < 5 ? lv->one() : lv->zero(), u1 = a < 5 ? lv->from_index(a) : lv->one();
      Fq v0 = b < 5 ? lv->one() : lv->zero(), v1 = b < 5 ? lv->from_index(b) : lv->one();
      pts.push_back({u0 * v0, u1 * v0, u0 * v1, u1 * v1});
    }
  auto Q = quadric_through(lv, pts);
  REQUIRE(Q.has_value());
  for (const auto& z : pts) CHECK(Q->eval(z).is_zero());
  // x0 x3 - x1 x2 with the leading coefficient scaled to one
  QuadForm want(lv);
  want.set(0, 3, lv->one());
  want.set(1, 2, -lv->one());
  for (u32 k = 0; k < 10; ++k) CHECK(Q->c[k] == want.c[k]);
  auto cl = classify(*Q);
  CHECK(cl.nondegenerate);
  CHECK(cl.split);

  // too few points leave more than one quadric
  std::vector<std::array<Fq, 4>> few(pts.begin(), pts.begin() + 4);
  CHECK(!quadric_through(lv, few).has_value());

  // a set containing no quadric at all
  Rng rng(4242);
  bool threw = false;
  for (int it = 0; it < 50 && !threw; ++it) {
    std::vector<std::array<Fq, 4>> rnd;
    for (int k = 0; k < 14; ++k) rnd.push_back(random_vec(lv, rng));
    try {
      quadric_through(lv, rnd);
    } catch (const error&) {
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("descended twist models are nonsplit and split after extension") {
  for (u32 p : {3u, 5u, 7u, 13u}) {
    Tower tw(p);
    const Level* lv = tw.base();
    TwistedModel tm = descend_quadric(lv);
    CHECK(tm.unit == least_nonsquare(lv));
    auto cl = classify(tm.quad);
    CHECK(cl.nondegenerate);
    CHECK(!cl.split);
    CHECK(cl.invariant_bit == 1);
    CHECK(!has_isotropic_plane(tm.quad));
    auto cl2 = classify(base_change_quad(tw, tm.quad, tw.level(2)));
    CHECK(cl2.nondegenerate);
    CHECK(cl2.split);
  }
  for (u32 d : {1u, 2u}) {
    Tower tw(2);
    const Level* lv = tw.level(d);
    TwistedModel tm = descend_quadric(lv);
    CHECK(tm.unit == least_trace_one(lv));
    CHECK(abs_trace(tm.unit) == 1);
    auto cl = classify(tm.quad);
    CHECK(cl.nondegenerate);
    CHECK(!cl.split);
    CHECK(cl.invariant_bit == 1);
    CHECK(!has_isotropic_plane(tm.quad));
    auto cl2 = classify(base_change_quad(tw, tm.quad, tw.level(2 * d)));
    CHECK(cl2.nondegenerate);
    CHECK(cl2.split);
  }
}

TEST_CASE("ruling coordinates land on the descended model") {
  Rng rng(5151);
  for (u32 p : {3u, 7u, 2u}) {
    Tower tw(p);
    const Level* lv = tw.base();
    const Level* ext = tw.level(2);
    TwistedModel tm = descend_quadric(lv);
    QuadForm Qe = base_change_quad(tw, tm.quad, ext);
    Fq ue = tw.embed(tm.unit, ext);
    // the square, respectively artin-schreier, root of the unit
    Fq g = ext->zero();
    for (u64 n = 0; n < (u64)ext->card(); ++n) {
      Fq e = ext->from_index(n);
      if (p != 2 ? e * e == ue : e * e + e == ue) {
        g = e;
        break;
      }
    }
    REQUIRE((p != 2 ? g * g == ue : g * g + g == ue));
    std::vector<std::array<Fq, 4>> pts;
    for (int it = 0; it < 40; ++it) {
      Fq t = ext->from_index(rng.below((u64)ext->card()));
      Fq s = ext->from_index(rng.below((u64)ext->card()));
      std::array<Fq, 4> y = p != 2
                                ? std::array<Fq, 4>{ext->one(), t + s, g * (t - s), t * s}
                                : std::array<Fq, 4>{ext->one(), t + s, g * t + (g + ext->one()) * s,
                                                    t * s};
      CHECK(Qe.eval(y).is_zero());
      pts.push_back(y);
    }
    // enough samples pin the extension-field quadric down again
    auto R = quadric_through(ext, pts);
    REQUIRE(R.has_value());
    QuadForm norm = Qe;
    for (const Fq& e : norm.c)
      if (!e.is_zero()) {
        Fq s = e.inv();
        for (Fq& v : norm.c) v = v * s;
        break;
      }
    for (u32 k = 0; k < 10; ++k) CHECK(R->c[k] == norm.c[k]);
  }
}

TEST_CASE("discriminants scale by the square of the substitution determinant") {
  Rng rng(6161);
  for (u32 p : {3u, 5u, 11u}) {
    Tower tw(p);
    const Level* lv = tw.base();
    int done = 0;
    while (done < 15) {
      QuadForm Q = random_form(lv, rng);
      auto cl = classify(Q);
      if (!cl.nondegenerate) continue;
      Mat<Fq> T(lv->zero(), 4, 4);
      for (u32 i = 0; i < 4; ++i)
        for (u32 j = 0; j < 4; ++j) T.at(i, j) = lv->from_index(rng.below(p));
      Fq dt = det(T);
      if (dt.is_zero()) continue;
      auto cl2 = classify(pullback(Q, T));
      CHECK(cl2.invariant == dt * dt * cl.invariant);
      ++done;
    }
  }
}

TEST_CASE("polar identity and evaluation of substituted forms") {
  Rng rng(2222);
  for (u32 p : {2u, 3u, 5u}) {
    Tower tw(p);
    const Level* lv = tw.level(2);
    for (int it = 0; it < 20; ++it) {
      QuadForm Q = random_form(lv, rng);
      auto u = random_vec(lv, rng), v = random_vec(lv, rng);
      Fq a = lv->from_index(rng.below((u64)lv->card()));
      Fq b = lv->from_index(rng.below((u64)lv->card()));
      std::array<Fq, 4> w;
      for (u32 k = 0; k < 4; ++k) w[k] = a * u[k] + b * v[k];
      CHECK(Q.eval(w) == a * a * Q.eval(u) + b * b * Q.eval(v) + a * b * Q.polar(u, v));
      // pullback agrees with direct evaluation
      Mat<Fq> T(lv->zero(), 4, 4);
      for (u32 i = 0; i < 4; ++i)
        for (u32 j = 0; j < 4; ++j) T.at(i, j) = lv->from_index(rng.below((u64)lv->card()));
      QuadForm R = pullback(Q, T);
      auto z = random_vec(lv, rng);
      std::array<Fq, 4> Tz;
      for (u32 i = 0; i < 4; ++i) {
        Tz[i] = lv->zero();
        for (u32 j = 0; j < 4; ++j) Tz[i] = Tz[i] + T.at(i, j) * z[j];
      }
      CHECK(R.eval(z) == Q.eval(Tz));
    }
  }
}
