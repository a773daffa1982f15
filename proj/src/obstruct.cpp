#include "jac3/obstruct.hpp"

#include "jac3/rr.hpp"

namespace jac3 {

Divisor base_frobenius_divisor(CurveCtx& cm, u32 base_deg, const Divisor& D) {
  Divisor out;
  for (const auto& t : D.terms)
    out.add(make_place(cm, pt_frobenius(t.first.rep, base_deg)), t.second);
  return out;
}

ThetaData find_rational_theta(CurveCtx& c) {
  Divisor D;
  const auto& d1 = places_of_degree(c, 1);
  if (d1.size() >= 2) {
    D.add(d1[0], 1);
    D.add(d1[1], 1);
    return {Mode::rational, D};
  }
  if (d1.size() == 1) {
    D.add(d1[0], 2);
    return {Mode::rational, D};
  }
  const auto& d2 = places_of_degree(c, 2);
  if (!d2.empty()) {
    D.add(d2[0], 1);
    return {Mode::rational, D};
  }
  // no effective degree-two divisor: fall back to a small difference class
  for (u32 k = 3; k <= 4; ++k) {
    const auto& hi = places_of_degree(c, k + 2);
    const auto& lo = places_of_degree(c, k);
    if (hi.empty() || lo.empty()) continue;
    D.add(hi[0], 1);
    D.add(lo[0], -1);
    return {Mode::rational, D};
  }
  JAC3_CHECK(false, "no small degree-two class over the base");
  return {Mode::rational, D};
}

// random effective degree-two divisor from places of degree at most two
static Divisor random_eff2(CurveCtx& c, Rng& rng) {
  Place P = random_place(c, 2, rng);
  Divisor d;
  d.add(P, 1);
  if (P.rdeg == 1) d.add(random_place(c, 1, rng), 1);
  return d;
}

std::optional<ObstructionInput> find_rational_instance(CurveCtx& c, Rng& rng, u32 budget) {
  ThetaData th = find_rational_theta(c);
  for (u32 it = 0; it < budget; ++it) {
    Divisor a = random_eff2(c, rng) - random_eff2(c, rng);
    if (a.is_zero() || is_principal(c, a)) continue;
    if (sigma_doubleprime_test(c, a)) continue;
    TrigonalData td(c, a);
    if (sigma_prime_test(td)) continue;
    return ObstructionInput{Mode::rational, th, a};
  }
  return std::nullopt;
}

// effective degree-two subdivisors rational over the working base
static std::vector<Divisor> degree_two_subdivisors(const Divisor& E) {
  std::vector<Divisor> out;
  const auto& T = E.terms;
  for (size_t i = 0; i < T.size(); ++i) {
    if (T[i].first.rdeg == 2) {
      Divisor d;
      d.add(T[i].first, 1);
      out.push_back(d);
    }
    if (T[i].first.rdeg != 1) continue;
    if (T[i].second >= 2) {
      Divisor d;
      d.add(T[i].first, 2);
      out.push_back(d);
    }
    for (size_t j = i + 1; j < T.size(); ++j)
      if (T[j].first.rdeg == 1) {
        Divisor d;
        d.add(T[i].first, 1);
        d.add(T[j].first, 1);
        out.push_back(d);
      }
  }
  return out;
}

std::optional<ObstructionInput> find_antirational_data(CurveCtx& base, CurveCtx& c2, Rng& rng,
                                                       u32 budget) {
  JAC3_CHECK(c2.kb->deg == 2 * base.kb->deg, "second context must be the quadratic extension");
  u32 nq = base.kb->deg;
  u64 q = base.kb->card().convert_to<u64>();
  std::optional<Divisor> D;
  // a line section splitting into conjugate halves gives sigma D = K - D on
  // the nose; scan the rational lines first
  for (u64 n = 1; n < q * q * q && !D; ++n) {
    std::array<Fq, 3> v{base.kb->from_index(n % q), base.kb->from_index(n / q % q),
                        base.kb->from_index(n / (q * q))};
    u32 fi = 0;
    while (v[fi].is_zero()) ++fi;
    if (!v[fi].is_one()) continue;  // each line once, leading coefficient one
    Form3 L(c2.kb, 1);
    L.set(1, 0, base.tw.embed(v[0], c2.kb));
    L.set(0, 1, base.tw.embed(v[1], c2.kb));
    L.set(0, 0, base.tw.embed(v[2], c2.kb));
    Divisor E = divisor_of_form(c2, L);
    for (const Divisor& d : degree_two_subdivisors(E)) {
      Divisor sd = base_frobenius_divisor(c2, nq, d);
      if (!(sd == d) && sd == E - d) {
        D = d;
        break;
      }
    }
  }
  if (!D) {
    // no line splits: settle for the class relation d + sigma d ~ K
    Divisor K = canonical_divisor(c2);
    for (u32 it = 0; it < budget && !D; ++it) {
      Divisor d = random_eff2(c2, rng);
      Divisor sd = base_frobenius_divisor(c2, nq, d);
      if (!(sd == d) && is_principal(c2, d + sd - K)) D = d;
    }
  }
  if (!D) return std::nullopt;
  for (u32 it = 0; it < budget; ++it) {
    Divisor cd = random_eff2(c2, rng);
    Divisor a = cd - base_frobenius_divisor(c2, nq, cd);
    if (a.is_zero() || is_principal(c2, a)) continue;
    if (is_principal(c2, a * 2)) continue;  // two-torsion collapses to the rational mode
    if (sigma_doubleprime_test(c2, a)) continue;
    TrigonalData td(c2, a);
    if (sigma_prime_test(td)) continue;
    return ObstructionInput{Mode::antirational, ThetaData{Mode::antirational, *D}, a};
  }
  return std::nullopt;
}

PinnedQuadric pin_canonical_quadric(TrigonalData& td) {
  CurveCtx& base = *td.ctx;
  std::vector<std::vector<Fq>> rows;
  PinnedQuadric out{QuadForm(base.kb), 10, 0, 0};
  auto solved = [&]() {
    if (rows.size() < 9) return false;
    Mat<Fq> M(base.kb->zero(), (u32)rows.size(), 10);
    for (u32 r = 0; r < (u32)rows.size(); ++r)
      for (u32 k = 0; k < 10; ++k) M.at(r, k) = rows[r][k];
    auto ker = kernel(M);
    JAC3_CHECK(!ker.empty(), "no quadric through the canonical model");
    out.kernel_dim = (u32)ker.size();
    if (ker.size() != 1) return false;
    out.quad.c = ker[0];
    for (const Fq& e : out.quad.c)
      if (!e.is_zero()) {
        Fq s = e.inv();
        for (Fq& vv : out.quad.c) vv = vv * s;
        break;
      }
    return true;
  };
  for (u32 m = 1; m <= 6; ++m) {
    CurveCtx& cm = td.ext(m);
    const PencilRep& pp = td.plus_at(m);
    const PencilRep& pmn = td.minus_at(m);
    u64 n = cm.kb->card().convert_to<u64>();
    for (u64 i = 0; i <= n; ++i) {
      P1Val tau = i < n ? P1Val{cm.kb->from_index(i), false} : P1Val{cm.kb->zero(), true};
      auto pts = fiber_tilde_points(cm, pp, tau);
      if (pts.empty()) continue;
      for (const TildePoint& pt : pts) {
        P1Val tp = second_value(cm, pmn, pt);
        auto z = segre_point(cm.tw, cm.kb, pt.tau, tp);
        std::vector<Fq> mono(10, cm.kb->zero());
        for (u32 ii = 0; ii < 4; ++ii)
          for (u32 jj = ii; jj < 4; ++jj) mono[QuadForm::idx(ii, jj)] = z[ii] * z[jj];
        restricted_rows(base, mono, rows);
      }
      out.rows = (u32)rows.size();
      out.mmax = m;
      if (solved()) return out;
    }
  }
  JAC3_CHECK(false, "sample points leave the quadric underdetermined");
  return out;
}

SwapReport swap_test(CurveCtx& base, TrigonalData& td, u32 samples) {
  JAC3_CHECK(samples >= 3, "swap test needs at least three samples");
  JAC3_CHECK(td.ctx->kb->deg % base.kb->deg == 0, "base field must sit under the working field");
  u32 nq = base.kb->deg;
  SwapReport out;
  u32 m = 1;
  while (td.ext(m).kb->card() + 1 < samples) ++m;
  CurveCtx& cm = td.ext(m);
  const PencilRep& pp = td.plus_at(m);
  const PencilRep& pmn = td.minus_at(m);
  u64 n = cm.kb->card().convert_to<u64>();
  u32 plus_hits = 0, minus_hits = 0;
  std::vector<std::array<Fq, 4>> mob_plus, mob_minus;
  auto homog = [&](const P1Val& v) {
    return v.inf ? std::array<Fq, 2>{cm.kb->one(), cm.kb->zero()}
                 : std::array<Fq, 2>{v.v, cm.kb->one()};
  };
  for (u64 i = 0; i <= n && out.sampled < samples; ++i) {
    P1Val tau = i < n ? P1Val{cm.kb->from_index(i), false} : P1Val{cm.kb->zero(), true};
    Divisor E = pencil_fiber(cm, pp, tau);
    Divisor sE = base_frobenius_divisor(cm, nq, E);
    ++out.sampled;
    // the parameter correspondence tau -> t is semilinear: a Moebius map
    // composed with the q-power map, so the rank test pairs t with tau^q
    P1Val stau = tau.inf ? tau : P1Val{frobenius(tau.v, nq), false};
    auto th = homog(stau);
    // the value at a place of higher residue degree lives upstairs; the
    // conjugate fiber matches only when it descends to the working base
    auto probe = [&](const PencilRep& pen) -> std::optional<P1Val> {
      P1Val raw = pencil_value(cm, pen, sE.terms[0].first);
      P1Val t = raw;
      if (!raw.inf && raw.v.lv != cm.kb) {
        auto d = cm.tw.descend(raw.v, cm.kb);
        if (!d) return std::nullopt;
        t = P1Val{*d, false};
      }
      if (!(pencil_fiber(cm, pen, t) == sE)) return std::nullopt;
      return t;
    };
    if (auto tpl = probe(pp)) {
      ++plus_hits;
      auto sh = homog(*tpl);
      mob_plus.push_back({sh[1] * th[0], sh[1] * th[1], sh[0] * th[0], sh[0] * th[1]});
      continue;
    }
    if (auto tmn = probe(pmn)) {
      ++minus_hits;
      auto sh = homog(*tmn);
      mob_minus.push_back({sh[1] * th[0], sh[1] * th[1], sh[0] * th[0], sh[0] * th[1]});
    }
  }
  // the parameter correspondence must be one invertible Moebius map
  auto mobius_fits = [&](const std::vector<std::array<Fq, 4>>& rws) {
    if (rws.size() < 3) return false;
    Mat<Fq> M(cm.kb->zero(), (u32)rws.size(), 4);
    for (u32 r = 0; r < (u32)rws.size(); ++r)
      for (u32 k = 0; k < 4; ++k) M.at(r, k) = rws[r][k];
    auto ker = kernel(M);
    if (ker.size() != 1) return false;
    return !(ker[0][0] * ker[0][3] - ker[0][1] * ker[0][2]).is_zero();
  };
  out.agreed = std::max(plus_hits, minus_hits);
  if (minus_hits == out.sampled && mobius_fits(mob_minus)) {
    out.outcome = "swapped";
    out.mobius_ok = true;
  } else if (plus_hits == out.sampled && mobius_fits(mob_plus)) {
    out.outcome = "fixed";
    out.mobius_ok = true;
  } else {
    out.outcome = "inconclusive";
  }
  return out;
}

i64 twisted_odd_count(CurveCtx& base, TrigonalData& td, u32 m) {
  JAC3_CHECK(m % 2 == 1, "even levels carry the plain quotient count");
  JAC3_CHECK(td.ctx->kb->deg == 2 * base.kb->deg, "the pencil data must live over the quadratic extension");
  u32 nq = base.kb->deg;
  CurveCtx& cm = td.ext(m);
  const PencilRep& pp = td.plus_at(m);
  u64 n = cm.kb->card().convert_to<u64>();
  i64 cnt = 0;
  for (u64 i = 0; i <= n; ++i) {
    P1Val tau = i < n ? P1Val{cm.kb->from_index(i), false} : P1Val{cm.kb->zero(), true};
    Divisor E = pencil_fiber(cm, pp, tau);
    std::vector<Divisor> subs = degree_two_subdivisors(E);
    std::vector<Divisor> seen;
    for (const Divisor& d : subs) {
      const Divisor d2 = E - d;
      bool dup = false;
      for (const Divisor& s0 : seen)
        if (s0 == d || s0 == d2) {
          dup = true;
          break;
        }
      if (dup) continue;
      seen.push_back(d);
      JAC3_CHECK(!(d == d2), "a doubled half pair belongs to a degenerate class");
      Divisor sd = base_frobenius_divisor(cm, nq * m, d);
      // the pair is fixed when the conjugate of one half plus either half cuts
      // out a line section, i.e. lands in the canonical class effectively
      for (const Divisor* other : {&d, &d2}) {
        Form3 L = line_through(cm, *other);
        if (divisor_of_form(cm, L) == sd + *other) {
          ++cnt;
          break;
        }
      }
    }
  }
  return cnt;
}

ObstructionReport decide_obstruction(CurveCtx& base, const ObstructionInput& in, u32 samples) {
  ObstructionReport rep;
  rep.mode = in.mode;
  JAC3_CHECK(in.theta.D.degree() == 2, "theta class must have degree two");
  JAC3_CHECK(in.a.degree() == 0, "twisting class must have degree zero");
  if (in.mode == Mode::rational) {
    JAC3_CHECK(linearly_equivalent(base, sigma_divisor(base, in.theta.D, 1), in.theta.D),
               "rational theta class must be Frobenius-stable");
    JAC3_CHECK(linearly_equivalent(base, sigma_divisor(base, in.a, 1), in.a),
               "rational twisting class must be Frobenius-stable");
    if (is_principal(base, in.a)) {
      rep.degenerate = true;
      rep.degeneracy = "zero";
      rep.witness = "a ~ 0";
      return rep;
    }
    if (auto w = sigma_doubleprime_test(base, in.a)) {
      rep.degenerate = true;
      rep.degeneracy = "point-difference";
      rep.witness = "a ~ " + divisor_repr(w->p) + " - " + divisor_repr(w->q) +
                    " over extension degree " + std::to_string(w->m);
      return rep;
    }
    TrigonalData td(base, in.a);
    if (auto w = sigma_prime_test(td)) {
      rep.degenerate = true;
      rep.degeneracy = "doubled-fiber";
      rep.witness = "2E ~ K + a with E = " + divisor_repr(w->half) + " over extension degree " +
                    std::to_string(w->m);
      return rep;
    }
    rep.genus = genus_certificate(td);
    JAC3_CHECK(rep.genus.ok, "genus certificate failed on an accepted class");
    rep.coord_rank = segre_rank(td, 4);
    JAC3_CHECK(rep.coord_rank == 4, "coordinate functions must span four dimensions");
    PinnedQuadric pq = pin_canonical_quadric(td);
    rep.kernel_dim = pq.kernel_dim;
    rep.quad = pq.quad;
    rep.cls = classify(pq.quad);
    JAC3_CHECK(rep.cls.nondegenerate, "canonical quadric must be smooth");
    JAC3_CHECK(rep.cls.split, "the quadric of a rational instance must be split");
    rep.split = true;
    rep.nontrivial = false;
    rep.ext_degree = 1;
    return rep;
  }
  CurveCtx c2(base.tw, base.F, base.w * 2, base.seed);
  u32 nq = base.kb->deg;
  JAC3_CHECK(linearly_equivalent(c2, base_frobenius_divisor(c2, nq, in.theta.D),
                                 canonical_divisor(c2) - in.theta.D),
             "twisted theta class must be carried to K - D");
  JAC3_CHECK(is_principal(c2, in.a + base_frobenius_divisor(c2, nq, in.a)),
             "twisted class must be carried to its negative");
  JAC3_CHECK(!is_principal(c2, in.a * 2), "two-torsion twisting class belongs to the rational mode");
  if (is_principal(c2, in.a)) {
    rep.degenerate = true;
    rep.degeneracy = "zero";
    rep.witness = "a ~ 0";
    return rep;
  }
  if (auto w = sigma_doubleprime_test(c2, in.a)) {
    rep.degenerate = true;
    rep.degeneracy = "point-difference";
    rep.witness = "a ~ " + divisor_repr(w->p) + " - " + divisor_repr(w->q) +
                  " over extension degree " + std::to_string(w->m);
    return rep;
  }
  TrigonalData td(c2, in.a);
  if (auto w = sigma_prime_test(td)) {
    rep.degenerate = true;
    rep.degeneracy = "doubled-fiber";
    rep.witness = "2E ~ K + a with E = " + divisor_repr(w->half) + " over extension degree " +
                  std::to_string(w->m);
    return rep;
  }
  if (base.kb->p >= 5) {
    rep.genus = genus_certificate(td);
  } else {
    // even levels agree with the quadratic-base quotient counts; odd levels
    // count the twisted fixed pairs; the sixth stays as a forward check
    std::vector<i64> C = quotient_counts(td, 3);
    i64 n1 = twisted_odd_count(base, td, 1);
    i64 n3 = twisted_odd_count(base, td, 3);
    rep.genus = genus_from_counts(base.kb->card(), {n1, C[0], n3, C[1], -1, C[2]});
  }
  JAC3_CHECK(rep.genus.ok, "genus certificate failed on an accepted class");
  rep.swap = swap_test(base, td, samples);
  JAC3_CHECK(rep.swap.outcome == "swapped", "conjugation must exchange the two pencils");
  TwistedModel tm = descend_quadric(base.kb);
  rep.quad = tm.quad;
  rep.cls = classify(tm.quad);
  JAC3_CHECK(rep.cls.nondegenerate, "descended quadric must be smooth");
  JAC3_CHECK(!rep.cls.split, "descended quadric must be nonsplit");
  rep.ext_unit = tm.unit;
  rep.ext_degree = 2;
  rep.split = false;
  rep.nontrivial = true;
  return rep;
}

}  // namespace jac3
