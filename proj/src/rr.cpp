#include "jac3/rr.hpp"

#include <algorithm>

#include "jac3/linalg.hpp"

namespace jac3 {
namespace {

// reduced row echelon accumulator for independence filtering
struct RowSpan {
  std::vector<std::vector<Fq>> rows;  // mutually reduced, leading entry 1
  std::vector<u32> lead;

  bool add(std::vector<Fq> v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      const Fq& c = v[lead[r]];
      if (c.is_zero()) continue;
      Fq cc = c;
      for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] - cc * rows[r][j];
    }
    u32 piv = (u32)v.size();
    for (u32 j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) {
        piv = j;
        break;
      }
    if (piv == v.size()) return false;
    Fq inv = v[piv].inv();
    for (Fq& e : v) e = e * inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      const Fq& c = rows[r][piv];
      if (c.is_zero()) continue;
      Fq cc = c;
      for (size_t j = 0; j < v.size(); ++j) rows[r][j] = rows[r][j] - cc * v[j];
    }
    rows.push_back(std::move(v));
    lead.push_back(piv);
    return true;
  }
};

Form3 form_from_vec(const Level* lv, u32 d, const std::vector<Fq>& v) {
  Form3 G(lv, d);
  G.c = v;
  return G;
}

// coefficient vectors of F * (every monomial of degree m - 4)
std::vector<std::vector<Fq>> curve_multiples(CurveCtx& ctx, u32 m) {
  std::vector<std::vector<Fq>> out;
  if (m < 4) return out;
  u32 md = m - 4;
  for (u32 i = 0; i <= md; ++i)
    for (u32 j = 0; i + j <= md; ++j) {
      Form3 mono(ctx.kb, md);
      mono.set(i, j, ctx.kb->one());
      out.push_back((mono * ctx.F).c);
    }
  return out;
}

// linear conditions on degree-m forms: vanish to order A(P) along the curve at each P
Mat<Fq> vanishing_matrix(CurveCtx& ctx, u32 m, const Divisor& A) {
  const Level* kb = ctx.kb;
  u32 cols = Form3::count(m);
  std::vector<std::vector<Fq>> rows;
  for (const auto& term : A.terms) {
    if (term.second <= 0) continue;
    u32 e = (u32)term.second;
    const Place& P = term.first;
    const LocalPar& lp = local_par(ctx, P, e + 2);
    const Level* L = P.rep.x.lv;
    std::vector<Series<Fq>> px{Series<Fq>::constant(L->one(), e)};
    std::vector<Series<Fq>> py = px, pz = px;
    Series<Fq> sx = lp.x.trunc(e), sy = lp.y.trunc(e), sz = lp.z.trunc(e);
    for (u32 k = 1; k <= m; ++k) {
      px.push_back(px.back() * sx);
      py.push_back(py.back() * sy);
      pz.push_back(pz.back() * sz);
    }
    std::vector<std::vector<Fq>> colco(cols);
    Form3 shape(kb, m);
    for (u32 i = 0; i <= m; ++i)
      for (u32 j = 0; i + j <= m; ++j) {
        Series<Fq> s = px[i] * py[j] * pz[m - i - j];
        colco[shape.idx(i, j)] = s.c;
      }
    for (u32 t = 0; t < e; ++t) {
      std::vector<std::vector<Fq>> sub(P.rdeg, std::vector<Fq>(cols, kb->zero()));
      for (u32 c = 0; c < cols; ++c) {
        std::vector<Fq> co = kb_coords(ctx, colco[c][t]);
        for (u32 r = 0; r < P.rdeg; ++r) sub[r][c] = co[r];
      }
      for (auto& r : sub) rows.push_back(std::move(r));
    }
  }
  Mat<Fq> M(kb->zero(), (u32)rows.size(), cols);
  for (u32 r = 0; r < rows.size(); ++r)
    for (u32 c = 0; c < cols; ++c) M.at(r, c) = rows[r][c];
  return M;
}

// basis of L(D) without the duality cross-check
RRBasis rr_raw(CurveCtx& ctx, const Divisor& D) {
  const Level* kb = ctx.kb;
  Divisor Dpos;
  for (const auto& term : D.terms)
    if (term.second > 0) Dpos.add(term.first, term.second);
  i64 dplus = Dpos.degree();
  u32 m = 2;
  while ((i64)(4 * m) < dplus + 6) ++m;

  // denominator: a degree-m form vanishing on Dpos but not on the whole curve
  Mat<Fq> M1 = vanishing_matrix(ctx, m, Dpos);
  std::vector<std::vector<Fq>> k1 = kernel(M1);
  RowSpan span1;
  for (auto& fv : curve_multiples(ctx, m)) span1.add(fv);
  Form3 den(kb, m);
  bool found = false;
  for (const auto& v : k1) {
    if (span1.add(v)) {
      den = form_from_vec(kb, m, v);
      found = true;
      break;
    }
  }
  JAC3_CHECK(found, "no denominator form independent of the curve");

  Divisor divh = divisor_of_form(ctx, den);
  for (const auto& term : Dpos.terms)
    JAC3_CHECK(divh.mult_of(term.first) >= term.second, "denominator misses required vanishing");
  Divisor A = divh - D;
  JAC3_CHECK(A.is_effective(), "pole bound must be effective");

  Mat<Fq> M2 = vanishing_matrix(ctx, m, A);
  std::vector<std::vector<Fq>> k2 = kernel(M2);
  RowSpan span2;
  for (auto& fv : curve_multiples(ctx, m)) span2.add(fv);
  RRBasis B{den, {}};
  for (const auto& v : k2)
    if (span2.add(v)) B.nums.push_back(form_from_vec(kb, m, v));
  return B;
}

}  // namespace

Divisor canonical_divisor(CurveCtx& ctx) {
  Form3 line(ctx.kb, 1);
  line.set(0, 0, ctx.kb->one());  // the line z = 0
  return divisor_of_form(ctx, line);
}

RRBasis rr_space(CurveCtx& ctx, const Divisor& D) {
  RRBasis B = rr_raw(ctx, D);
  Divisor K = canonical_divisor(ctx);
  RRBasis Bk = rr_raw(ctx, K - D);
  JAC3_CHECK((i64)B.dim() - (i64)Bk.dim() == D.degree() - 2,
             "dimension identity h0(D) - h0(K-D) = deg D - 2 failed");
  return B;
}

u32 h0(CurveCtx& ctx, const Divisor& D) { return rr_space(ctx, D).dim(); }

bool is_principal(CurveCtx& ctx, const Divisor& D) {
  if (D.degree() != 0) return false;
  return h0(ctx, D) == 1;
}

bool linearly_equivalent(CurveCtx& ctx, const Divisor& A, const Divisor& B) {
  return is_principal(ctx, A - B);
}

Divisor unique_effective(CurveCtx& ctx, const Divisor& D) {
  RRBasis B = rr_space(ctx, D);
  JAC3_CHECK(B.dim() == 1, "divisor class is not rigid");
  Divisor E = D + divisor_of_ratio(ctx, B.nums[0], B.den);
  JAC3_CHECK(E.is_effective(), "effective representative is not effective");
  JAC3_CHECK(E.degree() == D.degree(), "representative changes degree");
  return E;
}

Place random_place(CurveCtx& ctx, u32 dmax, Rng& rng) {
  JAC3_CHECK(dmax >= 1, "need a positive degree bound");
  for (int attempt = 0; attempt < 64; ++attempt) {
    u32 d = 1 + (u32)rng.below(dmax);
    const std::vector<Place>& pool = places_of_degree(ctx, d);
    if (pool.empty()) continue;
    return pool[rng.below(pool.size())];
  }
  for (u32 d = 1; d <= dmax; ++d) {
    const std::vector<Place>& pool = places_of_degree(ctx, d);
    if (!pool.empty()) return pool[rng.below(pool.size())];
  }
  throw error("curve has no closed points up to the degree bound");
}

}  // namespace jac3
