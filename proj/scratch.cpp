#include <cstdio>
#include "jac3/obstruct.hpp"
#include "jac3/rr.hpp"

using namespace jac3;

static Form3 klein(const Level* lv) {
  Form3 f(lv, 4);
  f.set(3, 1, lv->one());
  f.set(0, 3, lv->one());
  f.set(1, 0, lv->one());
  return f;
}

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  Tower tw(3);
  CurveCtx base(tw, klein(tw.base()), 1, 13);
  CurveCtx c2(tw, base.F, 2, 13);
  Rng rng(404);
  auto anti = find_antirational_data(base, c2, rng);
  if (!anti) { printf("no anti data\n"); return 1; }
  TrigonalData td(c2, anti->a);
  std::vector<i64> C = quotient_counts(td, 3);
  printf("C = %lld %lld %lld\n", (long long)C[0], (long long)C[1], (long long)C[2]);
  i64 n1 = twisted_odd_count(base, td, 1);
  printf("n1 = %lld\n", (long long)n1);
  i64 n3 = twisted_odd_count(base, td, 3);
  printf("n3 = %lld\n", (long long)n3);
  auto cert = genus_from_counts(base.kb->card(), {n1, C[0], n3, C[1], -1, C[2]});
  printf("fit_ok=%d weil_ok=%d g2x=%d g3x=%d g5x=%d ok=%d\n", (int)cert.fit_ok,
         (int)cert.weil_ok, (int)cert.g2_excluded, (int)cert.g3_excluded,
         (int)cert.g5_excluded, (int)cert.ok);
  return 0;
}
