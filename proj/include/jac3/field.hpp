#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace jac3 {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using Big = boost::multiprecision::cpp_int;

struct error : std::runtime_error {
  explicit error(const std::string& m) : std::runtime_error(m) {}
};

#define JAC3_CHECK(cond, msg) \
  do { if (!(cond)) throw ::jac3::error(std::string("check failed: ") + (msg)); } while (0)

class Tower;
struct Level;

// Dense matrix over F_p, row-major.
struct FpMat {
  u32 p = 0, rows = 0, cols = 0;
  std::vector<u32> a;

  FpMat() = default;
  FpMat(u32 p_, u32 r, u32 c) : p(p_), rows(r), cols(c), a((size_t)r * c, 0) {}
  u32& at(u32 i, u32 j) { return a[(size_t)i * cols + j]; }
  u32 at(u32 i, u32 j) const { return a[(size_t)i * cols + j]; }
  std::vector<u32> mul_vec(const std::vector<u32>& v) const;
  FpMat mul(const FpMat& o) const;
  static FpMat identity(u32 p_, u32 n);
  FpMat pow(u64 e) const;
};

// Reduced-row-echelon solver for  fwd * u = v  with full column rank.
struct FpSolver {
  FpMat red;               // rref of fwd, rows x cols
  FpMat ops;               // ops * fwd = red
  std::vector<u32> pivot;  // pivot[j] = row holding pivot of column j
  void build(const FpMat& fwd);
  // returns empty optional when inconsistent
  std::optional<std::vector<u32>> solve(const std::vector<u32>& v) const;
};

// Embedding F_{p^from} -> F_{p^to} fixed by the tower.
struct Embedding {
  u32 from_deg = 0, to_deg = 0;
  std::vector<u32> gen_image;  // coordinates in the target level
  FpMat fwd;                   // to_deg x from_deg over F_p
  FpSolver down;
};

// Element of F_{p^deg}: coordinates over F_p in the power basis of the
// level's modulus, least degree first; always exactly deg entries.
struct Fq {
  const Level* lv = nullptr;
  std::vector<u32> c;

  Fq() = default;
  Fq(const Level* l, std::vector<u32> cc) : lv(l), c(std::move(cc)) {}

  bool is_zero() const;
  bool is_one() const;
  Fq zero_like() const;
  Fq one_like() const;

  Fq operator-() const;
  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator*(const Fq& o) const;
  Fq operator/(const Fq& o) const;
  bool operator==(const Fq& o) const;
  bool operator!=(const Fq& o) const { return !(*this == o); }
  Fq inv() const;
  Fq pow(const Big& e) const;
};

inline Fq zero_like(const Fq& z) { return z.zero_like(); }
inline Fq one_like(const Fq& z) { return z.one_like(); }

// F_{p^deg} with a fixed monic irreducible modulus over F_p.
struct Level {
  u32 p = 0;
  u32 deg = 0;
  std::vector<u32> modulus;  // size deg + 1, monic
  FpMat frob;                // matrix of x -> x^p on the power basis
  mutable std::map<u32, FpMat> frob_pow_;  // e -> matrix of x -> x^{p^e}
  mutable std::mutex mu_;

  Big card() const;  // p^deg
  const FpMat& frob_pow(u32 e) const;

  Fq zero() const { return Fq(this, std::vector<u32>(deg, 0)); }
  Fq one() const {
    std::vector<u32> v(deg, 0);
    v[0] = 1 % p;
    return Fq(this, v);
  }
  Fq from_int(i64 n) const {
    i64 r = n % (i64)p;
    if (r < 0) r += p;
    std::vector<u32> v(deg, 0);
    v[0] = (u32)r;
    return Fq(this, v);
  }
  Fq gen() const {  // class of x; equals 0 at degree 1 (modulus x)
    std::vector<u32> v(deg, 0);
    if (deg > 1) v[1] = 1;
    return Fq(this, v);
  }
  // canonical enumeration: index n has digits of n base p, c[0] least significant
  Fq from_index(u64 n) const;
};

// strict ordering matching from_index (most significant coordinate first)
bool elem_less(const Fq& a, const Fq& b);
struct FqLess {
  bool operator()(const Fq& a, const Fq& b) const { return elem_less(a, b); }
};

Fq frobenius(const Fq& e, u32 times = 1);   // x -> x^{p^times}
u32 abs_trace(const Fq& e);                 // trace down to F_p
std::string fq_repr(const Fq& e);           // "c0,c1,..."
Fq fq_parse(const Level* lv, const std::string& s);

// Levels keyed by absolute degree over F_p.  Embeddings between levels are
// chosen once per tower and are coherent with the designated base level: for
// base_deg | a | c the triangle base->a->c commutes.
class Tower {
 public:
  Tower(u32 p, u32 base_deg = 1, u64 seed = 1);
  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  u32 p() const { return p_; }
  u32 base_deg() const { return n_; }
  const Level* level(u32 deg) const;
  const Level* base() const { return level(n_); }

  const Embedding& embedding(u32 from, u32 to) const;
  Fq embed(const Fq& e, const Level* to) const;
  std::optional<Fq> descend(const Fq& e, const Level* to) const;
  bool in_subfield(const Fq& e, u32 subdeg) const;

  // x -> x^{q^times}, q = p^base_deg
  Fq frob_q(const Fq& e, u32 times = 1) const;

 private:
  u32 p_, n_;
  u64 seed_;
  mutable std::mutex mu_;
  mutable std::map<u32, std::unique_ptr<Level>> levels_;
  mutable std::map<std::pair<u32, u32>, std::unique_ptr<Embedding>> embs_;

  const Embedding& embedding_locked(u32 from, u32 to) const;
  const Level* level_locked(u32 deg) const;
};

// Roots in the coefficient level of a polynomial given by its coefficient
// vector (constant first).  Used by the tower and by the factorization code.
std::vector<Fq> linear_roots(const Level* lv, const std::vector<Fq>& poly, u64 seed);

}  // namespace jac3
