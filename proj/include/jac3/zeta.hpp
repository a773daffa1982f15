#pragma once
#include <string>
#include <vector>

#include "jac3/branch.hpp"

namespace jac3 {

// evidence that the quotient curve has genus four, from tame ramification in
// characteristic at least five or from point counts in small characteristic
struct GenusCertificate {
  bool ok = false;
  std::string method;            // "ramification" or "zeta"
  i64 ramification = -1;         // total when method is "ramification"
  Big Q = 0;
  std::vector<i64> counts;       // N_m used by the zeta fit
  std::vector<Big> real_coeffs;  // symmetric functions of the real spectrum, genus-four fit
  bool fit_ok = false;           // the genus-four fit is integral
  bool weil_ok = false;          // the fitted spectrum is real with bounded roots
  bool g2_excluded = false, g3_excluded = false, g5_excluded = false;
};

// whether x^g - b1 x^{g-1} + ... + (-1)^g b_g has only real roots of
// absolute value at most 2 sqrt(Q)
bool real_weil_valid(const std::vector<Big>& b, const Big& Q);

// counts of the quotient model over extensions m = 1..mmax
std::vector<i64> quotient_counts(TrigonalData& td, u32 mmax);

// zeta-side certificate from counts over F_Q, F_{Q^2}, ...; needs at least
// four counts, and uses the fifth and sixth to pin the genus-five exclusion
GenusCertificate genus_from_counts(const Big& Q, const std::vector<i64>& N);

// certificate for the quotient of td: ramification when tame, counts otherwise
GenusCertificate genus_certificate(TrigonalData& td);

// double cover counts stay within the genus-seven Weil interval for m <= mmax
bool tilde_counts_within_weil(TrigonalData& td, u32 mmax);

}  // namespace jac3
