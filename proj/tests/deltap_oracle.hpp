#pragma once

// Arbitrary-precision reference for the degree threshold: evaluates the
// product n * C(n-1,k) * p^k * (1-p)^(n-1-k) directly with 512-bit MPFR
// (binomials exact via GMP) and scans k upward. Independent of the
// log-space implementation path.

#include <cstdint>
#include <optional>

#include <gmp.h>
#include <mpfr.h>

namespace oracle {

inline constexpr mpfr_prec_t kPrec = 512;

// Sign of n*C(n-1,k)*p^k*(1-p)^(n-1-k) - 1, with p taken as the exact
// rational value of the double.
inline int expectation_vs_one(std::uint64_t n, double p, std::uint64_t k) {
  mpfr_t pe, q, term, tmp;
  mpfr_inits2(kPrec, pe, q, term, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(pe, p, MPFR_RNDN);       // exact
  mpfr_ui_sub(q, 1, pe, MPFR_RNDN);   // 1-p at full precision

  mpz_t bin;
  mpz_init(bin);
  mpz_bin_uiui(bin, n - 1, k);

  mpfr_set_ui(term, n, MPFR_RNDN);
  mpfr_mul_z(term, term, bin, MPFR_RNDN);
  mpfr_pow_ui(tmp, pe, k, MPFR_RNDN);
  mpfr_mul(term, term, tmp, MPFR_RNDN);
  mpfr_pow_ui(tmp, q, n - 1 - k, MPFR_RNDN);
  mpfr_mul(term, term, tmp, MPFR_RNDN);

  const int cmp = mpfr_cmp_ui(term, 1);
  mpz_clear(bin);
  mpfr_clears(pe, q, term, tmp, static_cast<mpfr_ptr>(nullptr));
  return cmp;
}

// Largest k in 0..n-1 whose expected degree-k vertex count is >= 1.
inline std::optional<std::uint64_t> delta_p(std::uint64_t n, double p) {
  std::optional<std::uint64_t> best;
  // Incremental scan: T(k+1) = T(k) * (n-1-k)/(k+1) * p/(1-p).
  mpfr_t pe, q, ratio, term, tmp;
  mpfr_inits2(kPrec, pe, q, ratio, term, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(pe, p, MPFR_RNDN);
  mpfr_ui_sub(q, 1, pe, MPFR_RNDN);
  mpfr_div(ratio, pe, q, MPFR_RNDN);  // p/(1-p)

  // T(0) = n * (1-p)^(n-1)
  mpfr_pow_ui(term, q, n - 1, MPFR_RNDN);
  mpfr_mul_ui(term, term, n, MPFR_RNDN);

  bool past_peak_and_below = false;
  for (std::uint64_t k = 0; k < n; ++k) {
    if (mpfr_cmp_ui(term, 1) >= 0) best = k;
    // step to T(k+1)
    if (k + 1 < n) {
      mpfr_mul_ui(tmp, ratio, n - 1 - k, MPFR_RNDN);
      mpfr_div_ui(tmp, tmp, k + 1, MPFR_RNDN);
      const int dir = mpfr_cmp_ui(tmp, 1);  // increasing or decreasing step
      mpfr_mul(term, term, tmp, MPFR_RNDN);
      if (dir < 0 && mpfr_cmp_ui(term, 1) < 0 && best && k > *best + 2)
        past_peak_and_below = true;
    }
    if (past_peak_and_below) break;
  }
  mpfr_clears(pe, q, ratio, term, tmp, static_cast<mpfr_ptr>(nullptr));
  return best;
}

}  // namespace oracle
