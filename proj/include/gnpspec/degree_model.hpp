#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gnpspec {

// Degree threshold: the largest k for which the expected number of
// degree-k vertices in G(n,p) is still at least one. The log-expectation
//   f(k) = ln n + ln C(n-1,k) + k ln p + (n-1-k) ln(1-p)
// has strictly decreasing increments, so the last nonnegative k is the
// unique crossing.
struct DeltaP {
  std::uint64_t value = 0;
  std::vector<double> log_profile;  // f(k) at the scanned k values
  std::uint64_t crossing_k = 0;     // last scanned k with f(k) >= 0
  // |f| < 1e-9 at the crossing: the integer answer is at the mercy of
  // platform log-gamma rounding, so fixtures exclude these.
  bool knife_edge = false;
};

enum class RegimeTag { VERY_SPARSE, MIDDLE, DENSE };

struct Regime {
  RegimeTag tag = RegimeTag::MIDDLE;
  double very_sparse_threshold = 0.0;  // e^{-(ln ln n)^2} / n
  double dense_threshold = 0.0;        // (ln n)^{1/2} / n
};

inline const char* regime_name(RegimeTag t) {
  switch (t) {
    case RegimeTag::VERY_SPARSE: return "VERY_SPARSE";
    case RegimeTag::MIDDLE: return "MIDDLE";
    case RegimeTag::DENSE: return "DENSE";
  }
  return "?";
}

namespace detail {
inline double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}
}  // namespace detail

inline DeltaP delta_p(std::uint64_t n, double p) {
  if (n < 2) throw std::domain_error("delta_p: requires n >= 2");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("delta_p: p must lie in (0,1)");
  const double ln_n = std::log(static_cast<double>(n));
  const double ln_p = std::log(p);
  const double ln_q = std::log1p(-p);
  const double nm1 = static_cast<double>(n - 1);
  DeltaP out;
  bool found = false;
  double prev = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double f = ln_n + detail::log_binomial(nm1, kk) + kk * ln_p +
                     (nm1 - kk) * ln_q;
    out.log_profile.push_back(f);
    if (f >= 0.0) {
      out.crossing_k = k;
      found = true;
    }
    // Increments decrease strictly, so once past the mode and negative the
    // profile never recovers; stop a couple of steps past the crossing.
    if (k > 0 && f < prev && f < 0.0 && found && k > out.crossing_k + 1) break;
    prev = f;
  }
  if (!found)
    throw std::domain_error("delta_p: no k with f(k) >= 0 (degenerate input)");
  out.value = out.crossing_k;
  const double f_at = out.log_profile[out.crossing_k];
  out.knife_edge = std::fabs(f_at) < 1e-9;
  if (out.crossing_k + 1 < out.log_profile.size() &&
      std::fabs(out.log_profile[out.crossing_k + 1]) < 1e-9)
    out.knife_edge = true;
  return out;
}

inline Regime classify_regime(std::uint64_t n, double p) {
  if (n < 20)
    throw std::domain_error("classify_regime: requires n >= 20 (ln ln n degenerate)");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("classify_regime: p must lie in (0,1)");
  const double ln_n = std::log(static_cast<double>(n));
  const double lnln = std::log(ln_n);
  Regime r;
  r.very_sparse_threshold = std::exp(-lnln * lnln) / static_cast<double>(n);
  r.dense_threshold = std::sqrt(ln_n) / static_cast<double>(n);
  if (p <= r.very_sparse_threshold)
    r.tag = RegimeTag::VERY_SPARSE;
  else if (p >= r.dense_threshold)
    r.tag = RegimeTag::DENSE;
  else
    r.tag = RegimeTag::MIDDLE;
  return r;
}

// max(sqrt(Delta), np): the two-sided asymptotic value of lambda_1.
inline double theorem_target(std::uint64_t n, double p, std::uint64_t max_deg) {
  return std::max(std::sqrt(static_cast<double>(max_deg)),
                  static_cast<double>(n) * p);
}

// sqrt(ln n / ln ln n): the asymptotic lambda_1 for p = c/n.
inline double corollary_target(std::uint64_t n) {
  if (n < 20) throw std::domain_error("corollary_target: requires n >= 20");
  const double ln_n = std::log(static_cast<double>(n));
  return std::sqrt(ln_n / std::log(ln_n));
}

}  // namespace gnpspec
