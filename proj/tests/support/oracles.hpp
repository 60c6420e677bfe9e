#pragma once

// Test-only reference computations. Deliberately naive and independent of the
// library code paths they cross-check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cvec = std::vector<std::complex<double>>;

// Values computed with mpmath at 40 significant digits and frozen here.
namespace frozen {
// g_eps(s) = s^2 (1 + eps sin(4 pi log2 s)) at eps = 0.5
inline constexpr double g_half_at_0_6 = 0.3306485249961706;
inline constexpr double g_half_at_0_8 = 0.8914335429582619;
// g(1) - g(0.6) - g(0.8)
inline constexpr double violation_eps_half = -0.2220820679544325;
inline constexpr double violation_eps_quarter = -0.1110410339772162;
// max |g(hypot(r1, r2)) - g(r1) - g(r2)| over r1 <= r2 in {k/64 : 0 <= k <= 256}
// with r1^2 + r2^2 <= 16.
inline constexpr double max_residual_r = 1.65667726891;
inline constexpr double max_residual_r_cubed = 18.7391597256;
inline constexpr double max_residual_g_quarter = 6.72128381851;
inline constexpr double max_residual_g_half = 13.442567637;
}  // namespace frozen

inline long double g_eps(long double eps, long double s) {
  if (s == 0.0L) return 0.0L;
  return s * s * (1.0L + eps * std::sin(4.0L * std::numbers::pi_v<long double> * std::log2(s)));
}

// Every subset sum by direct bitmask summation, sorted and merged at `quantum`.
inline std::vector<double> subset_sums(const std::vector<double>& w, double quantum = 1e-12) {
  std::vector<double> sums;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w.size()); ++mask) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (mask >> i & 1U) s += w[i];
    }
    sums.push_back(static_cast<double>(s));
  }
  std::sort(sums.begin(), sums.end());
  std::vector<double> out;
  for (double s : sums) {
    if (out.empty() || s - out.back() > quantum) out.push_back(s);
  }
  return out;
}

// Largest subset sum not exceeding x.
inline double best_subset_sum(const std::vector<double>& w, double x) {
  double best = 0.0;
  for (double s : subset_sums(w, 0.0)) {
    if (s <= x + 1e-12) best = std::max(best, s);
  }
  return best;
}

inline std::complex<double> dot(const cvec& a, const cvec& b) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Classical Gram-Schmidt, no re-orthogonalization.
inline std::vector<cvec> gram_schmidt(const std::vector<cvec>& vs, double drop = 1e-8) {
  std::vector<cvec> basis;
  for (cvec v : vs) {
    const cvec orig = v;
    for (const auto& e : basis) {
      const auto c = dot(e, orig);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * e[i];
    }
    const double n = std::sqrt(std::real(dot(v, v)));
    if (n < drop) continue;
    for (auto& x : v) x /= n;
    basis.push_back(v);
  }
  return basis;
}

// |P psi|^2 = sum_i |<e_i|psi>|^2 over an orthonormal basis.
inline double projected_norm_sq(const std::vector<cvec>& basis, const cvec& psi) {
  double s = 0.0;
  for (const auto& e : basis) s += std::norm(dot(e, psi));
  return s;
}

}  // namespace oracle
