#pragma once

// Slow, literal re-implementations used as test oracles.

#include <vector>

#include "serrewt/serrewt.hpp"

namespace serrewt::brute {

/// All of S = [1,p]^f minus (p,...,p), lexicographic.
inline std::vector<std::vector<int>> all_signatures(int p, int f) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(f), 1);
  while (true) {
    if (!std::all_of(a.begin(), a.end(), [p](int x) { return x == p; })) out.push_back(a);
    int pos = f - 1;
    while (pos >= 0 && ++a[static_cast<std::size_t>(pos)] > p) a[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) break;
  }
  return out;
}

/// n_0 of a raw digit tuple, by the displayed sum.
inline Integer raw_n(const FieldParams& params, const std::vector<int>& a, int i) {
  const int f = params.f();
  Integer n = 0;
  for (int j = 1; j <= f; ++j) n += Integer(a[static_cast<std::size_t>((i + j) % f)]) * ipow(params.p(), static_cast<unsigned>(f - j));
  return n;
}

/// The element of S whose n_0 lies in the class, by exhaustive search.
inline std::vector<int> brute_signature(const FieldParams& params, const Integer& cls) {
  std::vector<std::vector<int>> hits;
  for (const auto& a : all_signatures(params.p(), params.f())) {
    if (floor_mod(raw_n(params, a, 0) - cls, params.q_minus_one()) == 0) hits.push_back(a);
  }
  if (hits.size() != 1) throw std::logic_error("signature search is not unique");
  return hits.front();
}

/// Window count by scanning every integer in the window.
inline long long brute_window(const FieldParams& params, const std::vector<Integer>& n, int j) {
  const Integer width = params.window_width();
  long long count = 0;
  for (Integer m = width * j + 1; m < width * (j + 1); ++m) {
    if (m % params.p() == 0) continue;
    for (const Integer& ni : n) {
      if (floor_mod(m - ni, params.q_minus_one()) == 0) ++count;
    }
  }
  return count;
}

/// Tuples in [0, r_i + e - 1]^f lying in [0,e-1] u [r_i, r_i+e-1] with the class of m.
inline std::vector<std::vector<int>> brute_candidates(const FieldParams& params, const std::vector<int>& r,
                                                      const std::vector<int>& m) {
  const int f = params.f();
  const int e = params.e();
  const Integer target = exponent_class(params, std::span<const int>(m));
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(f), 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i < f; ++i) {
      const int x = a[static_cast<std::size_t>(i)];
      const int ri = r[static_cast<std::size_t>(i)];
      ok = ok && ((x >= 0 && x <= e - 1) || (x >= ri && x <= ri + e - 1));
    }
    if (ok && exponent_class(params, std::span<const int>(a)) == target) out.push_back(a);
    int pos = f - 1;
    while (pos >= 0 && ++a[static_cast<std::size_t>(pos)] > r[static_cast<std::size_t>(pos)] + e - 1) {
      a[static_cast<std::size_t>(pos--)] = 0;
    }
    if (pos < 0) break;
  }
  return out;
}

/// E_p(x) through x^D as sum_n g^n / n!, g = sum x^{p^k}/p^k truncated.
inline std::vector<Rational> ah_by_exp_series(int p, int degree) {
  const auto d = static_cast<std::size_t>(degree);
  std::vector<Rational> g(d + 1, Rational(0));
  for (long long pw = 1; pw <= degree; pw *= p) g[static_cast<std::size_t>(pw)] = Rational(1, pw);
  std::vector<Rational> out(d + 1, Rational(0));
  std::vector<Rational> power(d + 1, Rational(0));
  power[0] = 1;
  Rational factorial = 1;
  for (int n = 0; n <= degree; ++n) {
    if (n > 0) {
      std::vector<Rational> next(d + 1, Rational(0));
      for (std::size_t a = 0; a <= d; ++a)
        for (std::size_t b = 1; a + b <= d; ++b) next[a + b] += power[a] * g[b];
      power = std::move(next);
      factorial *= n;
    }
    for (std::size_t k = 0; k <= d; ++k) out[k] += power[k] / factorial;
  }
  return out;
}

}  // namespace serrewt::brute
