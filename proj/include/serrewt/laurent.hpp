#pragma once

// Truncated Laurent series over a coefficient ring, and the residue pairing.
//
// A series is known exactly through degree `trunc()`; everything above is
// unknown. Products track precision, and reading a coefficient above the
// known range raises TruncationInsufficient rather than returning zero.

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "serrewt/error.hpp"
#include "serrewt/finite_field.hpp"

namespace serrewt {

/// Scalars coming from a single finite field.
struct FieldRing {
  using value_type = FiniteField::Elem;
  const FiniteField* field;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long n) const { return field->from_int(n); }
  value_type add(value_type a, value_type b) const { return field->add(a, b); }
  value_type sub(value_type a, value_type b) const { return field->sub(a, b); }
  value_type mul(value_type a, value_type b) const { return field->mul(a, b); }
  value_type inv(value_type a) const { return field->inv(a); }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a != 0; }
  value_type trace(value_type a) const { return a; }
};

/// An element of l (x) F_q, stored by its images under the embeddings of l.
struct TensorScalar {
  std::vector<FiniteField::Elem> components;

  friend bool operator==(const TensorScalar&, const TensorScalar&) = default;
};

/// Componentwise ring structure on TensorScalar.
struct TensorRing {
  using value_type = TensorScalar;
  const FiniteField* field;
  int rank;  // number of embeddings, f [l:k]

  value_type constant(FiniteField::Elem c) const {
    return {std::vector<FiniteField::Elem>(static_cast<std::size_t>(rank), c)};
  }
  value_type zero() const { return constant(0); }
  value_type one() const { return constant(1); }
  value_type from_int(long long n) const { return constant(field->from_int(n)); }

  template <class Op>
  value_type zip(const value_type& a, const value_type& b, Op op) const {
    value_type out = zero();
    for (int t = 0; t < rank; ++t) {
      const auto k = static_cast<std::size_t>(t);
      out.components[k] = op(a.components[k], b.components[k]);
    }
    return out;
  }
  value_type add(const value_type& a, const value_type& b) const {
    return zip(a, b, [this](auto x, auto y) { return field->add(x, y); });
  }
  value_type sub(const value_type& a, const value_type& b) const {
    return zip(a, b, [this](auto x, auto y) { return field->sub(x, y); });
  }
  value_type mul(const value_type& a, const value_type& b) const {
    return zip(a, b, [this](auto x, auto y) { return field->mul(x, y); });
  }
  value_type inv(const value_type& a) const {
    value_type out = zero();
    for (int t = 0; t < rank; ++t) {
      out.components[static_cast<std::size_t>(t)] = field->inv(a.components[static_cast<std::size_t>(t)]);
    }
    return out;
  }
  bool is_zero(const value_type& a) const {
    return std::all_of(a.components.begin(), a.components.end(), [](auto c) { return c == 0; });
  }
  bool is_unit(const value_type& a) const {
    return std::none_of(a.components.begin(), a.components.end(), [](auto c) { return c == 0; });
  }
  /// Sum of the components.
  FiniteField::Elem trace(const value_type& a) const {
    FiniteField::Elem acc = 0;
    for (auto c : a.components) acc = field->add(acc, c);
    return acc;
  }
};

/// The operator induced by x -> x^p on l, applied j times: component t of the
/// result is component t - j of the input.
inline TensorScalar frob(const TensorScalar& v, long long j = 1) {
  const auto n = static_cast<long long>(v.components.size());
  TensorScalar out = v;
  for (long long t = 0; t < n; ++t) {
    out.components[static_cast<std::size_t>(t)] = v.components[static_cast<std::size_t>(floor_mod(t - j, n))];
  }
  return out;
}

template <class Ring>
class Laurent {
 public:
  using value_type = typename Ring::value_type;
  static constexpr int kExact = INT_MAX / 4;

  Laurent(Ring ring, int trunc = kExact) : ring_(std::move(ring)), trunc_(trunc) {}

  static Laurent monomial(Ring ring, value_type c, int degree, int trunc = kExact) {
    Laurent out(std::move(ring), trunc);
    out.set(degree, std::move(c));
    return out;
  }

  const Ring& ring() const noexcept { return ring_; }
  int trunc() const noexcept { return trunc_; }
  bool is_exact() const noexcept { return trunc_ >= kExact; }
  const std::map<int, value_type>& terms() const noexcept { return terms_; }

  /// Lowest degree with a nonzero term; trunc + 1 for the zero series.
  int valuation() const { return terms_.empty() ? (is_exact() ? kExact : trunc_ + 1) : terms_.begin()->first; }

  value_type coefficient(int degree) const {
    if (degree > trunc_) {
      fail(ErrorCode::TruncationInsufficient, "coefficient of u^" + std::to_string(degree) +
                                                  " requested but series is known only through u^" +
                                                  std::to_string(trunc_));
    }
    auto it = terms_.find(degree);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  void set(int degree, value_type c) {
    if (degree > trunc_) return;
    if (ring_.is_zero(c)) {
      terms_.erase(degree);
    } else {
      terms_[degree] = std::move(c);
    }
  }

  Laurent truncated(int trunc) const {
    Laurent out(ring_, std::min(trunc, trunc_));
    for (const auto& [d, c] : terms_) out.set(d, c);
    return out;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    Laurent out(a.ring_, std::min(a.trunc_, b.trunc_));
    for (const auto& [d, c] : a.terms_) out.set(d, c);
    for (const auto& [d, c] : b.terms_) {
      if (d <= out.trunc_) out.set(d, out.ring_.add(out.coefficient(d), c));
    }
    return out;
  }

  friend Laurent operator-(const Laurent& a, const Laurent& b) {
    Laurent out(a.ring_, std::min(a.trunc_, b.trunc_));
    for (const auto& [d, c] : a.terms_) out.set(d, c);
    for (const auto& [d, c] : b.terms_) {
      if (d <= out.trunc_) out.set(d, out.ring_.sub(out.coefficient(d), c));
    }
    return out;
  }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    long long trunc = kExact;
    if (!a.is_exact()) trunc = std::min<long long>(trunc, static_cast<long long>(a.trunc_) + b.valuation());
    if (!b.is_exact()) trunc = std::min<long long>(trunc, static_cast<long long>(b.trunc_) + a.valuation());
    Laurent out(a.ring_, static_cast<int>(std::clamp<long long>(trunc, INT_MIN / 4, kExact)));
    for (const auto& [da, ca] : a.terms_) {
      for (const auto& [db, cb] : b.terms_) {
        const int d = da + db;
        if (d > out.trunc_) continue;
        out.set(d, out.ring_.add(out.coefficient(d), out.ring_.mul(ca, cb)));
      }
    }
    return out;
  }

 private:
  Ring ring_;
  int trunc_;
  std::map<int, value_type> terms_;
};

/// g with d(series)/series = g du/u, known through min(trunc, series.trunc()).
template <class Ring>
Laurent<Ring> dlog_truncated(const Laurent<Ring>& series, int trunc = Laurent<Ring>::kExact) {
  const Ring& ring = series.ring();
  if (series.valuation() < 0 || !ring.is_unit(series.coefficient(0))) {
    fail(ErrorCode::NonUnitConstantTerm, "dlog needs a power series with invertible constant term");
  }
  const int bound = std::min(trunc, series.trunc());
  require(bound < Laurent<Ring>::kExact, ErrorCode::InvalidInput, "dlog of an exact series needs a truncation degree");
  // u f' = f g, solved degree by degree: g_n = (n f_n - sum_{k<n} g_k f_{n-k}) / f_0.
  const auto f0_inv = ring.inv(series.coefficient(0));
  std::vector<typename Ring::value_type> f(static_cast<std::size_t>(bound) + 1, ring.zero());
  for (const auto& [d, c] : series.terms()) {
    if (d <= bound) f[static_cast<std::size_t>(d)] = c;
  }
  std::vector<typename Ring::value_type> g(static_cast<std::size_t>(bound) + 1, ring.zero());
  for (int n = 1; n <= bound; ++n) {
    auto acc = ring.mul(ring.from_int(n), f[static_cast<std::size_t>(n)]);
    for (int k = 1; k < n; ++k) {
      acc = ring.sub(acc, ring.mul(g[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(n - k)]));
    }
    g[static_cast<std::size_t>(n)] = ring.mul(acc, f0_inv);
  }
  Laurent<Ring> out(ring, bound);
  for (int n = 1; n <= bound; ++n) out.set(n, g[static_cast<std::size_t>(n)]);
  return out;
}

/// Tr(Res(a db/b)) given g = db/b in du/u form: the trace of the u^0
/// coefficient of a g.
template <class Ring>
auto residue_trace_pairing_dlog(const Laurent<Ring>& a, const Laurent<Ring>& g) {
  const Ring& ring = a.ring();
  auto acc = ring.zero();
  const int need = a.terms().empty() ? 0 : -a.terms().begin()->first;
  if (!a.terms().empty() && need > g.trunc()) {
    fail(ErrorCode::TruncationInsufficient, "pairing needs db/b through u^" + std::to_string(need) +
                                                " but it is known only through u^" + std::to_string(g.trunc()));
  }
  if (!g.terms().empty() && -g.terms().begin()->first > a.trunc()) {
    fail(ErrorCode::TruncationInsufficient, "pairing needs more terms of a");
  }
  for (const auto& [d, c] : a.terms()) {
    if (-d < g.valuation()) continue;
    acc = ring.add(acc, ring.mul(c, g.coefficient(-d)));
  }
  return ring.trace(acc);
}

/// Pairing against the uniformizer u itself, where du/u has g = 1.
template <class Ring>
auto residue_trace_pairing_uniformizer(const Laurent<Ring>& a) {
  return residue_trace_pairing_dlog(a, Laurent<Ring>::monomial(a.ring(), a.ring().one(), 0));
}

/// Pairing against a unit power series b.
template <class Ring>
auto residue_trace_pairing(const Laurent<Ring>& a, const Laurent<Ring>& b) {
  const int need = a.terms().empty() ? 0 : std::max(0, -a.terms().begin()->first);
  return residue_trace_pairing_dlog(a, dlog_truncated(b, need));
}

}  // namespace serrewt
