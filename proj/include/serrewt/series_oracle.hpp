#pragma once

// Independent re-derivation of J_V^AH through the residue pairing.
//
// The algebraic closure is replaced by one finite field F_Q containing l
// (degree f [l:k] over F_p, [l:k] the order of mu(Frob)) and the field of
// definition of mu(Frob). An element of l (x) F_Q is stored by its images
// psi_t, 0 <= t < f [l:k], where psi_t(x) = x^{p^{(f[l:k] - t) mod f[l:k]}},
// so psi_{t+1}^p = psi_t and psi_t restricts to tau_{t mod f} on k.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "serrewt/artin_hasse.hpp"
#include "serrewt/error.hpp"
#include "serrewt/finite_field.hpp"
#include "serrewt/integer.hpp"
#include "serrewt/laurent.hpp"
#include "serrewt/serre_basis.hpp"
#include "serrewt/tame_chars.hpp"
#include "serrewt/weight_lattice.hpp"

namespace serrewt {

/// F_{p^r} with its fixed modulus.
struct FqConfig {
  int p = 2;
  int degree = 1;
  std::vector<int> modulus;  // c_0..c_{r-1} of the monic modulus

  static FqConfig make(int p, int degree) {
    FiniteField field(p, degree);
    return {p, degree, field.modulus()};
  }
};

struct OracleOptions {
  std::optional<int> fq_degree;  // defaults to the field of definition of mu(Frob)
  std::optional<int> trunc;      // defaults to default_truncation()
};

/// 2 max(max_i xi'_i, ceil(e_M e p/(p-1))).
inline int default_truncation(const FieldParams& params, const WeightProfile& profile, const Integer& e_m) {
  Integer top = (e_m * params.e() * params.p() + params.p() - 2) / (params.p() - 1);
  for (const Integer& xi : profile.xi) top = std::max(top, scale_to_e_m(params, xi, e_m));
  require(top < 100000, ErrorCode::InvalidInput, "oracle truncation degree too large");
  return 2 * to_ll(top);
}

/// The finite-level model of l (x) F-bar_p for one character.
class OracleContext {
 public:
  using Elem = FiniteField::Elem;

  OracleContext(const FieldParams& params, const UnramifiedPart& mu, std::optional<int> fq_degree = std::nullopt)
      : params_(params), prime_(params.p(), 1), field_(params.p(), working_degree(params, mu, fq_degree)) {
    const int p = params.p();
    validate_unramified(p, mu);
    fq_degree_ = fq_degree.value_or(mu.is_trivial() ? 1 : mu.degree);
    l_degree_ = static_cast<int>(unramified_order(p, mu));
    rank_ = params.f() * l_degree_;
    if (mu.is_trivial()) {
      a_ = 1;
    } else {
      FiniteField mu_field(p, mu.degree);
      a_ = field_.exp(static_cast<long long>(subfield_generator_log(field_, mu_field) * mu.dlog % field_.unit_order()));
    }
    require(field_.order(a_) == static_cast<std::uint64_t>(l_degree_), ErrorCode::InternalInvariantViolation,
            "embedded mu(Frob) has the wrong order");
    const std::uint64_t l_units = ipow(p, static_cast<unsigned>(rank_)).convert_to<std::uint64_t>() - 1;
    gamma_ = field_.exp(static_cast<long long>(field_.unit_order() / l_units));
    for (int t = 0; t < rank_; ++t) {
      std::vector<Elem> row;
      for (int k = 0; k < rank_; ++k) row.push_back(psi(t, field_.pow(gamma_, k)));
      basis_images_.push_back(std::move(row));
    }
  }

  static int working_degree(const FieldParams& params, const UnramifiedPart& mu, std::optional<int> fq_degree) {
    const int mu_degree = mu.is_trivial() ? 1 : mu.degree;
    const int r = fq_degree.value_or(mu_degree);
    require(r >= 1 && r % mu_degree == 0, ErrorCode::InvalidInput,
            "fq degree " + std::to_string(r) + " must be a multiple of " + std::to_string(mu_degree));
    const int l_degree = params.f() * static_cast<int>(unramified_order(params.p(), mu));
    return std::lcm(l_degree, r);
  }

  const FiniteField& field() const noexcept { return field_; }
  const FiniteField& prime_field() const noexcept { return prime_; }
  TensorRing ring() const { return {&field_, rank_}; }
  int rank() const noexcept { return rank_; }
  int l_degree() const noexcept { return l_degree_; }
  int fq_degree() const noexcept { return fq_degree_; }
  Elem mu_value() const noexcept { return a_; }

  /// psi_t on an element of l inside F_Q.
  Elem psi(int t, Elem x) const {
    const int exponent = static_cast<int>(floor_mod(rank_ - t, rank_));
    return field_.pow(x, ipow(params_.p(), static_cast<unsigned>(exponent)).convert_to<long long>());
  }

  /// The k-th power basis element gamma^k of l.
  Elem l_basis(int k) const { return field_.pow(gamma_, k); }

  /// x (x) 1 for x in l.
  TensorScalar image(Elem x) const {
    TensorScalar out = ring().zero();
    for (int t = 0; t < rank_; ++t) out.components[static_cast<std::size_t>(t)] = psi(t, x);
    return out;
  }

  /// lambda_{tau_c, mu} (or mu^{-1}): a^{-floor(t/f)} (resp. a^{+floor(t/f)}) on t = c mod f, zero elsewhere.
  TensorScalar lambda(int c, bool inverse_mu = false) const {
    TensorScalar out = ring().zero();
    const int f = params_.f();
    for (int t = 0; t < rank_; ++t) {
      if (t % f != floor_mod(c, f)) continue;
      const long long w = t / f;
      out.components[static_cast<std::size_t>(t)] = field_.pow(a_, inverse_mu ? w : -w);
    }
    return out;
  }

  /// b with sum_k gamma^k (x) b_k = v.
  std::vector<Elem> coordinates(const TensorScalar& v) const {
    const auto n = static_cast<std::size_t>(rank_);
    std::vector<std::vector<Elem>> m = basis_images_;
    std::vector<Elem> rhs = v.components;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && m[pivot][col] == 0) ++pivot;
      require(pivot < n, ErrorCode::InternalInvariantViolation, "embedding matrix is singular");
      std::swap(m[pivot], m[col]);
      std::swap(rhs[pivot], rhs[col]);
      const Elem inv = field_.inv(m[col][col]);
      for (std::size_t k = col; k < n; ++k) m[col][k] = field_.mul(m[col][k], inv);
      rhs[col] = field_.mul(rhs[col], inv);
      for (std::size_t row = 0; row < n; ++row) {
        if (row == col || m[row][col] == 0) continue;
        const Elem factor = m[row][col];
        for (std::size_t k = col; k < n; ++k) m[row][k] = field_.sub(m[row][k], field_.mul(factor, m[col][k]));
        rhs[row] = field_.sub(rhs[row], field_.mul(factor, rhs[col]));
      }
    }
    return rhs;
  }

  /// d E(lambda u^m) / E(lambda u^m) in du/u form through u^trunc, from h = x E'(x)/E(x) mod p.
  ///
  /// lambda is written as sum gamma^k (x) b_k, so the dlog is
  /// sum_k b_k m h(gamma^k u^m), read off componentwise through psi_t.
  Laurent<TensorRing> unit_dlog(const TensorScalar& lam, int m, int trunc) const {
    require(m >= 1, ErrorCode::InvalidInput, "unit degree must be positive");
    const auto h = artin_hasse_dlog(prime_, std::max(1, trunc / m));
    const auto b = coordinates(lam);
    Laurent<TensorRing> out(ring(), trunc);
    for (const auto& [n, hn] : h.terms()) {
      if (static_cast<long long>(m) * n > trunc) break;
      TensorScalar term = ring().zero();
      for (int t = 0; t < rank_; ++t) {
        Elem acc = 0;
        for (int k = 0; k < rank_; ++k) {
          acc = field_.add(acc, field_.mul(b[static_cast<std::size_t>(k)],
                                           field_.pow(basis_images_[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)], n)));
        }
        term.components[static_cast<std::size_t>(t)] = field_.mul(acc, field_.from_int(static_cast<long long>(m) * hn));
      }
      out.set(m * n, std::move(term));
    }
    return out;
  }

  /// E(x u^m) for x in l, as a series over l (x) F_Q through u^trunc.
  Laurent<TensorRing> artin_hasse_unit(Elem x, int m, int trunc) const {
    const auto coeffs = artin_hasse_mod_p(params_.p(), std::max(0, trunc / m));
    const TensorScalar base = image(x);
    Laurent<TensorRing> out(ring(), trunc);
    for (int n = 0; static_cast<long long>(n) * m <= trunc; ++n) {
      TensorScalar term = ring().zero();
      for (int t = 0; t < rank_; ++t) {
        term.components[static_cast<std::size_t>(t)] =
            field_.mul(field_.from_int(coeffs[static_cast<std::size_t>(n)]), field_.pow(base.components[static_cast<std::size_t>(t)], n));
      }
      out.set(n * m, std::move(term));
    }
    return out;
  }

 private:
  FieldParams params_;
  FiniteField prime_;
  FiniteField field_;
  int fq_degree_ = 1;
  int l_degree_ = 1;
  int rank_ = 1;
  Elem a_ = 1;
  Elem gamma_ = 1;
  std::vector<std::vector<Elem>> basis_images_;  // psi_t(gamma^k)
};

struct PairingRecord {
  BasisLabel alpha;
  int i = 0;
  int d = 0;
  std::uint32_t value_log = 0;  // nonzero pairing value as a power of the generator of F_Q
};

struct OracleResult {
  LabelSet labels;
  int fq_degree = 1;
  int working_degree = 1;
  int l_degree = 1;
  int trunc = 0;
  std::vector<PairingRecord> nonzero_pairings;
  // trivial chi only: the extra class pairs to zero with every E-unit and not with u
  std::optional<bool> extra_class_ok;
};

inline OracleResult rederive_jvah(const FieldParams& params, const WeightProfile& profile, const CharacterData& chi,
                                  const Integer& e_m, const OracleOptions& options = {}) {
  validate_e_m(params, chi, e_m);
  const OracleContext ctx(params, chi.unram(), options.fq_degree);
  const int trunc = options.trunc.value_or(default_truncation(params, profile, e_m));
  const auto [f1, f2] = niveau(chi.signature());
  const int f = params.f();
  const long long em = to_ll(e_m);

  OracleResult result;
  result.fq_degree = ctx.fq_degree();
  result.working_degree = ctx.field().degree();
  result.l_degree = ctx.l_degree();
  result.trunc = trunc;

  std::vector<TensorScalar> duals;
  for (int i = 0; i < f; ++i) duals.push_back(ctx.lambda(i, true));

  std::vector<std::pair<BasisLabel, Laurent<TensorRing>>> units;
  for (const Integer& m : w_prime(params, chi)) {
    const int m_scaled = static_cast<int>(to_ll(scale_to_e_m(params, m, e_m)));
    const int im = i_m_index(params, chi, m);
    for (int k = 0; k < f2; ++k) {
      units.emplace_back(BasisLabel::alpha(m, k), ctx.unit_dlog(ctx.lambda(im + k * f1), m_scaled, trunc));
    }
  }

  const TensorRing ring = ctx.ring();
  for (int i = 0; i < f; ++i) {
    const long long xi_scaled = to_ll(scale_to_e_m(params, profile.xi[static_cast<std::size_t>(i)], e_m));
    for (int d : profile.intervals[static_cast<std::size_t>(i)]) {
      const auto a = Laurent<TensorRing>::monomial(ring, duals[static_cast<std::size_t>(i)],
                                                   static_cast<int>(d * em - xi_scaled));
      for (const auto& [alpha, g] : units) {
        const auto value = residue_trace_pairing_dlog(a, g);
        if (value == 0) continue;
        result.labels.insert(alpha);
        result.nonzero_pairings.push_back({alpha, i, d, ctx.field().log(value)});
      }
    }
  }

  if (chi.is_trivial()) {
    const long long xi0 = to_ll(scale_to_e_m(params, profile.xi[0], e_m));
    require(xi0 % em == 0, ErrorCode::InternalInvariantViolation, "extra degree for trivial chi is not integral");
    const auto extra = Laurent<TensorRing>::monomial(ring, duals[0], static_cast<int>((xi0 / em) * em - xi0));
    bool ok = residue_trace_pairing_uniformizer(extra) != 0;
    for (const auto& [alpha, g] : units) ok = ok && residue_trace_pairing_dlog(extra, g) == 0;
    result.extra_class_ok = ok;
  }
  return result;
}

}  // namespace serrewt
