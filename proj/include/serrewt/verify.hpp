#pragma once

// Grid sweeps and the self-verification suite.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "serrewt/cohomology.hpp"
#include "serrewt/error.hpp"
#include "serrewt/serre_basis.hpp"
#include "serrewt/series_oracle.hpp"
#include "serrewt/tame_chars.hpp"
#include "serrewt/weight_lattice.hpp"

namespace serrewt {

/// Deliberate corruptions used to check that the suite can fail.
enum class Mutation { None, XiOffByOne };

struct Grid {
  std::vector<int> primes;
  std::vector<int> e_values;
  std::vector<int> f_values;
  bool with_oracle = false;
  // the oracle runs only where p <= oracle_p_max, e <= oracle_e_max, f <= oracle_f_max
  int oracle_p_max = 3;
  int oracle_e_max = 2;
  int oracle_f_max = 2;
  int oracle_mu_order_max = 4;
  int twist_stride = 5;  // every n-th successful instance gets a twist check
  std::uint64_t instance_cap = 20'000'000;

  static Grid up_to(int p_max, int e_max, int f_max) {
    Grid g;
    for (int p = 2; p <= p_max; ++p)
      if (is_prime(p)) g.primes.push_back(p);
    for (int e = 1; e <= e_max; ++e) g.e_values.push_back(e);
    for (int f = 1; f <= f_max; ++f) g.f_values.push_back(f);
    return g;
  }
};

struct PropertyTally {
  std::string name;
  long long passed = 0;
  long long failed = 0;
  std::optional<std::string> counterexample;

  void record(bool ok, const std::function<std::string()>& describe) {
    if (ok) {
      ++passed;
      return;
    }
    ++failed;
    if (!counterexample) counterexample = describe();
  }

  void merge(const PropertyTally& other) {
    passed += other.passed;
    failed += other.failed;
    if (!counterexample && other.counterexample) counterexample = other.counterexample;
  }
};

inline const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = {
      "dimension_sum",    "window_counts",       "jump_size",         "cardinalities",
      "profile_identities", "jvah_equals_interval_total", "constructive_equals_bruteforce",
      "e_m_independence", "oracle_agreement",    "twist_invariance",
  };
  return names;
}

struct VerifyReport {
  long long character_instances = 0;
  long long weight_instances = 0;
  long long lv_empty = 0;
  long long oracle_instances = 0;
  std::vector<PropertyTally> properties;

  long long instances() const { return character_instances + weight_instances; }
  bool ok() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyTally& t) { return t.failed == 0; });
  }
  const PropertyTally& property(const std::string& name) const {
    for (const auto& t : properties)
      if (t.name == name) return t;
    fail(ErrorCode::InvalidInput, "unknown property " + name);
  }
};

namespace detail {

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::string join(const std::vector<Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

/// Every r-tuple in [1, p]^f, in lexicographic order.
inline std::vector<std::vector<int>> all_r_tuples(int p, int f) {
  std::vector<std::vector<int>> out;
  std::vector<int> r(static_cast<std::size_t>(f), 1);
  while (true) {
    out.push_back(r);
    int pos = f - 1;
    while (pos >= 0 && ++r[static_cast<std::size_t>(pos)] > p) r[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) break;
  }
  return out;
}

/// Exponents m in [0, p-1]^f with the given class.
inline std::vector<int> class_digits(const FieldParams& params, long long cls) {
  std::vector<int> m(static_cast<std::size_t>(params.f()));
  for (int k = 0; k < params.f(); ++k) {
    m[static_cast<std::size_t>((params.f() - k) % params.f())] = static_cast<int>(cls % params.p());
    cls /= params.p();
  }
  return m;
}

/// One unramified part of each order <= max_order, each in the smallest field containing it.
inline std::vector<UnramifiedPart> small_order_unramified(int p, int max_order) {
  std::vector<UnramifiedPart> out{UnramifiedPart{}};
  for (int order = 2; order <= max_order; ++order) {
    if (order % p == 0) continue;
    for (int degree = 1; degree <= 12; ++degree) {
      const std::uint64_t q1 = unit_group_order(p, degree);
      if (q1 % static_cast<std::uint64_t>(order) == 0) {
        out.push_back({degree, q1 / static_cast<std::uint64_t>(order)});
        break;
      }
    }
  }
  return out;
}

/// Characters exercised for the cohomological checks of one signature.
inline std::vector<CharacterData> character_variants(const FieldParams& params, const TameSignature& sig) {
  std::vector<CharacterData> out{CharacterData(params, sig)};
  const bool cyc = sig == cyclotomic_inertia_signature(params);
  if (cyc) out.emplace_back(params, sig, UnramifiedPart{}, false, true);
  if (sig == trivial_signature(params)) {
    const UnramifiedPart mu{2, 1};
    out.emplace_back(params, sig, mu);
    if (cyc) out.emplace_back(params, sig, mu, false, true);
  }
  return out;
}

struct UnitTallies {
  std::map<std::string, PropertyTally> tallies;
  long long character_instances = 0;
  long long weight_instances = 0;
  long long lv_empty = 0;
  long long oracle_instances = 0;

  PropertyTally& operator[](const std::string& name) {
    auto& t = tallies[name];
    t.name = name;
    return t;
  }
};

inline void check_character(const FieldParams& params, const CharacterData& chi, UnitTallies& out) {
  ++out.character_instances;
  const auto describe = [&] {
    return params.to_string() + " chi=" + chi.signature().to_string() + (chi.is_trivial() ? " trivial" : "") +
           (chi.is_cyclotomic() ? " cyclotomic" : "");
  };
  const long long h1 = h1_dimension(params, chi);
  bool sum_ok = true;
  try {
    const JumpProfile jumps = jump_profile(params, chi);
    long long graded = 0;
    for (const auto& entry : jumps.entries) graded += graded_dimension(params, chi, entry.s);
    sum_ok = jumps.total == h1 && graded == h1;
  } catch (const Error&) {
    sum_ok = false;
  }
  out["dimension_sum"].record(sum_ok, describe);

  bool windows_ok = true;
  for (int j = 0; j < params.e(); ++j) windows_ok = windows_ok && window_cardinality(params, chi, j) == params.f();
  out["window_counts"].record(windows_ok, describe);

  const auto [f1, f2] = niveau(chi.signature());
  bool size_ok = true;
  for (const auto& [m, d] : wild_jumps(params, chi)) size_ok = size_ok && d == f2;
  out["jump_size"].record(size_ok, describe);

  const bool card_ok = static_cast<long long>(w_prime(params, chi).size()) == static_cast<long long>(params.e()) * f1 &&
                       static_cast<long long>(basis_labels(params, chi).size()) == h1;
  out["cardinalities"].record(card_ok, describe);
}

struct WeightInstance {
  FieldParams params;
  std::vector<int> r;
  long long chi2_class;
};

/// Property checks for one (params, r, chi2 class).
inline void check_weight(const WeightInstance& inst, const Grid& grid, Mutation mutation, long long& twist_counter,
                         UnitTallies& out) {
  const FieldParams& params = inst.params;
  const std::vector<int> m = class_digits(params, inst.chi2_class);
  ++out.weight_instances;
  const auto base = [&] {
    return params.to_string() + " r=(" + join(inst.r) + ") chi2_exps=(" + join(m) + ")";
  };

  const auto valid = valid_shift_subsets(params, inst.r, m);
  if (valid.empty()) {
    ++out.lv_empty;
    return;
  }
  std::optional<WeightProfile> maybe_profile;
  try {
    maybe_profile = kisin_profile(params, inst.r, m);
  } catch (const Error& err) {
    out["profile_identities"].record(false, [&] { return base() + ": " + err.what(); });
    return;
  }
  WeightProfile& profile = *maybe_profile;
  if (mutation == Mutation::XiOffByOne) profile.xi[0] += 1;

  const CharacterData chi(params, profile.chi_signature);
  const auto n = n_values(params, profile.chi_signature);
  const std::uint32_t j_mask = [&] {
    std::uint32_t mask = 0;
    for (int i : profile.j_min) mask |= 1U << i;
    return mask;
  }();
  bool identities = true;
  for (int i = 0; i < params.f(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    identities = identities && profile.s[k] + profile.t[k] == inst.r[k] + params.e() - 1 &&
                 in_allowed_range(params, inst.r[k], profile.s[k]) && in_allowed_range(params, inst.r[k], profile.t[k]) &&
                 floor_mod(profile.xi[k] - n[k], params.q_minus_one()) == 0;
  }
  for (std::uint32_t s : valid) identities = identities && (j_mask & s) == j_mask;
  const auto describe = [&] {
    return base() + " t=(" + join(profile.t) + ") s=(" + join(profile.s) + ") xi=(" + join(profile.xi) + ") n=(" +
           join(n) + ")";
  };
  out["profile_identities"].record(identities, describe);
  if (!identities) return;

  const Integer e_full = params.q_minus_one();
  LabelSet jvah;
  try {
    jvah = j_v_ah(params, profile, chi, e_full);
  } catch (const Error& err) {
    out["jvah_equals_interval_total"].record(false, [&] { return describe() + ": " + err.what(); });
    return;
  }
  out["jvah_equals_interval_total"].record(jvah.size() == profile.interval_total(), [&] {
    return describe() + " |J|=" + std::to_string(jvah.size()) + " sum|I|=" + std::to_string(profile.interval_total());
  });

  const LabelSet brute = j_v_ah_bruteforce(params, profile, chi, e_full);
  out["constructive_equals_bruteforce"].record(brute == jvah, [&] {
    return describe() + " constructive=" + to_string(jvah) + " bruteforce=" + to_string(brute);
  });

  bool em_ok = true;
  std::string em_detail;
  for (const Integer& em : admissible_e_m(params, chi)) {
    LabelSet other;
    try {
      other = j_v_ah(params, profile, chi, em);
    } catch (const Error& err) {
      em_ok = false;
      em_detail = "e_M=" + em.str() + ": " + err.what();
      break;
    }
    if (other != jvah) {
      em_ok = false;
      em_detail = "e_M=" + em.str() + " gives " + to_string(other);
      break;
    }
  }
  out["e_m_independence"].record(em_ok, [&] { return describe() + " " + em_detail; });

  if (grid.with_oracle && params.p() <= grid.oracle_p_max && params.e() <= grid.oracle_e_max &&
      params.f() <= grid.oracle_f_max) {
    for (const UnramifiedPart& mu : small_order_unramified(params.p(), grid.oracle_mu_order_max)) {
      ++out.oracle_instances;
      const CharacterData chi_mu(params, profile.chi_signature, mu);
      std::string detail;
      bool ok = true;
      try {
        const OracleResult res = rederive_jvah(params, profile, chi_mu, e_full);
        ok = res.labels == jvah && res.extra_class_ok.value_or(true);
        if (!ok) detail = " oracle=" + to_string(res.labels) + " constructive=" + to_string(jvah);
      } catch (const Error& err) {
        ok = false;
        detail = std::string(": ") + err.what();
      }
      out["oracle_agreement"].record(ok, [&] {
        return describe() + " mu=(" + std::to_string(mu.degree) + ":" + std::to_string(mu.dlog) + ")" + detail;
      });
    }
  }

  if (grid.twist_stride > 0 && twist_counter++ % grid.twist_stride == 0) {
    const int p = params.p();
    const int f = params.f();
    std::vector<int> theta(static_cast<std::size_t>(f));
    for (int i = 0; i < f; ++i) theta[static_cast<std::size_t>(i)] = p == 2 ? 0 : static_cast<int>((twist_counter + i) % (p - 1));
    theta[0] = std::min(theta[0], p - 2);
    SerreWeight twisted_weight;
    for (int i = 0; i < f; ++i) {
      twisted_weight.eta.push_back(inst.r[static_cast<std::size_t>(i)] - 1 + theta[static_cast<std::size_t>(i)]);
    }
    twisted_weight.theta = theta;
    std::vector<long long> chi2_exps(m.begin(), m.end());
    const Integer chi1_class = signature_class(params, profile.chi_signature) + exponent_class(params, std::span<const int>(m));
    std::vector<long long> chi1_exps(static_cast<std::size_t>(f));
    {
      Integer c = floor_mod(chi1_class, params.q_minus_one());
      for (int k = 0; k < f; ++k) {
        chi1_exps[static_cast<std::size_t>((f - k) % f)] = static_cast<long long>(static_cast<int>(c % p));
        c /= p;
      }
    }
    std::vector<long long> chi1_tw = chi1_exps;
    std::vector<long long> chi2_tw = chi2_exps;
    for (int i = 0; i < f; ++i) {
      chi1_tw[static_cast<std::size_t>(i)] += theta[static_cast<std::size_t>(i)];
      chi2_tw[static_cast<std::size_t>(i)] += theta[static_cast<std::size_t>(i)];
    }
    bool ok = true;
    std::string detail;
    LVOptions lv_options;
    lv_options.chi_cyclotomic = profile.chi_signature == cyclotomic_inertia_signature(params);
    try {
      const auto plain = l_v_ah(params, SerreWeight::from_r(inst.r), character_from_exps(params, chi1_exps),
                                character_from_exps(params, chi2_exps), lv_options);
      const auto twisted = l_v_ah(params, twisted_weight, character_from_exps(params, chi1_tw),
                                  character_from_exps(params, chi2_tw), lv_options);
      ok = plain.labels == twisted.labels && plain.exceptional == twisted.exceptional;
      if (!ok) detail = " theta=(" + join(theta) + ")";
    } catch (const Error& err) {
      ok = false;
      detail = std::string(": ") + err.what();
    }
    out["twist_invariance"].record(ok, [&] { return base() + detail; });
  }
}

}  // namespace detail

struct VerifyOptions {
  unsigned jobs = 1;
  Mutation mutation = Mutation::None;
};

/// Runs every property over every grid instance. Work is split by (p, e, f)
/// and reduced in grid order, so the report does not depend on `jobs`.
inline VerifyReport verify_suite(const Grid& grid, const VerifyOptions& options = {}) {
  struct Unit {
    int p, e, f;
  };
  std::vector<Unit> units;
  std::uint64_t projected = 0;
  for (int p : grid.primes)
    for (int f : grid.f_values)
      for (int e : grid.e_values) {
        units.push_back({p, e, f});
        const FieldParams params(p, e, f);
        projected += to_ll(params.q_minus_one()) * (1 + to_ll(ipow(p, static_cast<unsigned>(f))));
      }
  require(projected <= grid.instance_cap, ErrorCode::InvalidInput,
          "grid has about " + std::to_string(projected) + " instances, above the cap");

  std::vector<detail::UnitTallies> results(units.size());
  auto run_unit = [&](std::size_t idx) {
    const Unit u = units[idx];
    const FieldParams params(u.p, u.e, u.f);
    auto& out = results[idx];
    for (const auto& name : property_names()) out[name];
    const long long q1 = to_ll(params.q_minus_one());
    for (long long cls = 0; cls < q1; ++cls) {
      for (const auto& chi : detail::character_variants(params, signature_from_class(params, cls))) {
        detail::check_character(params, chi, out);
      }
    }
    long long twist_counter = 0;
    for (const auto& r : detail::all_r_tuples(u.p, u.f)) {
      for (long long cls = 0; cls < q1; ++cls) {
        detail::check_weight({params, r, cls}, grid, options.mutation, twist_counter, out);
      }
    }
  };

  const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(units.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < units.size(); ++i) run_unit(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < units.size(); i += jobs) run_unit(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  VerifyReport report;
  for (const auto& name : property_names()) report.properties.push_back({name, 0, 0, std::nullopt});
  for (auto& unit : results) {
    report.character_instances += unit.character_instances;
    report.weight_instances += unit.weight_instances;
    report.lv_empty += unit.lv_empty;
    report.oracle_instances += unit.oracle_instances;
    for (auto& tally : report.properties) tally.merge(unit[tally.name]);
  }
  return report;
}

/// One row of a parameter sweep.
struct SweepRow {
  FieldParams params;
  std::vector<int> r;
  std::vector<int> chi2_exps;
  std::optional<WeightProfile> profile;  // absent when no shift set is valid
  std::size_t jvah_size = 0;
  bool ok = true;
};

inline std::vector<SweepRow> sweep(const Grid& grid, unsigned jobs = 1) {
  struct Unit {
    int p, e, f;
  };
  std::vector<Unit> units;
  for (int p : grid.primes)
    for (int f : grid.f_values)
      for (int e : grid.e_values) units.push_back({p, e, f});
  std::vector<std::vector<SweepRow>> results(units.size());
  auto run_unit = [&](std::size_t idx) {
    const FieldParams params(units[idx].p, units[idx].e, units[idx].f);
    const long long q1 = to_ll(params.q_minus_one());
    for (const auto& r : detail::all_r_tuples(params.p(), params.f())) {
      for (long long cls = 0; cls < q1; ++cls) {
        SweepRow row{params, r, detail::class_digits(params, cls), std::nullopt, 0, true};
        if (!valid_shift_subsets(params, r, row.chi2_exps).empty()) {
          try {
            WeightProfile profile = kisin_profile(params, r, row.chi2_exps);
            const CharacterData chi(params, profile.chi_signature);
            const LabelSet j = j_v_ah(params, profile, chi, params.q_minus_one());
            row.jvah_size = j.size();
            row.ok = j.size() == profile.interval_total() &&
                     j == j_v_ah_bruteforce(params, profile, chi, params.q_minus_one());
            row.profile = std::move(profile);
          } catch (const Error&) {
            row.ok = false;
          }
        }
        results[idx].push_back(std::move(row));
      }
    }
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, units.size()))));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < units.size(); ++i) run_unit(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < units.size(); i += jobs) run_unit(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<SweepRow> rows;
  for (auto& unit : results)
    for (auto& row : unit) rows.push_back(std::move(row));
  return rows;
}

}  // namespace serrewt
