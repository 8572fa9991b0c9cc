#pragma once

// Problem documents and deterministic reports.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "serrewt/cohomology.hpp"
#include "serrewt/error.hpp"
#include "serrewt/serre_basis.hpp"
#include "serrewt/series_oracle.hpp"
#include "serrewt/tame_chars.hpp"
#include "serrewt/verify.hpp"
#include "serrewt/weight_lattice.hpp"

namespace serrewt {

using Json = nlohmann::ordered_json;

struct Problem {
  FieldParams params{2, 1, 1};
  std::optional<SerreWeight> weight;
  std::optional<CharacterData> chi1;
  std::optional<CharacterData> chi2;
  std::optional<CharacterData> chi;  // given directly, for commands that need only chi
  bool chi_cyclotomic = false;       // declares chi1/chi2 cyclotomic
  std::optional<Integer> e_m;
  std::optional<OracleOptions> oracle;

  /// chi as given, or chi1/chi2.
  CharacterData character() const {
    if (chi) return *chi;
    require(chi1 && chi2, ErrorCode::SchemaError, "$: need chi, or both chi1 and chi2");
    return char_quotient(params, *chi1, *chi2, chi_cyclotomic);
  }

  const SerreWeight& require_weight() const {
    require(weight.has_value(), ErrorCode::SchemaError, "$.weight: missing");
    return *weight;
  }
  const CharacterData& require_chi1() const {
    require(chi1.has_value(), ErrorCode::SchemaError, "$.chi1: missing");
    return *chi1;
  }
  const CharacterData& require_chi2() const {
    require(chi2.has_value(), ErrorCode::SchemaError, "$.chi2: missing");
    return *chi2;
  }
};

namespace detail {

inline const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(ErrorCode::SchemaError, path + "." + key + ": missing");
  return obj.at(key);
}

inline long long as_int(const Json& value, const std::string& path) {
  if (!value.is_number_integer()) fail(ErrorCode::SchemaError, path + ": expected an integer");
  return value.get<long long>();
}

inline Integer as_big(const Json& value, const std::string& path) {
  if (value.is_number_integer()) return Integer(value.get<long long>());
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    const bool digits = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                        s != "-";
    if (digits) return Integer(s);
  }
  fail(ErrorCode::SchemaError, path + ": expected an integer or a decimal string");
}

inline bool as_bool(const Json& value, const std::string& path) {
  if (!value.is_boolean()) fail(ErrorCode::SchemaError, path + ": expected a boolean");
  return value.get<bool>();
}

inline std::vector<int> as_int_list(const Json& value, const std::string& path) {
  if (!value.is_array()) fail(ErrorCode::SchemaError, path + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const long long v = as_int(value[i], path + "[" + std::to_string(i) + "]");
    if (v < -1'000'000'000LL || v > 1'000'000'000LL) fail(ErrorCode::InvalidInput, path + ": value out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

inline void reject_unknown(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) fail(ErrorCode::SchemaError, path + "." + k + ": unknown key");
  }
}

inline UnramifiedPart parse_unram(const Json& obj, const std::string& path) {
  if (!obj.is_object()) fail(ErrorCode::SchemaError, path + ": expected an object");
  reject_unknown(obj, {"degree", "dlog"}, path);
  UnramifiedPart u;
  if (obj.contains("degree")) u.degree = static_cast<int>(as_int(obj.at("degree"), path + ".degree"));
  const long long dlog = obj.contains("dlog") ? as_int(obj.at("dlog"), path + ".dlog") : 0;
  require(dlog >= 0, ErrorCode::InvariantError, path + ".dlog: must be >= 0");
  u.dlog = static_cast<std::uint64_t>(dlog);
  return u;
}

inline CharacterData parse_character(const FieldParams& params, const Json& obj, const std::string& path) {
  if (!obj.is_object()) fail(ErrorCode::SchemaError, path + ": expected an object");
  reject_unknown(obj, {"exps", "signature", "unram", "trivial", "cyclotomic"}, path);
  const bool has_exps = obj.contains("exps");
  const bool has_sig = obj.contains("signature");
  if (has_exps == has_sig) fail(ErrorCode::SchemaError, path + ": exactly one of exps or signature is required");
  const UnramifiedPart unram = obj.contains("unram") ? parse_unram(obj.at("unram"), path + ".unram") : UnramifiedPart{};
  const bool trivial = obj.contains("trivial") && as_bool(obj.at("trivial"), path + ".trivial");
  const bool cyclotomic = obj.contains("cyclotomic") && as_bool(obj.at("cyclotomic"), path + ".cyclotomic");
  if (has_sig) {
    return CharacterData(params, TameSignature(params, as_int_list(obj.at("signature"), path + ".signature")), unram,
                         trivial, cyclotomic);
  }
  const auto exps = as_int_list(obj.at("exps"), path + ".exps");
  require(static_cast<int>(exps.size()) == params.f(), ErrorCode::InvariantError, path + ".exps: length must equal f");
  std::vector<long long> wide(exps.begin(), exps.end());
  return character_from_exps(params, wide, unram, trivial, cyclotomic);
}

}  // namespace detail

/// Validates a problem document.
inline Problem parse_problem(const Json& doc) {
  using namespace detail;
  if (!doc.is_object()) fail(ErrorCode::SchemaError, "$: expected an object");
  reject_unknown(doc, {"params", "weight", "chi1", "chi2", "chi", "chi_cyclotomic", "e_m", "oracle"}, "$");
  const Json& pj = field(doc, "params", "$");
  reject_unknown(pj, {"p", "e", "f"}, "$.params");
  const auto p = as_int(field(pj, "p", "$.params"), "$.params.p");
  const auto e = as_int(field(pj, "e", "$.params"), "$.params.e");
  const auto f = as_int(field(pj, "f", "$.params"), "$.params.f");
  require(p >= 2 && p <= 1'000'000 && e >= 1 && e <= 4096 && f >= 1 && f <= 20, ErrorCode::InvalidInput,
          "$.params: p, e or f out of range");
  Problem problem;
  problem.params = FieldParams(static_cast<int>(p), static_cast<int>(e), static_cast<int>(f));
  const FieldParams& params = problem.params;

  if (doc.contains("weight")) {
    const Json& wj = doc.at("weight");
    if (!wj.is_object()) fail(ErrorCode::SchemaError, "$.weight: expected an object");
    reject_unknown(wj, {"eta", "theta", "r"}, "$.weight");
    SerreWeight w;
    if (wj.contains("r")) {
      if (wj.contains("eta") || wj.contains("theta")) {
        fail(ErrorCode::SchemaError, "$.weight: give either r or eta/theta");
      }
      const auto r = as_int_list(wj.at("r"), "$.weight.r");
      validate_r(params, r);
      w = SerreWeight::from_r(r);
    } else {
      w.eta = as_int_list(field(wj, "eta", "$.weight"), "$.weight.eta");
      w.theta = wj.contains("theta") ? as_int_list(wj.at("theta"), "$.weight.theta")
                                     : std::vector<int>(w.eta.size(), 0);
    }
    validate_weight(params, w);
    problem.weight = std::move(w);
  }
  if (doc.contains("chi1")) problem.chi1 = parse_character(params, doc.at("chi1"), "$.chi1");
  if (doc.contains("chi2")) problem.chi2 = parse_character(params, doc.at("chi2"), "$.chi2");
  if (doc.contains("chi")) problem.chi = parse_character(params, doc.at("chi"), "$.chi");
  if (doc.contains("chi_cyclotomic")) problem.chi_cyclotomic = as_bool(doc.at("chi_cyclotomic"), "$.chi_cyclotomic");
  if (problem.chi1 && problem.chi2 && problem.chi_cyclotomic) {
    try {
      (void)problem.character();
    } catch (const Error& err) {
      fail(ErrorCode::InvariantError, std::string("$.chi_cyclotomic: ") + err.what());
    }
  }
  if (doc.contains("e_m")) {
    const Integer em = as_big(doc.at("e_m"), "$.e_m");
    require(em >= 1 && params.q_minus_one() % em == 0, ErrorCode::InvariantError, "e_M must divide p^f-1");
    problem.e_m = em;
  }
  if (doc.contains("oracle")) {
    const Json& oj = doc.at("oracle");
    if (!oj.is_object()) fail(ErrorCode::SchemaError, "$.oracle: expected an object");
    reject_unknown(oj, {"fq_degree", "trunc"}, "$.oracle");
    OracleOptions opts;
    if (oj.contains("fq_degree")) {
      const auto r = as_int(oj.at("fq_degree"), "$.oracle.fq_degree");
      require(r >= 1 && r <= 22, ErrorCode::InvalidInput, "$.oracle.fq_degree: out of [1,22]");
      opts.fq_degree = static_cast<int>(r);
    }
    if (oj.contains("trunc")) {
      const auto t = as_int(oj.at("trunc"), "$.oracle.trunc");
      require(t >= 0 && t <= 100000, ErrorCode::InvalidInput, "$.oracle.trunc: out of [0,100000]");
      opts.trunc = static_cast<int>(t);
    }
    problem.oracle = opts;
  }
  return problem;
}

inline Problem parse_problem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    fail(ErrorCode::SchemaError, std::string("$: not valid JSON: ") + err.what());
  }
  return parse_problem(doc);
}

inline Problem parse_problem(const char* text) { return parse_problem(std::string(text)); }

// ---- report builders ----

inline Json to_json(const Integer& v) { return v.str(); }
inline Json to_json(const Rational& v) { return to_string(v); }

inline Json to_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

inline Json to_json(const FieldParams& params) { return Json{{"p", params.p()}, {"e", params.e()}, {"f", params.f()}}; }

inline Json to_json(const CharacterData& chi) {
  Json out;
  out["signature"] = chi.signature().digits();
  out["unram"] = Json{{"degree", chi.unram().degree}, {"dlog", chi.unram().dlog}};
  out["trivial"] = chi.is_trivial();
  out["cyclotomic"] = chi.is_cyclotomic();
  return out;
}

inline Json to_json(const SerreWeight& w) { return Json{{"eta", w.eta}, {"theta", w.theta}}; }

template <class Range>
Json labels_json(const Range& labels) {
  Json out = Json::array();
  for (const auto& label : labels) out.push_back(label.to_string());
  return out;
}

inline Json to_json(const WeightProfile& profile) {
  Json out;
  out["r"] = profile.r;
  out["j_min"] = profile.j_min;
  out["t"] = profile.t;
  out["s"] = profile.s;
  out["intervals"] = profile.intervals;
  out["xi"] = to_json(profile.xi);
  out["chi_signature"] = profile.chi_signature.digits();
  out["interval_total"] = profile.interval_total();
  return out;
}

inline Json dims_report(const FieldParams& params, const CharacterData& chi) {
  Json out;
  out["status"] = "ok";
  out["params"] = to_json(params);
  out["chi"] = to_json(chi);
  out["h1_dimension"] = h1_dimension(params, chi);
  const JumpProfile jumps = jump_profile(params, chi);
  Json entries = Json::array();
  for (const auto& entry : jumps.entries) {
    Json j;
    j["s"] = to_json(entry.s);
    j["m"] = entry.m ? Json(entry.m->str()) : Json(nullptr);
    j["dim"] = entry.dim;
    entries.push_back(std::move(j));
  }
  out["jump_profile"] = std::move(entries);
  out["jump_total"] = jumps.total;
  Json windows = Json::array();
  for (int j = 0; j < params.e(); ++j) windows.push_back(window_cardinality(params, chi, j));
  out["window_cardinalities"] = std::move(windows);
  return out;
}

inline Json basis_report(const FieldParams& params, const CharacterData& chi) {
  const auto [f1, f2] = niveau(chi.signature());
  Json out;
  out["status"] = "ok";
  out["params"] = to_json(params);
  out["chi"] = to_json(chi);
  out["n"] = to_json(n_values(params, chi.signature()));
  out["f_prime"] = f1;
  out["f_double_prime"] = f2;
  out["w_prime"] = to_json(w_prime(params, chi));
  out["basis_labels"] = labels_json(basis_labels(params, chi));
  out["h1_dimension"] = h1_dimension(params, chi);
  return out;
}

inline Json lv_empty_report(const FieldParams& params, const std::string& message) {
  Json out;
  out["status"] = "lv_empty";
  out["params"] = to_json(params);
  out["message"] = "L_V empty: no labels (" + message + ")";
  out["labels"] = Json::array();
  out["dimension"] = 0;
  return out;
}

inline Json profile_report(const Problem& problem) {
  const FieldParams& params = problem.params;
  const TwistResult twisted =
      twist_normalize(params, problem.require_weight(), problem.require_chi1(), problem.require_chi2());
  const std::vector<int> r = twisted.weight.r();
  const std::vector<int> m = low_digit_exponents(params, twisted.chi2.signature());
  Json out;
  out["status"] = "ok";
  out["params"] = to_json(params);
  out["normalized_weight"] = to_json(twisted.weight);
  out["chi2_exps"] = m;
  Json subsets = Json::array();
  for (std::uint32_t s : valid_shift_subsets(params, r, m)) subsets.push_back(subset_indices(s, params.f()));
  out["valid_shift_subsets"] = std::move(subsets);
  try {
    const WeightProfile profile = ts_profile(params, r, twisted.chi1, twisted.chi2);
    const CharacterData chi = char_quotient(params, twisted.chi1, twisted.chi2, problem.chi_cyclotomic);
    out["profile"] = to_json(profile);
    out["j_v_ah"] = labels_json(j_v_ah(params, profile, chi, problem.e_m.value_or(params.q_minus_one())));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NoValidShift) throw;
    Json empty = lv_empty_report(params, err.what());
    empty["valid_shift_subsets"] = out["valid_shift_subsets"];
    return empty;
  }
  return out;
}

inline Json lv_report(const Problem& problem) {
  const FieldParams& params = problem.params;
  LVOptions options{problem.e_m, problem.chi_cyclotomic};
  std::optional<LVResult> maybe;
  try {
    maybe = l_v_ah(params, problem.require_weight(), problem.require_chi1(), problem.require_chi2(), options);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NoValidShift) return lv_empty_report(params, err.what());
    throw;
  }
  const LVResult& res = *maybe;
  Json out;
  out["status"] = "ok";
  out["params"] = to_json(params);
  out["normalized_weight"] = to_json(res.normalized_weight);
  out["chi"] = to_json(res.chi);
  out["e_m"] = res.e_m.str();
  out["exceptional"] = res.exceptional;
  out["labels"] = labels_json(res.labels);
  out["dimension"] = res.dimension;
  out["h1_dimension"] = h1_dimension(params, res.chi);
  if (res.profile) out["profile"] = to_json(*res.profile);
  out["trivial_extra_index"] = res.trivial_extra_index ? Json(*res.trivial_extra_index) : Json(nullptr);
  return out;
}

/// Oracle report; `agree` is set to whether the residue pairing reproduces J_V^AH.
inline Json oracle_report(const Problem& problem, bool& agree) {
  const FieldParams& params = problem.params;
  const TwistResult twisted =
      twist_normalize(params, problem.require_weight(), problem.require_chi1(), problem.require_chi2());
  std::optional<WeightProfile> maybe;
  try {
    maybe = ts_profile(params, twisted.weight.r(), twisted.chi1, twisted.chi2);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NoValidShift) throw;
    agree = true;
    return lv_empty_report(params, err.what());
  }
  const WeightProfile& profile = *maybe;
  const CharacterData chi = char_quotient(params, twisted.chi1, twisted.chi2, problem.chi_cyclotomic);
  const Integer em = problem.e_m.value_or(params.q_minus_one());
  const LabelSet constructive = j_v_ah(params, profile, chi, em);
  const OracleResult res = rederive_jvah(params, profile, chi, em, problem.oracle.value_or(OracleOptions{}));
  agree = res.labels == constructive && res.extra_class_ok.value_or(true);
  Json out;
  out["status"] = agree ? "ok" : "oracle_mismatch";
  out["params"] = to_json(params);
  out["chi"] = to_json(chi);
  out["e_m"] = em.str();
  out["profile"] = to_json(profile);
  out["j_v_ah"] = labels_json(constructive);
  out["oracle_labels"] = labels_json(res.labels);
  out["agree"] = agree;
  Json field;
  field["fq_degree"] = res.fq_degree;
  field["working_degree"] = res.working_degree;
  field["l_degree"] = res.l_degree;
  field["trunc"] = res.trunc;
  out["oracle_field"] = std::move(field);
  Json pairings = Json::array();
  for (const auto& rec : res.nonzero_pairings) {
    pairings.push_back(Json{{"alpha", rec.alpha.to_string()}, {"i", rec.i}, {"d", rec.d}, {"value", "g^" + std::to_string(rec.value_log)}});
  }
  out["nonzero_pairings"] = std::move(pairings);
  out["extra_class_ok"] = res.extra_class_ok ? Json(*res.extra_class_ok) : Json(nullptr);
  return out;
}

inline Json verify_report_json(const VerifyReport& report) {
  Json out;
  out["status"] = report.ok() ? "ok" : "failed";
  out["instances"] = report.instances();
  out["character_instances"] = report.character_instances;
  out["weight_instances"] = report.weight_instances;
  out["lv_empty"] = report.lv_empty;
  out["oracle_instances"] = report.oracle_instances;
  Json props = Json::array();
  for (const auto& t : report.properties) {
    props.push_back(Json{{"name", t.name},
                         {"passed", t.passed},
                         {"failed", t.failed},
                         {"counterexample", t.counterexample ? Json(*t.counterexample) : Json(nullptr)}});
  }
  out["properties"] = std::move(props);
  return out;
}

inline std::string verify_report_csv(const VerifyReport& report) {
  std::ostringstream os;
  os << "property,passed,failed,counterexample\n";
  for (const auto& t : report.properties) {
    os << t.name << ',' << t.passed << ',' << t.failed << ",\"" << t.counterexample.value_or("") << "\"\n";
  }
  return os.str();
}

namespace detail {

inline std::string tuple_field(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string tuple_field(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].str();
  return s + ")";
}

}  // namespace detail

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "p,e,f,chi_sig,r,t,s,xi,|J|,sum|I|,ok\n";
  for (const auto& row : rows) {
    os << row.params.p() << ',' << row.params.e() << ',' << row.params.f() << ',';
    if (row.profile) {
      const auto& pr = *row.profile;
      os << detail::tuple_field(pr.chi_signature.digits()) << ',' << detail::tuple_field(row.r) << ','
         << detail::tuple_field(pr.t) << ',' << detail::tuple_field(pr.s) << ',' << detail::tuple_field(pr.xi) << ','
         << row.jvah_size << ',' << pr.interval_total() << ',' << (row.ok ? "true" : "false") << '\n';
    } else {
      os << "," << detail::tuple_field(row.r) << ",,,,0,0," << (row.ok ? "lv_empty" : "false") << '\n';
    }
  }
  return os.str();
}

inline Json sweep_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json j;
    j["p"] = row.params.p();
    j["e"] = row.params.e();
    j["f"] = row.params.f();
    j["r"] = row.r;
    j["chi2_exps"] = row.chi2_exps;
    if (row.profile) {
      j["chi_sig"] = row.profile->chi_signature.digits();
      j["t"] = row.profile->t;
      j["s"] = row.profile->s;
      j["xi"] = to_json(row.profile->xi);
      j["j_size"] = row.jvah_size;
      j["interval_total"] = row.profile->interval_total();
      j["ok"] = row.ok;
    } else {
      j["status"] = "lv_empty";
      j["ok"] = row.ok;
    }
    out.push_back(std::move(j));
  }
  return Json{{"status", std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.ok; }) ? "ok" : "failed"},
              {"rows", std::move(out)}};
}

/// Indented "key: value" rendering of a report.
inline void render_text(const Json& value, std::ostringstream& os, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const Json& v) {
    return std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
  };
  for (auto it = value.begin(); it != value.end(); ++it) {
    const Json& v = it.value();
    const std::string key = value.is_object() ? it.key() : "-";
    if (v.is_primitive()) {
      os << pad << key << ": " << scalar(v) << '\n';
    } else if (v.is_array() && flat(v)) {
      os << pad << key << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
      os << "]\n";
    } else {
      os << pad << key << ":\n";
      render_text(v, os, indent + 2);
    }
  }
}

inline std::string render_text(const Json& value) {
  std::ostringstream os;
  render_text(value, os);
  return os.str();
}

}  // namespace serrewt
