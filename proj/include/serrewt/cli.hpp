#pragma once

// serrewt command line: dims, basis, profile, lv, oracle, verify, sweep.
//
// Exit codes: 0 success (including an empty L_V), 1 a property or oracle
// check failed, 2 invalid input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "serrewt/error.hpp"
#include "serrewt/io.hpp"
#include "serrewt/verify.hpp"

namespace serrewt {

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::SchemaError:
    case ErrorCode::InvariantError:
    case ErrorCode::InvalidEM:
    case ErrorCode::ChiMismatch:
    case ErrorCode::NonUnitConstantTerm:
    case ErrorCode::TruncationInsufficient:
      return 2;
    case ErrorCode::NoValidShift:
      return 0;
    case ErrorCode::MinimalityAmbiguous:
    case ErrorCode::NoMatchingIndex:
    case ErrorCode::InternalInvariantViolation:
    case ErrorCode::IntegralityViolation:
    case ErrorCode::RouteMismatch:
      return 1;
  }
  return 1;
}

struct CliOptions {
  std::optional<int> p, e, f;
  std::string chi_exps, chi1_exps, chi2_exps;
  std::string chi_unram, chi1_unram, chi2_unram;
  bool chi_trivial = false;
  bool chi_cyclotomic = false;
  bool chi2_unramified = false;
  std::string eta, theta, r;
  std::string e_m;
  std::optional<int> fq_degree, trunc;
  std::string input;
  std::string format = "json";
  std::string out;
  unsigned jobs = 1;
  int p_max = 3, e_max = 2, f_max = 2;
  bool with_oracle = false;
  std::string mutate = "none";
};

namespace detail {

inline std::vector<long long> parse_list(const std::string& text, const std::string& flag) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidInput, flag + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) fail(ErrorCode::InvalidInput, flag + ": expected comma-separated integers");
  return out;
}

inline std::vector<int> parse_small_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (long long v : parse_list(text, flag)) {
    require(v > -1'000'000'000LL && v < 1'000'000'000LL, ErrorCode::InvalidInput, flag + ": value out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

/// "degree:dlog".
inline UnramifiedPart parse_unram_flag(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  require(colon != std::string::npos, ErrorCode::InvalidInput, flag + ": expected degree:dlog");
  const auto degree = parse_list(text.substr(0, colon), flag);
  const auto dlog = parse_list(text.substr(colon + 1), flag);
  require(degree.size() == 1 && dlog.size() == 1 && degree[0] >= 1 && degree[0] <= 62 && dlog[0] >= 0,
          ErrorCode::InvalidInput, flag + ": expected degree:dlog with degree >= 1 and dlog >= 0");
  return {static_cast<int>(degree[0]), static_cast<std::uint64_t>(dlog[0])};
}

inline CharacterData character_flag(const FieldParams& params, const std::string& exps, const std::string& unram,
                                    const std::string& flag, bool trivial = false, bool cyclotomic = false) {
  const auto e = parse_list(exps, flag);
  require(static_cast<int>(e.size()) == params.f(), ErrorCode::InvalidInput, flag + ": length must equal f");
  const UnramifiedPart u = unram.empty() ? UnramifiedPart{} : parse_unram_flag(unram, flag + " unram");
  return character_from_exps(params, e, u, trivial, cyclotomic);
}

inline bool has_problem_flags(const CliOptions& o) {
  return o.p || o.e || o.f || !o.chi_exps.empty() || !o.chi1_exps.empty() || !o.chi2_exps.empty() || !o.eta.empty() ||
         !o.r.empty() || !o.e_m.empty();
}

inline Problem problem_from_flags(const CliOptions& o) {
  require(o.p && o.e && o.f, ErrorCode::InvalidInput, "--p, --e and --f are required (or use --input)");
  Problem problem;
  problem.params = FieldParams(*o.p, *o.e, *o.f);
  const FieldParams& params = problem.params;
  if (!o.chi_exps.empty()) {
    problem.chi = character_flag(params, o.chi_exps, o.chi_unram, "--chi-exps", o.chi_trivial, o.chi_cyclotomic);
  } else {
    require(!o.chi_trivial && o.chi_unram.empty(), ErrorCode::InvalidInput,
            "--chi-trivial and --chi-unram need --chi-exps");
    problem.chi_cyclotomic = o.chi_cyclotomic;
  }
  if (!o.chi1_exps.empty()) problem.chi1 = character_flag(params, o.chi1_exps, o.chi1_unram, "--chi1-exps");
  if (!o.chi2_exps.empty()) {
    problem.chi2 = character_flag(params, o.chi2_exps, o.chi2_unram, "--chi2-exps");
    require(!o.chi2_unramified || is_unramified(params, *problem.chi2), ErrorCode::InvariantError,
            "--chi2-unramified given but chi2 has inertial signature " + problem.chi2->signature().to_string());
  } else if (o.chi2_unramified || problem.chi1) {
    const UnramifiedPart u = o.chi2_unram.empty() ? UnramifiedPart{} : parse_unram_flag(o.chi2_unram, "--chi2-unram");
    problem.chi2 = CharacterData(params, trivial_signature(params), u);
  }
  if (!o.r.empty()) {
    require(o.eta.empty() && o.theta.empty(), ErrorCode::InvalidInput, "--r excludes --eta and --theta");
    const auto r = parse_small_list(o.r, "--r");
    validate_r(params, r);
    problem.weight = SerreWeight::from_r(r);
  } else if (!o.eta.empty()) {
    SerreWeight w;
    w.eta = parse_small_list(o.eta, "--eta");
    w.theta = o.theta.empty() ? std::vector<int>(w.eta.size(), 0) : parse_small_list(o.theta, "--theta");
    validate_weight(params, w);
    problem.weight = std::move(w);
  }
  if (!o.e_m.empty()) {
    const auto em = parse_list(o.e_m, "--e-m");
    require(em.size() == 1 && em[0] >= 1 && params.q_minus_one() % em[0] == 0, ErrorCode::InvariantError,
            "e_M must divide p^f-1");
    problem.e_m = Integer(em[0]);
  }
  if (o.fq_degree || o.trunc) {
    OracleOptions opts;
    if (o.fq_degree) {
      require(*o.fq_degree >= 1 && *o.fq_degree <= 22, ErrorCode::InvalidInput, "--fq-degree out of [1,22]");
      opts.fq_degree = o.fq_degree;
    }
    if (o.trunc) {
      require(*o.trunc >= 0 && *o.trunc <= 100000, ErrorCode::InvalidInput, "--trunc out of [0,100000]");
      opts.trunc = o.trunc;
    }
    problem.oracle = opts;
  }
  if (problem.chi_cyclotomic && problem.chi1 && problem.chi2) (void)problem.character();
  return problem;
}

inline Problem load_problem(const CliOptions& o) {
  if (o.input.empty()) return problem_from_flags(o);
  require(!has_problem_flags(o), ErrorCode::InvalidInput, "use either --input or problem flags, not both");
  std::ifstream in(o.input);
  require(static_cast<bool>(in), ErrorCode::InvalidInput, "cannot read " + o.input);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Problem problem = parse_problem(buffer.str());
  if (o.fq_degree || o.trunc) {
    OracleOptions opts = problem.oracle.value_or(OracleOptions{});
    if (o.fq_degree) opts.fq_degree = o.fq_degree;
    if (o.trunc) opts.trunc = o.trunc;
    problem.oracle = opts;
  }
  return problem;
}

inline void add_problem_options(CLI::App& sub, CliOptions& o) {
  sub.add_option("--input", o.input, "problem document (JSON)");
  sub.add_option("--p", o.p, "residue characteristic");
  sub.add_option("--e", o.e, "ramification index");
  sub.add_option("--f", o.f, "residue degree");
  sub.add_option("--chi-exps", o.chi_exps, "exponents c_i of chi|_I = prod omega_i^{c_i}");
  sub.add_option("--chi1-exps", o.chi1_exps, "exponents of chi1 on inertia");
  sub.add_option("--chi2-exps", o.chi2_exps, "exponents of chi2 on inertia");
  sub.add_option("--chi-unram", o.chi_unram, "unramified part of chi as degree:dlog");
  sub.add_option("--chi1-unram", o.chi1_unram, "unramified part of chi1 as degree:dlog");
  sub.add_option("--chi2-unram", o.chi2_unram, "unramified part of chi2 as degree:dlog");
  sub.add_flag("--chi-trivial", o.chi_trivial, "declare chi trivial (checked)");
  sub.add_flag("--chi-cyclotomic", o.chi_cyclotomic, "declare chi (or chi1/chi2) cyclotomic");
  sub.add_flag("--chi2-unramified", o.chi2_unramified, "declare chi2 unramified (checked)");
  sub.add_option("--eta", o.eta, "weight eta");
  sub.add_option("--theta", o.theta, "weight theta");
  sub.add_option("--r", o.r, "r_i = eta_i + 1 with theta = 0");
  sub.add_option("--e-m", o.e_m, "e_M dividing p^f - 1");
  sub.add_option("--fq-degree", o.fq_degree, "degree of the coefficient field of mu(Frob)");
  sub.add_option("--trunc", o.trunc, "series truncation degree");
}

inline void add_output_options(CLI::App& sub, CliOptions& o) {
  sub.add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  sub.add_option("--out", o.out, "write the report here instead of stdout");
}

inline void add_grid_options(CLI::App& sub, CliOptions& o) {
  sub.add_option("--p-max", o.p_max, "largest prime in the grid");
  sub.add_option("--e-max", o.e_max, "largest e in the grid");
  sub.add_option("--f-max", o.f_max, "largest f in the grid");
  sub.add_option("--jobs", o.jobs, "worker threads");
}

inline std::string render(const Json& report, const std::string& format) {
  if (format == "text") return render_text(report);
  require(format == "json", ErrorCode::InvalidInput, "--format csv is available for verify and sweep only");
  return report.dump(2) + "\n";
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Serre weights, ramification jumps and the Artin-Hasse subspace of H^1"};
  app.require_subcommand(1);
  CliOptions o;
  std::vector<CLI::App*> subs;
  for (const char* name : {"dims", "basis", "profile", "lv", "oracle"}) {
    CLI::App* sub = app.add_subcommand(name);
    detail::add_problem_options(*sub, o);
    detail::add_output_options(*sub, o);
    subs.push_back(sub);
  }
  subs[0]->description("dimension of H^1 and the ramification jump profile");
  subs[1]->description("W' and the basis labels of H^1");
  subs[2]->description("Kisin-bound profile t, s, I, xi and J_V^AH");
  subs[3]->description("the subspace L_V^AH");
  subs[4]->description("re-derive J_V^AH from the residue pairing");
  CLI::App* verify = app.add_subcommand("verify", "run every property over a parameter grid");
  detail::add_grid_options(*verify, o);
  detail::add_output_options(*verify, o);
  verify->add_flag("--with-oracle", o.with_oracle, "include the residue-pairing oracle");
  verify->add_option("--mutate", o.mutate, "corrupt a formula to check the suite fails")
      ->check(CLI::IsMember({"none", "xi-off-by-one"}));
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "profile and |J_V^AH| over a parameter grid");
  detail::add_grid_options(*sweep_cmd, o);
  detail::add_output_options(*sweep_cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto emit = [&](const std::string& text) -> bool {
    if (o.out.empty()) {
      out << text;
      return true;
    }
    std::ofstream file(o.out);
    if (!file) {
      err << "error: InvalidInput: cannot write " << o.out << "\n";
      return false;
    }
    file << text;
    return true;
  };

  try {
    int code = 0;
    std::string text;
    if (app.got_subcommand("dims")) {
      const Problem problem = detail::load_problem(o);
      text = detail::render(dims_report(problem.params, problem.character()), o.format);
    } else if (app.got_subcommand("basis")) {
      const Problem problem = detail::load_problem(o);
      text = detail::render(basis_report(problem.params, problem.character()), o.format);
    } else if (app.got_subcommand("profile")) {
      text = detail::render(profile_report(detail::load_problem(o)), o.format);
    } else if (app.got_subcommand("lv")) {
      text = detail::render(lv_report(detail::load_problem(o)), o.format);
    } else if (app.got_subcommand("oracle")) {
      bool agree = false;
      text = detail::render(oracle_report(detail::load_problem(o), agree), o.format);
      code = agree ? 0 : 1;
    } else if (app.got_subcommand("verify") || app.got_subcommand("sweep")) {
      require(o.p_max >= 0 && o.p_max <= 50 && o.e_max >= 0 && o.e_max <= 8 && o.f_max >= 0 && o.f_max <= 6,
              ErrorCode::InvalidInput, "grid bounds out of range (p <= 50, e <= 8, f <= 6)");
      require(o.jobs >= 1 && o.jobs <= 256, ErrorCode::InvalidInput, "--jobs out of [1,256]");
      Grid grid = Grid::up_to(o.p_max, o.e_max, o.f_max);
      if (app.got_subcommand("verify")) {
        grid.with_oracle = o.with_oracle;
        VerifyOptions vopts;
        vopts.jobs = o.jobs;
        vopts.mutation = o.mutate == "xi-off-by-one" ? Mutation::XiOffByOne : Mutation::None;
        const VerifyReport rep = verify_suite(grid, vopts);
        text = o.format == "csv" ? verify_report_csv(rep) : detail::render(verify_report_json(rep), o.format);
        code = rep.ok() ? 0 : 1;
      } else {
        const auto rows = sweep(grid, o.jobs);
        text = o.format == "csv" ? sweep_csv(rows) : detail::render(sweep_json(rows), o.format);
        code = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.ok; }) ? 0 : 1;
      }
    }
    if (!emit(text)) return 2;
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    Json report_json{{"status", "error"}, {"code", code_name(e.code())}, {"message", e.what()}};
    emit(o.format == "text" ? render_text(report_json) : report_json.dump(2) + "\n");
    return exit_code_for(e.code());
  }
}

inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(args, out, err);
}

}  // namespace serrewt
