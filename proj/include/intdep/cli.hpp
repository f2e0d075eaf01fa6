#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "intdep/cache.hpp"
#include "intdep/checker.hpp"
#include "intdep/multiplicity.hpp"
#include "intdep/problem.hpp"
#include "intdep/report.hpp"

namespace intdep {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int hypothesis = 2;
inline constexpr int parse = 3;
}  // namespace exit_code

namespace detail {

struct CliOptions {
  std::string file;
  std::string ideal = "I";
  std::uint32_t c = 0;
  bool assert_domain = false;
  bool verbose = false;
  bool no_cache = false;
  bool verify_cache = false;
  bool sequential = false;
  bool sharp_range = false;
  std::string cache_dir;
  unsigned n = 4;
  std::string x_from = "0";
  std::string x_to = "4";
  std::string x_step = "1";
};

inline mpq_class parse_rational(const std::string& text, const char* what) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) throw CLI::ValidationError(what, "not a rational: " + text);
  q.canonicalize();
  return q;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json error_json(const std::string& kind, const std::string& message) {
  return {{"schema_version", report_schema_version}, {"error", {{"kind", kind}, {"message", message}}}};
}

class Session {
 public:
  Session(const CliOptions& o, std::ostream& err) : options_(o), err_(err), start_(std::chrono::steady_clock::now()) {
    engine_stats().reset();
    if (!o.no_cache && !o.cache_dir.empty()) {
      store_ = std::make_unique<FileGroebnerStore>(o.cache_dir, o.verify_cache, &err);
      guard_ = std::make_unique<ScopedGroebnerStore>(store_.get());
    }
    spec_ = parse_problem(read_file(o.file));
    if (o.c != 0) spec_.c = o.c;
    if (o.assert_domain) spec_.assert_domain = true;
    if (o.sharp_range) spec_.sharp_range = true;
    const bool asserted = spec_.assert_domain || spec_.ring->is_polynomial_ring();
    if (!asserted) {
      throw HypothesisError(HypothesisCode::domain_not_asserted,
                            "the ring has relations; its domain property must be asserted (--assert-domain)");
    }
  }

  const ProblemSpec& spec() const { return spec_; }

  void log(const std::string& message) const {
    if (options_.verbose) err_ << "[intdep] " << message << "\n";
  }

  nlohmann::json header(const std::string& command) const {
    return {{"schema_version", report_schema_version},
            {"command", command},
            {"problem", serialize_problem(spec_)},
            {"ring",
             {{"description", spec_.ring->to_string()},
              {"dimension", spec_.ring->dimension()},
              {"multiplicity", spec_.ring->multiplicity().get_str()}}}};
  }

  nlohmann::json run_section() const {
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    nlohmann::json cache{{"enabled", store_ != nullptr}};
    if (store_) {
      cache["dir"] = options_.cache_dir;
      cache["verify"] = options_.verify_cache;
      cache["warnings"] = store_->warnings();
    }
    return {{"elapsed_ms", elapsed}, {"stats", stats_json()}, {"cache", cache}};
  }

 private:
  CliOptions options_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  std::unique_ptr<FileGroebnerStore> store_;
  std::unique_ptr<ScopedGroebnerStore> guard_;
  ProblemSpec spec_;
};

inline std::pair<GradedIdeal, GradedIdeal> pair_of(const ProblemSpec& spec) {
  if (!spec.find("I") || !spec.find("J")) throw std::invalid_argument("the problem must define ideals I and J");
  return {spec.ideal("I"), spec.ideal("J")};
}

inline CheckOptions check_options(const ProblemSpec& spec, const CliOptions& o) {
  CheckOptions co;
  co.c = spec.c.value_or(0);
  co.domain_asserted = spec.assert_domain;
  co.parallel = !o.sequential;
  return co;
}

inline nlohmann::json oracle_section(const GradedIdeal& ideal, std::uint32_t c, unsigned n_max) {
  const auto rows = fiber_piece_agreement(ideal, c, n_max);
  bool all = true;
  for (const auto& r : rows) all = all && r.match();
  return {{"c", c}, {"diagonal_degree", diagonal_degree(ideal, c).value}, {"rows", to_json(rows)}, {"all_match", all}};
}

inline int cmd_check(const CliOptions& o, std::ostream& out, std::ostream& err) {
  Session s(o, err);
  const auto [i, j] = pair_of(s.spec());
  const CheckOptions co = check_options(s.spec(), o);
  nlohmann::json report = s.header("check");
  report["hypotheses"] = to_json(validate_hypotheses(i, j, co.domain_asserted));
  s.log("computing four diagonal degrees");
  const Verdict v = check_integral_closure(i, j, co);
  report["verdict"] = to_json(v);
  report["epsilon_difference"] =
      v.finite_colength ? nlohmann::json(*v.s_diagonal_J - *v.s_diagonal_I) : nlohmann::json(nullptr);
  if (i.is_equigenerated() && j.is_equigenerated()) {
    s.log("equigenerated pair: comparing RA-multiplicities");
    report["equigenerated"] = to_json(check_equigenerated(i, j, co));
  }
  if (s.spec().oracle) {
    s.log("oracle: fiber pieces against direct lengths");
    report["oracle"] = {{"I", oracle_section(i, v.c_used, o.n)}, {"J", oracle_section(j, v.c_used, o.n)}};
  }
  report["run"] = s.run_section();
  out << report.dump(2) << "\n";
  return exit_code::ok;
}

inline int cmd_colength(const CliOptions& o, std::ostream& out, std::ostream& err) {
  Session s(o, err);
  const auto [i, j] = pair_of(s.spec());
  const CheckOptions co = check_options(s.spec(), o);
  nlohmann::json report = s.header("colength");
  report["hypotheses"] = to_json(validate_hypotheses(i, j, co.domain_asserted));
  report["verdict"] = to_json(check_finite_colength(i, j, co));
  report["run"] = s.run_section();
  out << report.dump(2) << "\n";
  return exit_code::ok;
}

inline int cmd_ra_mult(const CliOptions& o, std::ostream& out, std::ostream& err) {
  Session s(o, err);
  const GradedIdeal ideal = s.spec().ideal(o.ideal);
  nlohmann::json report = s.header("ra-mult");
  const std::uint32_t d = ideal.max_generating_degree();
  const RAMultiplicities ra = ra_multiplicities(ideal);
  nlohmann::json samples = nlohmann::json::array();
  for (std::uint32_t k = 0; k < ra.values.size(); ++k) {
    samples.push_back({{"c", d + 1 + k}, {"diagonal_degree", predicted_diagonal_degree(ra, d + 1 + k).get_str()}});
  }
  report["ideal"] = {{"name", o.ideal},
                     {"generators", ideal.to_string()},
                     {"d", d},
                     {"dim_R_mod_I", dim_and_degree(ideal).dim}};
  report["samples"] = samples;
  report["ra_multiplicities"] = to_json(ra);
  report["run"] = s.run_section();
  out << report.dump(2) << "\n";
  return exit_code::ok;
}

inline int cmd_mixed(const CliOptions& o, std::ostream& out, std::ostream& err) {
  Session s(o, err);
  const auto [i, j] = pair_of(s.spec());
  MixedOptions mo;
  mo.c = s.spec().c.value_or(0);
  mo.sharp_range = s.spec().sharp_range;
  mo.domain_asserted = s.spec().assert_domain;
  mo.parallel = !o.sequential;
  nlohmann::json report = s.header("mixed");
  report["hypotheses"] = to_json(validate_hypotheses(i, j, mo.domain_asserted));
  report["mixed"] = to_json(mixed_report(i, j, mo));
  report["run"] = s.run_section();
  out << report.dump(2) << "\n";
  return exit_code::ok;
}

inline int cmd_density(const CliOptions& o, std::ostream& out, std::ostream& err) {
  Session s(o, err);
  const GradedIdeal ideal = s.spec().ideal(o.ideal);
  const mpq_class from = parse_rational(o.x_from, "--x-from");
  const mpq_class to = parse_rational(o.x_to, "--x-to");
  const mpq_class step = parse_rational(o.x_step, "--x-step");
  if (sgn(step) <= 0) throw CLI::ValidationError("--x-step", "must be positive");
  if (sgn(from) < 0 || to < from) throw CLI::ValidationError("--x-from/--x-to", "need 0 <= x-from <= x-to");
  if (o.n == 0) throw CLI::ValidationError("--n", "must be positive");
  out << "n,x_num,x_den,f_num,f_den,g_num,g_den\n";
  for (mpq_class x = from; x <= to; x += step) {
    s.log("sampling x = " + x.get_str());
    const DensitySample d = density_sample(ideal, o.n, x);
    out << o.n << "," << x.get_num().get_str() << "," << x.get_den().get_str() << ","
        << d.adic_value.get_num().get_str() << "," << d.adic_value.get_den().get_str() << ","
        << d.saturated_value.get_num().get_str() << "," << d.saturated_value.get_den().get_str() << "\n";
  }
  return exit_code::ok;
}

inline int cmd_oracle(const CliOptions& o, std::ostream& out, std::ostream& err) {
  Session s(o, err);
  nlohmann::json report = s.header("oracle");
  nlohmann::json ideals = nlohmann::json::object();
  bool all = true;
  for (const auto& named : s.spec().ideals) {
    const GradedIdeal ideal(s.spec().ring, named.generators);
    const std::uint32_t c = s.spec().c.value_or(ideal.max_generating_degree() + 1);
    s.log("oracle for " + named.name);
    ideals[named.name] = oracle_section(ideal, c, o.n);
    all = all && ideals[named.name]["all_match"].get<bool>();
  }
  report["ideals"] = ideals;
  report["all_match"] = all;
  report["run"] = s.run_section();
  out << report.dump(2) << "\n";
  return exit_code::ok;
}

}  // namespace detail

/// Runs the command line `args` (args[0] is the program name).
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral dependence of homogeneous ideals via multiplicities", "intdep"};
  app.require_subcommand(1);
  detail::CliOptions o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "problem file")->required();
    sub->add_flag("--verbose", o.verbose, "progress messages on stderr");
    sub->add_option("--cache-dir", o.cache_dir, "directory for persisted Groebner bases");
    sub->add_flag("--no-cache", o.no_cache, "disable the cache even if --cache-dir is given");
    sub->add_flag("--verify-cache", o.verify_cache, "recompute every cache hit and compare");
    sub->add_option("--c", o.c, "diagonal slope (must exceed max generating degree)");
    sub->add_flag("--assert-domain", o.assert_domain, "assert that the quotient ring is a domain");
    sub->add_flag("--sequential", o.sequential, "no concurrent evaluation");
  };

  auto* check = app.add_subcommand("check", "decide whether I and J have the same integral closure");
  common(check);
  check->add_option("--n", o.n, "oracle depth when the problem sets option oracle");
  auto* colength = app.add_subcommand("colength", "decide finite colength of the closures");
  common(colength);
  auto* ra = app.add_subcommand("ra-mult", "RA-multiplicities of one ideal");
  common(ra);
  ra->add_option("--ideal", o.ideal, "ideal name");
  auto* mixed = app.add_subcommand("mixed", "mixed multiplicity tables in R and S");
  common(mixed);
  mixed->add_flag("--sharp-range", o.sharp_range, "aggregate only the sharp index ranges");
  auto* density = app.add_subcommand("density", "CSV of finite-n density values");
  common(density);
  density->add_option("--ideal", o.ideal, "ideal name");
  density->add_option("--n", o.n, "level n");
  density->add_option("--x-from", o.x_from, "first abscissa (rational)");
  density->add_option("--x-to", o.x_to, "last abscissa (rational)");
  density->add_option("--x-step", o.x_step, "step (rational)");
  auto* oracle = app.add_subcommand("oracle", "fiber-cone pieces against direct lengths");
  common(oracle);
  oracle->add_option("--n", o.n, "largest n");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }

  try {
    if (*check) return detail::cmd_check(o, out, err);
    if (*colength) return detail::cmd_colength(o, out, err);
    if (*ra) return detail::cmd_ra_mult(o, out, err);
    if (*mixed) return detail::cmd_mixed(o, out, err);
    if (*density) return detail::cmd_density(o, out, err);
    if (*oracle) return detail::cmd_oracle(o, out, err);
  } catch (const ParseError& e) {
    auto j = detail::error_json("parse", e.message());
    j["error"]["line"] = e.line();
    j["error"]["column"] = e.column();
    out << j.dump(2) << "\n";
    err << o.file << ":" << e.what() << "\n";
    return exit_code::parse;
  } catch (const HypothesisError& e) {
    auto j = detail::error_json("hypothesis", e.what());
    j["error"]["code"] = to_string(e.code());
    out << j.dump(2) << "\n";
    err << "hypothesis violated (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code::hypothesis;
  } catch (const std::exception& e) {
    out << detail::error_json("error", e.what()).dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
  return exit_code::failure;
}

}  // namespace intdep
