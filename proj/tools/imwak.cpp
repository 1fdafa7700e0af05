// Command-line interface for the exact-arithmetic oscillator realization:
// apply generator mode words to module vectors, tabulate the singular-vector
// coefficient table, construct singular vectors, and run the verification
// suites with machine-readable reports.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "imwak/report.hpp"
#include "imwak/suites.hpp"

namespace {

using namespace imwak;

struct RawFlags {
  std::optional<std::string> lambda, kappa, mu, b_level, beta1, convention, m_range;
  std::optional<long> m_weight, range, window, degree, samples;
  std::optional<std::uint64_t> seed;
  std::string report;
  std::string format;
};

void add_param_flags(CLI::App* cmd, RawFlags& r) {
  cmd->add_option("--lambda", r.lambda, "highest weight (rational p/q)");
  cmd->add_option("--kappa", r.kappa, "level (rational p/q)");
  cmd->add_option("--mu", r.mu, "linear-dilaton parameter (rational p/q)");
  cmd->add_option("--b-level", r.b_level,
                  "b-oscillator level: rational p/q or the keyword 'kappa'");
  cmd->add_option("--beta1", r.beta1, "normalization of the single-box coefficient");
  cmd->add_option("--m", r.m_weight, "tensor factor dimension parameter m (integer >= 0)");
  cmd->add_option("--delta-convention", r.convention, "conformal shift convention")
      ->check(CLI::IsMember({"affine", "virasoro"}));
}

void add_suite_flags(CLI::App* cmd, RawFlags& r) {
  cmd->add_option("--range", r.range, "mode index bound for bracket batteries");
  cmd->add_option("--window", r.window, "number of graded slots certified");
  cmd->add_option("--degree", r.degree, "truncation degree / maximum partition weight");
  cmd->add_option("--m-range", r.m_range, "bracket mode range a..b");
  cmd->add_option("--samples", r.samples, "number of seeded random samples");
  cmd->add_option("--seed", r.seed, "random sample seed");
}

long parse_long(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

SuiteOptions to_options(const RawFlags& r) {
  SuiteOptions o;
  if (r.lambda) o.lambda = parse_rational(*r.lambda);
  if (r.kappa) o.kappa = parse_rational(*r.kappa);
  if (r.mu) o.mu = parse_rational(*r.mu);
  if (r.beta1) o.beta1 = parse_rational(*r.beta1);
  if (r.b_level) {
    if (*r.b_level == "kappa") o.b_level_tracks_kappa = true;
    else o.b_level = parse_rational(*r.b_level);
  }
  if (r.m_weight) {
    if (*r.m_weight < 0) throw std::invalid_argument("--m must be a nonnegative integer");
    o.m_weight = *r.m_weight;
  }
  if (r.convention) {
    o.convention = (*r.convention == "affine") ? DeltaConvention::affine
                                               : DeltaConvention::virasoro;
  }
  if (r.range) o.range = *r.range;
  if (r.window) o.window = *r.window;
  if (r.degree) o.degree = *r.degree;
  if (r.samples) o.samples = *r.samples;
  if (r.seed) o.seed = *r.seed;
  if (r.m_range) {
    const std::string& s = *r.m_range;
    auto pos = s.find("..");
    if (pos == std::string::npos) {
      throw std::invalid_argument("--m-range expects the form a..b");
    }
    o.m_lo = parse_long(s.substr(0, pos));
    o.m_hi = parse_long(s.substr(pos + 2));
    if (o.m_lo > o.m_hi) throw std::invalid_argument("--m-range bounds are inverted");
  }
  return o;
}

Params act_params(const RawFlags& r) {
  Params p;  // lambda 0, kappa 1, mu 0, b-level 1, m 1 by default
  return detail::resolve(to_options(r), p, /*suite_tracks_kappa=*/false);
}

void write_report_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open report file: " + path);
  out << j.dump(2) << "\n";
}

// --------------------------------------------------------------------------
// act
// --------------------------------------------------------------------------

FockVector apply_token(const std::string& tok, const FockVector& v, const Params& p) {
  if (tok == "d") return apply_d(v, p);
  auto pos = tok.find(':');
  if (pos == std::string::npos) {
    throw std::invalid_argument("token '" + tok + "' is not of the form op:index (or 'd')");
  }
  std::string op = tok.substr(0, pos);
  long n = parse_long(tok.substr(pos + 1));
  if (op == "a") return apply_a(n, v);
  if (op == "a*") return apply_a_star(n, v);
  if (op == "b") return apply_b(n, v, p);
  if (op == "e") return apply_e(n, v, p);
  if (op == "f") return apply_f(n, v);
  if (op == "h") return apply_h(n, v, p);
  if (op == "L") return apply_L(n, v, p);
  if (op == "Lbar") return apply_lbar(n, v);
  throw std::invalid_argument("unknown generator '" + op + "'");
}

std::vector<std::string> split_tokens(const std::string& word) {
  std::vector<std::string> toks;
  std::string cur;
  std::istringstream in(word);
  while (std::getline(in, cur, ',')) {
    // trim surrounding whitespace
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty generator token");
    toks.push_back(cur.substr(b, e - b + 1));
  }
  if (toks.empty()) throw std::invalid_argument("empty generator word");
  return toks;
}

std::string latex_of_mono(const FockMonomial& m) {
  std::string s;
  for (long n : m.a) s += "a_{" + std::to_string(n) + "}";
  for (long k : m.b) s += "b_{-" + std::to_string(k) + "}";
  s += "w";
  return s;
}

int print_fock(const FockVector& v, const std::string& format) {
  if (format == "json") {
    if (v.is_zero()) {
      std::cout << "[]\n";
    } else if (v.terms.size() == 1 && v.terms.begin()->first == FockMonomial{}) {
      std::cout << to_string(v.terms.begin()->second) << "\n";
    } else if (v.terms.size() == 1) {
      const auto& [m, c] = *v.terms.begin();
      std::cout << json_of_term(m, c).dump() << "\n";
    } else {
      std::cout << json_of(v).dump() << "\n";
    }
  } else if (format == "latex") {
    if (v.is_zero()) {
      std::cout << "$0$\n";
    } else {
      std::string s = "$";
      bool first = true;
      for (const auto& [m, c] : v.terms) {
        std::string cs = to_string(c);
        if (!first) s += (cs[0] == '-') ? " - " : " + ";
        if (!first && cs[0] == '-') cs = cs.substr(1);
        if (cs != "1" || (m.a.empty() && m.b.empty())) s += cs + " ";
        s += "\\," + latex_of_mono(m);
        first = false;
      }
      s += "$";
      std::cout << s << "\n";
    }
  } else {  // table
    if (v.is_zero()) {
      std::cout << "0\n";
    } else {
      for (const auto& [m, c] : v.terms) {
        std::cout << to_string(c) << "  a=" << Json(m.a).dump() << "  b=" << Json(m.b).dump()
                  << "\n";
      }
    }
  }
  return 0;
}

int cmd_act(const std::string& word, const std::string& state, const RawFlags& raw) {
  Params p = act_params(raw);
  FockVector v;
  if (state == "w" || state == "vacuum") {
    v = vacuum();
  } else {
    throw std::invalid_argument("unknown start state '" + state + "' (supported: w)");
  }
  auto toks = split_tokens(word);
  for (auto it = toks.rbegin(); it != toks.rend(); ++it) v = apply_token(*it, v, p);
  std::string format = raw.format.empty() ? "json" : raw.format;
  return print_fock(v, format);
}

// --------------------------------------------------------------------------
// beta
// --------------------------------------------------------------------------

int cmd_beta(long max_n, const RawFlags& raw) {
  SuiteOptions o = to_options(raw);
  Params p;
  p.kappa = 3;
  p.m_weight = 2;
  p = detail::resolve(o, p, false);
  if (p.kappa == 0) throw std::invalid_argument("the coefficient table requires kappa != 0");
  if (max_n < 1) throw std::invalid_argument("--max-n must be at least 1");

  std::vector<Partition> rows;
  for (const Partition& pi : partitions_up_to(max_n)) {
    if (!pi.empty()) rows.push_back(pi);
  }
  std::string format = raw.format.empty() ? "table" : raw.format;
  Json out;
  out["params"] = json_of(p);
  out["max_weight"] = max_n;
  Json table = Json::array();
  for (const Partition& pi : rows) {
    Json e;
    e["partition"] = pi;
    e["value"] = to_string(beta_closed_form(pi, p));
    table.push_back(e);
  }
  out["table"] = table;
  if (!raw.report.empty()) write_report_file(raw.report, out);

  if (format == "json") {
    std::cout << out.dump(2) << "\n";
  } else if (format == "latex") {
    std::cout << "\\begin{array}{ll}\n";
    for (const Partition& pi : rows) {
      std::string ps;
      for (std::size_t i = 0; i < pi.size(); ++i) {
        ps += (i ? "," : "") + std::to_string(pi[i]);
      }
      std::cout << "\\{" << ps << "\\} & " << to_string(beta_closed_form(pi, p)) << " \\\\\n";
    }
    std::cout << "\\end{array}\n";
  } else {
    for (const Partition& pi : rows) {
      std::cout << Json(pi).dump() << "  ->  " << to_string(beta_closed_form(pi, p)) << "\n";
    }
  }
  return 0;
}

// --------------------------------------------------------------------------
// singular
// --------------------------------------------------------------------------

int cmd_singular(bool use_formula, const RawFlags& raw) {
  SuiteOptions o = to_options(raw);
  Params p;
  p.lambda = 1;
  p.kappa = rat(3, 2);
  p.m_weight = 2;
  p = detail::resolve(o, p, false);
  if (p.kappa == 0) throw std::invalid_argument("the construction requires kappa != 0");
  long D = o.degree.value_or(5);
  if (D < 1) throw std::invalid_argument("--degree must be at least 1");

  SingularResult r = use_formula ? singular_formula(D, p) : singular_solve(D, p);
  Json out;
  out["mode"] = use_formula ? "formula" : "solve";
  out["degree"] = D;
  out["params"] = json_of(p);
  out["dimension"] = r.dimension;
  out["normalized"] = r.normalized;
  out["vector"] = json_of(r.vsharp);
  if (!raw.report.empty()) write_report_file(raw.report, out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------------------------
// verify / kz
// --------------------------------------------------------------------------

void print_suite_summary(const VerificationReport& rep) {
  std::cout << "suite " << rep.suite << ": " << rep.tier1_checks << " checks, "
            << rep.tier1_failures.size() << " failures, " << rep.skipped.size() << " skipped\n";
  for (const auto& f : rep.tier1_failures) {
    std::cout << "  FAIL " << f["check"].get<std::string>() << "\n";
  }
  for (const auto& s : rep.skipped) {
    std::cout << "  skip " << s["check"].get<std::string>() << " ("
              << s["reason"].get<std::string>() << ")\n";
  }
}

int emit_reports(const std::vector<VerificationReport>& reports, const RawFlags& raw) {
  Json out;
  if (reports.size() == 1) {
    out = reports.front().to_json();
  } else {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    out["suites"] = arr;
  }
  if (!raw.report.empty()) write_report_file(raw.report, out);

  std::string format = raw.format.empty() ? "table" : raw.format;
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.tier1_ok();
  if (format == "json") {
    std::cout << out.dump(2) << "\n";
  } else if (format == "latex") {
    std::cout << "\\begin{array}{lrrr}\n\\text{suite} & \\text{checks} & \\text{failures} & "
                 "\\text{skipped} \\\\\n";
    for (const auto& r : reports) {
      std::cout << "\\text{" << r.suite << "} & " << r.tier1_checks << " & "
                << r.tier1_failures.size() << " & " << r.skipped.size() << " \\\\\n";
    }
    std::cout << "\\end{array}\n";
  } else {
    for (const auto& r : reports) print_suite_summary(r);
    std::cout << (ok ? "all tier-1 checks passed" : "TIER-1 FAILURES PRESENT") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, const RawFlags& raw) {
  SuiteOptions o = to_options(raw);
  std::vector<VerificationReport> reports;
  if (suite == "all") {
    for (const auto& name : suite_names()) reports.push_back(run_suite(name, o));
  } else {
    reports.push_back(run_suite(suite, o));
  }
  return emit_reports(reports, raw);
}

int cmd_kz(const RawFlags& raw) {
  SuiteOptions o = to_options(raw);
  if (o.kappa && *o.kappa == 0) {
    throw std::invalid_argument("the construction requires kappa != 0");
  }
  std::vector<VerificationReport> reports{run_kz(o)};
  return emit_reports(reports, raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact rational-arithmetic engine for a two-boson oscillator realization of the "
      "rank-one loop algebra, its conformal action, and the associated intertwining series"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a verification suite (or 'all')");
  std::string suite;
  verify->add_option("suite", suite, "one of: heisenberg affine lbar virasoro mixed d-vs-l0 beta singular phi kz all")
      ->required();
  RawFlags vr;
  add_param_flags(verify, vr);
  add_suite_flags(verify, vr);
  verify->add_option("--report", vr.report, "write the JSON report to this path");
  verify->add_option("--format", vr.format, "stdout format")
      ->check(CLI::IsMember({"json", "table", "latex"}));

  auto* act = app.add_subcommand("act", "apply a comma-separated generator word, right to left");
  std::string word, state = "w";
  act->add_option("word", word, "e.g. \"e:1,f:-1\" (generators a a* b e f h L Lbar d)")
      ->required();
  act->add_option("--state", state, "start state (named; 'w' is the highest weight vector)");
  RawFlags ar;
  add_param_flags(act, ar);
  act->add_option("--format", ar.format, "output format")
      ->check(CLI::IsMember({"json", "table", "latex"}));

  auto* beta = app.add_subcommand("beta", "print the closed-form coefficient table");
  long max_n = 8;
  beta->add_option("--max-n", max_n, "largest partition weight tabulated");
  RawFlags br;
  add_param_flags(beta, br);
  beta->add_option("--report", br.report, "write the JSON table to this path");
  beta->add_option("--format", br.format, "output format")
      ->check(CLI::IsMember({"json", "table", "latex"}));

  auto* singular = app.add_subcommand(
      "singular", "construct the degree-truncated singular vector (kernel solve or closed form)");
  bool use_formula = false, use_solve = false;
  singular->add_flag("--formula", use_formula, "use the closed-form coefficient table");
  singular->add_flag("--solve", use_solve, "solve the linear system (default)");
  RawFlags sr;
  add_param_flags(singular, sr);
  add_suite_flags(singular, sr);
  singular->add_option("--report", sr.report, "write the JSON result to this path");

  auto* kz = app.add_subcommand(
      "kz", "residual report for the operator-form differential identity");
  RawFlags kr;
  add_param_flags(kz, kr);
  add_suite_flags(kz, kr);
  kz->add_option("--report", kr.report, "write the JSON report to this path");
  kz->add_option("--format", kr.format, "stdout format")
      ->check(CLI::IsMember({"json", "table", "latex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(suite, vr);
    if (act->parsed()) return cmd_act(word, state, ar);
    if (beta->parsed()) return cmd_beta(max_n, br);
    if (singular->parsed()) {
      if (use_formula && use_solve) {
        throw std::invalid_argument("--solve and --formula are mutually exclusive");
      }
      return cmd_singular(use_formula, sr);
    }
    if (kz->parsed()) return cmd_kz(kr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
