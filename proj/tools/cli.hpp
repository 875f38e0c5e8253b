#pragma once

// Command-line front end. run() is separate from main() so tests can drive it.

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdq/suites.hpp"

namespace mdq::cli {

using json = nlohmann::ordered_json;

/// Bad arguments or configuration; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+" || s == "-") return s == "-" ? -1.0 : 1.0;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    throw UsageError("malformed complex literal '" + whole + "'");
  return v;
}

}  // namespace detail

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i"; decimal or exponent notation.
inline Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw UsageError("malformed complex literal '" + text + "'");
  if (s.back() != 'i') {
    const double re = detail::parse_real(s, text);
    if (s == "+" || s == "-") throw UsageError("malformed complex literal '" + text + "'");
    return {re, 0.0};
  }
  s.pop_back();
  // split at the last sign that is not a leading sign or an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, detail::parse_real(s, text)};
  const std::string re = s.substr(0, split);
  if (re.empty()) throw UsageError("malformed complex literal '" + text + "'");
  const std::string im = s.substr(split);
  if (im.size() > 1 && im.find_first_not_of("+-0123456789.eE") != std::string::npos)
    throw UsageError("malformed complex literal '" + text + "'");
  return {detail::parse_real(re, text), detail::parse_real(im, text)};
}

inline json to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json to_json(const Record& r) {
  json j{{"id", r.id}, {"anchor", r.anchor}, {"kind", r.kind}, {"role", to_string(r.role)}};
  if (r.degree >= 0) j["degree"] = r.degree;
  if (r.tolerance) j["tolerance"] = *r.tolerance;
  if (r.value) j["value"] = *r.value;
  j["residual"] = r.residual;
  j["pass"] = r.pass;
  return j;
}

inline json to_json(const SuiteReport& s) {
  json j{{"suite", s.suite}};
  if (s.degree >= 0) j["degree"] = s.degree;
  j["passed"] = s.passed();
  json recs = json::array();
  for (const auto& r : s.records) recs.push_back(to_json(r));
  j["records"] = recs;
  return j;
}

inline json to_json(const Conventions& c) {
  json d = json::array();
  for (const auto& x : c.discrepancies)
    d.push_back(json{{"id", x.id}, {"printed", x.printed}, {"adopted", x.adopted}, {"computation", x.computation},
                     {"outcome", x.outcome}});
  return json{{"relation_direction", c.relation_direction},
              {"k_prefactor", c.k_prefactor},
              {"twist_k", c.twist},
              {"coproduct", c.coproduct},
              {"chevalley_form", c.chevalley_form},
              {"discrepancies", d}};
}

inline std::string text_suite(const SuiteReport& s) {
  std::string out = "suite " + s.suite + (s.degree >= 0 ? " (degree " + std::to_string(s.degree) + ")" : "") + ": " +
                    (s.passed() ? "PASS" : "FAIL") + "\n";
  for (const auto& r : s.records) {
    out += std::string("  ") + (r.pass ? "PASS " : "FAIL ") + to_string(r.role) + " " + r.id + "  [" + r.anchor + "]  " +
           r.residual;
    if (r.tolerance) out += " (tol " + format_double(*r.tolerance) + ")";
    out += "\n";
  }
  return out;
}

inline std::string text_conventions(const Conventions& c) {
  std::string out = "relation direction: " + c.relation_direction + "\n" + "prefactor: " + c.k_prefactor + "\n" +
                    "twist k: " + std::to_string(c.twist) + "\n" + "coproduct: " + c.coproduct + "\n" +
                    "Chevalley form of C: " + c.chevalley_form + "\n" + "discrepancies:\n";
  for (const auto& d : c.discrepancies)
    out += "  " + d.id + "\n    printed: " + d.printed + "\n    adopted: " + d.adopted + "\n    computation: " +
           d.computation + "\n    outcome: " + d.outcome + "\n";
  return out;
}

/// Writes `content` to `path` via a sibling temporary file and a rename.
inline void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write report to '" + path + "'");
    f << content;
    f.flush();
    if (!f) throw UsageError("cannot write report to '" + path + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw UsageError("cannot write report to '" + path + "'");
  }
}

struct Options {
  std::optional<long> degree;
  std::string report;
  std::string format = "text";
  std::string suite;
  bool controls = false;
  std::string b = "0.70710678118654752+0.70710678118654752i";
  std::string p = "0";
  int dim = 3;
  int trials = 100;
  std::uint64_t seed = 20240601;
};

namespace detail {

inline long checked_degree(const Options& o, const std::string& suite) {
  const long min = minimum_degree(suite);
  if (min < 0 || !o.degree) return default_degree(suite);
  if (*o.degree < min)
    throw UsageError("degree " + std::to_string(*o.degree) + " is impossible for suite '" + suite +
                     "' (minimum " + std::to_string(min) + ")");
  return *o.degree;
}

struct Outcome {
  json doc;
  std::string text;
  bool passed = true;
};

inline Outcome verify(const Options& o, const std::vector<std::string>& suites, bool diagnostics,
                      const std::string& command) {
  Outcome r;
  for (const auto& s : suites) checked_degree(o, s);
  json arr = json::array();
  for (const auto& name : suites) {
    const long n = checked_degree(o, name);
    const SuiteReport s = run_suite(name, n >= 0 ? std::optional<long>(n) : std::nullopt, diagnostics);
    arr.push_back(to_json(s));
    r.text += text_suite(s);
    r.passed = r.passed && s.passed();
  }
  const Conventions c = conventions(o.degree ? std::max<long>(*o.degree, minimum_degree("intertwining"))
                                             : default_degree("intertwining"));
  r.doc = json{{"command", command}, {"passed", r.passed}, {"suites", arr}, {"conventions", to_json(c)}};
  r.text += std::string("overall: ") + (r.passed ? "PASS" : "FAIL") + "\n";
  return r;
}

inline Outcome eval_psi(const Options& o) {
  Outcome r;
  PsiParams params;
  params.b = parse_complex(o.b);
  const Complex p = parse_complex(o.p);
  if (params.b == Complex(0.0)) throw UsageError("b must be nonzero");
  Complex integral;
  try {
    integral = psi_integral(p, params);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  r.doc = json{{"command", "eval-psi"}, {"b", to_json(params.b)}, {"p", to_json(p)}, {"psi_integral", to_json(integral)}};
  r.text = "psi(" + format_complex(p) + ") at b = " + format_complex(params.b) + "\n  integral: " + format_complex(integral) + "\n";
  const Complex b2 = params.b * params.b;
  if (b2.imag() > 0) {
    const Complex product = psi_product(p, params.b);
    const double rel = std::abs(integral - product) / std::abs(product);
    const double tol = 1e-8;
    r.passed = rel < tol;
    r.doc["psi_product"] = to_json(product);
    r.doc["relative_error"] = rel;
    r.doc["tolerance"] = tol;
    r.doc["agree"] = r.passed;
    r.text += "  product:  " + format_complex(product) + "\n  relative error: " + format_double(rel) + " (" +
              (r.passed ? "agree" : "DISAGREE") + ", tol " + format_double(tol) + ")\n";
  } else {
    r.doc["psi_product"] = nullptr;
    r.text += "  product:  not available (requires Im b^2 > 0)\n";
  }
  r.doc["passed"] = r.passed;
  return r;
}

inline Outcome central_charge_cmd(const Options& o) {
  Outcome r;
  const Complex b = parse_complex(o.b);
  if (b == Complex(0.0)) throw UsageError("b must be nonzero");
  const StarClassification s = star_classify(b);
  r.doc = json{{"command", "central-charge"}, {"b", to_json(b)}, {"tau", to_json(s.tau)},
               {"central_charge", to_json(s.central_charge)}, {"star_case", to_string(s.kind)}, {"passed", true}};
  r.text = "C = " + format_complex(s.central_charge) + "\ntau = " + format_complex(s.tau) + "\ncase: " + to_string(s.kind) + "\n";
  return r;
}

inline Outcome oracle_cmd(const Options& o) {
  if (o.dim < 2) throw UsageError("--dim must be at least 2");
  if (o.trials < 0) throw UsageError("--trials must be nonnegative");
  Outcome r;
  const OracleReport rep = oracle_check(o.dim, o.trials, o.seed);
  SuiteReport s{"oracle", -1, {}};
  for (const auto& c : rep.checks) s.records.push_back(record(c));
  r.passed = s.passed();
  r.doc = json{{"command", "oracle-check"}, {"dim", o.dim}, {"root_index", rep.j}, {"trials", o.trials},
               {"seed", o.seed}, {"passed", r.passed}, {"suites", json::array({to_json(s)})}};
  r.text = "q0 = e^{i pi " + std::to_string(rep.j) + "/" + std::to_string(o.dim) + "}\n" + text_suite(s);
  return r;
}

}  // namespace detail

/// Exit codes: 0 all checks pass, 1 some identity failed, 2 usage or configuration error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic and numerical checks for the modular double of U_q(sl2)", "mdq"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--degree", o.degree, "Truncation degree for the symbolic suites (default: per suite)");
  app.add_option("--report", o.report, "Write the JSON report to this path");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* all = app.add_subcommand("verify-all", "Run every suite, including negative controls");
  auto* one = app.add_subcommand("verify", "Run one suite");
  one->add_option("--suite", o.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  one->add_flag("--controls", o.controls, "Include negative controls and informational records");
  auto* psi = app.add_subcommand("eval-psi", "Evaluate psi(p) by quadrature and by the product form");
  psi->add_option("--b", o.b, "b as a+bi");
  psi->add_option("--p", o.p, "p as a+bi");
  auto* cc = app.add_subcommand("central-charge", "C = 1 + 6 (b + 1/b)^2 and the *-structure case");
  cc->add_option("--b", o.b, "b as a+bi")->required();
  auto* conv = app.add_subcommand("conventions-report", "Adopted conventions and the computations deciding them");
  auto* orc = app.add_subcommand("oracle-check", "Clock-and-shift matrix oracle");
  orc->add_option("--dim", o.dim, "Matrix dimension N")->required();
  orc->add_option("--trials", o.trials, "Random pairs for the homomorphism check");
  orc->add_option("--seed", o.seed, "Sampler seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    detail::Outcome r;
    if (o.degree && *o.degree < 0) throw UsageError("--degree must be nonnegative");
    if (*all) r = detail::verify(o, suite_names(), true, "verify-all");
    if (*one) r = detail::verify(o, {o.suite}, o.controls, "verify");
    if (*psi) r = detail::eval_psi(o);
    if (*cc) r = detail::central_charge_cmd(o);
    if (*conv) {
      const Conventions c = conventions();
      r.doc = json{{"command", "conventions-report"}, {"conventions", to_json(c)}};
      r.text = text_conventions(c);
    }
    if (*orc) r = detail::oracle_cmd(o);
    const std::string doc = r.doc.dump(2) + "\n";
    if (!o.report.empty()) write_atomically(o.report, doc);
    out << (o.format == "json" ? doc : r.text);
    return r.passed ? 0 : 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace mdq::cli
