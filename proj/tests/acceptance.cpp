// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mdq/suites.hpp"

using namespace mdq;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", t);
  return buf;
}

bool all_zero(const std::vector<SymbolicCheck>& cs) {
  for (const auto& c : cs)
    if (!c.is_zero()) return false;
  return true;
}

Outcome uq_relations() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto checks = verify_uq(embed());
  const double t = seconds_since(t0);
  o.require(checks.size() == 7, "expected seven relations");
  for (const auto& c : checks) o.require(c.is_zero(), c.id + " " + c.summary());
  o.require(t < 1.0, "runtime " + secs(t));
  o.note("7 residuals zero, " + secs(t));
  return o;
}

Outcome central_elements() {
  Outcome o;
  const CasimirReport rep = casimirs(embed());
  for (const auto& c : rep.checks) o.require(c.passed(), c.id + " " + c.summary());
  const Conventions conv = conventions();
  bool stated = false, flagged = false;
  for (const auto& d : conv.discrepancies) {
    if (d.id != "casimir-chevalley-form") continue;
    stated = d.adopted == rep.chevalley.str();
    flagged = d.outcome.find("central: no") != std::string::npos;
  }
  o.require(stated, "Chevalley form missing from conventions");
  o.require(flagged, "printed expression not flagged");
  o.note(rep.chevalley.str() + ", printed expression " + rep.printed_c_check.summary());
  return o;
}

Outcome q_exponent_identities() {
  Outcome o;
  const auto t0 = Clock::now();
  const SymbolicCheck sch = check_schutzenberger(6);
  const auto pent = check_pentagon(6);
  const auto forms = check_sq_forms(8);
  const double t = seconds_since(t0);
  o.require(sch.is_zero(), "schutzenberger " + sch.summary());
  o.require(all_zero(pent), "pentagon nonzero");
  o.require(all_zero(forms), "s_q forms differ");
  o.require(t < 300.0, "runtime " + secs(t));
  o.note("N=6 zero, forms N=8 equal, " + secs(t));
  return o;
}

Outcome four_factor_split() {
  Outcome o;
  const SymbolicCheck c = check_factorization(6);
  o.require(c.is_zero(), c.summary());
  o.note(to_string(kAdoptedOrder) + " at N=6: " + c.summary());
  return o;
}

Outcome intertwining() {
  Outcome o;
  const auto t0 = Clock::now();
  const IntertwiningReport rep = check_intertwining(5);
  const double t = seconds_since(t0);
  o.require(rep.passing.size() == 1, std::to_string(rep.passing.size()) + " of " + std::to_string(rep.results.size()) +
                                         " enumerated (k, coproduct) pairs intertwine at N=5");
  o.require(rep.control && !rep.control->passed(), "k=0 control vanishes");
  o.require(t < 600.0, "runtime " + secs(t));
  if (rep.control && !rep.control->passed()) o.note("k=0 control nonzero");
  const IntertwiningResult opp = intertwining_residuals(coproduct(opposite_convention()), build_R(5, adopted_twist()));
  o.note("outside the enumeration " + opp.convention.id() + " with k=" + std::to_string(opp.k) +
         (opp.passed() ? " intertwines" : " fails"));
  o.note(secs(t));
  return o;
}

Outcome yang_baxter() {
  Outcome o;
  const int k = adopted_twist();
  const SymbolicCheck yb = check_yang_baxter(4, k);
  const SymbolicCheck ctl = check_yang_baxter(4, k, true);
  o.require(yb.is_zero(), yb.summary());
  o.require(!ctl.is_zero(), "scrambled control vanishes");
  o.note("k=" + std::to_string(k) + " N=4 " + yb.summary() + ", scrambled " + ctl.summary());
  return o;
}

Outcome heisenberg() {
  Outcome o;
  int trivial = 0;
  for (const auto& c : check_modular_commutation())
    if (c.expected.is_trivial()) trivial += c.value.is_trivial();
  o.require(trivial == 16, std::to_string(trivial) + " of 16 w/dual-w phases trivial");
  bool k_ok = false;
  try {
    k_ok = realize_cartan(CartanSymbol::K).matches();
  } catch (const ConventionError&) {
  }
  o.require(k_ok, "K not reproduced from q w2 w3");
  const CartanExponentReport ce = cartan_exponent_compare();
  o.require(ce.gamma_q == PiMonomial{GaussRational(Rational(0), Rational(1, 2)), 0, -1}, "gamma_q = " + ce.gamma_q.str());
  o.require(ce.gamma_qdual == PiMonomial{GaussRational(Rational(0), Rational(-1, 2)), 0, -1},
            "gamma_qdual = " + ce.gamma_qdual.str());
  o.require(ce.mismatch_flag(), "printed exponent not flagged");
  o.note("16 phases trivial, gamma_q = " + ce.gamma_q.str() + ", gamma_qdual = " + ce.gamma_qdual.str() +
         ", printed " + ce.gamma_printed.str() + " flagged");
  return o;
}

Outcome matrix_oracle() {
  Outcome o;
  for (int n : {3, 5, 8}) {
    const OracleReport rep = oracle_check(n, 100);
    for (const auto& c : rep.checks) {
      double tol = 0.0;
      if (c.id.ends_with(":relations")) tol = 1e-12;
      if (c.id.ends_with(":homomorphism") || c.id.ends_with(":uq-symbolic-residuals")) tol = 1e-10;
      if (tol == 0.0) continue;
      o.require(c.value < tol, c.id + " = " + format_double(c.value));
      o.note(c.id + " " + format_double(c.value));
    }
  }
  return o;
}

Outcome psi_numerics() {
  Outcome o;
  const PsiParams params;
  PsiParams inv = params;
  inv.b = 1.0 / params.b;
  double rel = 0.0, sym = 0.0, slowest = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double p = -2.0 + 4.0 * k / 19.0;
    const auto t0 = Clock::now();
    const Complex v = psi_integral(p, params);
    slowest = std::max(slowest, seconds_since(t0));
    const Complex prod = psi_product(p, params.b);
    rel = std::max(rel, std::abs(v - prod) / std::abs(prod));
    sym = std::max(sym, std::abs(psi_integral(p, inv) - v));
  }
  std::vector<Complex> grid;
  for (int k = 0; k < 10; ++k) grid.emplace_back(-2.0 + 4.0 * k / 9.0, 0.0);
  double fe = 0.0;
  for (const auto& c : check_functional_equations(params.b, grid)) fe = std::max(fe, c.value);
  o.require(rel < 1e-8, "integral vs product " + format_double(rel));
  o.require(sym < 1e-10, "b <-> 1/b " + format_double(sym));
  o.require(fe < 1e-8, "functional equations " + format_double(fe));
  o.require(slowest < 0.5, "slowest evaluation " + secs(slowest));
  o.note("rel " + format_double(rel) + ", sym " + format_double(sym) + ", fe " + format_double(fe) + ", slowest " +
         secs(slowest));
  return o;
}

Outcome central_charge_ranges() {
  Outcome o;
  const SuiteReport s = run_suite("central-charge");
  for (const auto& r : s.records) {
    if (r.id == "b=e^{i pi/4}") continue;
    o.require(r.pass, r.id + " " + r.residual);
  }
  o.note("C(1) = " + format_complex(central_charge(1.0)) + ", real >= 25, imaginary <= 1, unit circle in [1, 25]");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"U_q relations", uq_relations},
      {"central elements", central_elements},
      {"Schutzenberger, pentagon, s_q forms", q_exponent_identities},
      {"four-factor split", four_factor_split},
      {"intertwining", intertwining},
      {"Yang-Baxter", yang_baxter},
      {"Heisenberg calculus", heisenberg},
      {"matrix oracle", matrix_oracle},
      {"psi(p)", psi_numerics},
      {"central charge", central_charge_ranges},
  };
  bool all = true;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", index++, name.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
