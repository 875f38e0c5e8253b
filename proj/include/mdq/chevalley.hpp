#pragma once

// Chevalley generators of the unreduced U_q(sl2) double inside C_q, the
// U_q relations, the central elements, and the *-structure cases.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdq/check.hpp"
#include "mdq/weyl.hpp"

namespace mdq {

struct GeneratorSet {
  WeylElement e, f, K, Kp, K_inv, Kp_inv;
};

/// e = i(w1+w2)/(q-q^-1), f = i(w3+w4)/(q-q^-1), K = q w2 w3, K' = q w4 w1.
inline GeneratorSet embed() {
  const LatticePtr lat = Lattice::cyclic();
  auto w = [&](std::size_t n) { return WeylElement::generator(lat, n - 1); };
  const QScalar c = QScalar::i() / QScalar::q_diff(1);
  GeneratorSet g{c * (w(1) + w(2)), c * (w(3) + w(4)), QScalar::q() * (w(2) * w(3)), QScalar::q() * (w(4) * w(1)),
                 WeylElement(lat), WeylElement(lat)};
  g.K_inv = power(g.K, -1);
  g.Kp_inv = power(g.Kp, -1);
  return g;
}

/// The printed prefactor q^-1 for K = q^-1 w2 w3, K' = q^-1 w4 w1; kept for the conventions report.
inline GeneratorSet embed_printed_prefactor() {
  GeneratorSet g = embed();
  const QScalar q2 = QScalar::q_pow(-2);
  g.K *= q2;
  g.Kp *= q2;
  g.K_inv = power(g.K, -1);
  g.Kp_inv = power(g.Kp, -1);
  return g;
}

/// The seven defining relations as residuals; works on any lattice, so the
/// same routine checks coproduct images in the tensor square.
inline std::vector<SymbolicCheck> verify_uq(const GeneratorSet& g) {
  const WeylElement one = WeylElement::one(g.e.lattice());
  const QScalar q2 = QScalar::q_pow(2);
  const QScalar qm2 = QScalar::q_pow(-2);
  std::vector<SymbolicCheck> out;
  auto add = [&](std::string id, std::string anchor, std::vector<WeylElement> r) {
    out.push_back(SymbolicCheck{std::move(id), std::move(anchor), -1, std::move(r), true});
  };
  add("Ke=q^2eK", "Ke = q^{2} eK", {g.K * g.e - q2 * (g.e * g.K)});
  add("K'e=q^-2eK'", "K'e = q^{-2} eK'", {g.Kp * g.e - qm2 * (g.e * g.Kp)});
  add("Kf=q^-2fK", "Kf = q^{-2} fK", {g.K * g.f - qm2 * (g.f * g.K)});
  add("K'f=q^2fK'", "K'f = q^{2} fK'", {g.Kp * g.f - q2 * (g.f * g.Kp)});
  add("ef-fe=(K-K')/(q-q^-1)", "ef - fe = \\frac{K-K'}{q-q^{-1}}",
      {g.e * g.f - g.f * g.e - (g.K - g.Kp) * (QScalar(1) / QScalar::q_diff(1))});
  add("KK'=K'K", "K K' = K' K", {g.K * g.Kp - g.Kp * g.K});
  add("KK^-1=K'K'^-1=1", "K, K' invertible", {g.K * g.K_inv - one, g.Kp * g.Kp_inv - one});
  return out;
}

struct CentralSet {
  WeylElement J, C, Z1, Z2;
};

/// Coefficients of C = alpha ef + beta K + gamma K' + delta.
struct ChevalleyForm {
  QScalar alpha, beta, gamma, delta;
  std::string str() const {
    return "C = [" + alpha.str() + "]*ef + [" + beta.str() + "]*K + [" + gamma.str() + "]*K' + [" + delta.str() + "]";
  }
};

struct CasimirReport {
  CentralSet central;
  std::vector<SymbolicCheck> checks;  // J = Z1 Z2, C = Z1 + Z2, centrality
  ChevalleyForm chevalley;
  bool printed_c_central = false;     // centrality of (K-K')/(q-q^-1) + (q-q^-1)^2 (ef-fe)
  SymbolicCheck printed_c_check;      // commutators of the printed expression with w1..w4
};

namespace detail {

inline WeylElement commutators_with_generators(const WeylElement& x) {
  // stack [x, w_n] for n = 1..4 into one element on a 4-slot lattice
  const LatticePtr lat = x.lattice();
  WeylElement out(Lattice::tensor(lat, 4));
  for (std::size_t n = 0; n < 4; ++n) out += tensor_embed(commutator(x, WeylElement::generator(lat, n)), n, 4);
  return out;
}

}  // namespace detail

/// Central elements J = KK', C (derived from U_q centrality in Chevalley form),
/// Z1 = w1 w3, Z2 = w2 w4, with the identities J = Z1 Z2 and C = Z1 + Z2.
inline CasimirReport casimirs(const GeneratorSet& g) {
  const LatticePtr lat = g.e.lattice();
  if (!(*lat == *Lattice::cyclic())) throw std::invalid_argument("casimirs: generators must live on C_q");
  auto w = [&](std::size_t n) { return WeylElement::generator(lat, n - 1); };
  const WeylElement one = WeylElement::one(lat);
  const WeylElement ef = g.e * g.f;

  // Centrality in U_q: [alpha ef + beta K + gamma K' + delta, x] = 0 for x = e, f,
  // normalised by alpha = -(q - q^-1)^2.
  const QScalar alpha = -(QScalar::q_diff(1) * QScalar::q_diff(1));
  std::vector<WeylElement> target{-(alpha * commutator(ef, g.e)), -(alpha * commutator(ef, g.f))};
  std::vector<std::vector<WeylElement>> basis{{commutator(g.K, g.e), commutator(g.K, g.f)},
                                              {commutator(g.Kp, g.e), commutator(g.Kp, g.f)},
                                              {commutator(one, g.e), commutator(one, g.f)}};
  auto sol = solve_in_span(target, basis);
  if (!sol) throw ConventionError("casimirs: no central element in span{ef, K, K', 1}");
  const ChevalleyForm chev{alpha, (*sol)[0], (*sol)[1], (*sol)[2]};
  const WeylElement c_chev = alpha * ef + chev.beta * g.K + chev.gamma * g.Kp + chev.delta * one;

  CasimirReport rep{CentralSet{g.K * g.Kp, c_chev, w(1) * w(3), w(2) * w(4)}, {}, chev, false,
                    SymbolicCheck{}};
  const auto& cs = rep.central;
  rep.checks.push_back({"J=Z1Z2", "J = Z_{1} Z_{2}", -1, {cs.J - cs.Z1 * cs.Z2}, true});
  rep.checks.push_back({"C=Z1+Z2", "C = Z_{1} + Z_{2}", -1, {cs.C - (cs.Z1 + cs.Z2)}, true});
  const std::pair<const char*, const WeylElement*> named[] = {{"J", &cs.J}, {"C", &cs.C}, {"Z1", &cs.Z1}, {"Z2", &cs.Z2}};
  for (const auto& [name, x] : named) {
    SymbolicCheck c{std::string("central:") + name, "[x, w_n] = 0", -1,
                    {detail::commutators_with_generators(*x)}, true};
    if (!c.is_zero()) throw ConventionError(std::string("casimirs: ") + name + " is not central");
    rep.checks.push_back(std::move(c));
  }

  const WeylElement printed =
      (g.K - g.Kp) * (QScalar(1) / QScalar::q_diff(1)) + (QScalar::q_diff(1) * QScalar::q_diff(1)) * (ef - g.f * g.e);
  rep.printed_c_check = SymbolicCheck{"printed-C-central", "C = \\frac{K-K'}{q-q^{-1}} + (q-q^{-1})^{2} (ef-fe)", -1,
                                      {detail::commutators_with_generators(printed)}, false};
  rep.printed_c_central = rep.printed_c_check.is_zero();
  return rep;
}

enum class StarCase { SLq2R, SUq2, FactorInterchange, Generic };

inline const char* to_string(StarCase c) {
  switch (c) {
    case StarCase::SLq2R: return "SLq2R";
    case StarCase::SUq2: return "SUq2";
    case StarCase::FactorInterchange: return "factor-interchange";
    case StarCase::Generic: return "generic";
  }
  return "?";
}

struct StarClassification {
  StarCase kind = StarCase::Generic;
  Complex tau;
  Complex central_charge;
};

/// C = 1 + 6 (b + 1/b)^2
inline Complex central_charge(Complex b) {
  require_finite(b, "central_charge");
  if (b == Complex(0.0, 0.0)) throw std::invalid_argument("central_charge: b must be nonzero");
  const Complex s = b + 1.0 / b;
  return 1.0 + 6.0 * s * s;
}

inline StarClassification star_classify(Complex b) {
  constexpr double kTol = 1e-12;
  StarClassification r;
  r.central_charge = central_charge(b);
  r.tau = b * b;
  const bool real = std::abs(r.tau.imag()) <= kTol;
  if (real && r.tau.real() > 0) {
    r.kind = StarCase::SLq2R;
  } else if (real && r.tau.real() < 0) {
    r.kind = StarCase::SUq2;
  } else if (std::abs(std::abs(r.tau) - 1.0) <= kTol) {
    r.kind = StarCase::FactorInterchange;
  }
  return r;
}

}  // namespace mdq
