#pragma once

// Exponentials of linear forms in the Heisenberg generators p_1..p_4 (and the
// 8 generators of the tensor square), multiplied exactly by BCH with a central
// commutator: e^X e^Y = e^{[X,Y]/2} e^{X+Y}.
//
// Coefficients of the linear forms are Laurent polynomials in b; phases are
// stored as exponent / (i pi), a Laurent polynomial in tau = b^2.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdq/check.hpp"
#include "mdq/scalar.hpp"
#include "mdq/weyl.hpp"

namespace mdq {

using BPoly = LaurentPoly<GaussRational>;

/// [p_i, p_j] = 2 pi i sigma_ij with integer sigma; block diagonal on tensor powers.
class CommutatorForm {
 public:
  CommutatorForm(std::size_t n, std::vector<int> sigma) : n_(n), sigma_(std::move(sigma)) {
    if (sigma_.size() != n_ * n_) throw std::invalid_argument("CommutatorForm: size mismatch");
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (at(i, j) != -at(j, i)) throw std::invalid_argument("CommutatorForm: not antisymmetric");
  }

  /// [p_n, p_{n+1}] = -2 pi i, indices mod 4, replicated over `arity` blocks.
  static CommutatorForm cyclic(std::size_t arity = 1) {
    const std::size_t n = 4 * arity;
    std::vector<int> s(n * n, 0);
    for (std::size_t blk = 0; blk < arity; ++blk) {
      for (std::size_t a = 0; a < 4; ++a) {
        const std::size_t i = 4 * blk + a;
        const std::size_t j = 4 * blk + (a + 1) % 4;
        s[i * n + j] = -1;
        s[j * n + i] = 1;
      }
    }
    return CommutatorForm(n, std::move(s));
  }

  std::size_t size() const { return n_; }
  int at(std::size_t i, std::size_t j) const { return sigma_[i * n_ + j]; }

  /// sum_ij x_i sigma_ij y_j, so that [X, Y] = 2 pi i pairing(x, y).
  BPoly pairing(const std::vector<BPoly>& x, const std::vector<BPoly>& y) const {
    BPoly r;
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const int s = at(i, j);
        if (s == 0 || y[j].is_zero()) continue;
        r += x[i] * y[j] * BPoly(GaussRational(s));
      }
    }
    return r;
  }

 private:
  std::size_t n_;
  std::vector<int> sigma_;
};

namespace detail {

/// A b-Laurent polynomial with real rational coefficients and even exponents,
/// read as a Laurent polynomial in tau = b^2.
inline PhaseExp::Poly to_tau(const BPoly& p) {
  if (p.is_zero()) return {};
  std::vector<Rational> c;
  if (p.low() % 2 != 0) throw std::domain_error("to_tau: odd power of b in a phase");
  for (int e = p.low(); e <= p.high(); ++e) {
    const GaussRational& g = p.coeff(e);
    if (e % 2 != 0) {
      if (!g.is_zero()) throw std::domain_error("to_tau: odd power of b in a phase");
      continue;
    }
    if (!g.is_real()) throw std::domain_error("to_tau: phase exponent is not real");
    c.push_back(g.re());
  }
  return PhaseExp::Poly::from_coeffs(p.low() / 2, std::move(c));
}

}  // namespace detail

/// e^{i pi phase} e^{sum_n c_n p_n}
class PExp {
 public:
  explicit PExp(std::size_t n) : coeffs_(n) {}
  PExp(PhaseExp phase, std::vector<BPoly> coeffs) : phase_(std::move(phase)), coeffs_(std::move(coeffs)) {}

  static PExp identity(std::size_t n = 4) { return PExp(n); }

  /// e^{b^power p_index} (index is 0-based).
  static PExp linear(std::size_t n, std::size_t index, int b_power, GaussRational c = GaussRational(1)) {
    if (index >= n) throw std::invalid_argument("PExp::linear: index out of range");
    PExp r(n);
    r.coeffs_[index] = BPoly::monomial(std::move(c), b_power);
    return r;
  }
  /// w_n = e^{b p_n}, n = 1..4 (or 1..8 on the tensor square).
  static PExp w(std::size_t n, std::size_t dim = 4) { return linear(dim, n - 1, 1); }
  /// dual w_n = e^{p_n / b}
  static PExp w_dual(std::size_t n, std::size_t dim = 4) { return linear(dim, n - 1, -1); }

  const PhaseExp& phase() const { return phase_; }
  const std::vector<BPoly>& coeffs() const { return coeffs_; }
  std::size_t dim() const { return coeffs_.size(); }
  bool is_identity() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return phase_.is_trivial();
  }

  PExp with_phase(const PhaseExp& extra) const { return PExp(phase_ + extra, coeffs_); }

  /// Coefficient vector scaled by b^power (so K^{1/tau} is scaled_b(-2)).
  PExp scaled_b(int power) const {
    std::vector<BPoly> c;
    for (const auto& x : coeffs_) c.push_back(x.shifted(power));
    return PExp(phase_, std::move(c));
  }

  friend bool operator==(const PExp& a, const PExp& b) { return a.phase_ == b.phase_ && a.coeffs_ == b.coeffs_; }

  std::string str() const {
    std::string lin;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (!lin.empty()) lin += " + ";
      lin += "(" + coeffs_[i].str("b") + ")*p" + std::to_string(i + 1);
    }
    if (lin.empty()) lin = "0";
    return phase_.str() + "*exp(" + lin + ")";
  }

 private:
  PhaseExp phase_;
  std::vector<BPoly> coeffs_;
};

inline PExp pmul(const PExp& a, const PExp& b, const CommutatorForm& form) {
  if (a.dim() != b.dim() || a.dim() != form.size()) throw std::invalid_argument("pmul: dimension mismatch");
  std::vector<BPoly> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs()[i] + b.coeffs()[i];
  const PhaseExp bch(detail::to_tau(form.pairing(a.coeffs(), b.coeffs())));
  return PExp(a.phase() + b.phase() + bch, std::move(c));
}

inline PExp pmul(const PExp& a, const PExp& b) {
  return pmul(a, b, CommutatorForm::cyclic(a.dim() / 4));
}

inline PExp inverse(const PExp& a) {
  std::vector<BPoly> c;
  for (const auto& x : a.coeffs()) c.push_back(-x);
  return PExp(-a.phase(), std::move(c));
}

/// Phase of a b a^-1 b^-1, i.e. a b = ratio * b a.
inline PhaseExp commutation_ratio(const PExp& a, const PExp& b, const CommutatorForm& form) {
  const PExp r = pmul(pmul(a, b, form), inverse(pmul(b, a, form)), form);
  for (const auto& c : r.coeffs())
    if (!c.is_zero()) throw std::logic_error("commutation_ratio: linear parts do not cancel");
  return r.phase();
}

inline PhaseExp commutation_ratio(const PExp& a, const PExp& b) {
  return commutation_ratio(a, b, CommutatorForm::cyclic(a.dim() / 4));
}

/// An exact phase identity: value must equal expected after canonicalization.
struct PhaseCheck {
  std::string id;
  std::string anchor;
  PhaseExp value;
  PhaseExp expected;
  bool passed() const { return value == expected; }
};

/// w_n against dual w_m for all 16 pairs (ratio must be 1), and the dual
/// generators among themselves: dual w_n dual w_{n+1} = qdual^2 dual w_{n+1} dual w_n.
inline std::vector<PhaseCheck> check_modular_commutation() {
  std::vector<PhaseCheck> out;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      out.push_back({"w" + std::to_string(n) + "~dual-w" + std::to_string(m), "w_n dual-w_m = dual-w_m w_n",
                     commutation_ratio(PExp::w(n), PExp::w_dual(m)), PhaseExp()});
    }
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t m = n % 4 + 1;
    out.push_back({"dual-w" + std::to_string(n) + "-dual-w" + std::to_string(m), "dual-w_n dual-w_{n+1} = qdual^2 dual-w_{n+1} dual-w_n",
                   commutation_ratio(PExp::w_dual(n), PExp::w_dual(m)), PhaseExp::qdual_pow(2)});
  }
  return out;
}

/// The w-phases here against the skew form of weyl: w_i w_j = q^{2 S_ij} w_j w_i.
inline std::vector<PhaseCheck> check_weyl_consistency() {
  const LatticePtr lat = Lattice::cyclic();
  std::vector<PhaseCheck> out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      out.push_back({"skew(w" + std::to_string(i + 1) + ",w" + std::to_string(j + 1) + ")",
                     "w_i w_j = q^{2 S_ij} w_j w_i",
                     commutation_ratio(PExp::w(i + 1), PExp::w(j + 1)), PhaseExp::q_pow(2 * lat->skew(i, j))});
    }
  }
  return out;
}

enum class CartanSymbol { K, Kp, KDual, KpDual };

inline const char* to_string(CartanSymbol s) {
  switch (s) {
    case CartanSymbol::K: return "K";
    case CartanSymbol::Kp: return "K'";
    case CartanSymbol::KDual: return "dual K";
    case CartanSymbol::KpDual: return "dual K'";
  }
  return "?";
}

struct CartanRealization {
  CartanSymbol symbol;
  PExp from_generators;  // prefactor times the product of two generators
  PExp target;           // e^{b(p2+p3)} etc.
  bool matches() const { return from_generators == target; }
};

/// K = q w2 w3 = e^{b(p2+p3)}, K' = q w4 w1 = e^{b(p1+p4)},
/// dual K = qdual^-1 dual w2 dual w3 = e^{(p2+p3)/b}, dual K' likewise.
/// Throws ConventionError on mismatch.
inline CartanRealization realize_cartan(CartanSymbol s) {
  const bool dual = s == CartanSymbol::KDual || s == CartanSymbol::KpDual;
  const bool primed = s == CartanSymbol::Kp || s == CartanSymbol::KpDual;
  auto gen = [&](std::size_t n) { return dual ? PExp::w_dual(n) : PExp::w(n); };
  const PExp prod = primed ? pmul(gen(4), gen(1)) : pmul(gen(2), gen(3));
  const PhaseExp prefactor = dual ? PhaseExp::qdual_pow(-1) : PhaseExp::q_pow(1);
  const int bp = dual ? -1 : 1;
  std::vector<BPoly> lin(4);
  for (std::size_t idx : primed ? std::vector<std::size_t>{0, 3} : std::vector<std::size_t>{1, 2})
    lin[idx] = BPoly::monomial(GaussRational(1), bp);
  const PExp target(PhaseExp(), std::move(lin));
  CartanRealization r{s, prod.with_phase(prefactor), target};
  if (!r.matches()) throw ConventionError(std::string("realize_cartan: ") + to_string(s) + " does not match its exponential");
  return r;
}

/// Exact number c * b^b_power * pi^pi_power with c a Gaussian rational.
struct PiMonomial {
  GaussRational coeff{0};
  int b_power = 0;
  int pi_power = 0;

  friend PiMonomial operator*(const PiMonomial& x, const PiMonomial& y) {
    return {x.coeff * y.coeff, x.b_power + y.b_power, x.pi_power + y.pi_power};
  }
  friend PiMonomial operator/(const PiMonomial& x, const PiMonomial& y) {
    return {x.coeff / y.coeff, x.b_power - y.b_power, x.pi_power - y.pi_power};
  }
  friend bool operator==(const PiMonomial& x, const PiMonomial& y) {
    if (x.coeff.is_zero() || y.coeff.is_zero()) return x.coeff.is_zero() && y.coeff.is_zero();
    return x.coeff == y.coeff && x.b_power == y.b_power && x.pi_power == y.pi_power;
  }

  /// Integer value when the number is an integer, else nullopt.
  std::optional<long> as_integer() const {
    if (coeff.is_zero()) return 0L;
    if (b_power != 0 || pi_power != 0 || !coeff.is_real()) return std::nullopt;
    const Rational& r = coeff.re();
    if (r.get_den() != 1) return std::nullopt;
    return r.get_num().get_si();
  }

  Complex to_complex(Complex b = 1.0) const {
    return coeff.to_complex() * std::pow(b, b_power) * std::pow(3.14159265358979323846, pi_power);
  }

  std::string str() const {
    std::string s;
    if (coeff.is_real()) {
      s = coeff.re().get_str();
    } else if (sgn(coeff.re()) == 0) {
      s = "(" + coeff.im().get_str() + ")*i";
    } else {
      s = "(" + coeff.re().get_str() + " + (" + coeff.im().get_str() + ")*i)";
    }
    if (b_power != 0) s += "*b^" + std::to_string(b_power);
    if (pi_power != 0) s += "*pi^" + std::to_string(pi_power);
    return s;
  }
};

struct CartanExponentReport {
  PiMonomial gamma_q;        // q^{-H (x) H'/2} = e^{gamma_q (p2+p3)(x)(p1+p4)}
  PiMonomial gamma_qdual;    // same with the dual Cartan elements
  PiMonomial gamma_printed;  // pi / (2i)
  std::optional<long> k_q, k_qdual, k_printed;  // twist integers 2 pi i gamma
  bool printed_matches_q = false;
  bool printed_matches_qdual = false;
  bool cartan_forms_commute = false;  // [p2+p3, p1+p4] = 0
  bool mismatch_flag() const { return !printed_matches_q || !printed_matches_qdual; }
};

/// With K = q^H = e^{b(p2+p3)}, H = b (p2+p3) / ln q and likewise H'. Then
/// q^{-H (x) H'/2} = exp(-(ln q)/2 (b / ln q)^2 (p2+p3)(x)(p1+p4)). The dual
/// uses ln qdual = -i pi / b^2 and 1/b in place of b.
inline CartanExponentReport cartan_exponent_compare() {
  const PiMonomial i{GaussRational::i(), 0, 0};
  const PiMonomial minus_half{GaussRational(Rational(-1, 2)), 0, 0};
  const PiMonomial pi{GaussRational(1), 0, 1};
  const PiMonomial b{GaussRational(1), 1, 0};
  const PiMonomial b_inv{GaussRational(1), -1, 0};

  const PiMonomial ln_q = i * pi * b * b;
  const PiMonomial ln_qdual = PiMonomial{GaussRational(-1), 0, 0} * i * pi * b_inv * b_inv;
  const PiMonomial h = b / ln_q;
  const PiMonomial h_dual = b_inv / ln_qdual;

  CartanExponentReport r;
  r.gamma_q = minus_half * ln_q * h * h;
  r.gamma_qdual = minus_half * ln_qdual * h_dual * h_dual;
  r.gamma_printed = pi / (PiMonomial{GaussRational(2), 0, 0} * i);
  const PiMonomial two_pi_i = PiMonomial{GaussRational(2), 0, 0} * pi * i;
  r.k_q = (two_pi_i * r.gamma_q).as_integer();
  r.k_qdual = (two_pi_i * r.gamma_qdual).as_integer();
  r.k_printed = (two_pi_i * r.gamma_printed).as_integer();
  r.printed_matches_q = r.gamma_printed == r.gamma_q;
  r.printed_matches_qdual = r.gamma_printed == r.gamma_qdual;

  std::vector<BPoly> x(4), y(4);
  x[1] = x[2] = y[0] = y[3] = BPoly(GaussRational(1));
  r.cartan_forms_commute = CommutatorForm::cyclic().pairing(x, y).is_zero();
  return r;
}

}  // namespace mdq
