#pragma once

// Exact coefficient arithmetic.
//
// GaussRational   a + b i with a, b arbitrary-precision rationals
// LaurentPoly<C>  finite Laurent series over a field C
// QScalar         rational function of q over the Gaussian rationals, kept
//                 gcd-reduced with a monic denominator free of q-powers
// PhaseExp        exponent c(tau) of a phase e^{i pi c(tau)}, constant part mod 2

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mdq {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Thrown when an exact computation meets a vanishing denominator.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a numerical evaluation hits a pole of a rational function.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Complex require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument(std::string(what) + ": non-finite complex value");
  }
  return z;
}

inline std::string rational_str(const Rational& r) {
  return r.get_str();
}

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  GaussRational operator-() const { return {-re_, -im_}; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    if (o.is_real() && is_real()) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    if (o.is_zero()) throw DivisionByZero("GaussRational: division by zero");
    if (o.is_real()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  std::string str() const {
    if (sgn(im_) == 0) return rational_str(re_);
    std::string imag;
    if (im_ == 1) {
      imag = "i";
    } else if (im_ == -1) {
      imag = "-i";
    } else {
      imag = rational_str(im_) + "i";
    }
    if (sgn(re_) == 0) return imag;
    return "(" + rational_str(re_) + (sgn(im_) > 0 ? "+" : "") + imag + ")";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

namespace detail {

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(const GaussRational& g) { return g.is_zero(); }
inline bool is_one(const Rational& r) { return r == 1; }
inline bool is_one(const GaussRational& g) { return g.is_one(); }
inline std::string coeff_str(const Rational& r) { return rational_str(r); }
inline std::string coeff_str(const GaussRational& g) { return g.str(); }
inline bool is_negative_real(const Rational& r) { return sgn(r) < 0; }
inline bool is_negative_real(const GaussRational& g) { return g.is_real() && sgn(g.re()) < 0; }
inline Complex to_complex(const Rational& r) { return {r.get_d(), 0.0}; }
inline Complex to_complex(const GaussRational& g) { return g.to_complex(); }

}  // namespace detail

/// Finite Laurent series sum_k c_k x^k over a field C.
///
/// Stored as a lowest exponent plus a dense coefficient block whose first and
/// last entries are nonzero. The zero series has an empty block.
template <class C>
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(C c) {
    if (!detail::is_zero(c)) c_.push_back(std::move(c));
  }

  static LaurentPoly monomial(C c, int e) {
    LaurentPoly p(std::move(c));
    p.low_ = p.c_.empty() ? 0 : e;
    return p;
  }

  /// From coefficients c[k] of x^{low + k}.
  static LaurentPoly from_coeffs(int low, std::vector<C> c) {
    LaurentPoly p;
    p.low_ = low;
    p.c_ = std::move(c);
    p.trim();
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && low_ == 0); }
  bool is_one() const { return c_.size() == 1 && low_ == 0 && detail::is_one(c_[0]); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  std::size_t term_span() const { return c_.size(); }
  const std::vector<C>& coeffs() const { return c_; }

  C coeff(int e) const {
    if (e < low_ || e > high() || c_.empty()) return C(0);
    return c_[static_cast<std::size_t>(e - low_)];
  }
  const C& leading() const { return c_.back(); }
  const C& trailing() const { return c_.front(); }

  LaurentPoly shifted(int s) const {
    LaurentPoly p = *this;
    if (!p.c_.empty()) p.low_ += s;
    return p;
  }

  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return accumulate(o, false); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return accumulate(o, true); }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.c_.size() == 1 && detail::is_one(a.c_[0])) return b.shifted(a.low_);
    if (b.c_.size() == 1 && detail::is_one(b.c_[0])) return a.shifted(b.low_);
    std::vector<C> out(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (detail::is_zero(b.c_[j])) continue;
        out[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return from_coeffs(a.low_ + b.low_, std::move(out));
  }

  LaurentPoly& operator*=(const C& s) {
    if (detail::is_zero(s)) {
      c_.clear();
      low_ = 0;
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }
  LaurentPoly& operator/=(const C& s) {
    for (auto& c : c_) c /= s;
    return *this;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.c_ == b.c_;
  }

  /// Horner evaluation at x (x must be nonzero when negative powers occur).
  Complex eval(Complex x) const {
    if (c_.empty()) return {0.0, 0.0};
    Complex acc{0.0, 0.0};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + detail::to_complex(*it);
    if (low_ != 0) acc *= std::pow(x, low_);
    return acc;
  }

  std::string str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const C& c = c_[k];
      if (detail::is_zero(c)) continue;
      const int e = low_ + static_cast<int>(k);
      const bool neg = detail::is_negative_real(c);
      C mag = neg ? C(-c) : c;
      if (!first) os << (neg ? " - " : " + ");
      else if (neg) os << "-";
      first = false;
      const bool unit = detail::is_one(mag);
      if (e == 0) {
        os << detail::coeff_str(mag);
        continue;
      }
      if (!unit) os << detail::coeff_str(mag) << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

 private:
  LaurentPoly& accumulate(const LaurentPoly& o, bool subtract) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) {
      *this = subtract ? -o : o;
      return *this;
    }
    const int lo = std::min(low_, o.low_);
    const int hi = std::max(high(), o.high());
    if (lo < low_ || hi > high()) {
      std::vector<C> grown(static_cast<std::size_t>(hi - lo + 1), C(0));
      for (std::size_t k = 0; k < c_.size(); ++k) grown[k + static_cast<std::size_t>(low_ - lo)] = std::move(c_[k]);
      c_ = std::move(grown);
      low_ = lo;
    }
    const auto off = static_cast<std::size_t>(o.low_ - low_);
    for (std::size_t k = 0; k < o.c_.size(); ++k) {
      if (subtract) c_[k + off] -= o.c_[k];
      else c_[k + off] += o.c_[k];
    }
    trim();
    return *this;
  }

  void trim() {
    std::size_t first = 0;
    while (first < c_.size() && detail::is_zero(c_[first])) ++first;
    if (first == c_.size()) {
      c_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = c_.size();
    while (detail::is_zero(c_[last - 1])) --last;
    if (first > 0 || last < c_.size()) {
      c_ = std::vector<C>(std::make_move_iterator(c_.begin() + static_cast<std::ptrdiff_t>(first)),
                          std::make_move_iterator(c_.begin() + static_cast<std::ptrdiff_t>(last)));
      low_ += static_cast<int>(first);
    }
  }

  int low_ = 0;
  std::vector<C> c_;
};

namespace detail {

/// Ordinary polynomial division a = quot*b + rem; both arguments must have low() >= 0.
template <class C>
std::pair<LaurentPoly<C>, LaurentPoly<C>> divmod(const LaurentPoly<C>& a, const LaurentPoly<C>& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero() || a.high() < b.high()) return {LaurentPoly<C>{}, a};
  // dense arrays from degree 0
  std::vector<C> rem(static_cast<std::size_t>(a.high() + 1), C(0));
  for (int e = a.low(); e <= a.high(); ++e) rem[static_cast<std::size_t>(e)] = a.coeff(e);
  const int db = b.high();
  std::vector<C> bc(static_cast<std::size_t>(db + 1), C(0));
  for (int e = b.low(); e <= db; ++e) bc[static_cast<std::size_t>(e)] = b.coeff(e);
  const C& lead = bc.back();
  const bool monic = is_one(lead);
  std::vector<C> quot(static_cast<std::size_t>(a.high() - db + 1), C(0));
  for (int d = a.high(); d >= db; --d) {
    C& top = rem[static_cast<std::size_t>(d)];
    if (is_zero(top)) continue;
    C f = monic ? top : C(top / lead);
    for (int j = b.low(); j <= db; ++j) {
      const C& bj = bc[static_cast<std::size_t>(j)];
      if (is_zero(bj)) continue;
      rem[static_cast<std::size_t>(d - db + j)] -= f * bj;
    }
    quot[static_cast<std::size_t>(d - db)] = std::move(f);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {LaurentPoly<C>::from_coeffs(0, std::move(quot)), LaurentPoly<C>::from_coeffs(0, std::move(rem))};
}

/// Strip the power of x so the result has low() == 0.
template <class C>
LaurentPoly<C> strip_x(const LaurentPoly<C>& p) {
  return p.shifted(-p.low());
}

template <class C>
LaurentPoly<C> make_monic(LaurentPoly<C> p) {
  if (p.is_zero() || is_one(p.leading())) return p;
  C lead = p.leading();
  p /= lead;
  return p;
}

/// Monic gcd of two Laurent polynomials, computed as ordinary polynomials
/// after removing powers of x (units of the Laurent ring). gcd(0, 0) = 0.
template <class C>
LaurentPoly<C> gcd(const LaurentPoly<C>& a, const LaurentPoly<C>& b) {
  if (a.is_zero()) return make_monic(strip_x(b));
  if (b.is_zero()) return make_monic(strip_x(a));
  LaurentPoly<C> x = strip_x(a);
  LaurentPoly<C> y = strip_x(b);
  if (x.high() < y.high()) std::swap(x, y);
  if (y.high() == 0) return LaurentPoly<C>(C(1));
  x = make_monic(std::move(x));
  y = make_monic(std::move(y));
  while (!y.is_zero()) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    y = make_monic(std::move(r));
    if (!y.is_zero() && y.high() == 0) return LaurentPoly<C>(C(1));
  }
  return x;
}

/// Exact division of a Laurent polynomial by a polynomial divisor with
/// nonzero constant term. Throws if the division leaves a remainder.
template <class C>
LaurentPoly<C> exact_div(const LaurentPoly<C>& a, const LaurentPoly<C>& d) {
  if (d.is_one()) return a;
  const int shift = a.low();
  auto [quot, rem] = divmod(strip_x(a), d);
  if (!rem.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return quot.shifted(shift);
}

}  // namespace detail

/// Rational function of the formal variable q with Gaussian-rational coefficients.
///
/// Canonical form: numerator/denominator coprime, denominator an ordinary
/// polynomial with nonzero constant term and leading coefficient 1. Two
/// canonical values are equal iff their representations are identical.
class QScalar {
 public:
  using Poly = LaurentPoly<GaussRational>;

  QScalar() : den_(GaussRational(1)) {}
  QScalar(long v) : num_(GaussRational(v)), den_(GaussRational(1)) {}  // NOLINT
  QScalar(const GaussRational& c) : num_(c), den_(GaussRational(1)) {}  // NOLINT
  explicit QScalar(Poly num) : num_(std::move(num)), den_(GaussRational(1)) {}

  static QScalar i() { return QScalar(GaussRational::i()); }
  static QScalar q_pow(int k) { return QScalar(Poly::monomial(GaussRational(1), k)); }
  static QScalar q() { return q_pow(1); }

  /// q^k - q^{-k}
  static QScalar q_diff(int k) {
    return QScalar(Poly::monomial(GaussRational(1), k) - Poly::monomial(GaussRational(1), -k));
  }

  static QScalar from_fraction(Poly num, Poly den) {
    if (den.is_zero()) throw DivisionByZero("QScalar: zero denominator");
    QScalar r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.canonicalize();
    return r;
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  QScalar operator-() const {
    QScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  /// Multiply by q^k (exact, no gcd needed).
  QScalar times_q_pow(int k) const {
    QScalar r = *this;
    r.num_ = r.num_.shifted(k);
    return r;
  }

  QScalar& operator+=(const QScalar& o) { return *this = add(*this, o, false); }
  QScalar& operator-=(const QScalar& o) { return *this = add(*this, o, true); }
  QScalar& operator*=(const QScalar& o) { return *this = mul(*this, o); }
  QScalar& operator/=(const QScalar& o) {
    if (o.is_zero()) throw DivisionByZero("QScalar: division by zero scalar");
    QScalar inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    inv.normalize_unit();
    return *this = mul(*this, inv);
  }

  friend QScalar operator+(const QScalar& a, const QScalar& b) { return add(a, b, false); }
  friend QScalar operator-(const QScalar& a, const QScalar& b) { return add(a, b, true); }
  friend QScalar operator*(const QScalar& a, const QScalar& b) { return mul(a, b); }
  friend QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }

  friend bool operator==(const QScalar& a, const QScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Numerical value at q = q0. Throws PoleError when the denominator vanishes.
  Complex eval(Complex q0) const {
    require_finite(q0, "QScalar::eval");
    if (std::abs(q0) < 1e-300 && (num_.low() < 0)) throw PoleError("QScalar::eval: pole at q = 0");
    const Complex d = den_.eval(q0);
    if (std::abs(d) < 1e-14) {
      throw PoleError("QScalar::eval: pole, denominator " + den_.str("q") + " vanishes at q0");
    }
    return num_.eval(q0) / d;
  }

  std::string str() const {
    if (den_.is_one()) return num_.str("q");
    return "(" + num_.str("q") + ")/(" + den_.str("q") + ")";
  }

 private:
  // For a fraction whose parts are coprime already: move q-powers and make monic.
  void normalize_unit() {
    if (num_.is_zero()) {
      den_ = Poly(GaussRational(1));
      return;
    }
    const int s = den_.low();
    if (s != 0) {
      den_ = den_.shifted(-s);
      num_ = num_.shifted(-s);
    }
    if (!detail::is_one(den_.leading())) {
      GaussRational lead = den_.leading();
      den_ /= lead;
      num_ /= lead;
    }
  }

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = Poly(GaussRational(1));
      return;
    }
    const int s = den_.low();
    if (s != 0) {
      den_ = den_.shifted(-s);
      num_ = num_.shifted(-s);
    }
    if (den_.high() > 0) {
      Poly g = detail::gcd(num_, den_);
      if (g.high() > 0) {
        num_ = detail::exact_div(num_, g);
        den_ = detail::exact_div(den_, g);
      }
    }
    normalize_unit();
  }

  static QScalar mul(const QScalar& a, const QScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    QScalar r;
    if (a.den_.is_one() && b.den_.is_one()) {
      r.num_ = a.num_ * b.num_;
      return r;
    }
    // cross-cancel: a, b are reduced so gcd(an*bn, ad*bd) = gcd(an,bd)*gcd(bn,ad)
    Poly an = a.num_, bn = b.num_, ad = a.den_, bd = b.den_;
    if (bd.high() > 0) {
      Poly g = detail::gcd(an, bd);
      if (g.high() > 0) {
        an = detail::exact_div(an, g);
        bd = detail::exact_div(bd, g);
      }
    }
    if (ad.high() > 0) {
      Poly g = detail::gcd(bn, ad);
      if (g.high() > 0) {
        bn = detail::exact_div(bn, g);
        ad = detail::exact_div(ad, g);
      }
    }
    r.num_ = an * bn;
    r.den_ = ad * bd;
    r.normalize_unit();
    return r;
  }

  static QScalar add(const QScalar& a, const QScalar& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    QScalar r;
    if (a.den_ == b.den_) {
      r.num_ = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      r.den_ = a.den_;
      if (r.num_.is_zero()) return {};
      if (r.den_.high() > 0) {
        Poly g = detail::gcd(r.num_, r.den_);
        if (g.high() > 0) {
          r.num_ = detail::exact_div(r.num_, g);
          r.den_ = detail::exact_div(r.den_, g);
        }
      }
      r.normalize_unit();
      return r;
    }
    // Henrici: g = gcd(ad, bd); t = an*(bd/g) +- bn*(ad/g); reduce by gcd(t, g).
    Poly g = detail::gcd(a.den_, b.den_);
    Poly bdg = detail::exact_div(b.den_, g);
    Poly adg = detail::exact_div(a.den_, g);
    Poly t = a.num_ * bdg;
    if (subtract) t -= b.num_ * adg;
    else t += b.num_ * adg;
    if (t.is_zero()) return {};
    Poly den = a.den_ * bdg;
    if (g.high() > 0) {
      Poly g2 = detail::gcd(t, g);
      if (g2.high() > 0) {
        t = detail::exact_div(t, g2);
        den = detail::exact_div(den, g2);
      }
    }
    r.num_ = std::move(t);
    r.den_ = std::move(den);
    r.normalize_unit();
    return r;
  }

  Poly num_;
  Poly den_;
};

/// Phase e^{i pi c(tau)} stored by its exponent c(tau), a Laurent polynomial
/// in tau with rational coefficients. Only the tau^0 coefficient is reduced
/// (mod 2); tau-dependent parts are q-powers and stay exact.
class PhaseExp {
 public:
  using Poly = LaurentPoly<Rational>;

  PhaseExp() = default;
  explicit PhaseExp(Poly exponent) : exp_(std::move(exponent)) {}
  static PhaseExp constant(Rational c) { return PhaseExp(Poly(std::move(c))); }
  /// e^{i pi k tau} = q^k
  static PhaseExp q_pow(Rational k) { return PhaseExp(Poly::monomial(std::move(k), 1)); }
  /// e^{-i pi k / tau} = qdual^k
  static PhaseExp qdual_pow(Rational k) { return PhaseExp(Poly::monomial(Rational(-k), -1)); }

  const Poly& exponent() const { return exp_; }

  PhaseExp operator+(const PhaseExp& o) const { return PhaseExp(exp_ + o.exp_); }
  PhaseExp operator-(const PhaseExp& o) const { return PhaseExp(exp_ - o.exp_); }
  PhaseExp operator-() const { return PhaseExp(-exp_); }

  /// Constant part reduced into [0, 2).
  PhaseExp canonical() const {
    Rational c = exp_.coeff(0);
    if (sgn(c) == 0) return *this;
    mpz_class fl;
    Rational half = c / 2;
    mpz_fdiv_q(fl.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
    Rational reduced = c - Rational(fl) * 2;
    Poly out = exp_ - Poly(c) + Poly(reduced);
    return PhaseExp(std::move(out));
  }

  bool is_trivial() const { return canonical().exp_.is_zero(); }

  friend bool operator==(const PhaseExp& a, const PhaseExp& b) {
    return a.canonical().exp_ == b.canonical().exp_;
  }

  std::string str() const { return "exp(i*pi*(" + canonical().exp_.str("tau") + "))"; }

 private:
  Poly exp_;
};

}  // namespace mdq
