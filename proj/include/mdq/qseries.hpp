#pragma once

// Truncated q-exponent s_q(w) in its three forms, and the Schutzenberger and
// pentagon identities on Weyl pairs.
//
//   product  prod_{n>=0} (1 + q^{2n+1} w)
//   sum      1 + sum_{k>=1} (-1)^k q^{k(k-1)/2} w^k / ((q - q^-1)...(q^k - q^-k))
//   explog   exp sum_{k>=1} (-1)^k w^k / (k (q^k - q^-k))

#include <stdexcept>
#include <string>
#include <vector>

#include "mdq/check.hpp"
#include "mdq/weyl.hpp"

namespace mdq {

enum class SqForm { Product, Sum, ExpLog };

inline const char* to_string(SqForm f) {
  switch (f) {
    case SqForm::Product: return "product";
    case SqForm::Sum: return "sum";
    case SqForm::ExpLog: return "explog";
  }
  return "?";
}

struct TruncSeries {
  WeylElement body;
  long bound = 0;
  Grading grading;
};

/// Coefficients c_0..c_n of s_q(w) = sum c_k w^k for the product and sum forms.
///
/// The product form is expanded by peeling its first factor:
/// s(w) = (1 + q w) s(q^2 w), so c_k (1 - q^{2k}) = q^{2k-1} c_{k-1}.
inline std::vector<QScalar> sq_coefficients(std::size_t n, SqForm form) {
  if (form == SqForm::ExpLog) throw std::invalid_argument("sq_coefficients: explog form has no closed coefficients here");
  std::vector<QScalar> c{QScalar(1)};
  if (form == SqForm::Product) {
    for (std::size_t k = 1; k <= n; ++k) {
      const int kk = static_cast<int>(k);
      const QScalar denom = QScalar(1) - QScalar::q_pow(2 * kk);
      c.push_back(c.back() * QScalar::q_pow(2 * kk - 1) / denom);
    }
    return c;
  }
  QScalar qfact(1);
  for (std::size_t k = 1; k <= n; ++k) {
    const int kk = static_cast<int>(k);
    qfact *= QScalar::q_diff(kk);
    const QScalar sign = (k % 2 == 0) ? QScalar(1) : QScalar(-1);
    c.push_back(sign * QScalar::q_pow(kk * (kk - 1) / 2) / qfact);
  }
  return c;
}

namespace detail {

inline void require_positive_argument(const WeylElement& arg, const Grading& grading) {
  for (const auto& [m, c] : arg.terms()) {
    long total = 0;
    for (long d : grading.degree(m)) {
      if (d < 0) throw std::invalid_argument("sq: argument has a monomial of negative degree");
      total += d;
    }
    if (total < 1) throw std::invalid_argument("sq: argument has a degree-0 term (not nilpotent under truncation)");
  }
}

/// Truncated powers x^0, x^1, ... until the power vanishes under truncation.
inline std::vector<WeylElement> truncated_powers(const WeylElement& x, const Grading& grading, long bound) {
  std::vector<WeylElement> pw{WeylElement::one(x.lattice())};
  while (true) {
    WeylElement next = truncated_product(pw.back(), x, grading, bound);
    if (next.is_zero()) break;
    pw.push_back(std::move(next));
  }
  return pw;
}

}  // namespace detail

/// s_q(arg) truncated at graded degree `bound`. Every monomial of arg must
/// have nonnegative degree components summing to at least 1.
inline TruncSeries sq(const WeylElement& arg, long bound, SqForm form, const Grading& grading) {
  if (bound < 0) throw std::invalid_argument("sq: negative truncation bound");
  detail::require_positive_argument(arg, grading);
  const WeylElement x = truncate(arg, grading, bound);
  const auto pw = detail::truncated_powers(x, grading, bound);
  WeylElement body(arg.lattice());
  if (form != SqForm::ExpLog) {
    const auto c = sq_coefficients(pw.size() - 1, form);
    for (std::size_t k = 0; k < pw.size(); ++k) body += c[k] * pw[k];
    return {std::move(body), bound, grading};
  }
  // L = sum (-1)^k x^k / (k (q^k - q^-k)); exp(L) by Taylor expansion in L
  WeylElement log_part(arg.lattice());
  for (std::size_t k = 1; k < pw.size(); ++k) {
    const int kk = static_cast<int>(k);
    const QScalar sign = (k % 2 == 0) ? QScalar(1) : QScalar(-1);
    log_part += (sign / (QScalar(kk) * QScalar::q_diff(kk))) * pw[k];
  }
  WeylElement term = WeylElement::one(arg.lattice());
  body = term;
  for (int m = 1; !term.is_zero(); ++m) {
    term = truncated_product(term, log_part, grading, bound) * (QScalar(1) / QScalar(m));
    body += term;
  }
  return {std::move(body), bound, grading};
}

/// Single-grading convenience: every generator has weight 1.
inline TruncSeries sq(const WeylElement& arg, long bound, SqForm form = SqForm::Sum) {
  return sq(arg, bound, form, Grading::uniform(arg.lattice()->size()));
}

/// s_q(u) s_q(v) - s_q(u + v) on the pair u v = q^{2 power} v u. The identity
/// needs power = 1; other powers serve as negative controls.
inline SymbolicCheck check_schutzenberger(long bound, int power = 1) {
  if (bound < 1) throw std::invalid_argument("check_schutzenberger: need N >= 1");
  const LatticePtr lat = Lattice::weyl_pair(power);
  const Grading gr = Grading::uniform(2);
  const WeylElement u = WeylElement::generator(lat, 0);
  const WeylElement v = WeylElement::generator(lat, 1);
  const WeylElement lhs = truncated_product(sq(u, bound).body, sq(v, bound).body, gr, bound);
  const WeylElement rhs = sq(u + v, bound).body;
  SymbolicCheck c{power == 1 ? "schutzenberger" : "schutzenberger-control-q" + std::to_string(2 * power),
                  "s_{q}(u) s_{q}(v) = s_{q}(u+v)", bound, {lhs - rhs}, power == 1};
  return c;
}

/// Both pentagon equalities s_q(v)s_q(u) = s_q(u+v+q^-1 uv) = s_q(u)s_q(q^-1 uv)s_q(v)
/// for u v = q^2 v u, with deg u = deg v = 1 (so q^-1 uv has degree 2).
/// With `drop_q_factor` the middle argument is uv instead (negative control).
inline std::vector<SymbolicCheck> check_pentagon(long bound, bool drop_q_factor = false) {
  if (bound < 2) throw std::invalid_argument("check_pentagon: need N >= 2");
  const LatticePtr lat = Lattice::weyl_pair(1);
  const Grading gr = Grading::uniform(2);
  const WeylElement u = WeylElement::generator(lat, 0);
  const WeylElement v = WeylElement::generator(lat, 1);
  const WeylElement uv = (drop_q_factor ? QScalar(1) : QScalar::q_pow(-1)) * (u * v);
  const WeylElement lhs = truncated_product(sq(v, bound).body, sq(u, bound).body, gr, bound);
  const WeylElement mid = sq(u + v + uv, bound).body;
  const WeylElement three =
      truncated_product(truncated_product(sq(u, bound).body, sq(uv, bound).body, gr, bound), sq(v, bound).body, gr, bound);
  const std::string suffix = drop_q_factor ? "-control-uv" : "";
  return {SymbolicCheck{"pentagon-sum" + suffix, "s_{q}(v) s_{q}(u) = s_{q}(u+v+ q^{-1}uv)", bound, {lhs - mid}, !drop_q_factor},
          SymbolicCheck{"pentagon-product" + suffix, "= s_{q}(u) s_{q}(q^{-1}uv) s_{q}(v)", bound, {lhs - three},
                        !drop_q_factor}};
}

/// Pairwise equality of the three forms of s_q(w) for a single generator.
inline std::vector<SymbolicCheck> check_sq_forms(long bound) {
  const LatticePtr lat = Lattice::single();
  const WeylElement w = WeylElement::generator(lat, 0);
  const WeylElement prod = sq(w, bound, SqForm::Product).body;
  const WeylElement sum = sq(w, bound, SqForm::Sum).body;
  const WeylElement expl = sq(w, bound, SqForm::ExpLog).body;
  return {SymbolicCheck{"sq-product=sum", "prod (1 + q^{2n+1} w) = sum_k c_k w^k", bound, {prod - sum}, true},
          SymbolicCheck{"sq-product=explog", "prod (1 + q^{2n+1} w) = exp sum_k (-1)^k w^k / (k (q^k - q^{-k}))", bound, {prod - expl}, true}};
}

}  // namespace mdq
