#pragma once

// The noncompact quantum dilogarithm
//
//   psi(p) = exp (1/4) \int_C e^{-i p xi / pi} / (sh(b xi) sh(xi / b)) dxi / xi,
//
// C the real line passing above xi = 0, evaluated as real-axis Gauss-Legendre
// panels on r <= |xi| <= Xi plus the exact small-semicircle term from the
// Laurent expansion at 0. Also the ratio form s_q(e^{bp}) / s_qdual(e^{p/b}).

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdq/check.hpp"
#include "mdq/scalar.hpp"

namespace mdq {

struct PsiParams {
  Complex b{std::sqrt(0.5), std::sqrt(0.5)};
  double cutoff = 0.0;     // Xi; 0 picks it from the decay rate
  int panels = 8;          // initial panel count on [r, Xi], doubled until converged
  double radius = 0.1;     // r
  int laurent_order = 8;   // highest power of xi kept in the semicircle term
  double tolerance = 1e-13;
  int max_panels = 1 << 14;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr double kPi = 3.14159265358979323846;

/// Coefficients of x / sinh x = sum_m c_m x^{2m}: c_m = (2 - 2^{2m}) B_{2m} / (2m)!.
inline std::vector<double> x_over_sinh(int terms) {
  std::vector<double> c;
  for (int m = 0; m < terms; ++m) {
    const double b2m = boost::math::bernoulli_b2n<double>(m);
    c.push_back((2.0 - std::ldexp(1.0, 2 * m)) * b2m / boost::math::factorial<double>(2 * m));
  }
  return c;
}

/// Laurent coefficients a_n, n = -3..order, of e^{-i p xi/pi} / (xi sh(b xi) sh(xi/b)).
inline std::vector<Complex> psi_laurent(Complex b, Complex p, int order) {
  const int len = order + 4;  // n = -3 .. order
  const int half = len / 2 + 1;
  const auto c = x_over_sinh(half);
  // D(xi) = sum_m d_m xi^{2m} = (b xi / sh(b xi)) (xi / b / sh(xi/b)); the kernel is xi^{-3} D(xi).
  std::vector<Complex> d(static_cast<std::size_t>(len), 0.0);
  for (int m = 0; 2 * m < len; ++m) {
    Complex s = 0.0;
    for (int i = 0; i <= m; ++i) s += c[i] * c[m - i] * std::pow(b, 2 * i) * std::pow(1.0 / b, 2 * (m - i));
    d[static_cast<std::size_t>(2 * m)] = s;
  }
  // E(xi) = e^{-i p xi / pi}
  std::vector<Complex> e(static_cast<std::size_t>(len));
  const Complex t = Complex(0.0, -1.0) * p / kPi;
  Complex pw = 1.0;
  for (int k = 0; k < len; ++k) {
    e[static_cast<std::size_t>(k)] = pw / boost::math::factorial<double>(static_cast<unsigned>(k));
    pw *= t;
  }
  std::vector<Complex> a(static_cast<std::size_t>(len), 0.0);
  for (int k = 0; k < len; ++k)
    for (int j = 0; j + k < len; ++j) a[static_cast<std::size_t>(k + j)] += d[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(j)];
  return a;  // a[k] is the coefficient of xi^{k-3}
}

/// Integral over the upper semicircle from -r to r.
inline Complex semicircle_term(Complex b, Complex p, double r, int order) {
  const auto a = psi_laurent(b, p, order);
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const int n = static_cast<int>(k) - 3;
    if (n == -1) {
      s += Complex(0.0, -kPi) * a[k];
    } else if (n % 2 == 0) {
      s += 2.0 * a[k] * std::pow(r, n + 1) / static_cast<double>(n + 1);
    }
  }
  return s;
}

/// 1 / (sh(b xi) sh(xi/b)) for xi > 0 and Re b > 0, written with decaying exponentials.
inline Complex inv_sh_sh(Complex b, double xi) {
  const Complex u = b * xi;
  const Complex v = xi / b;
  return 4.0 * std::exp(-u - v) / ((1.0 - std::exp(-2.0 * u)) * (1.0 - std::exp(-2.0 * v)));
}

/// f(xi) + f(-xi) = -2i sin(p xi / pi) / (xi sh(b xi) sh(xi/b)) for xi > 0.
inline Complex symmetric_kernel(Complex b, Complex p, double xi) {
  return Complex(0.0, -2.0) * std::sin(p * xi / kPi) * inv_sh_sh(b, xi) / xi;
}

inline Complex composite_gauss(Complex b, Complex p, double lo, double hi, int panels) {
  // odd order: abscissa()[0] is the centre node, the rest come in +- pairs
  using Rule = boost::math::quadrature::gauss<double, 21>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double h = (hi - lo) / panels;
  Complex total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = lo + (k + 0.5) * h;
    Complex s = w[0] * symmetric_kernel(b, p, mid);
    for (std::size_t i = 1; i < x.size(); ++i) {
      const double dx = 0.5 * h * x[i];
      s += w[i] * (symmetric_kernel(b, p, mid - dx) + symmetric_kernel(b, p, mid + dx));
    }
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace detail

/// Decay rate of the kernel: Re(b + 1/b) - |Im p| / pi (with Re b > 0).
inline double psi_decay_rate(Complex b, Complex p) {
  return (b + 1.0 / b).real() - std::abs(p.imag()) / detail::kPi;
}

/// Cutoff Xi with tail bound 8 e^{-delta Xi} / (delta Xi) below 1e-13.
inline double psi_cutoff(double delta) {
  double xi = std::max(2.0, 1.0 / delta);
  while (8.0 * std::exp(-delta * xi) / (delta * xi) > 1e-13) xi *= 1.25;
  return xi;
}

/// log psi(p) by contour integral.
inline Complex log_psi_integral(Complex p, PsiParams params = {}) {
  require_finite(p, "psi_integral");
  require_finite(params.b, "psi_integral");
  Complex b = params.b;
  if (b.real() == 0.0) throw std::invalid_argument("psi_integral: Re b must be nonzero");
  if (b.real() < 0.0) b = -b;  // the kernel is even in b
  const double delta = psi_decay_rate(b, p);
  if (!(delta > 0.0)) throw std::domain_error("psi_integral: decay condition |Im p|/pi < Re(b + 1/b) violated");
  const double r = params.radius;
  const double cutoff = params.cutoff > 0.0 ? params.cutoff : psi_cutoff(delta);
  if (!(r > 0.0 && r < 1.0 && cutoff > 1.0)) throw std::invalid_argument("psi_integral: need 0 < r < 1 < Xi");

  int panels = std::max(1, params.panels);
  Complex prev = detail::composite_gauss(b, p, r, cutoff, panels);
  while (true) {
    panels *= 2;
    if (panels > params.max_panels) throw QuadratureError("psi_integral: quadrature did not converge");
    const Complex next = detail::composite_gauss(b, p, r, cutoff, panels);
    const bool done = std::abs(next - prev) <= params.tolerance * std::max(1.0, std::abs(next));
    prev = next;
    if (done) break;
  }
  return 0.25 * (prev + detail::semicircle_term(b, p, r, params.laurent_order));
}

inline Complex psi_integral(Complex p, const PsiParams& params = {}) { return std::exp(log_psi_integral(p, params)); }

struct QPair {
  Complex q, qdual;
};

/// q = e^{i pi b^2}, qdual = e^{-i pi / b^2}
inline QPair q_pair(Complex b) {
  const Complex i(0.0, 1.0);
  const Complex tau = b * b;
  return {std::exp(i * detail::kPi * tau), std::exp(-i * detail::kPi / tau)};
}

/// prod_{n < m} (1 + q^{2n+1} w)
inline Complex sq_product(Complex q, Complex w, int m) {
  Complex r = 1.0;
  Complex qq = q;
  const Complex q2 = q * q;
  for (int n = 0; n < m; ++n) {
    r *= 1.0 + qq * w;
    qq *= q2;
  }
  return r;
}

/// Smallest M with |q|^{2M+1} |w| below 1e-17 for both halves.
inline int psi_product_factors(Complex b, Complex p) {
  const QPair qs = q_pair(b);
  auto need = [](double aq, double aw) {
    int m = 1;
    while (std::pow(aq, 2 * m + 1) * aw > 1e-17 && m < 1000000) ++m;
    return m;
  };
  return std::max(need(std::abs(qs.q), std::abs(std::exp(b * p))), need(std::abs(qs.qdual), std::abs(std::exp(p / b))));
}

/// s_q(e^{bp}) / s_qdual(e^{p/b}) with M factors each (M = 0 picks it from the tail bound).
inline Complex psi_product(Complex p, Complex b, int m = 0) {
  require_finite(p, "psi_product");
  require_finite(b, "psi_product");
  if (!((b * b).imag() > 0.0)) throw std::domain_error("psi_product: product representation invalid (need Im b^2 > 0)");
  const QPair qs = q_pair(b);
  if (m <= 0) m = psi_product_factors(b, p);
  return sq_product(qs.q, std::exp(b * p), m) / sq_product(qs.qdual, std::exp(p / b), m);
}

struct PsiComparison {
  Complex integral;
  Complex product;
  double relative_error = 0.0;
  bool agree(double tol = 1e-8) const { return relative_error < tol; }
};

inline PsiComparison compare_psi(Complex p, const PsiParams& params = {}) {
  PsiComparison c{psi_integral(p, params), psi_product(p, params.b), 0.0};
  c.relative_error = std::abs(c.integral - c.product) / std::abs(c.product);
  return c;
}

/// psi(p + 2 pi i b)(1 + q e^{bp}) = psi(p),
/// psi(p + 2 pi i / b)(1 + qdual^-1 e^{p/b}) = psi(p),
/// and the double shift reached in either order against a direct evaluation.
/// Uses the product form, valid on every shifted point when Im b^2 > 0.
inline std::vector<NumericCheck> check_functional_equations(Complex b, const std::vector<Complex>& grid) {
  const Complex i(0.0, 1.0);
  const QPair qs = q_pair(b);
  const Complex sb = 2.0 * detail::kPi * i * b;
  const Complex sd = 2.0 * detail::kPi * i / b;
  double fe = 0.0, fe_dual = 0.0, dbl = 0.0;
  for (const Complex& p : grid) {
    const Complex psi = psi_product(p, b);
    fe = std::max(fe, std::abs(psi_product(p + sb, b) * (1.0 + qs.q * std::exp(b * p)) - psi));
    fe_dual = std::max(fe_dual, std::abs(psi_product(p + sd, b) * (1.0 + std::exp(p / b) / qs.qdual) - psi));
    const Complex via_b = psi / (1.0 + qs.q * std::exp(b * p)) / (1.0 + std::exp((p + sb) / b) / qs.qdual);
    const Complex via_d = psi / (1.0 + std::exp(p / b) / qs.qdual) / (1.0 + qs.q * std::exp(b * (p + sd)));
    const Complex direct = psi_product(p + sb + sd, b);
    dbl = std::max({dbl, std::abs(via_b - via_d), std::abs(via_b - direct)});
  }
  return {NumericCheck::below("psi-shift-b", "psi(p + 2 pi i b) = psi(p) / (1 + q e^{bp})", fe, 1e-8),
          NumericCheck::below("psi-shift-1/b", "psi(p + 2 pi i/b) = psi(p) / (1 + qdual^{-1} e^{p/b})", fe_dual, 1e-8),
          NumericCheck::below("psi-double-shift", "psi(p + 2 pi i b + 2 pi i/b), either order", dbl, 1e-7)};
}

/// The dual shift with qdual in place of qdual^-1; reported, expected nonzero.
inline double dual_shift_residual_with_qdual(Complex b, Complex p) {
  const Complex i(0.0, 1.0);
  const QPair qs = q_pair(b);
  return std::abs(psi_product(p + 2.0 * detail::kPi * i / b, b) * (1.0 + qs.qdual * std::exp(p / b)) - psi_product(p, b));
}

}  // namespace mdq
