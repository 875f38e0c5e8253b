#pragma once

// Clock and shift matrices realizing C_q at q0 = e^{i pi j / N}:
// W1 = U, W2 = V, W3 = z1 U^-1, W4 = z2 V^-1 with U V = omega^-1 V U, omega = q0^2.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdq/check.hpp"
#include "mdq/chevalley.hpp"
#include "mdq/random.hpp"
#include "mdq/weyl.hpp"

namespace mdq {

using Matrix = Eigen::MatrixXcd;

struct ClockShift {
  Matrix U, V;
  Complex omega;
};

/// V = diag(1, omega, ..., omega^{N-1}), U e_k = e_{k+1 mod N}; then U V = omega^-1 V U.
inline ClockShift clock_shift(int n, Complex omega) {
  if (n < 2) throw std::invalid_argument("clock_shift: need N >= 2");
  ClockShift cs{Matrix::Zero(n, n), Matrix::Zero(n, n), omega};
  for (int k = 0; k < n; ++k) {
    cs.U((k + 1) % n, k) = 1.0;
    cs.V(k, k) = std::pow(omega, k);
  }
  return cs;
}

/// omega = e^{2 pi i j / N}
inline ClockShift clock_shift(int n, int j = 1) {
  const double pi = std::acos(-1.0);
  return clock_shift(n, std::polar(1.0, 2.0 * pi * j / n));
}

struct MatrixRep {
  int n = 0;
  int j = 1;
  Complex q0;
  Complex omega;
  Complex z1, z2;
  std::array<Matrix, 4> W;
  std::array<Matrix, 4> W_inv;
};

/// Representation at q0 = e^{i pi j / N}; j must be coprime to N so that
/// omega = q0^2 is a primitive N-th root of unity.
inline MatrixRep realize_w(int n, Complex z1, Complex z2, int j = 1) {
  if (n < 2) throw std::invalid_argument("realize_w: need N >= 2");
  if (std::gcd(n, j) != 1) throw std::invalid_argument("realize_w: j must be coprime to N");
  require_finite(z1, "realize_w");
  require_finite(z2, "realize_w");
  if (z1 == Complex(0.0) || z2 == Complex(0.0)) throw std::invalid_argument("realize_w: central parameters must be nonzero");
  const double pi = std::acos(-1.0);
  MatrixRep r;
  r.n = n;
  r.j = j;
  r.q0 = std::polar(1.0, pi * j / n);
  r.omega = r.q0 * r.q0;
  r.z1 = z1;
  r.z2 = z2;
  const ClockShift cs = clock_shift(n, r.omega);
  const Matrix U_inv = cs.U.adjoint();
  const Matrix V_inv = cs.V.adjoint();
  r.W = {cs.U, cs.V, z1 * U_inv, z2 * V_inv};
  r.W_inv = {U_inv, V_inv, cs.U / z1, cs.V / z2};
  return r;
}

namespace detail {

inline Matrix matrix_power(const MatrixRep& rep, std::size_t g, int e) {
  Matrix m = Matrix::Identity(rep.n, rep.n);
  const Matrix& base = e >= 0 ? rep.W[g] : rep.W_inv[g];
  for (int k = 0; k < std::abs(e); ++k) m = m * base;
  return m;
}

}  // namespace detail

/// Sum of coeff(q0) W1^a W2^b W3^c W4^d over the terms, in normal order.
/// Throws PoleError naming the monomial whose coefficient has a pole at q0.
inline Matrix evaluate(const WeylElement& a, const MatrixRep& rep) {
  if (!(*a.lattice() == *Lattice::cyclic())) throw std::invalid_argument("evaluate: element must live on C_q");
  Matrix out = Matrix::Zero(rep.n, rep.n);
  for (const auto& [m, c] : a.terms()) {
    Complex v;
    try {
      v = c.eval(rep.q0);
    } catch (const PoleError& e) {
      throw PoleError("evaluate: coefficient of " + a.monomial_str(m) + ": " + e.what());
    }
    Matrix t = Matrix::Identity(rep.n, rep.n);
    for (std::size_t g = 0; g < 4; ++g)
      if (m[g] != 0) t = t * detail::matrix_power(rep, g, m[g]);
    out += v * t;
  }
  return out;
}

/// ||A - B||_F / max(1, ||B||_F)
inline double relative_distance(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

/// max_n ||W_n W_{n+1} - q0^{2 S} W_{n+1} W_n||, plus W1 W3 = z1 and W2 W4 = z2.
inline double relation_residual(const MatrixRep& rep) {
  const LatticePtr lat = Lattice::cyclic();
  const Matrix I = Matrix::Identity(rep.n, rep.n);
  double worst = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    const std::size_t b = (a + 1) % 4;
    const Complex ph = std::pow(rep.q0, 2 * lat->skew(a, b));
    worst = std::max(worst, (rep.W[a] * rep.W[b] - ph * rep.W[b] * rep.W[a]).norm());
  }
  worst = std::max(worst, (rep.W[0] * rep.W[2] - rep.z1 * I).norm());
  worst = std::max(worst, (rep.W[1] * rep.W[3] - rep.z2 * I).norm());
  return worst;
}

struct OracleReport {
  int n = 0;
  int j = 1;
  std::vector<NumericCheck> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

/// Default j for the tests: 3 for N = 8, else 1.
inline int default_root_index(int n) { return n == 8 ? 3 : 1; }

/// Relation residuals (< 1e-12), homomorphism on `trials` random pairs of
/// degree <= 4 (< 1e-10), the seven U_q residuals evaluated in matrices
/// (< 1e-10), and centrality of Z1, Z2, C (< 1e-12).
inline OracleReport oracle_check(int n, int trials, std::uint64_t seed = 20240601, int j = 0) {
  if (trials < 0) throw std::invalid_argument("oracle_check: negative trial count");
  if (j == 0) j = default_root_index(n);
  const MatrixRep rep = realize_w(n, Complex(0.8, 0.3), Complex(-0.5, 1.1), j);
  const std::string tag = "N=" + std::to_string(n) + ":";
  OracleReport r{n, j, {}};
  r.checks.push_back(NumericCheck::below(tag + "relations", "W_n W_{n+1} = q^{2S} W_{n+1} W_n",
                                         relation_residual(rep), 1e-12));

  ElementSampler sampler(seed + static_cast<std::uint64_t>(n));
  const LatticePtr lat = Lattice::cyclic();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const WeylElement a = sampler.element(lat, 4, 2, 4);
    const WeylElement b = sampler.element(lat, 4, 2, 4);
    worst = std::max(worst, relative_distance(evaluate(a * b, rep), evaluate(a, rep) * evaluate(b, rep)));
  }
  r.checks.push_back(NumericCheck::below(tag + "homomorphism", "evaluate(a b) = evaluate(a) evaluate(b)", worst, 1e-10));

  const GeneratorSet g = embed();
  const Matrix e = evaluate(g.e, rep), f = evaluate(g.f, rep), K = evaluate(g.K, rep), Kp = evaluate(g.Kp, rep);
  const Complex qd = rep.q0 - 1.0 / rep.q0;
  const double uq_direct = relative_distance(e * f - f * e, (K - Kp) / qd);
  double uq_symbolic = 0.0;
  for (const auto& c : verify_uq(g))
    for (const auto& res : c.residuals) uq_symbolic = std::max(uq_symbolic, evaluate(res, rep).norm());
  r.checks.push_back(NumericCheck::below(tag + "uq-symbolic-residuals", "U_q relation residuals", uq_symbolic, 1e-10));
  r.checks.push_back(NumericCheck::below(tag + "ef-fe-matrices", "ef - fe = \\frac{K-K'}{q-q^{-1}}", uq_direct, 1e-10));

  const CasimirReport cas = casimirs(g);
  double central = 0.0;
  for (const WeylElement* z : {&cas.central.Z1, &cas.central.Z2, &cas.central.C}) {
    const Matrix Z = evaluate(*z, rep);
    for (const auto& W : rep.W) central = std::max(central, (Z * W - W * Z).norm());
  }
  r.checks.push_back(NumericCheck::below(tag + "centrality", "[Z, W_n] = 0", central, 1e-12));
  const Matrix C = evaluate(cas.central.C, rep);
  r.checks.push_back(NumericCheck::below(tag + "C=(z1+z2)I", "C = Z_{1} + Z_{2}",
                                         (C - (rep.z1 + rep.z2) * Matrix::Identity(n, n)).norm(), 1e-12));
  return r;
}

}  // namespace mdq
