#include <gtest/gtest.h>

#include "mdq/matoracle.hpp"

using namespace mdq;

TEST(ClockShift, WeylPairAndOrder) {
  for (int n : {2, 3, 5, 8}) {
    const ClockShift cs = clock_shift(n);
    const Matrix I = Matrix::Identity(n, n);
    EXPECT_LT((cs.U * cs.V - (1.0 / cs.omega) * cs.V * cs.U).norm(), 1e-13);
    Matrix Un = I, Vn = I;
    for (int k = 0; k < n; ++k) {
      Un = Un * cs.U;
      Vn = Vn * cs.V;
    }
    EXPECT_LT((Un - I).norm(), 1e-12);
    EXPECT_LT((Vn - I).norm(), 1e-12);
    EXPECT_LT((cs.U * cs.U.adjoint() - I).norm(), 1e-13);
  }
  EXPECT_THROW(clock_shift(1), std::invalid_argument);
}

TEST(RealizeW, RelationsAndArguments) {
  for (int n : {3, 5, 8}) {
    const MatrixRep rep = realize_w(n, Complex(1.2, -0.3), Complex(0.4, 0.9), default_root_index(n));
    EXPECT_LT(relation_residual(rep), 1e-12);
  }
  EXPECT_THROW(realize_w(4, 1.0, 1.0, 2), std::invalid_argument);
  EXPECT_THROW(realize_w(1, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(realize_w(3, 0.0, 1.0), std::invalid_argument);
}

TEST(Evaluate, GeneratorsMapToMatrices) {
  const MatrixRep rep = realize_w(5, Complex(0.8, 0.3), Complex(-0.5, 1.1));
  const LatticePtr lat = Lattice::cyclic();
  for (std::size_t g = 0; g < 4; ++g) {
    EXPECT_LT((evaluate(WeylElement::generator(lat, g), rep) - rep.W[g]).norm(), 1e-14);
    EXPECT_LT((evaluate(WeylElement::generator(lat, g, -1), rep) - rep.W_inv[g]).norm(), 1e-12);
  }
  EXPECT_LT((evaluate(WeylElement::one(lat), rep) - Matrix::Identity(5, 5)).norm(), 1e-15);
  // w4 w1 is stored as q^{2} w1 w4 in normal order
  const Matrix w4w1 = evaluate(WeylElement::generator(lat, 3) * WeylElement::generator(lat, 0), rep);
  EXPECT_LT((w4w1 - rep.W[3] * rep.W[0]).norm(), 1e-13);
}

TEST(Evaluate, PoleInCoefficientIsReported) {
  // 1 / (q^2 - q^-2) has a pole at q0 = i, i.e. N = 2
  const MatrixRep rep = realize_w(2, 1.0, 1.0);
  const WeylElement a = WeylElement::generator(Lattice::cyclic(), 0) * (QScalar(1) / QScalar::q_diff(2));
  EXPECT_THROW(evaluate(a, rep), PoleError);
}

TEST(Evaluate, RejectsOtherLattices) {
  const MatrixRep rep = realize_w(3, 1.0, 1.0);
  EXPECT_THROW(evaluate(WeylElement::one(Lattice::weyl_pair()), rep), std::invalid_argument);
}

TEST(Oracle, AllChecksPass) {
  for (int n : {3, 5, 8}) {
    const OracleReport r = oracle_check(n, 30);
    EXPECT_TRUE(r.passed()) << "N=" << n;
    EXPECT_EQ(r.checks.size(), 6u);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed()) << c.id << " = " << c.value;
  }
}

TEST(Oracle, IsDeterministic) {
  const OracleReport a = oracle_check(5, 10, 7), b = oracle_check(5, 10, 7);
  for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].value, b.checks[i].value);
  EXPECT_THROW(oracle_check(3, -1), std::invalid_argument);
}
