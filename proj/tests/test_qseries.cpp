#include <gtest/gtest.h>

#include <complex>

#include "mdq/qseries.hpp"

using namespace mdq;

TEST(SqCoefficients, ProductAndSumAgreeWithClosedForm) {
  // c_k = q^{k^2} / prod_{j<=k} (1 - q^{2j})
  const auto prod = sq_coefficients(10, SqForm::Product);
  const auto sum = sq_coefficients(10, SqForm::Sum);
  QScalar denom(1);
  for (int k = 0; k <= 10; ++k) {
    if (k > 0) denom *= QScalar(1) - QScalar::q_pow(2 * k);
    const QScalar closed = QScalar::q_pow(k * k) / denom;
    EXPECT_EQ(prod[static_cast<std::size_t>(k)], closed) << "k=" << k;
    EXPECT_EQ(sum[static_cast<std::size_t>(k)], closed) << "k=" << k;
  }
  EXPECT_THROW(sq_coefficients(3, SqForm::ExpLog), std::invalid_argument);
}

TEST(SqCoefficients, SeriesMatchesNumericProduct) {
  // |q| < 1: sum c_k w^k = prod_n (1 + q^{2n+1} w)
  const Complex q0(0.45, 0.2), w(0.3, -0.1);
  const auto c = sq_coefficients(40, SqForm::Sum);
  Complex series = 0.0, wk = 1.0;
  for (const auto& ck : c) {
    series += ck.eval(q0) * wk;
    wk *= w;
  }
  Complex product = 1.0;
  for (int n = 0; n < 200; ++n) product *= 1.0 + std::pow(q0, 2 * n + 1) * w;
  EXPECT_LT(std::abs(series - product), 1e-12);
}

TEST(Sq, ThreeFormsAgree) {
  for (const auto& c : check_sq_forms(8)) EXPECT_TRUE(c.is_zero()) << c.id << ": " << c.summary();
}

TEST(Sq, TruncationIsConsistent) {
  const LatticePtr lat = Lattice::weyl_pair(1);
  const Grading gr = Grading::uniform(2);
  const WeylElement x = WeylElement::generator(lat, 0) + WeylElement::generator(lat, 1);
  for (long n = 1; n <= 6; ++n) EXPECT_EQ(truncate(sq(x, n).body, gr, n - 1), sq(x, n - 1).body);
}

TEST(Sq, RejectsArgumentsWithoutPositiveDegree) {
  const LatticePtr lat = Lattice::weyl_pair(1);
  const WeylElement u = WeylElement::generator(lat, 0);
  EXPECT_THROW(sq(u + WeylElement::one(lat), 3), std::invalid_argument);
  EXPECT_THROW(sq(WeylElement::generator(lat, 0, -1), 3), std::invalid_argument);
  EXPECT_THROW(sq(u, -1), std::invalid_argument);
}

TEST(Schutzenberger, HoldsExactly) {
  for (long n : {1L, 4L, 6L}) EXPECT_TRUE(check_schutzenberger(n).is_zero()) << "N=" << n;
}

TEST(Schutzenberger, WrongLatticeControlFails) {
  const SymbolicCheck c = check_schutzenberger(6, 2);
  EXPECT_FALSE(c.is_zero());
  EXPECT_TRUE(c.passed());
}

TEST(Pentagon, BothEqualitiesHoldExactly) {
  for (const auto& c : check_pentagon(6)) EXPECT_TRUE(c.is_zero()) << c.id << ": " << c.summary();
}

TEST(Pentagon, DroppingTheQFactorFails) {
  for (const auto& c : check_pentagon(6, true)) {
    EXPECT_FALSE(c.is_zero()) << c.id;
    EXPECT_TRUE(c.passed());
  }
}

TEST(Schutzenberger, FailsForCommutingPair) {
  const LatticePtr lat = std::make_shared<const Lattice>(std::vector<std::string>{"u", "v"}, std::vector<int>{0, 0, 0, 0});
  const Grading gr = Grading::uniform(2);
  const WeylElement u = WeylElement::generator(lat, 0), v = WeylElement::generator(lat, 1);
  EXPECT_FALSE((truncated_product(sq(u, 3).body, sq(v, 3).body, gr, 3) - sq(u + v, 3).body).is_zero());
}
