#include <gtest/gtest.h>

#include <complex>

#include "mdq/random.hpp"
#include "mdq/scalar.hpp"

using namespace mdq;

namespace {

constexpr Complex kQ0{0.73, 0.41};

Complex eval_at(const QScalar& s) { return s.eval(kQ0); }

}  // namespace

TEST(GaussRational, FieldAxiomsOnRandomValues) {
  ElementSampler rng(11);
  for (int t = 0; t < 300; ++t) {
    const GaussRational a = rng.gauss(), b = rng.gauss(), c = rng.gauss();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * a.conj(), GaussRational(a.norm()));
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(GaussRational, DivisionByZeroThrows) {
  EXPECT_THROW(GaussRational(1) / GaussRational(0), DivisionByZero);
}

TEST(GaussRational, ImaginaryUnitSquaresToMinusOne) {
  EXPECT_EQ(GaussRational::i() * GaussRational::i(), GaussRational(-1));
}

TEST(LaurentPoly, GcdOfSharedFactor) {
  using P = LaurentPoly<Rational>;
  const P x = P::monomial(Rational(1), 1);
  const P one(Rational(1));
  const P a = (x - one) * (x + P(Rational(2))) * P::monomial(Rational(3), -2);
  const P b = (x - one) * (x + P(Rational(3)));
  EXPECT_EQ(detail::gcd(a, b), x - one);
  EXPECT_EQ(detail::gcd(x + one, x - one), one);
}

TEST(QScalar, CanonicalFormIdentifiesEqualFractions) {
  // (q^2 - q^-2) / (q - q^-1) = q + q^-1
  EXPECT_EQ(QScalar::q_diff(2) / QScalar::q_diff(1), QScalar::q() + QScalar::q_pow(-1));
  EXPECT_TRUE((QScalar::q_diff(3) / QScalar::q_diff(3)).is_one());
  EXPECT_TRUE((QScalar::q_diff(1) - QScalar::q_diff(1)).is_zero());
}

TEST(QScalar, FieldAxiomsOnRandomValues) {
  ElementSampler rng(12);
  for (int t = 0; t < 150; ++t) {
    const QScalar a = rng.scalar(), b = rng.scalar(), c = rng.scalar();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(a.times_q_pow(3), a * QScalar::q_pow(3));
  }
}

TEST(QScalar, EvaluationIsARingHomomorphism) {
  ElementSampler rng(13);
  for (int t = 0; t < 150; ++t) {
    const QScalar a = rng.scalar(), b = rng.scalar();
    const Complex ea = eval_at(a), eb = eval_at(b);
    EXPECT_LT(std::abs(eval_at(a * b) - ea * eb), 1e-9 * (1 + std::abs(ea * eb)));
    EXPECT_LT(std::abs(eval_at(a + b) - (ea + eb)), 1e-9 * (1 + std::abs(ea) + std::abs(eb)));
    EXPECT_LT(std::abs(eval_at(a / b) - ea / eb), 1e-9 * (1 + std::abs(ea / eb)));
  }
}

TEST(QScalar, EvaluationAtPoleThrows) {
  const QScalar s = QScalar(1) / QScalar::q_diff(1);
  EXPECT_THROW(s.eval(Complex(1.0, 0.0)), PoleError);
  EXPECT_THROW(s.eval(Complex(-1.0, 0.0)), PoleError);
  EXPECT_NO_THROW(s.eval(Complex(0.0, 1.0)));
  EXPECT_THROW((QScalar(1) / QScalar::q_diff(2)).eval(Complex(0.0, 1.0)), PoleError);
}

TEST(QScalar, DivisionByZeroThrows) { EXPECT_THROW(QScalar(1) / QScalar(0), DivisionByZero); }

TEST(QScalar, QDiffMatchesDefinition) {
  const Complex v = QScalar::q_diff(3).eval(kQ0);
  EXPECT_LT(std::abs(v - (std::pow(kQ0, 3) - std::pow(kQ0, -3))), 1e-12);
}

TEST(PhaseExp, ConstantPartIsReducedModTwo) {
  EXPECT_TRUE(PhaseExp::constant(2).is_trivial());
  EXPECT_TRUE(PhaseExp::constant(-4).is_trivial());
  EXPECT_FALSE(PhaseExp::constant(1).is_trivial());
  EXPECT_EQ(PhaseExp::constant(3), PhaseExp::constant(1));
  EXPECT_EQ(PhaseExp::constant(Rational(5, 2)), PhaseExp::constant(Rational(1, 2)));
}

TEST(PhaseExp, QPowersAddAndCancel) {
  EXPECT_EQ(PhaseExp::q_pow(1) + PhaseExp::q_pow(2), PhaseExp::q_pow(3));
  EXPECT_TRUE((PhaseExp::q_pow(2) - PhaseExp::q_pow(2)).is_trivial());
  EXPECT_FALSE(PhaseExp::q_pow(2).is_trivial());
  // q^k and qdual^k are independent exponents (tau and 1/tau)
  EXPECT_FALSE(PhaseExp::q_pow(1) == PhaseExp::qdual_pow(1));
  EXPECT_EQ(PhaseExp::qdual_pow(1).exponent().coeff(-1), Rational(-1));
}
