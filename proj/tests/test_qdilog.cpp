#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "mdq/qdilog.hpp"

using namespace mdq;

namespace {

const double kPi = std::acos(-1.0);
const Complex kB = std::polar(1.0, kPi / 4);

struct Reference {
  Complex b, p, psi;
};

// s_q(e^{bp}) / s_qdual(e^{p/b}) evaluated with mpmath at 40 digits
const Reference kRefs[] = {
    {kB, 0.0, {1.0, 0.0}},
    {kB, 0.5, {0.99918549251642422906, 0.040352838124607058938}},
    {kB, -1.25, {0.99962595893087065077, -0.027348532529869002761}},
    {kB, {0.3, 0.4}, {0.96704627844342124155, 0.013363293321657441684}},
    {{0.8, 0.5}, {0.3, 0.2}, {0.99144638525106113672, 0.15298682928510609334}},
    {{0.8, 0.5}, -0.7, {1.0190111850373774015, 0.055708072185130295683}},
};

}  // namespace

TEST(XOverSinh, LowOrderCoefficients) {
  const auto c = detail::x_over_sinh(3);
  EXPECT_NEAR(c[0], 1.0, 1e-15);
  EXPECT_NEAR(c[1], -1.0 / 6.0, 1e-15);
  EXPECT_NEAR(c[2], 7.0 / 360.0, 1e-15);
}

TEST(Psi, IntegralMatchesReferenceValues) {
  for (const auto& r : kRefs) {
    PsiParams params;
    params.b = r.b;
    EXPECT_LT(std::abs(psi_integral(r.p, params) - r.psi), 1e-12) << "p=" << r.p << " b=" << r.b;
  }
}

TEST(Psi, ProductMatchesReferenceValues) {
  for (const auto& r : kRefs) EXPECT_LT(std::abs(psi_product(r.p, r.b) - r.psi), 1e-12) << "p=" << r.p;
}

TEST(Psi, IntegralAgreesWithProductOnGrid) {
  for (int k = 0; k < 20; ++k) {
    const double p = -2.0 + 4.0 * k / 19.0;
    EXPECT_LT(compare_psi(p).relative_error, 1e-8) << "p=" << p;
  }
}

TEST(Psi, SymmetricUnderBToInverseB) {
  PsiParams inv;
  inv.b = 1.0 / kB;
  PsiParams other;
  other.b = Complex(0.8, 0.5);
  PsiParams other_inv;
  other_inv.b = 1.0 / other.b;
  for (double p : {-1.5, -0.2, 0.0, 0.9}) {
    EXPECT_LT(std::abs(psi_integral(p) - psi_integral(p, inv)), 1e-10);
    EXPECT_LT(std::abs(psi_integral(p, other) - psi_integral(p, other_inv)), 1e-10);
  }
}

TEST(Psi, IndependentOfIndentationRadius) {
  PsiParams half;
  half.radius = 0.05;
  PsiParams wide;
  wide.radius = 0.3;
  for (double p : {-1.0, 0.4}) {
    EXPECT_LT(std::abs(psi_integral(p) - psi_integral(p, half)), 1e-11);
    EXPECT_LT(std::abs(psi_integral(p) - psi_integral(p, wide)), 1e-11);
  }
}

TEST(Psi, FunctionalEquations) {
  std::vector<Complex> grid;
  for (int k = 0; k < 10; ++k) grid.emplace_back(-2.0 + 4.0 * k / 9.0, 0.0);
  for (Complex b : {kB, Complex(0.8, 0.5)})
    for (const auto& c : check_functional_equations(b, grid)) EXPECT_TRUE(c.passed()) << c.id << " = " << c.value;
}

TEST(Psi, DualShiftNeedsInverseQDual) {
  EXPECT_GT(dual_shift_residual_with_qdual(kB, 0.5), 0.1);
}

TEST(Psi, DomainErrors) {
  EXPECT_THROW(psi_product(0.0, 1.0), std::domain_error);
  EXPECT_THROW(psi_integral(Complex(0.0, 10.0)), std::domain_error);
  PsiParams imag;
  imag.b = Complex(0.0, 1.0);
  EXPECT_THROW(psi_integral(0.0, imag), std::invalid_argument);
  EXPECT_THROW(psi_integral(Complex(NAN, 0.0)), std::invalid_argument);
}

TEST(Psi, NegatedBGivesSameValue) {
  PsiParams neg;
  neg.b = -kB;
  EXPECT_LT(std::abs(psi_integral(0.7) - psi_integral(0.7, neg)), 1e-14);
}

TEST(Psi, EvaluationIsFast) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < 5; ++k) psi_integral(-1.0 + 0.5 * k);
  const double per_eval = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 5;
  EXPECT_LT(per_eval, 0.5);
}
