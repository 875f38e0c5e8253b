#include <gtest/gtest.h>

#include "mdq/heiscalc.hpp"
#include "mdq/random.hpp"

using namespace mdq;

namespace {

PExp random_pexp(ElementSampler& rng) {
  std::vector<BPoly> c(4);
  for (auto& x : c) {
    const int kind = rng.uniform_int(0, 2);
    if (kind == 1) x = BPoly::monomial(GaussRational(rng.uniform_int(-2, 2)), 1);
    if (kind == 2) x = BPoly::monomial(GaussRational(rng.uniform_int(-2, 2)), -1);
  }
  return PExp(PhaseExp(), std::move(c));
}

}  // namespace

TEST(CommutatorForm, CyclicPairing) {
  const CommutatorForm f = CommutatorForm::cyclic();
  for (std::size_t n = 0; n < 4; ++n) {
    EXPECT_EQ(f.at(n, (n + 1) % 4), -1);
    EXPECT_EQ(f.at((n + 1) % 4, n), 1);
  }
  EXPECT_EQ(f.at(0, 2), 0);
  EXPECT_EQ(CommutatorForm::cyclic(2).size(), 8u);
}

TEST(PExp, ProductIsAssociative) {
  ElementSampler rng(31);
  for (int t = 0; t < 100; ++t) {
    const PExp a = random_pexp(rng), b = random_pexp(rng), c = random_pexp(rng);
    EXPECT_EQ(pmul(pmul(a, b), c), pmul(a, pmul(b, c)));
    EXPECT_TRUE(pmul(a, inverse(a)).is_identity());
  }
}

TEST(PExp, NeighbourRatioIsQToMinusTwo) {
  EXPECT_EQ(commutation_ratio(PExp::w(1), PExp::w(2)), PhaseExp::q_pow(-2));
  EXPECT_EQ(commutation_ratio(PExp::w(4), PExp::w(1)), PhaseExp::q_pow(-2));
  EXPECT_TRUE(commutation_ratio(PExp::w(1), PExp::w(3)).is_trivial());
}

TEST(ModularDouble, DualGeneratorsCommuteWithOriginals) {
  const auto checks = check_modular_commutation();
  ASSERT_EQ(checks.size(), 20u);
  int pairs = 0;
  for (const auto& c : checks) {
    EXPECT_TRUE(c.passed()) << c.id << ": " << c.value.str();
    if (c.expected.is_trivial()) {
      ++pairs;
      EXPECT_TRUE(c.value.is_trivial());
    }
  }
  EXPECT_EQ(pairs, 16);
}

TEST(ModularDouble, DualRatioInvolvesInverseTau) {
  // dual w1 dual w2 (dual w2 dual w1)^-1 = e^{-2 i pi / tau} = qdual^2
  const PhaseExp r = commutation_ratio(PExp::w_dual(1), PExp::w_dual(2));
  EXPECT_EQ(r.canonical().exponent().coeff(-1), Rational(-2));
  EXPECT_EQ(r, PhaseExp::qdual_pow(2));
}

TEST(ModularDouble, PhasesAgreeWithWeylSkewForm) {
  const auto checks = check_weyl_consistency();
  ASSERT_EQ(checks.size(), 16u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed()) << c.id;
}

TEST(Cartan, AllFourRealizationsMatch) {
  for (CartanSymbol s : {CartanSymbol::K, CartanSymbol::Kp, CartanSymbol::KDual, CartanSymbol::KpDual})
    EXPECT_TRUE(realize_cartan(s).matches()) << to_string(s);
}

TEST(Cartan, DualKIsKToTheInverseTau) {
  const PExp K = realize_cartan(CartanSymbol::K).target;
  const PExp Kd = realize_cartan(CartanSymbol::KDual).target;
  EXPECT_EQ(K.scaled_b(-2), Kd);
  EXPECT_TRUE(commutation_ratio(K, Kd).is_trivial());
}

TEST(Cartan, InversePrefactorDoesNotReproduceK) {
  const PExp prod = pmul(PExp::w(2), PExp::w(3)).with_phase(PhaseExp::q_pow(-1));
  EXPECT_FALSE(prod == realize_cartan(CartanSymbol::K).target);
}

TEST(Cartan, ExponentComparison) {
  const CartanExponentReport r = cartan_exponent_compare();
  const PiMonomial i_over_2pi{GaussRational(Rational(0), Rational(1, 2)), 0, -1};
  EXPECT_EQ(r.gamma_q, i_over_2pi);
  const PiMonomial minus_i_over_2pi{GaussRational(Rational(0), Rational(-1, 2)), 0, -1};
  EXPECT_EQ(r.gamma_qdual, minus_i_over_2pi);
  EXPECT_EQ(r.k_q, -1);
  EXPECT_EQ(r.k_qdual, 1);
  EXPECT_FALSE(r.k_printed.has_value());
  EXPECT_TRUE(r.mismatch_flag());
  EXPECT_TRUE(r.cartan_forms_commute);
  EXPECT_EQ(r.gamma_printed.str(), "(-1/2)*i*pi^1");
}

TEST(PiMonomial, NumericValueMatches) {
  const PiMonomial x{GaussRational(Rational(3, 2), Rational(-1)), 2, -1};
  const Complex b(0.6, 0.8);
  const Complex expected = Complex(1.5, -1.0) * b * b / std::acos(-1.0);
  EXPECT_LT(std::abs(x.to_complex(b) - expected), 1e-14);
  EXPECT_EQ((PiMonomial{GaussRational(6), 0, 0}).as_integer(), 6);
}
