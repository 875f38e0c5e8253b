#pragma once

// Deterministic random elements for property tests and the oracle check.

#include <cstdint>
#include <random>

#include "mdq/weyl.hpp"

namespace mdq {

class ElementSampler {
 public:
  explicit ElementSampler(std::uint64_t seed) : rng_(seed) {}

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Small Gaussian rational.
  GaussRational gauss() {
    Rational re(uniform_int(-5, 5), static_cast<unsigned long>(uniform_int(1, 4)));
    Rational im(uniform_int(-5, 5), static_cast<unsigned long>(uniform_int(1, 4)));
    re.canonicalize();
    im.canonicalize();
    return {re, im};
  }

  /// Random nonzero coefficient: a short Laurent polynomial in q, optionally
  /// divided by (q - q^-1), which has no pole at any q0 != +-1.
  QScalar scalar(bool allow_denominator = true) {
    QScalar::Poly num;
    while (num.is_zero()) {
      const int terms = uniform_int(1, 3);
      for (int t = 0; t < terms; ++t) num += QScalar::Poly::monomial(gauss(), uniform_int(-3, 3));
    }
    QScalar s(num);
    if (allow_denominator && uniform_int(0, 2) == 0) s = s / QScalar::q_diff(1);
    return s;
  }

  /// Element with up to max_terms monomials whose exponents lie in
  /// [-max_exp, max_exp] and whose total absolute degree is at most max_degree.
  WeylElement element(const LatticePtr& lat, int max_terms, int max_exp, int max_degree, bool allow_denominator = true) {
    WeylElement a(lat);
    const int terms = uniform_int(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      Monomial m;
      int budget = max_degree;
      for (std::size_t i = 0; i < lat->size() && budget > 0; ++i) {
        const int lim = std::min(max_exp, budget);
        m[i] = uniform_int(-lim, lim);
        budget -= std::abs(m[i]);
      }
      a.add_term(m, scalar(allow_denominator));
    }
    return a;
  }

  /// Element with nonnegative exponents only (positively graded under uniform weights).
  WeylElement positive_element(const LatticePtr& lat, int max_terms, int max_degree) {
    WeylElement a(lat);
    const int terms = uniform_int(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      Monomial m;
      int budget = uniform_int(1, max_degree);
      while (budget > 0) {
        ++m[static_cast<std::size_t>(uniform_int(0, static_cast<int>(lat->size()) - 1))];
        --budget;
      }
      a.add_term(m, scalar());
    }
    return a;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace mdq
