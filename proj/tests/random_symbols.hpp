#ifndef HOPFTWIST_TESTS_RANDOM_SYMBOLS_HPP
#define HOPFTWIST_TESTS_RANDOM_SYMBOLS_HPP

#include <random>

#include "hopftwist/planck.hpp"

namespace hopftwist::testing {

// Small random normal-ordered symbol: up to `terms` monomials x^k g^r p^n with
// Gaussian-rational coefficients, some of them carrying a power of A.
inline PlanckElem random_symbol(std::mt19937& rng, bool with_x, int maxn = 2, int terms = 3) {
  std::uniform_int_distribution<int> k(0, with_x ? 1 : 0), r(-2, 2), n(0, maxn), c(-3, 3), cnt(1, terms),
      ap(0, 1);
  PlanckElem e;
  int t = cnt(rng);
  for (int j = 0; j < t; ++j) {
    GaussQ coef(c(rng), c(rng));
    if (coef.is_zero()) coef = GaussQ(1);
    e.add_term({k(rng), r(rng), n(rng)}, ParamScalar::monomial(coef, ap(rng), 0));
  }
  return e;
}

}  // namespace hopftwist::testing

#endif
