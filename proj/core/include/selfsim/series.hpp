#pragma once

#include <cstddef>
#include <vector>

#include "selfsim/hypergeom.hpp"
#include "selfsim/rational.hpp"
#include "selfsim/similarity.hpp"

namespace selfsim {

/// One term coef * x^ex * y^ey.
struct MonomialTerm {
  Rational coef;
  Rational ex;
  Rational ey;

  friend bool operator==(const MonomialTerm&, const MonomialTerm&) = default;
};

/// Solution i of the family, u_i = y^b sum_n c_n t^(i + n c), t = x y^a,
/// truncated after n = order().
struct SeriesSolution {
  EquationSpec spec;
  SimilarityParams params;
  unsigned index = 0;
  std::vector<Rational> coeffs;  // c_0 .. c_N, c_0 = 1

  std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

inline constexpr std::size_t kDefaultOrder = 30;

/// c_0 = 1 and c_n (i + n c)_p-falling = c_{n-1} (b + a (i + (n-1) c))_q-falling.
/// Throws ZeroPivot when the left factor vanishes for some 1 <= n <= N.
std::vector<Rational> coeff_sequence(const EquationSpec& spec, const SimilarityParams& params,
                                     unsigned i, std::size_t order);

/// c_n from the Pochhammer product
///   K^n prod_k (i/c + (b - k)/(a c))_n / prod_{m} ((i - m)/c + 1)_n,
/// where the m = i factor is (1)_n = n!.
Rational closed_form_coeff(const EquationSpec& spec, const SimilarityParams& params, unsigned i,
                           std::size_t n);

/// Builds solution i with coefficients up to `order`. Throws ZeroPivot.
SeriesSolution make_solution(const EquationSpec& spec, unsigned i,
                             std::size_t order = kDefaultOrder);

/// The p solutions i = 0..p-1. Throws ResonanceError listing every index
/// whose recurrence hit a zero pivot.
std::vector<SeriesSolution> solution_family(const EquationSpec& spec,
                                            std::size_t order = kDefaultOrder);

/// Term n is c_n x^(i + n c) y^(b + a (i + n c)), n = 0..N.
std::vector<MonomialTerm> monomial_expansion(const SeriesSolution& sol);

/// Reduced hypergeometric form of the solution's series.
HypergeomSpec solution_pfq(const SeriesSolution& sol);

/// y^b (x y^a)^i F(K (x y^a)^c) through the reduced hypergeometric series.
/// Independent of the stored coefficients. Throws std::domain_error unless
/// x > 0 and y > 0.
Real eval_solution(const SeriesSolution& sol, const Real& x, const Real& y,
                   const Real& tol = Real(kDefaultTol));

/// Same function summed from the stored coefficients c_0..c_N, with the
/// remainder n > N continued by the term ratio. A corrupted coefficient
/// shows up here and not in eval_solution.
Real eval_from_coefficients(const SeriesSolution& sol, const Real& x, const Real& y,
                            const Real& tol = Real(kDefaultTol));

}  // namespace selfsim
