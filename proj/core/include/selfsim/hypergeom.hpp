#pragma once

#include <cstddef>
#include <vector>

#include "selfsim/rational.hpp"
#include "selfsim/similarity.hpp"

namespace selfsim {

/// Series  sum_n  prod (num_k)_n / prod (den_m)_n * (K z)^n / n!.
///
/// `factorial` tracks the n! of the standard pFq definition. It is one more
/// denominator slot with parameter 1, and reduction may cancel it against a
/// numerator parameter equal to 1 (this happens for the index i = p - 1).
struct HypergeomSpec {
  std::vector<Rational> num_params;
  std::vector<Rational> den_params;
  Rational scale{1};
  bool factorial = true;
  bool reduced = false;

  /// Denominator slots including the factorial.
  std::size_t denominator_slots() const { return den_params.size() + (factorial ? 1 : 0); }
};

/// Parameters of solution i: numerators i/c + (b - k)/(a c), k = 0..q-1;
/// denominators (i - m)/c + 1, m = 0..p-1, m != i (the m = i slot equals 1
/// and is the factorial); scale a^q / c^(p-q).
/// Throws PoleInDenominatorParam when a denominator is a non-positive integer
/// not matched by an equal numerator.
HypergeomSpec build_pfq(const EquationSpec& spec, const SimilarityParams& params, unsigned i);

/// Multiset cancellation of equal numerator/denominator parameters, then of a
/// remaining numerator 1 against the factorial slot.
HypergeomSpec reduce_params(const HypergeomSpec& h);

/// Number of parameter pairs removed between `before` and `after`.
std::size_t cancelled_pairs(const HypergeomSpec& before, const HypergeomSpec& after);

enum class ConvergenceClass { entire };

/// Every series arising from p > q is entire. Throws std::logic_error when
/// the numerator count reaches the denominator-slot count.
ConvergenceClass convergence_class(const HypergeomSpec& h);

struct EvalResult {
  Real value;
  std::size_t terms_used = 0;
  Real bound_on_tail;
  bool terminated = false;  // a numerator parameter cut the series off
};

inline constexpr double kDefaultTol = 1e-12;
inline constexpr std::size_t kDefaultMaxTerms = 10'000;

/// Sums the series at argument z (the term ratio uses K z) until the
/// rigorous tail bound falls below tol * |partial sum|.
/// Throws MaxTermsExceeded, PoleInDenominatorParam, std::invalid_argument (tol <= 0).
EvalResult eval_pfq(const HypergeomSpec& h, const Real& z, const Real& tol = Real(kDefaultTol),
                    std::size_t max_terms = kDefaultMaxTerms);

/// Continues the series past index `start` whose term value is `start_term`,
/// returning the sum of terms start+1, start+2, ... The stopping rule is
/// relative to |reference + partial|.
EvalResult continue_pfq(const HypergeomSpec& h, const Real& z, std::size_t start,
                        const Real& start_term, const Real& reference, const Real& tol,
                        std::size_t max_terms = kDefaultMaxTerms);

/// Exact partial sum of the first `terms` terms at rational z.
Rational eval_pfq_exact(const HypergeomSpec& h, const Rational& z, std::size_t terms);

}  // namespace selfsim
