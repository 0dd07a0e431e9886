#pragma once

#include <vector>

#include "selfsim/rational.hpp"

namespace selfsim {

/// a (a - 1) ... (a - n + 1); 1 for n == 0.
Rational falling_factorial(const Rational& a, unsigned n);

/// Pochhammer symbol a (a + 1) ... (a + n - 1); 1 for n == 0.
Rational pochhammer(const Rational& a, unsigned n);

/// Throws std::domain_error when k > n.
Integer binomial(unsigned n, unsigned k);

/// Triangle of the coefficients A_i^j(a), 0 <= i < j <= max_j, that expand
/// the j-th y-derivative of v(x y^a) in the operators t^i D_t^i.
///
/// Filled by the recurrence
///   A_i^j = a ((i + 1) A_i^{j-1} + A_{i-1}^{j-1}) - (j - 1) A_i^{j-1},
/// with A_0^1 = a, A_{-1}^j = 0 and A_i^j = 0 for i >= j.
class ACoeffTable {
 public:
  ACoeffTable(Rational a, unsigned max_j);

  /// A_i^j(a); zero whenever i >= j. Requires j <= max_j().
  const Rational& operator()(unsigned i, unsigned j) const;

  const Rational& a() const noexcept { return a_; }
  unsigned max_j() const noexcept { return max_j_; }

  /// Extends the triangle in place up to `max_j`.
  void grow(unsigned max_j);

 private:
  Rational a_;
  unsigned max_j_ = 0;
  // rows_[j - 1][i] holds A_i^j for i < j.
  std::vector<std::vector<Rational>> rows_;
  Rational zero_{0};
};

/// A_i^j(a) through a per-thread memoized ACoeffTable keyed on a.
Rational a_coeff(unsigned i, unsigned j, const Rational& a);

/// A_i^j(a) evaluated from the nested sum over strictly decreasing index
/// chains j = k_0 > k_1 > ... > k_i >= 1. Cost grows combinatorially in j;
/// retained as an independent check on the recurrence.
Rational a_coeff_oracle(unsigned i, unsigned j, const Rational& a);

}  // namespace selfsim
