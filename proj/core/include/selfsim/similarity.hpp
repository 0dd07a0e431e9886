#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/rational.hpp"

namespace selfsim {

/// The four degenerate equations, all with p > q:
///   Eq1:  x^alpha D_x^p u - y^beta D_y^q u = 0,            0 <= alpha < p, 0 <= beta < q
///   Eq2:  y^beta D_x^p u - x^alpha D_y^q u = 0,            alpha, beta >= 0
///   Eq3:  x^alpha y^beta D_x^p u - D_y^q u = 0,            0 <= alpha < p, beta >= 0
///   Eq4:  D_x^p u - x^alpha y^beta D_y^q u = 0,            alpha >= 0, 0 <= beta < q
enum class EquationKind { eq1 = 1, eq2 = 2, eq3 = 3, eq4 = 4 };

struct EquationSpec {
  EquationKind kind = EquationKind::eq1;
  unsigned p = 2;
  unsigned q = 1;
  Rational alpha{0};
  Rational beta{0};
};

/// Throws InvalidSpec naming the first violated constraint.
void validate(const EquationSpec& spec);

/// Parameters of the similarity reduction u = y^b v(t), t = x y^a, z = t^c.
struct SimilarityParams {
  Rational a;                   // < 0
  Rational b;                   // outer power of y
  Rational c;                   // > 0
  std::vector<Rational> gammas; // gamma_i = i / c, i = 0..p-1
  Rational scale;               // K = a^q / c^(p-q)
};

/// c = p - alpha for Eq1/Eq3 and p + alpha for Eq2/Eq4.
Rational similarity_power(const EquationSpec& spec);

/// q - beta for Eq1/Eq4 and q + beta for Eq2/Eq3; equals -a c.
Rational signed_q(const EquationSpec& spec);

/// Throws DegenerateEquation when c == 0 and InvalidSpec for any other violation.
SimilarityParams derive_params(const EquationSpec& spec);

/// Exponent b that makes the last numerator parameter of the hypergeometric
/// form equal to its last denominator parameter:
///   i/c + (b - q + 1)/(a c) = (i - p + 1)/c + 1   =>   b = q - 1 + a (c - p + 1).
Rational derive_b(const EquationSpec& spec);

/// The per-kind closed forms for b as published alongside the solution
/// families. Kinds 1, 3 and 4 agree with derive_b; the kind-2 formula mixes
/// q - beta, p - alpha into a q + beta, p + alpha family and does not.
/// nullopt when the formula's denominator vanishes.
std::optional<Rational> tabulated_b(const EquationSpec& spec);

/// True when tabulated_b is absent or differs from derive_b.
bool tabulated_b_differs(const EquationSpec& spec);

struct IndependenceReport {
  bool ok = true;
  bool alpha_integral_violation = false;
  std::vector<std::pair<unsigned, unsigned>> violating_pairs;  // (i, s)
};

/// Sufficient conditions for p linearly independent solutions: alpha is not a
/// positive integer (Eq1/Eq3 only), and i/c + (b - s)/(a c) != 0 for all
/// i in 0..p-1, s in 0..q-1.
IndependenceReport independence_check(const EquationSpec& spec, const Rational& b);

std::string to_string(EquationKind kind);

}  // namespace selfsim
