#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/rational.hpp"
#include "selfsim/series.hpp"
#include "selfsim/similarity.hpp"

namespace selfsim {

/// Images of one monomial under the two sides of the kind's operator, so
/// that the equation reads sum(left) - sum(right) = 0.
struct OperatorImage {
  MonomialTerm left;   // the D_x^p side with its multiplier
  MonomialTerm right;  // the D_y^q side with its multiplier
};

OperatorImage apply_operator(const EquationSpec& spec, const MonomialTerm& term);

struct ResidualFailure {
  long slot = -1;  // n such that the entry mixes terms n and n + 1; -1 if unaligned
  MonomialTerm entry;
};

struct ResidualReport {
  bool interior_ok = false;
  MonomialTerm trailing;          // observed entry at the trailing exponents
  Rational max_interior_coeff{0}; // largest |coef| away from the trailing slot
  std::optional<ResidualFailure> first_failure;
  std::string message;
};

/// -c_N (b + a (i + N c))_q-falling placed at the exponents of the right
/// image of term N.
MonomialTerm predicted_trailing(const SeriesSolution& sol);

/// Applies the operator term by term to the monomial ledger, collects the
/// images by exact exponent pair, and checks that everything cancels except
/// the predicted trailing monomial.
ResidualReport residual_series(const SeriesSolution& sol);

/// Central finite-difference weights for the `derivative`-th derivative on
/// the integer offsets -r..r, exact to O(h^accuracy).
std::vector<Rational> central_weights(unsigned derivative, unsigned accuracy);

using Field = std::function<Real(const Real& x, const Real& y)>;
using Point = std::pair<Real, Real>;

struct NumericResidual {
  Real max_relative{0};
  std::vector<std::string> diagnostics;
};

inline constexpr unsigned kStencilAccuracy = 6;

/// max over points of |L u - R u| / (|L u| + |R u| + 1e-300) with both sides
/// differentiated by central differences of step h.
NumericResidual residual_numeric(const EquationSpec& spec, const Field& u,
                                 std::span<const Point> points, const Real& h);

/// Applies the check to eval_from_coefficients(sol, ., .).
NumericResidual residual_numeric(const SeriesSolution& sol, std::span<const Point> points,
                                 const Real& h);

}  // namespace selfsim
