#include "selfsim/residual.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "selfsim/kernels.hpp"

namespace selfsim {

namespace {

// Exponent shifts contributed by each side's multiplier.
struct Multipliers {
  Rational left_x, left_y;
  Rational right_x, right_y;
};

Multipliers multipliers(const EquationSpec& spec) {
  const Rational zero(0);
  switch (spec.kind) {
    case EquationKind::eq1:
      return {spec.alpha, zero, zero, spec.beta};
    case EquationKind::eq2:
      return {zero, spec.beta, spec.alpha, zero};
    case EquationKind::eq3:
      return {spec.alpha, spec.beta, zero, zero};
    case EquationKind::eq4:
      return {zero, zero, spec.alpha, spec.beta};
  }
  throw std::invalid_argument("unknown equation kind");
}

using Key = std::pair<Rational, Rational>;

}  // namespace

OperatorImage apply_operator(const EquationSpec& spec, const MonomialTerm& term) {
  const Multipliers m = multipliers(spec);
  OperatorImage img;
  img.left = {term.coef * falling_factorial(term.ex, spec.p), term.ex - spec.p + m.left_x,
              term.ey + m.left_y};
  img.right = {term.coef * falling_factorial(term.ey, spec.q), term.ex + m.right_x,
               term.ey - spec.q + m.right_y};
  return img;
}

MonomialTerm predicted_trailing(const SeriesSolution& sol) {
  const auto terms = monomial_expansion(sol);
  const OperatorImage img = apply_operator(sol.spec, terms.back());
  return {-img.right.coef, img.right.ex, img.right.ey};
}

ResidualReport residual_series(const SeriesSolution& sol) {
  ResidualReport report;
  const auto terms = monomial_expansion(sol);
  if (terms.empty()) {
    report.message = "empty coefficient ledger";
    return report;
  }

  // Left image of term n + 1 must land on the right image of term n.
  {
    const MonomialTerm t0{1, terms[0].ex, terms[0].ey};
    const MonomialTerm t1{1, t0.ex + sol.params.c, t0.ey + sol.params.a * sol.params.c};
    const auto r0 = apply_operator(sol.spec, t0).right;
    const auto l1 = apply_operator(sol.spec, t1).left;
    if (l1.ex != r0.ex) {
      report.message = "x-exponents do not align: c does not match the kind's p -/+ alpha";
      return report;
    }
    if (l1.ey != r0.ey) {
      report.message = "y-exponents do not align: a c does not match the kind's -(q -/+ beta)";
      return report;
    }
  }

  std::map<Key, Rational> ledger;
  for (const auto& term : terms) {
    const OperatorImage img = apply_operator(sol.spec, term);
    ledger[{img.left.ex, img.left.ey}] += img.left.coef;
    ledger[{img.right.ex, img.right.ey}] -= img.right.coef;
  }

  const MonomialTerm predicted = predicted_trailing(sol);
  const Key trailing_key{predicted.ex, predicted.ey};
  report.trailing = {Rational(0), predicted.ex, predicted.ey};
  if (auto it = ledger.find(trailing_key); it != ledger.end()) report.trailing.coef = it->second;

  const Rational shift_x = multipliers(sol.spec).right_x;
  for (const auto& [key, coef] : ledger) {
    if (key == trailing_key || coef == 0) continue;
    report.max_interior_coeff = std::max(report.max_interior_coeff, Rational(abs(coef)));
    if (!report.first_failure) {
      ResidualFailure f;
      f.entry = {coef, key.first, key.second};
      const Rational n = (key.first - Rational(sol.index) - shift_x) / sol.params.c;
      if (n >= 0 && is_integer(n)) f.slot = static_cast<long>(boost::multiprecision::numerator(n));
      report.first_failure = f;
    }
  }

  const bool trailing_ok = report.trailing.coef == predicted.coef;
  report.interior_ok = !report.first_failure && trailing_ok;
  if (report.first_failure) {
    std::ostringstream os;
    os << "non-cancelling slot n = " << report.first_failure->slot << ": coefficient "
       << to_string(report.first_failure->entry.coef) << " at x^"
       << to_string(report.first_failure->entry.ex) << " y^"
       << to_string(report.first_failure->entry.ey);
    report.message = os.str();
  } else if (!trailing_ok) {
    report.message = "trailing coefficient " + to_string(report.trailing.coef) +
                     " differs from predicted " + to_string(predicted.coef);
  }
  return report;
}

std::vector<Rational> central_weights(unsigned derivative, unsigned accuracy) {
  if (accuracy == 0 || accuracy % 2 != 0)
    throw std::invalid_argument("central stencils need a positive even accuracy order");
  const int r = static_cast<int>((derivative + 1) / 2 + accuracy / 2) - 1;
  std::vector<Rational> nodes;
  for (int k = -r; k <= r; ++k) nodes.emplace_back(k);

  // Fornberg's recursion on the node set, expanded about 0.
  const std::size_t n = nodes.size();
  const unsigned order = derivative;
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(order + 1, Rational(0)));
  w[0][0] = 1;
  Rational c1(1);
  Rational c4 = nodes[0];
  for (std::size_t i = 1; i < n; ++i) {
    const unsigned mn = std::min<unsigned>(static_cast<unsigned>(i), order);
    Rational c2(1);
    const Rational c5 = c4;
    c4 = nodes[i];
    for (std::size_t j = 0; j < i; ++j) {
      const Rational c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (unsigned k = mn; k >= 1; --k)
          w[i][k] = c1 * (Rational(k) * w[i - 1][k - 1] - c5 * w[i - 1][k]) / c2;
        w[i][0] = -c1 * c5 * w[i - 1][0] / c2;
      }
      for (unsigned k = mn; k >= 1; --k) w[j][k] = (c4 * w[j][k] - Rational(k) * w[j][k - 1]) / c3;
      w[j][0] = c4 * w[j][0] / c3;
    }
    c1 = c2;
  }

  std::vector<Rational> out;
  out.reserve(n);
  for (const auto& row : w) out.push_back(row[order]);
  return out;
}

NumericResidual residual_numeric(const EquationSpec& spec, const Field& u,
                                 std::span<const Point> points, const Real& h) {
  if (!(h > 0)) throw std::invalid_argument("finite-difference step must be positive");
  NumericResidual out;

  const auto wx = central_weights(spec.p, kStencilAccuracy);
  const auto wy = central_weights(spec.q, kStencilAccuracy);
  std::vector<Real> wxr, wyr;
  for (const auto& w : wx) wxr.push_back(to_real(w));
  for (const auto& w : wy) wyr.push_back(to_real(w));
  const int rx = static_cast<int>(wx.size() / 2);
  const int ry = static_cast<int>(wy.size() / 2);
  const Real hx_pow = pow(h, spec.p);
  const Real hy_pow = pow(h, spec.q);

  const Real alpha = to_real(spec.alpha);
  const Real beta = to_real(spec.beta);
  const Real eps("1e-300");
  const unsigned guard = std::max(spec.p, spec.q) + 2;

  if (h > Real("0.05")) out.diagnostics.push_back("step h is large; truncation error may dominate");
  if (h < Real("1e-12")) out.diagnostics.push_back("step h is small; rounding error may dominate");

  for (const auto& [x, y] : points) {
    const Real reach = h * std::max({guard, static_cast<unsigned>(rx), static_cast<unsigned>(ry)});
    if (!(x > reach) || !(y > reach)) {
      std::ostringstream os;
      os << "point (" << to_decimal_string(x, 6) << ", " << to_decimal_string(y, 6)
         << ") lies within " << guard << " h of an axis; skipped";
      out.diagnostics.push_back(os.str());
      continue;
    }

    Real dxp(0), dyq(0);
    for (int k = -rx; k <= rx; ++k) {
      const Real& w = wxr[static_cast<std::size_t>(k + rx)];
      if (w != 0) dxp += w * u(x + h * k, y);
    }
    for (int k = -ry; k <= ry; ++k) {
      const Real& w = wyr[static_cast<std::size_t>(k + ry)];
      if (w != 0) dyq += w * u(x, y + h * k);
    }
    dxp /= hx_pow;
    dyq /= hy_pow;

    const Real xa = pow(x, alpha);
    const Real yb = pow(y, beta);
    Real left, right;
    switch (spec.kind) {
      case EquationKind::eq1: left = xa * dxp; right = yb * dyq; break;
      case EquationKind::eq2: left = yb * dxp; right = xa * dyq; break;
      case EquationKind::eq3: left = xa * yb * dxp; right = dyq; break;
      case EquationKind::eq4: left = dxp; right = xa * yb * dyq; break;
    }
    const Real rel = abs(left - right) / (abs(left) + abs(right) + eps);
    out.max_relative = std::max(out.max_relative, rel);
  }
  return out;
}

NumericResidual residual_numeric(const SeriesSolution& sol, std::span<const Point> points,
                                 const Real& h) {
  const Real tol("1e-45");
  return residual_numeric(
      sol.spec, [&](const Real& x, const Real& y) { return eval_from_coefficients(sol, x, y, tol); },
      points, h);
}

}  // namespace selfsim
