#include "selfsim/similarity.hpp"

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

bool shifts_x_power_down(EquationKind kind) {
  return kind == EquationKind::eq1 || kind == EquationKind::eq3;
}

bool shifts_q_down(EquationKind kind) {
  return kind == EquationKind::eq1 || kind == EquationKind::eq4;
}

Rational power(const Rational& base, unsigned n) {
  Rational r(1);
  for (unsigned k = 0; k < n; ++k) r *= base;
  return r;
}

}  // namespace

std::string to_string(EquationKind kind) {
  return "Eq" + std::to_string(static_cast<int>(kind));
}

void validate(const EquationSpec& spec) {
  const int kind = static_cast<int>(spec.kind);
  if (kind < 1 || kind > 4) throw InvalidSpec("kind must be 1..4");
  if (spec.q < 1) throw InvalidSpec("q >= 1 violated");
  if (spec.p <= spec.q) throw InvalidSpec("p > q violated");
  if (spec.alpha < 0) throw InvalidSpec("alpha >= 0 violated");
  if (spec.beta < 0) throw InvalidSpec("beta >= 0 violated");
  if (shifts_x_power_down(spec.kind) && spec.alpha >= spec.p)
    throw InvalidSpec("alpha < p violated");
  if (shifts_q_down(spec.kind) && spec.beta >= spec.q)
    throw InvalidSpec("beta < q violated");
}

Rational similarity_power(const EquationSpec& spec) {
  return shifts_x_power_down(spec.kind) ? Rational(spec.p - spec.alpha)
                                        : Rational(spec.p + spec.alpha);
}

Rational signed_q(const EquationSpec& spec) {
  return shifts_q_down(spec.kind) ? Rational(spec.q - spec.beta) : Rational(spec.q + spec.beta);
}

Rational derive_b(const EquationSpec& spec) {
  validate(spec);
  const Rational c = similarity_power(spec);
  const Rational a = -signed_q(spec) / c;
  return Rational(spec.q - 1) + a * (c - spec.p + 1);
}

SimilarityParams derive_params(const EquationSpec& spec) {
  const Rational c = similarity_power(spec);
  if (c == 0) throw DegenerateEquation("similarity power c = p - alpha vanishes");
  validate(spec);

  SimilarityParams out;
  out.c = c;
  out.a = -signed_q(spec) / c;
  out.b = derive_b(spec);
  out.gammas.reserve(spec.p);
  for (unsigned i = 0; i < spec.p; ++i) out.gammas.push_back(Rational(i) / c);
  out.scale = power(out.a, spec.q) / power(c, spec.p - spec.q);
  return out;
}

std::optional<Rational> tabulated_b(const EquationSpec& spec) {
  validate(spec);
  const Rational p(spec.p), q(spec.q);
  const Rational& al = spec.alpha;
  const Rational& be = spec.beta;
  switch (spec.kind) {
    case EquationKind::eq1:
      return q - 1 + (al - 1) * (q - be) / (p - al);
    case EquationKind::eq2:
      if (p == al) return std::nullopt;
      return q - 1 - (al + 1) * (q - be) / (p - al);
    case EquationKind::eq3:
      return q - 1 + (al - 1) * (q + be) / (p - al);
    case EquationKind::eq4:
      return q - 1 - (al + 1) * (q - be) / (p + al);
  }
  return std::nullopt;
}

bool tabulated_b_differs(const EquationSpec& spec) {
  const auto printed = tabulated_b(spec);
  return !printed || *printed != derive_b(spec);
}

IndependenceReport independence_check(const EquationSpec& spec, const Rational& b) {
  validate(spec);
  IndependenceReport report;
  if (shifts_x_power_down(spec.kind))
    report.alpha_integral_violation = spec.alpha > 0 && is_integer(spec.alpha);

  const Rational c = similarity_power(spec);
  const Rational minus_ac = signed_q(spec);
  for (unsigned i = 0; i < spec.p; ++i) {
    for (unsigned s = 0; s < spec.q; ++s) {
      if (Rational(i) / c - (b - s) / minus_ac == 0) report.violating_pairs.emplace_back(i, s);
    }
  }
  report.ok = !report.alpha_integral_violation && report.violating_pairs.empty();
  return report;
}

}  // namespace selfsim
