#include "selfsim/series.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

#include "selfsim/errors.hpp"
#include "selfsim/kernels.hpp"

namespace selfsim {

ResonanceError::ResonanceError(std::vector<Failure> failures)
    : std::domain_error([&] {
        std::ostringstream os;
        os << "resonance in solution family:";
        for (const auto& f : failures) os << " (i=" << f.index << ", n=" << f.step << ")";
        return os.str();
      }()),
      failures_(std::move(failures)) {}

namespace {

void check_index(const EquationSpec& spec, unsigned i) {
  if (i >= spec.p)
    throw std::out_of_range("solution index " + std::to_string(i) + " outside 0.." +
                            std::to_string(spec.p - 1));
}

void check_point(const Real& x, const Real& y) {
  if (!(x > 0) || !(y > 0)) throw std::domain_error("evaluation requires x > 0 and y > 0");
}

}  // namespace

std::vector<Rational> coeff_sequence(const EquationSpec& spec, const SimilarityParams& params,
                                     unsigned i, std::size_t order) {
  check_index(spec, i);
  const Rational& a = params.a;
  const Rational& b = params.b;
  const Rational& c = params.c;

  std::vector<Rational> coeffs;
  coeffs.reserve(order + 1);
  coeffs.emplace_back(1);
  for (std::size_t n = 1; n <= order; ++n) {
    const Rational pivot = falling_factorial(Rational(i) + Rational(n) * c, spec.p);
    if (pivot == 0) throw ZeroPivot(i, n);
    const Rational rhs =
        falling_factorial(b + a * (Rational(i) + Rational(n - 1) * c), spec.q);
    coeffs.push_back(coeffs.back() * rhs / pivot);
  }
  return coeffs;
}

Rational closed_form_coeff(const EquationSpec& spec, const SimilarityParams& params, unsigned i,
                           std::size_t n) {
  check_index(spec, i);
  const Rational& a = params.a;
  const Rational& b = params.b;
  const Rational& c = params.c;
  const auto nn = static_cast<unsigned>(n);

  Rational value(1);
  for (std::size_t k = 0; k < n; ++k) value *= params.scale;
  for (unsigned k = 0; k < spec.q; ++k) value *= pochhammer(Rational(i) / c + (b - k) / (a * c), nn);
  for (unsigned m = 0; m < spec.p; ++m) {
    const Rational den = pochhammer((Rational(i) - m) / c + 1, nn);
    if (den == 0) throw ZeroPivot(i, n);
    value /= den;
  }
  return value;
}

SeriesSolution make_solution(const EquationSpec& spec, unsigned i, std::size_t order) {
  SeriesSolution sol;
  sol.spec = spec;
  sol.params = derive_params(spec);
  sol.index = i;
  sol.coeffs = coeff_sequence(spec, sol.params, i, order);
  return sol;
}

std::vector<SeriesSolution> solution_family(const EquationSpec& spec, std::size_t order) {
  const SimilarityParams params = derive_params(spec);
  std::vector<SeriesSolution> family;
  std::vector<ResonanceError::Failure> failures;
  for (unsigned i = 0; i < spec.p; ++i) {
    try {
      SeriesSolution sol;
      sol.spec = spec;
      sol.params = params;
      sol.index = i;
      sol.coeffs = coeff_sequence(spec, params, i, order);
      family.push_back(std::move(sol));
    } catch (const ZeroPivot& e) {
      failures.push_back({e.index(), e.step()});
    }
  }
  if (!failures.empty()) throw ResonanceError(std::move(failures));
  return family;
}

std::vector<MonomialTerm> monomial_expansion(const SeriesSolution& sol) {
  const Rational& a = sol.params.a;
  const Rational& b = sol.params.b;
  const Rational& c = sol.params.c;
  std::vector<MonomialTerm> terms;
  terms.reserve(sol.coeffs.size());
  for (std::size_t n = 0; n < sol.coeffs.size(); ++n) {
    const Rational ex = Rational(sol.index) + Rational(n) * c;
    terms.push_back({sol.coeffs[n], ex, b + a * ex});
  }
  return terms;
}

HypergeomSpec solution_pfq(const SeriesSolution& sol) {
  return reduce_params(build_pfq(sol.spec, sol.params, sol.index));
}

Real eval_solution(const SeriesSolution& sol, const Real& x, const Real& y, const Real& tol) {
  check_point(x, y);
  const Real t = x * pow(y, to_real(sol.params.a));
  const Real z = pow(t, to_real(sol.params.c));
  const EvalResult f = eval_pfq(solution_pfq(sol), z, tol);
  return pow(y, to_real(sol.params.b)) * pow(t, sol.index) * f.value;
}

Real eval_from_coefficients(const SeriesSolution& sol, const Real& x, const Real& y,
                            const Real& tol) {
  check_point(x, y);
  if (sol.coeffs.empty()) throw std::invalid_argument("solution has no coefficients");
  const Real t = x * pow(y, to_real(sol.params.a));
  const Real z = pow(t, to_real(sol.params.c));

  // Horner over the stored coefficients; c_n already carries K^n.
  Real head(0);
  for (auto it = sol.coeffs.rbegin(); it != sol.coeffs.rend(); ++it) head = head * z + to_real(*it);

  const std::size_t order = sol.order();
  const Real last_term = to_real(sol.coeffs.back()) * pow(z, static_cast<unsigned>(order));
  // Cancelled parameter pairs contribute a unit factor to the term ratio,
  // so the reduced form continues the unreduced series exactly.
  const EvalResult tail = continue_pfq(solution_pfq(sol), z, order, last_term, head, tol);
  return pow(y, to_real(sol.params.b)) * pow(t, sol.index) * (head + tail.value);
}

}  // namespace selfsim
