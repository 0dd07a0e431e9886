#include "selfsim/hypergeom.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "selfsim/compensated_sum.hpp"
#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

bool is_nonpositive_integer(const Rational& x) { return x <= 0 && is_integer(x); }

// First step n at which a parameter x makes (x + n) vanish, if any.
std::optional<long> vanishing_step(const Rational& x) {
  if (!is_nonpositive_integer(x)) return std::nullopt;
  return static_cast<long>(-boost::multiprecision::numerator(x));
}

struct PoleCheck {
  std::optional<std::size_t> pole_slot;  // index into den_params
  std::optional<long> first_zero;        // series cut-off step
};

// A denominator zero at step n is harmless only when a numerator zero at a
// strictly earlier step has already terminated the series.
PoleCheck check_poles(const HypergeomSpec& h) {
  PoleCheck out;
  for (const auto& a : h.num_params) {
    if (auto s = vanishing_step(a); s && (!out.first_zero || *s < *out.first_zero))
      out.first_zero = s;
  }
  for (std::size_t m = 0; m < h.den_params.size(); ++m) {
    if (auto s = vanishing_step(h.den_params[m]); s && (!out.first_zero || *s <= *out.first_zero)) {
      out.pole_slot = m;
      break;
    }
  }
  return out;
}

[[noreturn]] void throw_pole(const HypergeomSpec& h, std::size_t slot) {
  throw PoleInDenominatorParam(0, static_cast<unsigned>(slot),
                               "denominator parameter " + to_string(h.den_params[slot]) +
                                   " is a non-positive integer");
}

struct RealParams {
  std::vector<Real> num;
  std::vector<Real> den;
  Real max_abs_den{0};
  Real kz;
};

RealParams to_real_params(const HypergeomSpec& h, const Real& z) {
  RealParams r;
  r.num.reserve(h.num_params.size());
  r.den.reserve(h.den_params.size());
  for (const auto& a : h.num_params) r.num.push_back(to_real(a));
  for (const auto& b : h.den_params) {
    r.den.push_back(to_real(b));
    r.max_abs_den = std::max(r.max_abs_den, Real(abs(r.den.back())));
  }
  r.kz = to_real(h.scale) * z;
  return r;
}

// Upper bound on |T_{m+1} / T_m| valid for every step >= m, provided m
// exceeds every |den| (each factor (m + |a|)/(m - |b|) then decreases in m,
// and at least one unpaired decreasing factor remains).
std::optional<Real> ratio_bound(const RealParams& r, bool factorial, std::size_t m) {
  const Real mm(static_cast<double>(m));
  if (mm <= r.max_abs_den) return std::nullopt;
  Real bound = abs(r.kz);
  for (const auto& a : r.num) bound *= mm + abs(a);
  for (const auto& b : r.den) bound /= mm - abs(b);
  if (factorial) bound /= mm + 1;
  return bound;
}

Real step_ratio(const RealParams& r, bool factorial, std::size_t n) {
  const Real nn(static_cast<double>(n));
  Real ratio = r.kz;
  for (const auto& a : r.num) ratio *= a + nn;
  for (const auto& b : r.den) ratio /= b + nn;
  if (factorial) ratio /= nn + 1;
  return ratio;
}

// Sums terms start+1, start+2, ... given the term at `start`.
EvalResult sum_after(const HypergeomSpec& h, const Real& z, std::size_t start,
                     const Real& start_term, const Real& reference, const Real& tol,
                     std::size_t max_terms, std::size_t already_used) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  convergence_class(h);
  if (auto pc = check_poles(h); pc.pole_slot) throw_pole(h, *pc.pole_slot);

  const RealParams r = to_real_params(h, z);
  const Real floor(std::numeric_limits<double>::min());

  CompensatedSum<Real> sum;
  EvalResult out;
  out.terms_used = already_used;
  out.bound_on_tail = 0;
  Real term = start_term;

  for (std::size_t n = start;; ++n) {
    if (term == 0) {
      out.terminated = true;
      out.bound_on_tail = 0;
      break;
    }
    term *= step_ratio(r, h.factorial, n);
    if (term == 0) {
      out.terminated = true;
      out.bound_on_tail = 0;
      break;
    }
    sum += term;
    ++out.terms_used;

    if (auto bound = ratio_bound(r, h.factorial, n + 1); bound && *bound < 0.5) {
      out.bound_on_tail = abs(term) * *bound / (1 - *bound);
      const Real scale = std::max(Real(abs(reference + sum.value())), Real(floor));
      if (out.bound_on_tail <= tol * scale) break;
    } else {
      out.bound_on_tail = std::numeric_limits<double>::infinity();
    }
    if (out.terms_used >= max_terms) {
      throw MaxTermsExceeded(reference + sum.value(), out.bound_on_tail, out.terms_used);
    }
  }
  out.value = sum.value();
  return out;
}

}  // namespace

HypergeomSpec build_pfq(const EquationSpec& spec, const SimilarityParams& params, unsigned i) {
  if (i >= spec.p)
    throw std::out_of_range("solution index " + std::to_string(i) + " outside 0.." +
                            std::to_string(spec.p - 1));
  const Rational& a = params.a;
  const Rational& b = params.b;
  const Rational& c = params.c;

  HypergeomSpec h;
  h.scale = params.scale;
  for (unsigned k = 0; k < spec.q; ++k) h.num_params.push_back(Rational(i) / c + (b - k) / (a * c));
  std::vector<unsigned> slots;
  for (unsigned m = 0; m < spec.p; ++m) {
    if (m == i) continue;
    h.den_params.push_back((Rational(i) - m) / c + 1);
    slots.push_back(m);
  }

  for (std::size_t k = 0; k < h.den_params.size(); ++k) {
    const Rational& d = h.den_params[k];
    if (!is_nonpositive_integer(d)) continue;
    if (std::find(h.num_params.begin(), h.num_params.end(), d) != h.num_params.end()) continue;
    throw PoleInDenominatorParam(i, slots[k],
                                 "denominator parameter (i - m)/c + 1 = " + to_string(d) +
                                     " is a non-positive integer at i = " + std::to_string(i) +
                                     ", m = " + std::to_string(slots[k]));
  }
  return h;
}

HypergeomSpec reduce_params(const HypergeomSpec& h) {
  HypergeomSpec out;
  out.scale = h.scale;
  out.factorial = h.factorial;
  out.reduced = true;
  std::vector<Rational> den = h.den_params;
  for (const auto& a : h.num_params) {
    if (auto it = std::find(den.begin(), den.end(), a); it != den.end()) {
      den.erase(it);
    } else {
      out.num_params.push_back(a);
    }
  }
  out.den_params = std::move(den);
  if (out.factorial) {
    if (auto it = std::find(out.num_params.begin(), out.num_params.end(), Rational(1));
        it != out.num_params.end()) {
      out.num_params.erase(it);
      out.factorial = false;
    }
  }
  return out;
}

std::size_t cancelled_pairs(const HypergeomSpec& before, const HypergeomSpec& after) {
  return before.num_params.size() - after.num_params.size();
}

ConvergenceClass convergence_class(const HypergeomSpec& h) {
  if (h.num_params.size() >= h.denominator_slots())
    throw std::logic_error("hypergeometric spec has " + std::to_string(h.num_params.size()) +
                           " numerator parameters but only " +
                           std::to_string(h.denominator_slots()) + " denominator slots");
  return ConvergenceClass::entire;
}

EvalResult eval_pfq(const HypergeomSpec& h, const Real& z, const Real& tol,
                    std::size_t max_terms) {
  const Real one(1);
  EvalResult r = sum_after(h, z, 0, one, one, tol, max_terms, 1);
  r.value += one;
  return r;
}

EvalResult continue_pfq(const HypergeomSpec& h, const Real& z, std::size_t start,
                        const Real& start_term, const Real& reference, const Real& tol,
                        std::size_t max_terms) {
  return sum_after(h, z, start, start_term, reference, tol, max_terms, 0);
}

Rational eval_pfq_exact(const HypergeomSpec& h, const Rational& z, std::size_t terms) {
  if (terms == 0) return Rational(0);
  const Rational kz = h.scale * z;
  Rational term(1);
  Rational sum(1);
  for (std::size_t n = 0; n + 1 < terms; ++n) {
    for (const auto& a : h.num_params) term *= a + n;
    if (term == 0) break;
    Rational den(1);
    for (const auto& b : h.den_params) den *= b + n;
    if (h.factorial) den *= n + 1;
    if (den == 0) {
      const auto it = std::find_if(h.den_params.begin(), h.den_params.end(),
                                   [n](const Rational& b) { return b + n == 0; });
      throw_pole(h, static_cast<std::size_t>(it - h.den_params.begin()));
    }
    term *= kz / den;
    sum += term;
  }
  return sum;
}

}  // namespace selfsim
