#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/rational.hpp"

namespace selfsim {

/// An EquationSpec violates the constraints of its kind.
class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The similarity power c vanishes (alpha == p for the x^alpha D_x^p kinds).
class DegenerateEquation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A denominator parameter (i - m)/c + 1 is a non-positive integer.
class PoleInDenominatorParam : public std::domain_error {
 public:
  PoleInDenominatorParam(unsigned index, unsigned slot, const std::string& what)
      : std::domain_error(what), index_(index), slot_(slot) {}

  unsigned index() const noexcept { return index_; }
  unsigned slot() const noexcept { return slot_; }

 private:
  unsigned index_;
  unsigned slot_;
};

/// Series summation did not reach the requested tolerance.
class MaxTermsExceeded : public std::runtime_error {
 public:
  MaxTermsExceeded(Real partial, Real tail_bound, std::size_t terms)
      : std::runtime_error("series did not converge within " +
                           std::to_string(terms) + " terms"),
        partial_(std::move(partial)),
        tail_bound_(std::move(tail_bound)),
        terms_(terms) {}

  const Real& partial_value() const noexcept { return partial_; }
  const Real& tail_bound() const noexcept { return tail_bound_; }
  std::size_t terms_used() const noexcept { return terms_; }

 private:
  Real partial_;
  Real tail_bound_;
  std::size_t terms_;
};

/// The recurrence pivot falling_factorial(i + n c, p) vanishes at step n >= 1.
class ZeroPivot : public std::domain_error {
 public:
  ZeroPivot(unsigned index, std::size_t step)
      : std::domain_error("zero pivot (resonance) for solution " +
                          std::to_string(index) + " at n = " +
                          std::to_string(step)),
        index_(index),
        step_(step) {}

  unsigned index() const noexcept { return index_; }
  std::size_t step() const noexcept { return step_; }

 private:
  unsigned index_;
  std::size_t step_;
};

/// One or more members of a solution family hit a resonance.
class ResonanceError : public std::domain_error {
 public:
  struct Failure {
    unsigned index;
    std::size_t step;
  };

  explicit ResonanceError(std::vector<Failure> failures);

  const std::vector<Failure>& failures() const noexcept { return failures_; }

 private:
  std::vector<Failure> failures_;
};

}  // namespace selfsim
