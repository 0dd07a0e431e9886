#include "selfsim/kernels.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace selfsim {

Rational falling_factorial(const Rational& a, unsigned n) {
  Rational r(1);
  for (unsigned k = 0; k < n; ++k) {
    r *= a - k;
    if (r == 0) break;
  }
  return r;
}

Rational pochhammer(const Rational& a, unsigned n) {
  Rational r(1);
  for (unsigned k = 0; k < n; ++k) {
    r *= a + k;
    if (r == 0) break;
  }
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n)
    throw std::domain_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                            "): k > n");
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (unsigned m = 1; m <= k; ++m) {
    r *= n - k + m;
    r /= m;  // exact: r is C(n - k + m, m) after this step
  }
  return r;
}

ACoeffTable::ACoeffTable(Rational a, unsigned max_j) : a_(std::move(a)) { grow(max_j); }

void ACoeffTable::grow(unsigned max_j) {
  if (max_j <= max_j_) return;
  rows_.reserve(max_j);
  for (unsigned j = max_j_ + 1; j <= max_j; ++j) {
    std::vector<Rational> row(j);
    if (j == 1) {
      row[0] = a_;
    } else {
      const auto& prev = rows_[j - 2];  // A_*^{j-1}, entries 0..j-2
      for (unsigned i = 0; i < j; ++i) {
        const Rational same = i < j - 1 ? prev[i] : Rational(0);
        const Rational lower = (i >= 1 && i - 1 < j - 1) ? prev[i - 1] : Rational(0);
        row[i] = a_ * (Rational(i + 1) * same + lower) - Rational(j - 1) * same;
      }
    }
    rows_.push_back(std::move(row));
  }
  max_j_ = max_j;
}

const Rational& ACoeffTable::operator()(unsigned i, unsigned j) const {
  if (j > max_j_)
    throw std::out_of_range("ACoeffTable: j = " + std::to_string(j) + " exceeds max_j = " +
                            std::to_string(max_j_));
  if (j == 0 || i >= j) return zero_;
  return rows_[j - 1][i];
}

Rational a_coeff(unsigned i, unsigned j, const Rational& a) {
  if (i >= j) return Rational(0);
  thread_local std::map<Rational, ACoeffTable> cache;
  auto it = cache.find(a);
  if (it == cache.end()) {
    if (cache.size() >= 256) cache.clear();
    it = cache.emplace(a, ACoeffTable(a, j)).first;
  } else {
    it->second.grow(j);
  }
  return it->second(i, j);
}

namespace {

// Sums over k_depth in [chain_len - depth + 1, prev - 1], multiplying the
// factor C(k_{s-1} - 1, k_s) (a)_{k_{s-1} - k_s} for each link.
Rational chain_sum(unsigned prev, unsigned depth, unsigned chain_len, const Rational& a) {
  if (depth > chain_len) return falling_factorial(a, prev);
  Rational total(0);
  const unsigned lo = chain_len - depth + 1;
  for (unsigned k = lo; k + 1 <= prev; ++k) {
    const Rational link = Rational(binomial(prev - 1, k)) * falling_factorial(a, prev - k);
    if (link == 0) continue;
    total += link * chain_sum(k, depth + 1, chain_len, a);
  }
  return total;
}

}  // namespace

Rational a_coeff_oracle(unsigned i, unsigned j, const Rational& a) {
  if (i >= j) return Rational(0);
  // Chain of length i below k_0 = j; the innermost factor is (a)_{k_i}.
  return chain_sum(j, 1, i, a);
}

}  // namespace selfsim
