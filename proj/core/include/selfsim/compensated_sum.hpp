#pragma once

namespace selfsim {

/// Neumaier's variant of Kahan summation; also handles addends larger in
/// magnitude than the running sum, which the alternating series here produce.
template <typename Value>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(const Value& addend) {
    const Value t = sum_ + addend;
    if (abs(sum_) >= abs(addend))
      compensation_ += (sum_ - t) + addend;
    else
      compensation_ += (addend - t) + sum_;
    sum_ = t;
    return *this;
  }

  Value value() const { return sum_ + compensation_; }

 private:
  Value sum_{0};
  Value compensation_{0};
};

}  // namespace selfsim
