#pragma once

namespace levyheat {

/// Neumaier's variant of Kahan summation; robust when an addend exceeds the
/// running sum in magnitude.
template <typename Scalar>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(Scalar value) noexcept {
    const Scalar t = sum_ + value;
    if ((sum_ < 0 ? -sum_ : sum_) >= (value < 0 ? -value : value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  Scalar value() const noexcept { return sum_ + compensation_; }

 private:
  Scalar sum_{0};
  Scalar compensation_{0};
};

}  // namespace levyheat
