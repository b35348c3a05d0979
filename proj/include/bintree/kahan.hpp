#pragma once

namespace bintree {

/// Compensated (Kahan) running sum.
template <typename Value = double>
class KahanSum {
 public:
  constexpr KahanSum& operator+=(Value value) noexcept {
    const Value y = value - compensation_;
    const Value t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
    return *this;
  }

  constexpr Value value() const noexcept { return sum_; }

 private:
  Value sum_{0};
  Value compensation_{0};
};

}  // namespace bintree
