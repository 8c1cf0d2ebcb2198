#pragma once

#include <cmath>
#include <compare>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace cmineq {

/// A real number extended with the two infinities.
///
/// Endpoint derivative limits live in the extended reals: for a completely
/// monotone function the one-sided limits of every derivative exist but may
/// diverge. Finite values are always ordinary doubles (never NaN); the
/// infinities are explicit states rather than IEEE payloads so that
/// comparisons and serialization stay unambiguous.
class ExtendedReal {
 public:
  enum class Kind { neg_infinity = -1, finite = 0, pos_infinity = 1 };

  ExtendedReal() = default;

  static ExtendedReal finite(double v) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("ExtendedReal::finite: value is not finite");
    }
    return ExtendedReal(Kind::finite, v);
  }
  static ExtendedReal pos_infinity() { return ExtendedReal(Kind::pos_infinity, 0.0); }
  static ExtendedReal neg_infinity() { return ExtendedReal(Kind::neg_infinity, 0.0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_infinity() const { return kind_ == Kind::pos_infinity; }
  bool is_neg_infinity() const { return kind_ == Kind::neg_infinity; }

  double value() const {
    if (!is_finite()) {
      throw std::logic_error("ExtendedReal::value: not finite");
    }
    return value_;
  }

  /// Collapses to an IEEE double, mapping the infinity states to +/-inf.
  double as_double() const {
    switch (kind_) {
      case Kind::finite: return value_;
      case Kind::pos_infinity: return std::numeric_limits<double>::infinity();
      case Kind::neg_infinity: return -std::numeric_limits<double>::infinity();
    }
    return value_;
  }

  ExtendedReal operator-() const {
    switch (kind_) {
      case Kind::finite: return finite(-value_);
      case Kind::pos_infinity: return neg_infinity();
      case Kind::neg_infinity: return pos_infinity();
    }
    return *this;
  }

  /// Multiplies by a nonzero finite scalar; a negative scalar flips the
  /// infinities. 0 * inf is rejected as indeterminate.
  ExtendedReal scaled(double s) const {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("ExtendedReal::scaled: scalar must be finite");
    }
    if (is_finite()) return finite(value_ * s);
    if (s == 0.0) {
      throw std::invalid_argument("ExtendedReal::scaled: 0 * infinity is indeterminate");
    }
    return (s > 0.0) == is_pos_infinity() ? pos_infinity() : neg_infinity();
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::finite || a.value_ == b.value_;
  }

  // Total order: -inf < every finite < +inf. Finite values are never NaN,
  // so the value comparison below is itself total.
  friend std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.kind_ != b.kind_) {
      return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    }
    if (a.kind_ != Kind::finite) return std::strong_ordering::equal;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "inf", "-inf", or a decimal rendering that round-trips.
  std::string str() const {
    if (is_pos_infinity()) return "inf";
    if (is_neg_infinity()) return "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value_);
    return buf;
  }

 private:
  ExtendedReal(Kind k, double v) : kind_(k), value_(v) {}

  Kind kind_ = Kind::finite;
  double value_ = 0.0;
};

}  // namespace cmineq
