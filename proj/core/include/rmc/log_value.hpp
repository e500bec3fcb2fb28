#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <compare>
#include <string>

namespace rmc {

/// 113-bit binary float used wherever a result must keep more than 16
/// significant digits after summing thousands of log-gamma terms.
using wide_real = boost::multiprecision::cpp_bin_float_quad;

wide_real lgamma_wide(const wide_real& z);
wide_real log_wide(const wide_real& z);
const wide_real& ln10_wide();

/// A nonnegative real stored as its natural logarithm, so that values such
/// as 1e-2029 are representable. Exact zero is tracked separately.
class LogValue {
 public:
  LogValue() = default;  // zero

  static LogValue zero() { return LogValue(); }
  static LogValue one() { return from_log(wide_real(0)); }
  static LogValue from_log(wide_real log_magnitude);
  static LogValue from_log(double log_magnitude) { return from_log(wide_real(log_magnitude)); }
  /// Throws DomainError for negative or non-finite input.
  static LogValue from_double(double value);

  bool is_zero() const noexcept { return zero_; }
  /// Natural log. Throws DomainError on zero.
  const wide_real& log() const;
  double log_double() const { return log().convert_to<double>(); }
  double log10() const;
  /// exp(log); underflows to 0 and overflows to +inf like any double.
  double to_double() const;

  LogValue& operator*=(const LogValue& rhs);
  LogValue& operator/=(const LogValue& rhs);
  LogValue& operator+=(const LogValue& rhs);

  friend LogValue operator*(LogValue lhs, const LogValue& rhs) { return lhs *= rhs; }
  friend LogValue operator/(LogValue lhs, const LogValue& rhs) { return lhs /= rhs; }
  friend LogValue operator+(LogValue lhs, const LogValue& rhs) { return lhs += rhs; }

  friend bool operator==(const LogValue& a, const LogValue& b) {
    return a.zero_ == b.zero_ && (a.zero_ || a.log_ == b.log_);
  }
  friend bool operator<(const LogValue& a, const LogValue& b) {
    if (b.zero_) return false;
    if (a.zero_) return true;
    return a.log_ < b.log_;
  }

 private:
  bool zero_ = true;
  wide_real log_ = 0;
};

/// log(a) - log(b) for two nonzero values.
wide_real log_ratio(const LogValue& a, const LogValue& b);

}  // namespace rmc
