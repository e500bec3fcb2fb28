#include "rmc/log_value.hpp"

#include "rmc/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <utility>

namespace rmc {

wide_real lgamma_wide(const wide_real& z) {
  if (z <= 0) throw DomainError("log-gamma argument must be positive");
  return boost::math::lgamma(z);
}

wide_real log_wide(const wide_real& z) {
  if (z <= 0) throw DomainError("log argument must be positive");
  return boost::multiprecision::log(z);
}

const wide_real& ln10_wide() {
  static const wide_real value = boost::multiprecision::log(wide_real(10));
  return value;
}

LogValue LogValue::from_log(wide_real log_magnitude) {
  if (boost::multiprecision::isnan(log_magnitude) || boost::multiprecision::isinf(log_magnitude))
    throw DomainError("log magnitude must be finite");
  LogValue v;
  v.zero_ = false;
  v.log_ = std::move(log_magnitude);
  return v;
}

LogValue LogValue::from_double(double value) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw DomainError("LogValue requires a finite nonnegative value");
  if (value == 0.0) return zero();
  return from_log(log_wide(wide_real(value)));
}

const wide_real& LogValue::log() const {
  if (zero_) throw DomainError("log of zero");
  return log_;
}

double LogValue::log10() const { return (log() / ln10_wide()).convert_to<double>(); }

double LogValue::to_double() const {
  if (zero_) return 0.0;
  return std::exp(log_.convert_to<double>());
}

LogValue& LogValue::operator*=(const LogValue& rhs) {
  if (zero_ || rhs.zero_) {
    *this = zero();
  } else {
    log_ += rhs.log_;
  }
  return *this;
}

LogValue& LogValue::operator/=(const LogValue& rhs) {
  if (rhs.zero_) throw DomainError("division by zero LogValue");
  if (!zero_) log_ -= rhs.log_;
  return *this;
}

LogValue& LogValue::operator+=(const LogValue& rhs) {
  if (rhs.zero_) return *this;
  if (zero_) return *this = rhs;
  const wide_real& hi = log_ > rhs.log_ ? log_ : rhs.log_;
  const wide_real& lo = log_ > rhs.log_ ? rhs.log_ : log_;
  log_ = hi + boost::multiprecision::log1p(boost::multiprecision::exp(lo - hi));
  return *this;
}

wide_real log_ratio(const LogValue& a, const LogValue& b) { return a.log() - b.log(); }

}  // namespace rmc
