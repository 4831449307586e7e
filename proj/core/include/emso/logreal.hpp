#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace emso {

// Signed scalar stored as sign plus natural log of the absolute value.
// Covers the e^{±10^4} magnitudes that expectation-scale quantities reach.
struct LogReal {
  int sign = 0;  // -1, 0, +1
  double logmag = -std::numeric_limits<double>::infinity();  // ln|x|, ignored when sign == 0

  static LogReal zero() { return {}; }
  static LogReal one() { return {+1, 0.0}; }

  static LogReal from_log(double lm, int s = +1) {
    if (s == 0) return zero();
    return {s > 0 ? +1 : -1, lm};
  }

  static LogReal from_linear(double x) {
    if (x == 0.0) return zero();
    if (std::isnan(x)) throw std::invalid_argument("LogReal: NaN");
    return {x > 0 ? +1 : -1, std::log(std::fabs(x))};
  }

  bool is_zero() const { return sign == 0; }

  // May under/overflow to 0 or ±inf; intended for presentation.
  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logmag);
  }

  LogReal operator*(const LogReal& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return {sign * o.sign, logmag + o.logmag};
  }

  LogReal operator/(const LogReal& o) const {
    if (o.sign == 0) throw std::invalid_argument("LogReal: division by zero");
    if (sign == 0) return zero();
    return {sign * o.sign, logmag - o.logmag};
  }

  LogReal operator-() const { return {-sign, logmag}; }

  // log-sum-exp with sign handling; exact cancellation yields zero.
  LogReal operator+(const LogReal& o) const {
    if (sign == 0) return o;
    if (o.sign == 0) return *this;
    if (sign == o.sign) {
      double hi = logmag > o.logmag ? logmag : o.logmag;
      double lo = logmag > o.logmag ? o.logmag : logmag;
      return {sign, hi + std::log1p(std::exp(lo - hi))};
    }
    if (logmag == o.logmag) return zero();
    const LogReal& big = logmag > o.logmag ? *this : o;
    const LogReal& small = logmag > o.logmag ? o : *this;
    return {big.sign, big.logmag + std::log1p(-std::exp(small.logmag - big.logmag))};
  }

  LogReal operator-(const LogReal& o) const { return *this + (-o); }

  // x^e for nonnegative x and real e.
  LogReal pow(double e) const {
    if (sign < 0) throw std::invalid_argument("LogReal: pow of negative value");
    if (sign == 0) {
      if (e <= 0) throw std::invalid_argument("LogReal: 0^e with e <= 0");
      return zero();
    }
    return {+1, logmag * e};
  }
};

inline bool operator==(const LogReal& a, const LogReal& b) {
  if (a.sign != b.sign) return false;
  return a.sign == 0 || a.logmag == b.logmag;
}
inline bool operator<(const LogReal& a, const LogReal& b) {
  if (a.sign != b.sign) return a.sign < b.sign;
  if (a.sign == 0) return false;
  return a.sign > 0 ? a.logmag < b.logmag : a.logmag > b.logmag;
}
inline bool operator>(const LogReal& a, const LogReal& b) { return b < a; }
inline bool operator<=(const LogReal& a, const LogReal& b) { return !(b < a); }
inline bool operator>=(const LogReal& a, const LogReal& b) { return !(a < b); }

}  // namespace emso
