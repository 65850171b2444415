#pragma once

#include <gmpxx.h>

namespace okp {

/// Exact element rat + coef*sqrt(delta) of Q(sqrt(delta)).
struct SurdValue {
  long delta = 0;
  mpq_class rat, coef;

  SurdValue() = default;
  SurdValue(long delta_, mpq_class rat_, mpq_class coef_)
      : delta(delta_), rat(std::move(rat_)), coef(std::move(coef_)) {}

  bool operator==(const SurdValue& o) const {
    return rat == o.rat && coef == o.coef;
  }
};

inline SurdValue operator+(const SurdValue& x, const SurdValue& y) {
  return {x.delta, x.rat + y.rat, x.coef + y.coef};
}
inline SurdValue operator-(const SurdValue& x, const SurdValue& y) {
  return {x.delta, x.rat - y.rat, x.coef - y.coef};
}
inline SurdValue operator*(const SurdValue& x, const SurdValue& y) {
  return {x.delta, x.rat * y.rat + mpq_class(x.delta) * x.coef * y.coef,
          x.rat * y.coef + x.coef * y.rat};
}
inline SurdValue operator*(const mpq_class& k, const SurdValue& x) {
  return {x.delta, k * x.rat, k * x.coef};
}

/// Exact sign; delta is never a rational square, so mixed-sign comparisons
/// reduce to comparing rat^2 with delta*coef^2.
inline int sign(const SurdValue& x) {
  int sr = sgn(x.rat), sc = sgn(x.coef);
  if (sr >= 0 && sc >= 0) return (sr == 0 && sc == 0) ? 0 : 1;
  if (sr <= 0 && sc <= 0) return -1;
  int c = cmp(x.rat * x.rat, mpq_class(x.delta) * x.coef * x.coef);
  return sr > 0 ? c : -c;
}

}  // namespace okp
