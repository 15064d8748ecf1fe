#pragma once

#include "cusp/rational.hpp"

#include <optional>

namespace cusp {

// Closed interval with rational endpoints.  All arithmetic is exact, so the
// only widening ever needed is the one inherited from the operands.
struct QInterval {
  Rat lo, hi;

  QInterval() : lo(0), hi(0) {}
  QInterval(Rat v) : lo(v), hi(v) {}
  QInterval(Rat a, Rat b) : lo(std::move(a)), hi(std::move(b)) {
    if (lo > hi) throw ToolkitError("inverted interval");
  }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  bool positive() const { return sgn(lo) > 0; }
  bool negative() const { return sgn(hi) < 0; }

  QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  QInterval operator-() const { return {-hi, -lo}; }

  QInterval operator*(const QInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    Rat mn = a, mx = a;
    for (const Rat* v : {&b, &c, &d}) {
      if (*v < mn) mn = *v;
      if (*v > mx) mx = *v;
    }
    return {mn, mx};
  }

  QInterval operator/(const QInterval& o) const {
    if (o.contains_zero()) throw ToolkitError("interval division by zero");
    QInterval inv{Rat(1) / o.hi, Rat(1) / o.lo};
    return *this * inv;
  }

  QInterval operator*(const Rat& r) const {
    if (sgn(r) >= 0) return {lo * r, hi * r};
    return {hi * r, lo * r};
  }
  QInterval operator+(const Rat& r) const { return {lo + r, hi + r}; }
};

// Power-of-two bracket of log(q) for q > 0: returns [a, b] containing log q
// with width <= (ln 2)/2^pow2.  Compares q^(2^pow2) against powers of 2.
QInterval log_enclosure(const Rat& q, int pow2 = 6);

using IMat = std::vector<std::vector<QInterval>>;

// Rigorous enclosure of the inverse of an interval matrix (Gauss-Jordan with
// interval pivots).  nullopt when a pivot interval contains zero.
std::optional<IMat> interval_inverse(IMat A);

// Enclosure of pi to ~38 digits; used by the Tsuyumine-Grundman check.
QInterval pi_enclosure();

}  // namespace cusp
