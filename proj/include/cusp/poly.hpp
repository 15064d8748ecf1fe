#pragma once

#include "cusp/interval.hpp"
#include "cusp/rational.hpp"

namespace cusp {

// Polynomial with rational coefficients, constant term first.
struct Poly {
  Vec c;

  int degree() const;
  void trim();
  Rat eval(const Rat& x) const;
  QInterval eval(const QInterval& x) const;
  Poly derivative() const;
  bool is_zero() const { return degree() < 0; }
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
// Remainder of a mod b (b nonzero).
Poly poly_rem(Poly a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);

// Isolating intervals for the real roots, each with sign change at the ends.
// Requires squarefree input.
std::vector<QInterval> isolate_real_roots(const Poly& f);

// One bisection step preserving the sign-change bracket.
QInterval refine_root(const Poly& f, const QInterval& box);

}  // namespace cusp
