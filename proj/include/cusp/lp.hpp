#pragma once

#include "cusp/rational.hpp"

namespace cusp {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status;
  Rat value;   // optimal c.x (valid when Optimal)
  Vec point;   // a minimizer (valid when Optimal)
};

// Exact simplex: minimize c.x subject to A x <= b, x free.
LPResult lp_minimize(const Mat& A, const Vec& b, const Vec& c);

inline LPResult lp_maximize(const Mat& A, const Vec& b, const Vec& c) {
  Vec nc(c.size());
  for (size_t i = 0; i < c.size(); ++i) nc[i] = -c[i];
  LPResult r = lp_minimize(A, b, nc);
  r.value = -r.value;
  return r;
}

}  // namespace cusp
