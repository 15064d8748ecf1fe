#pragma once

#include "cusp/field.hpp"
#include "cusp/ideal.hpp"
#include "cusp/polytope.hpp"

namespace cusp {

struct TraceMinCone {
  UnitSubgroup V;
  Rat balanced_bound;               // rational upper bound for b_{K,V}
  std::vector<Vec> reducing_units;  // S' = S_pm ∪ S_d ∪ box units
  std::vector<HalfSpace> halfspaces;  // facets, integral-basis coordinates
  std::vector<Vec> rays;              // primitive integral, totally positive
};

// Rational upper bound b >= b_{K,V} with b <= 2 b_{K,V}.
Rat balanced_bound(const NumberField& K, const SignedUnits& S);

// S' : the finite unit set whose half-spaces cut out the V-trace-minimal cone.
std::vector<Vec> reducing_unit_set(const NumberField& K, const UnitSubgroup& V,
                                   const SignedUnits& S, const Rat& bbar);

TraceMinCone trace_minimal_cone(const NumberField& K, const UnitSubgroup& V);

bool is_trace_minimal(const NumberField& K, const TraceMinCone& cone, const Vec& x);

struct ReducerSet {
  FractionalIdeal M;
  Rat min_M;
  std::vector<Vec> reducers;        // sorted by coordinates
  std::vector<Vec> with_min() const;  // reducers ∪ {min M}
};

ReducerSet reducers(const NumberField& K, const TraceMinCone& cone, const FractionalIdeal& M);

// Totally positive x in the lattice M with Tr(x r) < c (strict), r >> 0.
// Shared outer-approximation + exact-filter enumeration.
std::vector<Vec> enumerate_tp_with_trace_bound(const NumberField& K, const FractionalIdeal& M,
                                               const Vec& r, const Rat& c);

}  // namespace cusp
