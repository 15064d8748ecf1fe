#pragma once

#include "cusp/cone.hpp"
#include "cusp/ideal.hpp"
#include "cusp/polytope.hpp"

namespace cusp {

struct CuspType {
  FractionalIdeal M;
  Int V_index = 1;  // [O_{K,+}^x : V]
};

struct DefectPolyhedra {
  std::vector<Polytope> in_dual_coords;  // over a basis of the dual lattice
  std::vector<Polytope> in_basis_coords; // over the integral basis
  std::vector<bool> redundant;           // contained in another member
  int kept = 0;
};

struct DefectReport {
  std::string field_label;
  std::string cusp_key;
  Int V_index = 1;
  int reducer_count = 0;
  std::vector<Vec> reducer_list;
  int polyhedra_count = 0;
  int nonredundant_count = 0;
  int union_passes = 0;
  Rat asymptotic_c;       // for the given V
  Rat asymptotic_c_tp;    // for the full totally positive unit group
  std::vector<Int> defect_seq;  // delta(0..q) when requested
  std::optional<Vec> gf_numerator;  // coefficients, constant first
};

// delta_{M,V}(i) for i = 0..q_max (delta(0) = 0 by convention).
std::vector<Int> defect_sequence(const FieldPtr& K, const UnitGroupData& U,
                                 const CuspType& cusp, int q_max);

// The polytopes T_{M,V,r}(1) over both coordinate systems, redundancy flagged.
DefectPolyhedra defect_polyhedra(const NumberField& K, const TraceMinCone& cone,
                                 const ReducerSet& R);

struct AsymptoticConstant {
  Rat c;        // V_index * vol(union) in dual-basis coordinates
  Rat c_tp;     // same with V = full totally positive group
  int passes = 0;
  int polyhedra = 0;
  int nonredundant = 0;
};

AsymptoticConstant asymptotic_constant(const NumberField& K, const TraceMinCone& cone,
                                       const ReducerSet& R, const Int& V_index);

// Lemma "defect of a subgroup": index*(delta_full - 1) + 1.
Int subgroup_rescale(const Int& delta_full, const Int& index);

// Exact fit of sum seq[k] x^k = P(x) / ((1-x)^2 (1-x^2) (1-x^3)), deg P <= 6.
std::optional<Vec> gf_fit(const std::vector<Int>& seq);

}  // namespace cusp
