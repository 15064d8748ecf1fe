#pragma once

#include "cusp/ideal.hpp"
#include "cusp/polytope.hpp"

namespace cusp {

// Cyclic quotient singularity of type (a_1, ..., a_n; m).
struct QuotSingType {
  long m = 1;
  std::vector<long> weights;  // canonicalized: sorted ascending

  static QuotSingType make(std::vector<long> weights, long m);
  std::string str() const;
};

// The nonempty simplices T_k = {x >= 1, sum (k a_j mod m)/m x_j < 1}.
std::vector<std::pair<Polytope, long>> defect_simplices(const QuotSingType& t);

// delta(q) = #(L ∩ qT) for q = 1..q_max, L = {x : m | sum a_i x_i}.
std::vector<Int> quot_defect_sequence(const QuotSingType& t, int q_max);

// vol(union T_k) / m.
Rat quot_asymptotic_constant(const QuotSingType& t);

// Replace the group generator g by g^r: weights r*a_i mod m.
QuotSingType generator_change_equivalence(const QuotSingType& t, long r);

// Elliptic-point constant e_I for the two special cubic fields; 0 elsewhere.
Rat elliptic_constant_eI(const FieldPtr& K, const FractionalIdeal& I);

// Data describing the elliptic points a field contributes (empty if none).
struct EllipticData {
  bool present = false;
  long residue_modulus = 0;  // 7 or 3
  QuotSingType base_type;    // the nonzero-defect singularity type
  long base_count = 0;       // contributing points at level 1
  long c_K = 0;              // 84 or 18
};

EllipticData elliptic_data(const NumberField& K);

// c_p in {2,1,0} from N(p) mod residue_modulus.
long elliptic_cp(const EllipticData& e, const Rat& prime_norm);

// Number of contributing elliptic points at level I (0 at level 1 fields
// without elliptic data), and their q-th defects.
long elliptic_count_at_level(const FieldPtr& K, const FractionalIdeal& I);

}  // namespace cusp
