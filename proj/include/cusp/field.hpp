#pragma once

#include "cusp/interval.hpp"
#include "cusp/linalg.hpp"
#include "cusp/poly.hpp"
#include "cusp/rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace cusp {

// Field elements are coordinate vectors (Vec) over the integral basis.

using SignVector = std::vector<int>;  // +1 / -1 per real place

struct IdealData {
  IntMat basis;  // HNF rows over the integral basis
  Int den = 1;
};

class NumberField {
 public:
  std::string label;
  int d = 0;
  Poly min_poly;                 // monic, integer coefficients
  Mat integral_basis;            // rows = basis elements as polynomials in theta
  Int disc;
  std::vector<Vec> fundamental_units;
  int class_number = 1;
  int narrow_class_number = 1;
  std::vector<IdealData> genus_reps;
  std::optional<Rat> zeta_minus1;
  std::optional<QInterval> zeta2, regulator;
  std::string raw_tables;        // dim/level/elliptic blocks, consumed by certify

  // Parse and validate a field-spec document (JSON text).
  static std::shared_ptr<const NumberField> parse(const std::string& text);
  static std::shared_ptr<const NumberField> load(const std::string& path);

  // -- element arithmetic (coordinates over the integral basis) --
  Vec zero() const { return Vec(d, Rat(0)); }
  Vec one() const { return one_coords_; }
  Vec from_int(long n) const { return vec_scale(one_coords_, Rat(n)); }
  Vec from_rat(const Rat& q) const { return vec_scale(one_coords_, q); }
  Vec theta_power(int k) const;  // coords of theta^k
  Vec mul(const Vec& a, const Vec& b) const;
  Vec power(const Vec& a, long e) const;
  Vec invert(const Vec& a) const;
  Rat trace(const Vec& a) const { return dot(trace_basis_, a); }
  Rat norm(const Vec& a) const;
  // coordinates -> polynomial in theta
  Poly to_poly(const Vec& a) const;
  std::optional<Rat> as_rational(const Vec& a) const;

  // -- embeddings --
  // Enclosure of the i-th real embedding, refined until width <= w.
  QInterval embed(const Vec& a, int place, const Rat& w) const;
  // Exact sign at each real place (throws on the zero element).
  SignVector signs_at_real_places(const Vec& a) const;
  bool totally_positive(const Vec& a) const;
  // sign of a - q at the given place (a not rational equal to q)
  int cmp_embed(const Vec& a, const Rat& q, int place) const;
  QInterval log_embed_bound(const Vec& a, int place, int pow2 = 6) const;

  // regular representation: rows j = coords of (w_j * a)
  Mat regular_rep(const Vec& a) const;

  const Mat& gram() const { return gram_; }
  const Vec& one_coords() const { return one_coords_; }
  Int power_basis_index() const { return power_index_; }  // [O : Z[theta]]

 private:
  void finish_init();
  QInterval root_box(int i, const Rat& w) const;

  std::vector<std::vector<Vec>> mul_table_;  // w_i * w_j coords
  Vec trace_basis_;
  Mat gram_;
  Vec one_coords_;
  Mat basis_inv_;      // poly coords -> basis coords
  Int power_index_;
  mutable std::vector<QInterval> root_boxes_;
  mutable std::mutex root_mutex_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// -- unit algebra --

struct UnitGroupData {
  std::vector<Vec> fundamental_units;
  std::vector<std::vector<int>> sign_matrix;  // GF(2) rows for -1, u_1, ..., u_{d-1}
  std::vector<Vec> tp_generators;             // basis of the totally positive units
  Int tp_index_sq;                            // [O_{K,+}^x : (O_K^x)^2]
};

UnitGroupData totally_positive_units(const NumberField& K);

// Subgroup of the totally positive units, given by a basis.
struct UnitSubgroup {
  std::vector<Vec> gens;  // rank d-1 basis
  Int index_in_tp = 1;    // [O_{K,+}^x : V]

  static UnitSubgroup full(const UnitGroupData& U);
  static UnitSubgroup squares_of_units(const NumberField& K, const UnitGroupData& U);
  UnitSubgroup power_subgroup(const NumberField& K, long k) const;  // V^k-style index scaling
};

struct SignedUnits {
  // key: subset of places encoded as bitmask (proper nonempty); value: unit
  std::map<unsigned, Vec> by_subset;
  std::vector<Vec> big_at_place;  // v_i > d at place i
};

// Units of V totally positive with prescribed "> 1 exactly on R" patterns.
SignedUnits find_signed_units(const NumberField& K, const UnitSubgroup& V);

// Solve sum e_i rows_i = target over GF(2); nullopt when unsolvable.
std::optional<std::vector<int>> gf2_solve(std::vector<std::vector<int>> rows,
                                          std::vector<int> target);

}  // namespace cusp
