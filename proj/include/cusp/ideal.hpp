#pragma once

#include "cusp/field.hpp"

#include <optional>

namespace cusp {

// Fractional ideal: (1/den) times an integer lattice in row HNF over the
// integral basis.  The representation is canonical, so equality is
// structural.
class FractionalIdeal {
 public:
  FractionalIdeal() = default;

  static FractionalIdeal whole_ring(const FieldPtr& K);
  static FractionalIdeal from_rows(const FieldPtr& K, const Mat& rational_rows);
  static FractionalIdeal from_data(const FieldPtr& K, const IdealData& data);
  static FractionalIdeal principal(const FieldPtr& K, const Vec& g);
  static FractionalIdeal from_gens(const FieldPtr& K, const std::vector<Vec>& gens);

  const IntMat& rows() const { return rows_; }
  const Int& den() const { return den_; }
  const FieldPtr& field() const { return K_; }

  Mat basis() const;                 // rational rows
  std::vector<Vec> basis_elements() const { return basis(); }
  Rat norm() const;
  bool is_integral() const;
  bool contains(const Vec& x) const;
  bool same_as(const FractionalIdeal& o) const;
  std::string key() const;

  FractionalIdeal mul(const FractionalIdeal& o) const;
  FractionalIdeal mul_element(const Vec& g) const;
  FractionalIdeal mul_rat(const Rat& r) const;
  FractionalIdeal inverse() const;
  FractionalIdeal pow(long e) const;

  // min(Q+ ∩ I)
  Rat min_rational() const;
  // trace dual {x : Tr(x m) in Z for all m}
  FractionalIdeal trace_dual() const;

 private:
  FieldPtr K_;
  IntMat rows_;
  Int den_ = 1;

  void canonicalize(Mat rational_rows);
};

// different ideal and its inverse
FractionalIdeal different(const FieldPtr& K);
FractionalIdeal codifferent(const FieldPtr& K);

struct PrimePower {
  FractionalIdeal prime;
  Int p;         // rational prime below
  int f = 1;     // residue degree
  int e = 1;     // ramification in (p)
  int exponent;  // valuation in the factored ideal
};

// Primes above p (requires p coprime to the index of the power basis order).
std::vector<PrimePower> primes_above(const FieldPtr& K, const Int& p);

// Factorization of an integral ideal into prime powers.
std::vector<PrimePower> factor_ideal(const FractionalIdeal& I);

// All integral divisors of an integral ideal.
std::vector<FractionalIdeal> divisors(const FractionalIdeal& I);

// Norm of I as a multiplicative ideal function (positive rational).
// level index N(I) * prod (1 + 1/N(p)) over primes dividing I.
Rat level_index(const FractionalIdeal& I);

// Totally positive generator when one exists.  `absent` means "definitely not
// narrowly principal"; a search-failure (never observed with the shipped
// bounds) raises InconclusiveError.
struct InconclusiveError : ToolkitError {
  using ToolkitError::ToolkitError;
};

std::optional<Vec> narrowly_principal(const FractionalIdeal& J, const UnitGroupData& U);

// Plain principality: a generator up to sign, or nullopt.
std::optional<Vec> principal_generator(const FractionalIdeal& J, const UnitGroupData& U);

// Ideal from a label such as "1", "(2)", "p7", "r2", "p7^2", "2p7", "p7p13".
FractionalIdeal ideal_from_label(const FieldPtr& K, const std::string& label);

// Multiplicative order data: index of {u in V : u = 1 mod m} inside the
// totally positive units (V given by its generators).
Int unit_congruence_index(const FieldPtr& K, const std::vector<Vec>& tp_gens,
                          const FractionalIdeal& m);

}  // namespace cusp
