#pragma once

#include "cusp/defects.hpp"
#include "cusp/ideal.hpp"
#include "cusp/quotsing.hpp"

#include <string>

namespace cusp {

enum class Verdict { GeneralType, KappaGe1, KappaGe0, Inconclusive };

std::string verdict_str(Verdict v);

struct Certificate {
  std::string field_label;
  std::string genus;      // "principal" or "rep<k>"
  std::string level;      // ideal label
  Verdict verdict = Verdict::Inconclusive;
  Rat lhs, rhs;           // the exact comparison backing the verdict
  std::string rule;       // which criterion was applied
  std::string inputs;     // provenance notes (ingested dims etc.)

  bool recheck() const;   // verdict <=> lhs > rhs for the asymptotic rules
};

struct LevelCusp {
  FractionalIdeal M;
  Int unit_index;  // [O_{K,+}^x : V] for the cusp stabilizer
};

struct LevelData {
  FractionalIdeal I;
  Rat index;                    // [PSL2(O_K) : Gamma_0(I)]
  std::vector<LevelCusp> cusps;
  Rat elliptic_e;               // e_I
};

// Cusp structure of H_{K;A} at the given level.
//  - level (1): h cusps of type (J^2 A, squares-of-units stabilizer)
//  - prime level, h = 1: two cusps with the level-1 type
//  - other levels: requires the explicit cusp list from the field tables
std::vector<LevelCusp> cusp_structure(const FieldPtr& K, const UnitGroupData& U,
                                      const FractionalIdeal& genus,
                                      const FractionalIdeal& level);

LevelData level_data(const FieldPtr& K, const UnitGroupData& U, const FractionalIdeal& genus,
                     const FractionalIdeal& level);

// Prop. comparing -2 zeta_K(-1) against the sum of cusp constants at level 1.
Certificate general_type_certificate(const FieldPtr& K, const std::string& genus_name,
                                     const Rat& sum_cusp_constants);

// Prime-level criterion: (N(p)+1) z > 2v + e_p.
Certificate prime_level_certificate(const FieldPtr& K, const std::string& genus_name,
                                    const FractionalIdeal& p, const Rat& level1_constant);

// Kodaira lower bound from ingested dimensions and computed defect totals.
Certificate kodaira_lower_bound(const FieldPtr& K, const std::string& genus_name,
                                const std::string& level_label,
                                const std::vector<std::pair<int, Int>>& dims,
                                const std::vector<std::pair<int, Int>>& defect_totals);

enum class TGOutcome { Passes, Fails, Undecidable };

// disc * zeta_K(2) / (h R) >= 16 pi^6 / 27, decided with interval arithmetic.
TGOutcome tsuyumine_grundman_check(const Int& disc, const QInterval& zeta2, int h,
                                   const QInterval& regulator);

}  // namespace cusp
