#include "cusp/certify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace cusp {

using nlohmann::json;

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::GeneralType: return "general-type";
    case Verdict::KappaGe1: return "kappa>=1";
    case Verdict::KappaGe0: return "kappa>=0";
    default: return "inconclusive";
  }
}

bool Certificate::recheck() const {
  if (rule == "kodaira-lower-bound") {
    if (verdict == Verdict::KappaGe1) return lhs - rhs >= 2;
    if (verdict == Verdict::KappaGe0) return lhs - rhs >= 1;
    return lhs - rhs < 1;
  }
  if (verdict == Verdict::GeneralType) return lhs > rhs;
  return !(lhs > rhs);
}

namespace {

// Find the genus representative narrowly equivalent to J (J * rep^-1 narrowly
// principal); the shipped representative lists cover every narrow class.
FractionalIdeal narrow_class_rep(const FieldPtr& K, const UnitGroupData& U,
                                 const FractionalIdeal& J) {
  for (const auto& data : K->genus_reps) {
    FractionalIdeal rep = FractionalIdeal::from_data(K, data);
    FractionalIdeal q = J.mul(rep.inverse());
    if (narrowly_principal(q, U)) return rep;
  }
  throw ToolkitError("no shipped representative matches the narrow class");
}

}  // namespace

std::vector<LevelCusp> cusp_structure(const FieldPtr& K, const UnitGroupData& U,
                                      const FractionalIdeal& genus,
                                      const FractionalIdeal& level) {
  Int sq_index(K->narrow_class_number / K->class_number);
  FractionalIdeal one = FractionalIdeal::whole_ring(K);
  bool level_one = level.same_as(one);
  if (level_one) {
    // ideal-class representatives inside the shipped narrow-class reps
    std::vector<FractionalIdeal> class_reps;
    for (const auto& data : K->genus_reps) {
      FractionalIdeal rep = FractionalIdeal::from_data(K, data);
      bool matched = false;
      for (const auto& seen : class_reps) {
        FractionalIdeal q = rep.mul(seen.inverse());
        if (principal_generator(q, U)) { matched = true; break; }
      }
      if (!matched) class_reps.push_back(rep);
    }
    if (static_cast<int>(class_reps.size()) != K->class_number)
      throw ToolkitError("shipped representatives do not cover the class group");
    std::vector<LevelCusp> out;
    for (const auto& J : class_reps) {
      FractionalIdeal M = narrow_class_rep(K, U, J.mul(J).mul(genus));
      out.push_back({M, sq_index});
    }
    return out;
  }
  // prime level, h = 1: two cusps with the level-1 type
  auto fac = factor_ideal(level);
  bool prime = fac.size() == 1 && fac[0].exponent == 1;
  if (prime && K->class_number == 1) {
    LevelCusp c{narrow_class_rep(K, U, genus), sq_index};
    return {c, c};
  }
  // otherwise the field tables must spell the cusps out
  json tables = json::parse(K->raw_tables);
  if (tables.contains("levels")) {
    for (const auto& lv : tables["levels"]) {
      FractionalIdeal L = ideal_from_label(K, lv["level"].get<std::string>());
      int genus_idx = lv["genus"].get<int>();
      FractionalIdeal G = FractionalIdeal::from_data(K, K->genus_reps.at(genus_idx));
      if (!L.same_as(level) || !G.same_as(genus)) continue;
      if (lv["cusps"].is_string()) break;  // "auto" for prime levels
      std::vector<LevelCusp> out;
      for (const auto& c : lv["cusps"]) {
        FractionalIdeal M = FractionalIdeal::from_data(K, K->genus_reps.at(c["rep"].get<int>()));
        Int ui = sq_index * Int(c["unit_index"].get<long>());
        out.push_back({M, ui});
      }
      return out;
    }
  }
  throw ToolkitError("unsupported level without an explicit cusp list");
}

LevelData level_data(const FieldPtr& K, const UnitGroupData& U, const FractionalIdeal& genus,
                     const FractionalIdeal& level) {
  LevelData out;
  out.I = level;
  out.index = level_index(level);
  out.cusps = cusp_structure(K, U, genus, level);
  out.elliptic_e = elliptic_constant_eI(K, level);
  return out;
}

Certificate general_type_certificate(const FieldPtr& K, const std::string& genus_name,
                                     const Rat& sum_cusp_constants) {
  if (!K->zeta_minus1) throw ToolkitError("missing zeta_minus1 in the field spec");
  Certificate c;
  c.field_label = K->label;
  c.genus = genus_name;
  c.level = "1";
  c.rule = "asymptotic-general-type";
  c.lhs = Rat(-2) * *K->zeta_minus1;
  c.rhs = sum_cusp_constants;
  c.verdict = c.lhs > c.rhs ? Verdict::GeneralType : Verdict::Inconclusive;
  c.inputs = "zeta_minus1 ingested; cusp constants computed";
  return c;
}

Certificate prime_level_certificate(const FieldPtr& K, const std::string& genus_name,
                                    const FractionalIdeal& p, const Rat& level1_constant) {
  if (K->class_number != 1)
    throw ToolkitError("prime-level certificate requires class number 1");
  if (!K->zeta_minus1) throw ToolkitError("missing zeta_minus1 in the field spec");
  auto fac = factor_ideal(p);
  if (fac.size() != 1 || fac[0].exponent != 1)
    throw ToolkitError("prime-level certificate requires a prime level");
  Certificate c;
  c.field_label = K->label;
  c.genus = genus_name;
  c.level = "p" + p.norm().get_num().get_str();
  c.rule = "prime-level-general-type";
  Rat z = Rat(-2) * *K->zeta_minus1;
  c.lhs = (p.norm() + 1) * z;
  c.rhs = 2 * level1_constant + elliptic_constant_eI(K, p);
  c.verdict = c.lhs > c.rhs ? Verdict::GeneralType : Verdict::Inconclusive;
  c.inputs = "zeta_minus1 ingested; cusp constant computed; e_p from the elliptic table";
  return c;
}

Certificate kodaira_lower_bound(const FieldPtr& K, const std::string& genus_name,
                                const std::string& level_label,
                                const std::vector<std::pair<int, Int>>& dims,
                                const std::vector<std::pair<int, Int>>& defect_totals) {
  Certificate c;
  c.field_label = K->label;
  c.genus = genus_name;
  c.level = level_label;
  c.rule = "kodaira-lower-bound";
  c.inputs = "dimensions ingested from the published tables; defects computed";
  Int best(-1);
  int best_weight = 0;
  for (const auto& [w, dim] : dims) {
    auto it = std::find_if(defect_totals.begin(), defect_totals.end(),
                           [&](const auto& pr) { return pr.first == w; });
    if (it == defect_totals.end()) continue;
    Int bound = dim - it->second;
    if (bound > best) {
      best = bound;
      best_weight = w;
    }
  }
  if (best < 0) throw ToolkitError("no matching weights between dims and defects");
  // lhs = dim, rhs = defect sum, taken at the most favorable weight
  for (const auto& [w, dim] : dims)
    if (w == best_weight) c.lhs = Rat(dim);
  for (const auto& [w, defect] : defect_totals)
    if (w == best_weight) c.rhs = Rat(defect);
  if (best >= 2)
    c.verdict = Verdict::KappaGe1;
  else if (best >= 1)
    c.verdict = Verdict::KappaGe0;
  else
    c.verdict = Verdict::Inconclusive;
  return c;
}

TGOutcome tsuyumine_grundman_check(const Int& disc, const QInterval& zeta2, int h,
                                   const QInterval& regulator) {
  QInterval lhs = zeta2 * Rat(disc) * Rat(1, h) / regulator;
  QInterval pi = pi_enclosure();
  QInterval rhs = pi * pi;
  rhs = rhs * rhs * rhs;  // pi^6
  rhs = rhs * Rat(16, 27);
  if (lhs.lo >= rhs.hi) return TGOutcome::Passes;
  if (lhs.hi < rhs.lo) return TGOutcome::Fails;
  return TGOutcome::Undecidable;
}

}  // namespace cusp
