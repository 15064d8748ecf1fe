#include "cusp/defects.hpp"

#include "cusp/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cusp {

std::vector<Int> defect_sequence(const FieldPtr& K, const UnitGroupData& U,
                                 const CuspType& cusp, int q_max) {
  // rescale M to a primitive integral ideal (defects are invariant under
  // scaling by positive rationals)
  FractionalIdeal M = cusp.M.mul_rat(Rat(cusp.M.den()));
  FractionalIdeal dinv = codifferent(K);
  FractionalIdeal diff = dinv.inverse();
  // step 1: totally positive t in the codifferent with Tr t < q_max
  std::vector<Vec> ts =
      enumerate_tp_with_trace_bound(*K, dinv, K->one(), Rat(q_max));
  // step 2: ideals (t d_K), grouped by first trace of appearance
  std::map<std::string, std::pair<FractionalIdeal, Int>> ideals;  // key -> (I, min trace)
  for (const auto& t : ts) {
    Rat tr = K->trace(t);
    if (!is_integer(tr)) throw ToolkitError("codifferent element with non-integer trace");
    FractionalIdeal I = diff.mul_element(t);
    if (!I.is_integral()) throw ToolkitError("(t d_K) is not integral");
    auto it = ideals.find(I.key());
    Int trz = tr.get_num();
    if (it == ideals.end())
      ideals.emplace(I.key(), std::make_pair(I, trz));
    else if (trz < it->second.second)
      it->second.second = trz;
  }
  // step 3: divisors J of I with I J^{-1} M narrowly principal; count distinct
  // J weighted by the first q they appear at
  std::vector<std::pair<FractionalIdeal, Int>> ideal_list;
  for (auto& [k, v] : ideals) ideal_list.push_back(v);
  std::map<std::string, Int> counted;  // divisor key -> first trace
  std::mutex mu;
  std::map<std::string, bool> np_cache;
  auto np_check = [&](const FractionalIdeal& J) {
    std::string key = J.key();
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = np_cache.find(key);
      if (it != np_cache.end()) return it->second;
    }
    bool ok = narrowly_principal(J, U).has_value();
    std::lock_guard<std::mutex> lock(mu);
    np_cache[key] = ok;
    return ok;
  };
  std::vector<std::vector<std::pair<std::string, Int>>> results(ideal_list.size());
  parallel_for(ideal_list.size(), [&](size_t idx) {
    const auto& [I, first_tr] = ideal_list[idx];
    for (const auto& J : divisors(I)) {
      FractionalIdeal test = I.mul(J.inverse()).mul(M);
      if (np_check(test)) results[idx].push_back({J.key(), first_tr});
    }
  });
  for (const auto& part : results)
    for (const auto& [jkey, tr] : part) {
      auto it = counted.find(jkey);
      if (it == counted.end())
        counted[jkey] = tr;
      else if (tr < it->second)
        it->second = tr;
    }
  std::vector<Int> seq(q_max + 1, Int(0));
  for (int q = 1; q <= q_max; ++q) {
    Int n(0);
    for (const auto& [jkey, tr] : counted)
      if (tr < q) ++n;
    seq[q] = cusp.V_index * n + 1;
  }
  return seq;
}

DefectPolyhedra defect_polyhedra(const NumberField& K, const TraceMinCone& cone,
                                 const ReducerSet& R) {
  int d = K.d;
  DefectPolyhedra out;
  FractionalIdeal Mhat = R.M.trace_dual();
  Mat B = Mhat.basis();
  for (const Vec& r : R.with_min()) {
    Vec trow(d);
    for (int j = 0; j < d; ++j) {
      Vec ej(d, Rat(0));
      ej[j] = 1;
      trow[j] = K.trace(K.mul(ej, r));
    }
    std::vector<HalfSpace> hs = cone.halfspaces;
    hs.push_back({trow, Rat(1), false});
    Polytope P{d, hs};
    // dual-basis coordinates: x = z * B
    std::vector<HalfSpace> hz;
    for (const auto& h : hs) {
      Vec n(d);
      for (int i = 0; i < d; ++i) n[i] = dot(B[i], h.normal);
      hz.push_back({n, h.bound, h.strict});
    }
    out.in_basis_coords.push_back(P);
    out.in_dual_coords.push_back(Polytope{d, hz});
  }
  int n = static_cast<int>(out.in_dual_coords.size());
  out.redundant.assign(n, false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n && !out.redundant[i]; ++j) {
      if (i == j || out.redundant[j]) continue;
      if (is_subset(out.in_dual_coords[i], out.in_dual_coords[j])) {
        // among equal polytopes keep the later one only when i < j
        if (is_subset(out.in_dual_coords[j], out.in_dual_coords[i]) && i < j) continue;
        out.redundant[i] = true;
      }
    }
  }
  out.kept = static_cast<int>(std::count(out.redundant.begin(), out.redundant.end(), false));
  return out;
}

AsymptoticConstant asymptotic_constant(const NumberField& K, const TraceMinCone& cone,
                                       const ReducerSet& R, const Int& V_index) {
  DefectPolyhedra polys = defect_polyhedra(K, cone, R);
  std::vector<Polytope> keep_dual, keep_basis;
  for (size_t i = 0; i < polys.in_dual_coords.size(); ++i) {
    if (polys.redundant[i]) continue;
    keep_dual.push_back(polys.in_dual_coords[i]);
    keep_basis.push_back(polys.in_basis_coords[i]);
  }
  UnionVolume uv = union_volume(keep_dual);
  UnionVolume uv_basis = union_volume(keep_basis);
  // the two normalizations must agree: vol_dual = vol_basis / N(Mhat)
  Rat nm = R.M.trace_dual().norm();
  if (uv.volume != uv_basis.volume / nm)
    throw ToolkitError("volume normalization mismatch between coordinate systems");
  AsymptoticConstant out;
  out.c_tp = uv.volume;
  out.c = uv.volume * Rat(V_index);
  out.passes = uv.passes;
  out.polyhedra = static_cast<int>(polys.in_dual_coords.size());
  out.nonredundant = polys.kept;
  return out;
}

Int subgroup_rescale(const Int& delta_full, const Int& index) {
  if (delta_full < 1) throw ToolkitError("subgroup_rescale needs delta >= 1");
  return index * (delta_full - 1) + 1;
}

std::optional<Vec> gf_fit(const std::vector<Int>& seq) {
  if (seq.size() < 13) throw ToolkitError("gf_fit needs at least 13 terms");
  // D = (1-x)^2 (1-x^2)(1-x^3) = 1 - 2x + x^3 + x^4 - 2x^6 + x^7
  const int dcoef[8] = {1, -2, 0, 1, 1, 0, -2, 1};
  size_t n = seq.size();
  std::vector<Int> prod(n, Int(0));
  for (size_t i = 0; i < n; ++i) {
    Int s(0);
    for (int k = 0; k <= 7 && static_cast<size_t>(k) <= i; ++k)
      s += Int(dcoef[k]) * seq[i - k];
    prod[i] = s;
  }
  for (size_t i = 7; i < n; ++i)
    if (prod[i] != 0) return std::nullopt;
  Vec num(7);
  for (int i = 0; i < 7; ++i) num[i] = Rat(prod[i]);
  while (num.size() > 1 && sgn(num.back()) == 0) num.pop_back();
  return num;
}

}  // namespace cusp
