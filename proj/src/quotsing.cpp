#include "cusp/quotsing.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cusp {

QuotSingType QuotSingType::make(std::vector<long> weights, long m) {
  if (m <= 0) throw ToolkitError("quotient singularity: m must be positive");
  for (long a : weights) {
    if (a <= 0 || a >= m) throw ToolkitError("quotient singularity: weights must lie in (0, m)");
    if (std::gcd(a, m) != 1) throw ToolkitError("quotient singularity: weights must be coprime to m");
  }
  std::sort(weights.begin(), weights.end());
  return {m, std::move(weights)};
}

std::string QuotSingType::str() const {
  std::ostringstream ss;
  ss << "(";
  for (size_t i = 0; i < weights.size(); ++i) ss << weights[i] << ",";
  ss << m << ")";
  return ss.str();
}

std::vector<std::pair<Polytope, long>> defect_simplices(const QuotSingType& t) {
  int n = static_cast<int>(t.weights.size());
  std::vector<std::pair<Polytope, long>> out;
  for (long k = 1; k < t.m; ++k) {
    Vec p(n);
    Rat total(0);
    for (int j = 0; j < n; ++j) {
      p[j] = Rat((k * t.weights[j]) % t.m, t.m);
      total += p[j];
    }
    if (total >= 1) continue;  // empty: x >= 1 forces sum P_k >= sum of entries
    std::vector<HalfSpace> hs;
    for (int j = 0; j < n; ++j) {
      Vec row(n, Rat(0));
      row[j] = -1;
      hs.push_back({row, Rat(-1), false});  // x_j >= 1
    }
    hs.push_back({p, Rat(1), true});  // sum P_k x < 1
    out.push_back({Polytope{n, hs}, k});
  }
  return out;
}

std::vector<Int> quot_defect_sequence(const QuotSingType& t, int q_max) {
  int n = static_cast<int>(t.weights.size());
  auto simplices = defect_simplices(t);
  // sublattice L = {x : m | sum a_i x_i}: rows (m,0,..), (-a_j/a_0-ish..)
  // use basis (m, 0, ..., 0), (c_j, e_j) rows solving a_0 c_j + a_j = 0 mod m
  // with a_0 invertible mod m (weights are coprime to m).
  Mat rows;
  Vec r0(n, Rat(0));
  r0[0] = Rat(t.m);
  rows.push_back(r0);
  long a0 = t.weights[0];
  long inv = 1;
  for (long x = 1; x < t.m; ++x)
    if ((a0 * x) % t.m == 1) { inv = x; break; }
  for (int j = 1; j < n; ++j) {
    Vec r(n, Rat(0));
    r[0] = Rat(((-t.weights[j] % t.m + t.m) * inv) % t.m);
    r[j] = 1;
    rows.push_back(r);
  }
  LatticeBasis L{rows, Vec(n, Rat(0))};
  std::vector<Int> seq(q_max + 1, Int(0));
  for (int q = 1; q <= q_max; ++q) {
    std::set<std::vector<std::string>> pts;
    for (const auto& [T, k] : simplices) {
      Polytope Tq = scale(T, Rat(q));
      for (const auto& x : lattice_points(Tq, L)) {
        std::vector<std::string> key;
        for (const auto& v : x) key.push_back(rat_str(v));
        pts.insert(key);
      }
    }
    seq[q] = Int(static_cast<long>(pts.size()));
  }
  return seq;
}

Rat quot_asymptotic_constant(const QuotSingType& t) {
  auto simplices = defect_simplices(t);
  std::vector<Polytope> ps;
  for (auto& [T, k] : simplices) ps.push_back(T);
  if (ps.empty()) return Rat(0);
  UnionVolume uv = union_volume(ps);
  return uv.volume / Rat(t.m);
}

QuotSingType generator_change_equivalence(const QuotSingType& t, long r) {
  long rr = ((r % t.m) + t.m) % t.m;
  if (std::gcd(rr, t.m) != 1) throw ToolkitError("generator change needs gcd(r, m) = 1");
  std::vector<long> w;
  for (long a : t.weights) w.push_back((a * rr) % t.m);
  return QuotSingType::make(std::move(w), t.m);
}

EllipticData elliptic_data(const NumberField& K) {
  EllipticData e;
  nlohmann::json tables = nlohmann::json::parse(K.raw_tables);
  if (!tables.contains("elliptic")) return e;
  const auto& j = tables["elliptic"];
  e.present = true;
  e.residue_modulus = j["modulus"].get<long>();
  std::vector<long> w = j["base_type"].get<std::vector<long>>();
  long m = j.contains("quot_m") ? j["quot_m"].get<long>() : e.residue_modulus;
  e.base_type = QuotSingType::make(w, m);
  e.base_count = j["base_count"].get<long>();
  e.c_K = j["c_K"].get<long>();
  return e;
}

long elliptic_cp(const EllipticData& e, const Rat& prime_norm) {
  if (!e.present) return 0;
  if (!is_integer(prime_norm)) throw ToolkitError("prime norm must be integral");
  Int n = prime_norm.get_num();
  Int r = n % e.residue_modulus;
  if (r == 1) return 2;
  if (r == 0) return 1;
  if (r == e.residue_modulus - 1) return 0;
  throw ToolkitError("unexpected prime norm residue for an elliptic field");
}

Rat elliptic_constant_eI(const FieldPtr& K, const FractionalIdeal& I) {
  EllipticData e = elliptic_data(*K);
  if (!e.present) return Rat(0);
  Int prod(1);
  for (const auto& pp : factor_ideal(I)) {
    if (pp.e > 1 && pp.exponent >= 2) return Rat(0);  // square of the ramified prime
    prod *= elliptic_cp(e, pp.prime.norm());
  }
  return Rat(prod, Int(e.c_K));
}

long elliptic_count_at_level(const FieldPtr& K, const FractionalIdeal& I) {
  EllipticData e = elliptic_data(*K);
  if (!e.present) return 0;
  Int mult(1);
  for (const auto& pp : factor_ideal(I)) {
    if (pp.e > 1 && pp.exponent >= 2) return 0;
    mult *= elliptic_cp(e, pp.prime.norm());
  }
  return e.base_count * mult.get_si();
}

}  // namespace cusp
