#include "cusp/field.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cusp {

using nlohmann::json;

namespace {

Vec parse_vec(const json& j) {
  Vec v;
  for (const auto& e : j) {
    if (e.is_string())
      v.push_back(parse_rat(e.get<std::string>()));
    else
      v.push_back(Rat(e.get<long>()));
  }
  return v;
}

}  // namespace

std::shared_ptr<const NumberField> NumberField::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ToolkitError("cannot open field spec: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::shared_ptr<const NumberField> NumberField::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ToolkitError(std::string("field spec: invalid document: ") + e.what());
  }
  auto K = std::make_shared<NumberField>();
  for (const char* key : {"label", "degree", "min_poly", "integral_basis", "disc",
                          "fundamental_units", "class_number", "narrow_class_number",
                          "genus_reps"})
    if (!j.contains(key)) throw ToolkitError(std::string("field spec: missing key ") + key);
  K->label = j["label"].get<std::string>();
  K->d = j["degree"].get<int>();
  if (K->d < 2 || K->d > 6) throw ToolkitError("field spec: unsupported degree");
  K->min_poly.c = parse_vec(j["min_poly"]);
  if (K->min_poly.degree() != K->d || K->min_poly.c[K->d] != 1)
    throw ToolkitError("field spec: min_poly must be monic of the declared degree");
  for (const auto& c : K->min_poly.c)
    if (!is_integer(c)) throw ToolkitError("field spec: min_poly must have integer coefficients");
  for (const auto& row : j["integral_basis"]) K->integral_basis.push_back(parse_vec(row));
  if (static_cast<int>(K->integral_basis.size()) != K->d)
    throw ToolkitError("field spec: integral_basis must be d x d");
  K->disc = Int(j["disc"].get<long>());
  for (const auto& u : j["fundamental_units"]) K->fundamental_units.push_back(parse_vec(u));
  if (static_cast<int>(K->fundamental_units.size()) != K->d - 1)
    throw ToolkitError("field spec: expected d-1 fundamental units");
  K->class_number = j["class_number"].get<int>();
  K->narrow_class_number = j["narrow_class_number"].get<int>();
  for (const auto& g : j["genus_reps"]) {
    IdealData I;
    for (const auto& row : g["basis"]) {
      IntVec r;
      for (const auto& v : row) r.push_back(Int(v.get<long>()));
      I.basis.push_back(r);
    }
    I.den = Int(g["denom"].get<long>());
    K->genus_reps.push_back(I);
  }
  if (j.contains("zeta_minus1")) K->zeta_minus1 = parse_rat(j["zeta_minus1"].get<std::string>());
  auto parse_dec_interval = [](const json& arr) {
    auto dec = [](std::string s) {
      // decimal string -> exact rational
      bool neg = !s.empty() && s[0] == '-';
      if (neg) s = s.substr(1);
      auto dotpos = s.find('.');
      std::string digits = s;
      long frac = 0;
      if (dotpos != std::string::npos) {
        frac = static_cast<long>(s.size() - dotpos - 1);
        digits = s.substr(0, dotpos) + s.substr(dotpos + 1);
      }
      Rat v(Int(digits.c_str()));
      for (long i = 0; i < frac; ++i) v /= 10;
      return neg ? Rat(-v) : v;
    };
    return QInterval(dec(arr[0].get<std::string>()), dec(arr[1].get<std::string>()));
  };
  if (j.contains("zeta2")) K->zeta2 = parse_dec_interval(j["zeta2"]);
  if (j.contains("regulator")) K->regulator = parse_dec_interval(j["regulator"]);
  json tables = json::object();
  for (const char* key : {"dim_tables", "levels", "elliptic"})
    if (j.contains(key)) tables[key] = j[key];
  K->raw_tables = tables.dump();
  const_cast<NumberField&>(*K).finish_init();
  return K;
}

void NumberField::finish_init() {
  // min_poly: squarefree with d real roots, no rational root (d <= 3 => irreducible)
  Poly g = poly_gcd(min_poly, min_poly.derivative());
  if (g.degree() > 0) throw ToolkitError("field spec: min_poly is not squarefree");
  root_boxes_ = isolate_real_roots(min_poly);
  if (static_cast<int>(root_boxes_.size()) != d)
    throw ToolkitError("field spec: min_poly is not totally real");
  if (d <= 3) {
    // rational root iff reducible
    Rat c0 = min_poly.c[0];
    Int num = c0.get_num();
    std::vector<Int> divs;
    for (Int t(1); t * t <= abs(num); ++t)
      if (num % t == 0) { divs.push_back(t); divs.push_back(abs(num) / t); }
    divs.push_back(0);
    for (const Int& t : divs)
      for (int s : {1, -1})
        if (sgn(min_poly.eval(Rat(t) * s)) == 0)
          throw ToolkitError("field spec: min_poly is reducible");
  }
  auto binv = inverse(integral_basis);
  if (!binv) throw ToolkitError("field spec: integral_basis is singular");
  basis_inv_ = *binv;
  power_index_ = [&] {
    Rat dt = abs(det(integral_basis));
    Rat idx = Rat(1) / dt;
    if (!is_integer(idx)) throw ToolkitError("field spec: basis determinant must be 1/integer");
    return Int(idx.get_num());
  }();
  one_coords_ = [&] {
    Vec p(d, Rat(0));
    p[0] = 1;
    return row_times_mat(p, basis_inv_);
  }();
  // structure constants: w_i * w_j reduced mod min_poly, back to basis coordinates
  auto poly_mod = [&](Poly p) {
    p = poly_rem(std::move(p), min_poly);
    Vec c(d, Rat(0));
    for (int i = 0; i < std::min<int>(d, static_cast<int>(p.c.size())); ++i) c[i] = p.c[i];
    return c;
  };
  mul_table_.assign(d, std::vector<Vec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Poly pi{integral_basis[i]}, pj{integral_basis[j]};
      Vec prod = poly_mod(poly_mul(pi, pj));
      Vec coords = row_times_mat(prod, basis_inv_);
      for (const Rat& v : coords)
        if (!is_integer(v))
          throw ToolkitError("field spec: integral basis is not closed under multiplication");
      mul_table_[i][j] = coords;
    }
  trace_basis_.assign(d, Rat(0));
  for (int i = 0; i < d; ++i) {
    Rat t(0);
    for (int j = 0; j < d; ++j) t += mul_table_[i][j][j];
    trace_basis_[i] = t;
  }
  gram_.assign(d, Vec(d, Rat(0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram_[i][j] = dot(trace_basis_, mul_table_[i][j]);
  Rat gd = det(gram_);
  if (gd != Rat(disc))
    throw ToolkitError("field spec: discriminant mismatch (declared " + disc.get_str() +
                       ", trace form gives " + rat_str(gd) + ")");
  for (const Vec& u : fundamental_units) {
    Rat n = norm(u);
    if (n != 1 && n != -1) throw ToolkitError("field spec: fundamental unit has norm != +-1");
  }
}

Vec NumberField::theta_power(int k) const {
  Poly p;
  p.c.assign(k + 1, Rat(0));
  p.c[k] = 1;
  p = poly_rem(std::move(p), min_poly);
  Vec c(d, Rat(0));
  for (int i = 0; i < std::min<int>(d, static_cast<int>(p.c.size())); ++i) c[i] = p.c[i];
  return row_times_mat(c, basis_inv_);
}

Vec NumberField::mul(const Vec& a, const Vec& b) const {
  Vec r(d, Rat(0));
  for (int i = 0; i < d; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (sgn(b[j]) == 0) continue;
      Rat f = a[i] * b[j];
      const Vec& t = mul_table_[i][j];
      for (int k = 0; k < d; ++k) r[k] += f * t[k];
    }
  }
  return r;
}

Vec NumberField::power(const Vec& a, long e) const {
  if (e < 0) return power(invert(a), -e);
  Vec r = one();
  Vec b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Mat NumberField::regular_rep(const Vec& a) const {
  Mat R(d, Vec(d, Rat(0)));
  for (int j = 0; j < d; ++j) {
    Vec e(d, Rat(0));
    e[j] = 1;
    R[j] = mul(e, a);
  }
  return R;
}

Vec NumberField::invert(const Vec& a) const {
  auto x = solve_row(regular_rep(a), one());
  if (!x) throw ToolkitError("inverse of zero element");
  return *x;
}

Rat NumberField::norm(const Vec& a) const { return det(regular_rep(a)); }

Poly NumberField::to_poly(const Vec& a) const {
  Poly p;
  p.c = row_times_mat(a, integral_basis);
  p.trim();
  return p;
}

std::optional<Rat> NumberField::as_rational(const Vec& a) const {
  Poly p = to_poly(a);
  if (p.degree() > 0) return std::nullopt;
  return p.degree() == 0 ? p.c[0] : Rat(0);
}

QInterval NumberField::root_box(int i, const Rat& w) const {
  std::lock_guard<std::mutex> lock(root_mutex_);
  QInterval box = root_boxes_[i];
  while (box.width() > w) box = refine_root(min_poly, box);
  root_boxes_[i] = box;
  return box;
}

QInterval NumberField::embed(const Vec& a, int place, const Rat& w) const {
  Poly p = to_poly(a);
  Rat rw(1, 16);
  for (;;) {
    QInterval box = root_box(place, rw);
    QInterval v = p.eval(box);
    if (v.width() <= w) return v;
    rw /= 64;
  }
}

SignVector NumberField::signs_at_real_places(const Vec& a) const {
  if (is_zero(a)) throw ToolkitError("signs of the zero element");
  Poly p = to_poly(a);
  SignVector out(d, 0);
  for (int i = 0; i < d; ++i) {
    Rat rw(1, 16);
    for (int iter = 0;; ++iter) {
      QInterval v = p.eval(root_box(i, rw));
      if (v.positive()) { out[i] = 1; break; }
      if (v.negative()) { out[i] = -1; break; }
      rw /= 64;
      if (iter == 24) {
        // value may be exactly zero: decide via gcd with the minimal polynomial
        Poly g = poly_gcd(p, min_poly);
        if (g.degree() > 0)
          throw ToolkitError("element vanishes at a real place");
      }
    }
  }
  return out;
}

bool NumberField::totally_positive(const Vec& a) const {
  if (is_zero(a)) return false;
  SignVector s = signs_at_real_places(a);
  return std::all_of(s.begin(), s.end(), [](int v) { return v > 0; });
}

int NumberField::cmp_embed(const Vec& a, const Rat& q, int place) const {
  Vec diff = vec_sub(a, from_rat(q));
  if (is_zero(diff)) return 0;
  Poly p = to_poly(diff);
  Rat rw(1, 16);
  for (int iter = 0;; ++iter) {
    QInterval v = p.eval(root_box(place, rw));
    if (v.positive()) return 1;
    if (v.negative()) return -1;
    rw /= 64;
    if (iter == 24) {
      Poly g = poly_gcd(p, min_poly);
      if (g.degree() > 0) throw ToolkitError("cmp_embed: exact tie at a real place");
    }
  }
}

QInterval NumberField::log_embed_bound(const Vec& a, int place, int pow2) const {
  Rat w(1, 1024);
  QInterval v = embed(a, place, w);
  while (!(v.positive() || v.negative())) {
    w /= 64;
    v = embed(a, place, w);
  }
  // tighten relatively so the log bracket is meaningful
  Rat scale = v.positive() ? v.lo : Rat(-v.hi);
  while (v.width() * 4096 > scale) {
    w /= 64;
    v = embed(a, place, w);
  }
  Rat lo = v.positive() ? v.lo : -v.hi;
  Rat hi = v.positive() ? v.hi : -v.lo;
  QInterval ll = log_enclosure(lo, pow2);
  QInterval lh = log_enclosure(hi, pow2);
  return {ll.lo, lh.hi};
}

// ---- unit algebra ----

namespace {

std::vector<int> sign_row(const NumberField& K, const Vec& u) {
  SignVector s = K.signs_at_real_places(u);
  std::vector<int> r(s.size());
  for (size_t i = 0; i < s.size(); ++i) r[i] = s[i] < 0 ? 1 : 0;
  return r;
}

}  // namespace

// Solve sum e_i rows_i = target over GF(2); returns e or nullopt.
std::optional<std::vector<int>> gf2_solve(std::vector<std::vector<int>> rows,
                                          std::vector<int> target) {
  size_t m = rows.size(), n = target.size();
  for (size_t i = 0; i < m; ++i) rows[i].resize(n + m, 0), rows[i][n + i] = 1;
  std::vector<std::vector<int>> basis;
  for (auto r : rows) {
    for (const auto& b : basis) {
      size_t p = 0;
      while (p < n && !b[p]) ++p;
      if (p < n && r[p]) {
        for (size_t k = 0; k < r.size(); ++k) r[k] ^= b[k];
      }
    }
    bool nonzero = false;
    for (size_t k = 0; k < n; ++k) nonzero |= r[k] != 0;
    if (nonzero) basis.push_back(r);
  }
  target.resize(n + m, 0);
  for (const auto& b : basis) {
    size_t p = 0;
    while (p < n && !b[p]) ++p;
    if (p < n && target[p])
      for (size_t k = 0; k < target.size(); ++k) target[k] ^= b[k];
  }
  for (size_t k = 0; k < n; ++k)
    if (target[k]) return std::nullopt;
  return std::vector<int>(target.begin() + n, target.end());
}

UnitGroupData totally_positive_units(const NumberField& K) {
  UnitGroupData U;
  U.fundamental_units = K.fundamental_units;
  int d = K.d;
  int r = d - 1;
  U.sign_matrix.push_back(std::vector<int>(d, 1));  // -1 is negative everywhere
  for (const Vec& u : K.fundamental_units) U.sign_matrix.push_back(sign_row(K, u));
  // Exponent lattice of totally positive units inside Z^r:
  // e in L'  <=>  A e = 0 or = sigma(-1) over GF(2), A = unit sign rows.
  std::vector<std::vector<int>> A;
  for (int i = 0; i < r; ++i) A.push_back(U.sign_matrix[i + 1]);
  IntMat gens;
  for (int i = 0; i < r; ++i) {
    IntVec row(r, 0);
    row[i] = 2;
    gens.push_back(row);
  }
  // kernel of A mod 2: brute force over GF(2)^r (r <= 5)
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    std::vector<int> s(d, 0);
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i))
        for (int j = 0; j < d; ++j) s[j] ^= A[i][j];
    bool zero = std::all_of(s.begin(), s.end(), [](int v) { return v == 0; });
    bool minus = s == U.sign_matrix[0];
    if (zero || minus) {
      IntVec row(r, 0);
      for (int i = 0; i < r; ++i) row[i] = (mask >> i) & 1;
      gens.push_back(row);
    }
  }
  IntMat H = hnf(std::move(gens), r);
  Rat covol(1);
  for (int i = 0; i < r; ++i) covol *= Rat(H[i][i]);
  for (int i = 0; i < r; ++i) {
    Vec u = K.one();
    for (int j = 0; j < r; ++j)
      u = K.mul(u, K.power(K.fundamental_units[j], H[i][j].get_si()));
    if (!K.totally_positive(u)) {
      u = vec_scale(u, Rat(-1));
      if (!K.totally_positive(u)) throw ToolkitError("tp unit construction failed");
    }
    U.tp_generators.push_back(u);
  }
  // [O+ : squares] = det(2I) / det(L')
  Rat idx = Rat(1 << r) / covol;
  if (!is_integer(idx)) throw ToolkitError("unit lattice index not integral");
  U.tp_index_sq = Int(idx.get_num());
  return U;
}

UnitSubgroup UnitSubgroup::full(const UnitGroupData& U) {
  return {U.tp_generators, Int(1)};
}

UnitSubgroup UnitSubgroup::squares_of_units(const NumberField& K, const UnitGroupData& U) {
  UnitSubgroup V;
  for (const Vec& u : U.fundamental_units) V.gens.push_back(K.mul(u, u));
  V.index_in_tp = U.tp_index_sq;
  return V;
}

UnitSubgroup UnitSubgroup::power_subgroup(const NumberField& K, long k) const {
  UnitSubgroup V;
  for (const Vec& g : gens) V.gens.push_back(K.power(g, k));
  Int mult(1);
  for (size_t i = 0; i < gens.size(); ++i) mult *= k;
  V.index_in_tp = index_in_tp * mult;
  return V;
}

SignedUnits find_signed_units(const NumberField& K, const UnitSubgroup& V) {
  int d = K.d;
  int r = d - 1;
  SignedUnits out;
  unsigned full_mask = (1u << d) - 1;
  size_t wanted = full_mask - 1;  // proper nonempty subsets
  std::vector<bool> have_big(d, false);
  // candidate = V-monomials in a growing exponent box; pick smallest trace per slot
  std::map<unsigned, Rat> best_trace;
  for (int radius = 1; radius <= 24; ++radius) {
    std::vector<long> e(r, -radius);
    for (;;) {
      bool boundary = false;
      for (int i = 0; i < r; ++i)
        if (e[i] == radius || e[i] == -radius) boundary = true;
      if (boundary) {
        Vec u = K.one();
        for (int i = 0; i < r; ++i)
          if (e[i] != 0) u = K.mul(u, K.power(V.gens[i], e[i]));
        if (!is_zero(vec_sub(u, K.one()))) {
          unsigned mask = 0;
          for (int p = 0; p < d; ++p)
            if (K.cmp_embed(u, Rat(1), p) > 0) mask |= 1u << p;
          if (mask != 0 && mask != full_mask) {
            Rat tr = K.trace(u);
            auto it = best_trace.find(mask);
            if (it == best_trace.end() || tr < it->second) {
              best_trace[mask] = tr;
              out.by_subset[mask] = u;
            }
          }
          for (int p = 0; p < d; ++p) {
            if (!have_big[p] && K.cmp_embed(u, Rat(d), p) > 0) {
              have_big[p] = true;
              if (static_cast<int>(out.big_at_place.size()) < d) out.big_at_place.resize(d);
              out.big_at_place[p] = u;
            }
          }
        }
      }
      int i = 0;
      while (i < r && e[i] == radius) e[i++] = -radius;
      if (i == r) break;
      ++e[i];
    }
    bool done = out.by_subset.size() == wanted &&
                std::all_of(have_big.begin(), have_big.end(), [](bool b) { return b; });
    if (done) return out;
  }
  throw ToolkitError("find_signed_units: exponent box exhausted");
}

}  // namespace cusp
