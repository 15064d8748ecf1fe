#include "cusp/cone.hpp"

#include "cusp/lp.hpp"

#include <algorithm>
#include <set>

namespace cusp {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

// interval of the i-th embedding, refined to relative width 2^-bits
QInterval tight_embed(const NumberField& K, const Vec& a, int place, int bits) {
  Rat w(1, 1024);
  for (;;) {
    QInterval v = K.embed(a, place, w);
    Rat scale = std::max(Rat(abs(v.lo)), Rat(abs(v.hi)));
    if (scale == 0) return v;
    if (v.width() * (Rat(Int(1) << bits)) <= scale) return v;
    w /= 1024;
  }
}

}  // namespace

Rat balanced_bound(const NumberField& K, const SignedUnits& S) {
  int d = K.d;
  // b = max over i != j of (iu_i - 1)/(1 - iu_j), iu the singleton-{i} units.
  // Outward interval rounding, refined until hi <= 2 lo per ratio.
  Rat best(0);
  for (int i = 0; i < d; ++i) {
    unsigned mask = 1u << i;
    auto it = S.by_subset.find(mask);
    if (it == S.by_subset.end()) throw ToolkitError("missing signed unit");
    const Vec& u = it->second;
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      for (int bits = 8;; bits += 8) {
        QInterval num = tight_embed(K, u, i, bits) - Rat(1);
        QInterval den = QInterval(Rat(1)) - tight_embed(K, u, j, bits);
        if (!num.positive() || !den.positive()) {
          if (bits > 64) throw ToolkitError("balanced_bound: malformed signed unit");
          continue;
        }
        QInterval q = num / den;
        if (q.hi <= q.lo * 2) {
          if (q.hi > best) best = q.hi;
          break;
        }
      }
    }
  }
  if (best < 1) best = Rat(1);
  return best;
}

std::vector<Vec> reducing_unit_set(const NumberField& K, const UnitSubgroup& V,
                                   const SignedUnits& S, const Rat& bbar) {
  int d = K.d;
  int r = d - 1;
  std::set<std::string> seen;
  std::vector<Vec> out;
  auto add = [&](const Vec& u) {
    if (is_zero(vec_sub(u, K.one()))) return;
    std::string k;
    for (const auto& v : u) k += rat_str(v) + ",";
    if (seen.insert(k).second) out.push_back(u);
  };
  for (const auto& [mask, u] : S.by_subset) add(u);
  for (const auto& u : S.big_at_place) add(u);
  // totally positive units of V with all embeddings <= d * bbar:
  // log-box |log u_j| <= max(L, (d-1) L), L = log(d*bbar); exponent bounds via
  // the interval inverse of the generator log matrix (outer, crude logs fine).
  Rat db = Rat(d) * bbar;
  QInterval L = log_enclosure(db);
  Rat Lhi = L.hi;
  // generator log intervals
  Mat lo(r, Vec(d)), hi(r, Vec(d));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < d; ++j) {
      QInterval l = K.log_embed_bound(V.gens[i], j);
      lo[i][j] = l.lo;
      hi[i][j] = l.hi;
    }
  // |e| bounds: solve per pair of places (d=2: one place pair; d=3: 2x2 systems)
  // conservative: e bound = (d-1) * Lhi * max row-sum of |inverse| over place
  // subsets; fall back to a generous fixed radius when the inverse is wild.
  // rigorous exponent bound: e = M^{-1} logvec with M[i][j] = log gen_j at
  // place i (interval entries); per-place |log| <= (d-1) * Lhi inside S_V
  long radius = -1;
  for (int pow2 : {8, 12, 16}) {
    IMat M(r, std::vector<QInterval>(r, QInterval(Rat(0))));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        QInterval l = K.log_embed_bound(V.gens[j], i, pow2);
        M[i][j] = l;
      }
    auto inv = interval_inverse(M);
    if (!inv) continue;
    Rat mx(0);
    for (int i = 0; i < r; ++i) {
      Rat s(0);
      for (int j = 0; j < r; ++j) {
        Rat a = std::max(Rat(abs((*inv)[i][j].lo)), Rat(abs((*inv)[i][j].hi)));
        s += a;
      }
      if (s > mx) mx = s;
    }
    Rat bound = mx * Rat(d - 1) * Lhi + 1;
    radius = floor_rat(bound).get_si() + 1;
    break;
  }
  if (radius < 0) throw ToolkitError("reducing_unit_set: log matrix too degenerate");
  if (radius > 80) throw ToolkitError("reducing_unit_set: exponent box too large");
  std::vector<long> e(r, -radius);
  for (;;) {
    bool nonzero = std::any_of(e.begin(), e.end(), [](long v) { return v != 0; });
    if (nonzero) {
      Vec u = K.one();
      for (int i = 0; i < r; ++i)
        if (e[i] != 0) u = K.mul(u, K.power(V.gens[i], e[i]));
      bool ok = true;
      for (int j = 0; j < d && ok; ++j)
        if (K.cmp_embed(u, db, j) > 0) ok = false;
      if (ok) add(u);
    }
    int i = 0;
    while (i < r && e[i] == radius) e[i++] = -radius;
    if (i == r) break;
    ++e[i];
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

TraceMinCone trace_minimal_cone(const NumberField& K, const UnitSubgroup& V) {
  int d = K.d;
  TraceMinCone cone;
  cone.V = V;
  SignedUnits S = find_signed_units(K, V);
  cone.balanced_bound = balanced_bound(K, S);
  cone.reducing_units = reducing_unit_set(K, V, S, cone.balanced_bound);
  // half-spaces Tr(u x) >= Tr(x)  <=>  sum_j x_j Tr((u-1) w_j) >= 0
  std::vector<HalfSpace> hs;
  for (const Vec& u : cone.reducing_units) {
    Vec um1 = vec_sub(u, K.one());
    Vec normal(d);
    for (int j = 0; j < d; ++j) {
      Vec ej(d, Rat(0));
      ej[j] = 1;
      normal[j] = -K.trace(K.mul(um1, ej));  // as <= constraint
    }
    if (is_zero(normal)) continue;
    hs.push_back({normal, Rat(0), false});
  }
  // bounded slice: cone ∩ {Tr x <= 1}; vertices are 0 and the primitive rays
  Vec tr(d);
  for (int j = 0; j < d; ++j) {
    Vec ej(d, Rat(0));
    ej[j] = 1;
    tr[j] = K.trace(ej);
  }
  std::vector<HalfSpace> slice = hs;
  slice.push_back({tr, Rat(1), false});
  Polytope P{d, slice};
  std::vector<Vec> verts = vertices(P);  // throws if the slice is unbounded
  std::vector<Vec> rays;
  for (const Vec& v : verts) {
    if (is_zero(v)) continue;
    // clear denominators, divide by content
    Int den(1);
    for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    Vec w = vec_scale(v, Rat(den));
    Int g(0);
    for (const auto& q : w) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    if (g != 0) w = vec_scale(w, Rat(1) / Rat(g));
    rays.push_back(w);
  }
  std::sort(rays.begin(), rays.end(), lex_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  cone.rays = rays;
  // facets: halfspaces tight on >= d-1 independent rays (plus the apex)
  std::vector<HalfSpace> facets;
  std::set<std::string> fseen;
  for (const auto& h : hs) {
    std::vector<Vec> tight{Vec(d, Rat(0))};
    for (const auto& rv : rays)
      if (dot(h.normal, rv) == 0) tight.push_back(rv);
    if (affine_rank(tight) != d - 1) continue;
    // canonical key by content-normalized normal
    Vec n = h.normal;
    Int den(1), g(0);
    for (const auto& q : n) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    n = vec_scale(n, Rat(den));
    for (const auto& q : n) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    if (g != 0) n = vec_scale(n, Rat(1) / Rat(g));
    std::string k;
    for (const auto& q : n) k += rat_str(q) + ",";
    if (fseen.insert(k).second) facets.push_back({n, Rat(0), false});
  }
  cone.halfspaces = facets;
  // invariant: every ray is fixed-trace under >= 2 nontrivial units of V
  for (const auto& rv : rays) {
    int count = 0;
    for (const Vec& u : cone.reducing_units)
      if (K.trace(K.mul(u, rv)) == K.trace(rv)) ++count;
    if (count < (d > 2 ? 2 : 1))
      throw ToolkitError("cone ray not supported by unit equalities");
  }
  return cone;
}

bool is_trace_minimal(const NumberField& K, const TraceMinCone& cone, const Vec& x) {
  (void)K;
  for (const auto& h : cone.halfspaces)
    if (sgn(dot(h.normal, x)) > 0) return false;
  return true;
}

std::vector<Vec> enumerate_tp_with_trace_bound(const NumberField& K, const FractionalIdeal& M,
                                               const Vec& r, const Rat& c) {
  int d = K.d;
  if (sgn(c) <= 0) return {};
  Mat B = M.basis();
  // exact halfspace Tr(x r) <= c in z-coordinates (x = z * B)
  Vec trow(d);
  for (int j = 0; j < d; ++j) trow[j] = K.trace(K.mul(B[j], r));
  // embedding upper bounds y_i <= c / r_i
  std::vector<Rat> ybound(d);
  for (int i = 0; i < d; ++i) {
    QInterval ri = tight_embed(K, r, i, 8);
    if (!ri.positive()) throw ToolkitError("trace-bound enumeration needs r >> 0");
    ybound[i] = c / ri.lo;
  }
  // z-box via interval inverse of the embedding matrix of B
  const int kBits = 20;
  Mat emb_mid(d, Vec(d));
  Mat emb_err(d, Vec(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      QInterval v = tight_embed(K, B[j], i, kBits + 8);
      // absolute refinement for coefficients near zero
      Rat w(1, Int(1) << (kBits + 4));
      if (v.width() > w) v = K.embed(B[j], i, w);
      emb_mid[i][j] = v.mid();
      emb_err[i][j] = v.width() / 2;
    }
  IMat embI(d, std::vector<QInterval>(d, QInterval(Rat(0))));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      embI[i][j] = QInterval(emb_mid[i][j] - emb_err[i][j], emb_mid[i][j] + emb_err[i][j]);
  auto inv = interval_inverse(embI);
  if (!inv) throw ToolkitError("embedding matrix enclosure is singular");
  Vec zbound(d, Rat(0));
  for (int j = 0; j < d; ++j) {
    Rat s(0);
    for (int i = 0; i < d; ++i) {
      Rat a = std::max(Rat(abs((*inv)[i][j].lo)), Rat(abs((*inv)[i][j].hi)));
      s += a * ybound[i];
    }
    zbound[j] = s + 1;
  }
  Rat zsum(0);
  for (int j = 0; j < d; ++j) zsum += zbound[j];
  // outer polytope: relaxed positivity + exact trace row + z-box
  std::vector<HalfSpace> hs;
  for (int i = 0; i < d; ++i) {
    Vec row(d);
    for (int j = 0; j < d; ++j) row[j] = -emb_mid[i][j];  // -(E z) <= delta
    Rat delta(0);
    for (int j = 0; j < d; ++j) delta += emb_err[i][j] * zbound[j];
    hs.push_back({row, delta, false});
  }
  hs.push_back({trow, c, false});
  for (int j = 0; j < d; ++j) {
    Vec row(d, Rat(0));
    row[j] = 1;
    hs.push_back({row, zbound[j], false});
    Vec rown(d, Rat(0));
    rown[j] = -1;
    hs.push_back({rown, zbound[j], false});
  }
  Polytope P{d, hs};
  std::vector<Vec> zs = lattice_points(P, LatticeBasis::standard(d));
  std::vector<Vec> out;
  for (const auto& z : zs) {
    Vec x = row_times_mat(z, B);
    if (is_zero(x)) continue;
    if (K.trace(K.mul(x, r)) >= c) continue;
    if (!K.totally_positive(x)) continue;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

ReducerSet reducers(const NumberField& K, const TraceMinCone& cone, const FractionalIdeal& M) {
  ReducerSet R;
  R.M = M;
  R.min_M = M.min_rational();
  std::set<std::string> seen;
  for (const Vec& ray : cone.rays) {
    Rat c = R.min_M * K.trace(ray);
    for (const auto& x : enumerate_tp_with_trace_bound(K, M, ray, c)) {
      std::string k;
      for (const auto& v : x) k += rat_str(v) + ",";
      if (seen.insert(k).second) R.reducers.push_back(x);
    }
  }
  std::sort(R.reducers.begin(), R.reducers.end(), lex_less);
  return R;
}

std::vector<Vec> ReducerSet::with_min() const {
  std::vector<Vec> out = reducers;
  Vec m = vec_scale(M.field()->one_coords(), min_M);
  out.push_back(m);
  return out;
}

}  // namespace cusp
