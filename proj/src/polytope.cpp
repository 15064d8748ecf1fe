#include "cusp/polytope.hpp"

#include "cusp/lp.hpp"

#include <algorithm>
#include <map>
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

// Scale to a canonical representative (first nonzero entry of |normal| = 1)
// so duplicate halfspaces collapse.
std::pair<Vec, Rat> canon_hs(const HalfSpace& h) {
  Rat s(0);
  for (const Rat& v : h.normal)
    if (sgn(v) != 0) { s = abs(v); break; }
  if (sgn(s) == 0) return {h.normal, h.bound};
  Vec n = vec_scale(h.normal, Rat(1) / s);
  return {n, h.bound / s};
}

std::vector<HalfSpace> dedup_halfspaces(const std::vector<HalfSpace>& hs) {
  std::vector<HalfSpace> out;
  std::set<std::pair<std::vector<std::string>, std::string>> seen;
  for (const auto& h : hs) {
    if (is_zero(h.normal)) {
      if (sgn(h.bound) < 0 || (h.strict && sgn(h.bound) == 0))
        return {{Vec(h.normal.size(), Rat(0)), Rat(-1), false}};  // empty marker: 0 <= -1
      continue;
    }
    auto [n, b] = canon_hs(h);
    std::vector<std::string> key;
    key.reserve(n.size());
    for (auto& v : n) key.push_back(rat_str(v));
    auto it = seen.find({key, rat_str(b)});
    if (it == seen.end()) {
      seen.insert({key, rat_str(b)});
      out.push_back({n, b, h.strict});
    }
  }
  return out;
}

Mat hs_matrix(const std::vector<HalfSpace>& hs) {
  Mat A;
  for (const auto& h : hs) A.push_back(h.normal);
  return A;
}

Vec hs_rhs(const std::vector<HalfSpace>& hs) {
  Vec b;
  for (const auto& h : hs) b.push_back(h.bound);
  return b;
}

}  // namespace

LatticeBasis LatticeBasis::standard(int d) {
  return {identity(d), Vec(d, Rat(0))};
}

bool Polytope::contains(const Vec& x, bool honor_strict) const {
  for (const auto& h : hs) {
    Rat v = dot(h.normal, x);
    int c = cmp(v, h.bound);
    if (c > 0) return false;
    if (c == 0 && h.strict && honor_strict) return false;
  }
  return true;
}

std::optional<std::vector<std::pair<Rat, Rat>>> bounding_box(const Polytope& P) {
  Mat A = hs_matrix(P.hs);
  Vec b = hs_rhs(P.hs);
  std::vector<std::pair<Rat, Rat>> box;
  for (int i = 0; i < P.dim; ++i) {
    Vec c(P.dim, Rat(0));
    c[i] = 1;
    LPResult lo = lp_minimize(A, b, c);
    if (lo.status == LPStatus::Infeasible) return std::nullopt;
    if (lo.status == LPStatus::Unbounded) throw UnboundedError("polytope unbounded below in coordinate");
    LPResult hi = lp_maximize(A, b, c);
    if (hi.status == LPStatus::Unbounded) throw UnboundedError("polytope unbounded above in coordinate");
    box.push_back({lo.value, hi.value});
  }
  return box;
}

std::vector<Vec> vertices(const Polytope& P) {
  if (P.cached_vertices) return *P.cached_vertices;
  auto hs = dedup_halfspaces(P.hs);
  int d = P.dim;
  std::vector<Vec> out;
  auto box = bounding_box(P);  // throws when unbounded
  if (!box) {
    P.cached_vertices = out;
    return out;
  }
  int m = static_cast<int>(hs.size());
  std::vector<int> idx(d);
  std::vector<Vec> cand;
  // enumerate d-subsets of facet hyperplanes
  std::vector<int> stack;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(stack.size()) == d) {
      Mat A(d, Vec(d));
      Vec b(d);
      for (int i = 0; i < d; ++i) {
        A[i] = hs[stack[i]].normal;
        b[i] = hs[stack[i]].bound;
      }
      auto x = solve_col(A, b);
      if (x) cand.push_back(*x);
      return;
    }
    for (int j = start; j < m; ++j) {
      stack.push_back(j);
      self(self, j + 1);
      stack.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(cand.begin(), cand.end(), lex_less);
  Polytope closed{P.dim, hs};
  for (auto& x : cand) {
    if (!closed.contains(x, /*honor_strict=*/false)) continue;
    if (!out.empty() && out.back() == x) continue;
    out.push_back(x);
  }
  P.cached_vertices = out;
  return out;
}

namespace {

// Recursive boundary-fan triangulation.  Returns d-simplices as vertex lists.
struct Triangulator {
  const std::vector<Vec>& verts;
  const std::vector<HalfSpace>& hs;
  std::vector<std::vector<int>> tight;  // per halfspace: indices of tight vertices

  std::vector<std::array<int, 8>> simplices;  // up to dim 7 vertices per simplex
  int dim;

  void run() {
    std::vector<int> all(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<int> acc;
    face(all, dim, acc);
  }

  // triangulate the k-face with vertex set `face_verts`, coning from apex
  void face(const std::vector<int>& face_verts, int k, std::vector<int>& acc) {
    if (k == 1) {
      if (face_verts.size() != 2) throw ToolkitError("triangulation: bad edge");
      emit(acc, face_verts[0], face_verts[1]);
      return;
    }
    int apex = face_verts[0];  // vertex lists are sorted: lex-min apex
    std::set<std::vector<int>> subs;
    for (size_t h = 0; h < hs.size(); ++h) {
      std::vector<int> t;
      std::set_intersection(face_verts.begin(), face_verts.end(), tight[h].begin(),
                            tight[h].end(), std::back_inserter(t));
      if (t.empty()) continue;
      if (std::binary_search(t.begin(), t.end(), apex)) continue;
      std::vector<Vec> pts;
      for (int i : t) pts.push_back(verts[i]);
      if (affine_rank(pts) == k - 1) subs.insert(t);
    }
    acc.push_back(apex);
    for (const auto& s : subs) face(s, k - 1, acc);
    acc.pop_back();
  }

  void emit(std::vector<int>& acc, int a, int b) {
    std::array<int, 8> s{};
    int n = 0;
    for (int v : acc) s[n++] = v;
    s[n++] = a;
    s[n++] = b;
    simplices.push_back(s);
  }
};

}  // namespace

Rat volume(const Polytope& P) {
  if (P.cached_volume) return *P.cached_volume;
  auto vs = vertices(P);
  int d = P.dim;
  Rat vol(0);
  if (static_cast<int>(vs.size()) >= d + 1 && affine_rank(vs) == d) {
    if (d == 1) {
      vol = vs.back()[0] - vs.front()[0];
    } else {
      auto hs = dedup_halfspaces(P.hs);
      Triangulator tri{vs, hs, {}, {}, d};
      tri.tight.resize(hs.size());
      for (size_t h = 0; h < hs.size(); ++h)
        for (size_t i = 0; i < vs.size(); ++i)
          if (dot(hs[h].normal, vs[i]) == hs[h].bound) tri.tight[h].push_back(static_cast<int>(i));
      tri.run();
      Rat fact(1);
      for (int i = 2; i <= d; ++i) fact *= i;
      for (const auto& s : tri.simplices) {
        Mat M(d, Vec(d));
        for (int i = 0; i < d; ++i) M[i] = vec_sub(vs[s[i + 1]], vs[s[0]]);
        vol += abs(det(M)) / fact;
      }
    }
  }
  P.cached_volume = vol;
  return vol;
}

Polytope intersect(const Polytope& P, const Polytope& Q) {
  if (P.dim != Q.dim) throw ToolkitError("dimension mismatch");
  std::vector<HalfSpace> hs = P.hs;
  hs.insert(hs.end(), Q.hs.begin(), Q.hs.end());
  return {P.dim, std::move(hs)};
}

Polytope scale(const Polytope& P, const Rat& q) {
  if (sgn(q) <= 0) throw ToolkitError("scale factor must be positive");
  Polytope R = P;
  R.cached_vertices.reset();
  R.cached_volume.reset();
  for (auto& h : R.hs) h.bound *= q;
  return R;
}

bool is_subset(const Polytope& P, const Polytope& Q) {
  return volume(intersect(P, Q)) == volume(P);
}

Polytope prune_redundant(const Polytope& P) {
  auto vs = vertices(P);
  auto hs = dedup_halfspaces(P.hs);
  int d = P.dim;
  if (static_cast<int>(vs.size()) < d + 1) return {P.dim, hs};
  std::vector<HalfSpace> kept;
  for (const auto& h : hs) {
    std::vector<Vec> t;
    for (const auto& v : vs)
      if (dot(h.normal, v) == h.bound) t.push_back(v);
    if (!t.empty() && affine_rank(t) == d - 1) kept.push_back(h);
  }
  Polytope R{P.dim, kept};
  R.cached_vertices = vs;
  R.cached_volume = P.cached_volume;
  return R;
}

// ---- lattice points ----

namespace {

constexpr long kEnumerateCutoff = 10000;

struct EnumState {
  int nfree;
  Mat A;                       // constraints over free coordinates
  Vec b;
  std::vector<bool> strict;
  std::vector<int> free_idx;   // map free slot -> original z index
  Vec fixed;                   // original z values (valid where !is_free)
  std::vector<bool> is_free;
};

void emit_point(const EnumState& st, std::vector<Vec>& out) { out.push_back(st.fixed); }

void substitute(EnumState& st, int slot, const Rat& val) {
  int orig = st.free_idx[slot];
  st.fixed[orig] = val;
  st.is_free[orig] = false;
  for (size_t i = 0; i < st.A.size(); ++i) {
    st.b[i] -= st.A[i][slot] * val;
    st.A[i].erase(st.A[i].begin() + slot);
  }
  st.free_idx.erase(st.free_idx.begin() + slot);
  --st.nfree;
}

bool feasible_fixed(const EnumState& st) {
  for (size_t i = 0; i < st.A.size(); ++i) {
    int c = sgn(st.b[i]);
    if (c < 0) return false;
    if (c == 0 && st.strict[i]) return false;
  }
  return true;
}

void enumerate_box(const EnumState& st, const std::vector<std::pair<Int, Int>>& ranges,
                   std::vector<Vec>& out) {
  int n = st.nfree;
  std::vector<Int> cur(n);
  Vec point(n);
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      for (size_t i = 0; i < st.A.size(); ++i) {
        Rat v(0);
        for (int j = 0; j < n; ++j) v += st.A[i][j] * point[j];
        int c = cmp(v, st.b[i]);
        if (c > 0 || (c == 0 && st.strict[i])) return;
      }
      Vec full = st.fixed;
      for (int j = 0; j < n; ++j) full[st.free_idx[j]] = point[j];
      out.push_back(std::move(full));
      return;
    }
    for (Int v = ranges[k].first; v <= ranges[k].second; ++v) {
      point[k] = Rat(v);
      self(self, k + 1);
    }
  };
  rec(rec, 0);
}

void enumerate_rec(EnumState st, std::vector<Vec>& out) {
  for (;;) {
    if (st.nfree == 0) {
      if (feasible_fixed(st)) emit_point(st, out);
      return;
    }
    // per-coordinate bounds
    std::vector<std::pair<Int, Int>> ranges(st.nfree);
    std::vector<std::pair<Rat, Rat>> rat_ranges(st.nfree);
    for (int j = 0; j < st.nfree; ++j) {
      Vec c(st.nfree, Rat(0));
      c[j] = 1;
      LPResult lo = lp_minimize(st.A, st.b, c);
      if (lo.status == LPStatus::Infeasible) return;
      if (lo.status == LPStatus::Unbounded) throw UnboundedError("lattice_points: unbounded");
      LPResult hi = lp_maximize(st.A, st.b, c);
      if (hi.status == LPStatus::Unbounded) throw UnboundedError("lattice_points: unbounded");
      ranges[j] = {ceil_rat(lo.value), floor_rat(hi.value)};
      rat_ranges[j] = {lo.value, hi.value};
      if (ranges[j].first > ranges[j].second) return;
    }
    // fix singleton coordinates
    bool fixed_any = false;
    for (int j = st.nfree - 1; j >= 0; --j) {
      if (ranges[j].first == ranges[j].second) {
        substitute(st, j, Rat(ranges[j].first));
        fixed_any = true;
      }
    }
    if (fixed_any) continue;
    // small enough for direct enumeration?
    Int count(1);
    bool big = false;
    for (int j = 0; j < st.nfree; ++j) {
      count *= ranges[j].second - ranges[j].first + 1;
      if (count > kEnumerateCutoff) { big = true; break; }
    }
    if (!big || st.nfree == 1) {
      enumerate_box(st, ranges, out);
      return;
    }
    // split the widest coordinate near the midpoint, at a half-integer
    int wide = 0;
    Rat wbest(-1);
    for (int j = 0; j < st.nfree; ++j) {
      Rat w = rat_ranges[j].second - rat_ranges[j].first;
      if (w > wbest) { wbest = w; wide = j; }
    }
    Rat mid = (rat_ranges[wide].first + rat_ranges[wide].second) / 2;
    // nearest half-integer, nudged when integral
    Rat c2 = mid * 2;
    Int r2 = floor_rat(c2 + Rat(1, 2));
    Rat c = Rat(r2) / 2;
    if (is_integer(c)) c += Rat(1, 2);
    EnumState left = st;
    Vec row(st.nfree, Rat(0));
    row[wide] = 1;
    left.A.push_back(row);
    left.b.push_back(Rat(floor_rat(c)));
    left.strict.push_back(false);
    enumerate_rec(std::move(left), out);
    Vec rown(st.nfree, Rat(0));
    rown[wide] = -1;
    st.A.push_back(rown);
    st.b.push_back(-Rat(ceil_rat(c)));
    st.strict.push_back(false);
    // tail recursion on the right half
  }
}

}  // namespace

std::vector<Vec> lattice_points(const Polytope& P, const LatticeBasis& L) {
  int d = P.dim;
  // x = z * B + o  ->  constraints in z:  (B a^T) . z <= bound - a . o
  EnumState st;
  st.nfree = d;
  st.fixed = Vec(d, Rat(0));
  st.is_free.assign(d, true);
  for (int i = 0; i < d; ++i) st.free_idx.push_back(i);
  for (const auto& h : P.hs) {
    Vec an(d, Rat(0));
    for (int i = 0; i < d; ++i) an[i] = dot(L.basis[i], h.normal);
    st.A.push_back(an);
    st.b.push_back(h.bound - dot(h.normal, L.origin));
    st.strict.push_back(h.strict);
  }
  std::vector<Vec> zs;
  enumerate_rec(st, zs);
  std::vector<Vec> out;
  out.reserve(zs.size());
  for (const auto& z : zs) out.push_back(vec_add(row_times_mat(z, L.basis), L.origin));
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- union volume ----

namespace {

struct Piece {
  Polytope poly;
  Rat vol;
};

Rat overlap(const Piece& a, const Piece& b) { return volume(intersect(a.poly, b.poly)); }

}  // namespace

UnionVolume union_volume(const std::vector<Polytope>& parts) {
  UnionVolume result;
  std::vector<Piece> ps;
  for (const auto& p : parts) {
    Rat v = volume(p);
    if (sgn(v) > 0) ps.push_back({prune_redundant(p), v});
  }
  std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) { return a.vol < b.vol; });
  // drop pieces contained in a later (larger) piece
  std::vector<Piece> kept;
  for (size_t i = 0; i < ps.size(); ++i) {
    bool contained = false;
    for (size_t j = i + 1; j < ps.size() && !contained; ++j)
      if (overlap(ps[i], ps[j]) == ps[i].vol) contained = true;
    if (contained)
      ++result.dropped_contained;
    else
      kept.push_back(std::move(ps[i]));
  }
  std::map<int, Piece> pool;
  int next_id = 0;
  for (auto& p : kept) pool.emplace(next_id++, std::move(p));
  std::set<std::pair<int, int>> overlaps;
  for (auto it = pool.begin(); it != pool.end(); ++it)
    for (auto jt = std::next(it); jt != pool.end(); ++jt)
      if (sgn(overlap(it->second, jt->second)) > 0) overlaps.insert({it->first, jt->first});

  auto erase_pairs_with = [&](int id) {
    for (auto it = overlaps.begin(); it != overlaps.end();)
      it = (it->first == id || it->second == id) ? overlaps.erase(it) : std::next(it);
  };

  while (!overlaps.empty()) {
    ++result.passes;
    auto [ia, ib] = *overlaps.begin();
    Piece& A = pool.at(ia);
    Piece& B = pool.at(ib);
    Rat ov = overlap(A, B);
    if (sgn(ov) == 0) {
      overlaps.erase(overlaps.begin());
      continue;
    }
    // containment can reappear after earlier splits
    if (ov == B.vol) {
      erase_pairs_with(ib);
      pool.erase(ib);
      continue;
    }
    if (ov == A.vol) {
      erase_pairs_with(ia);
      pool.erase(ia);
      continue;
    }
    // split B by the facet of A that cuts it most evenly
    int best = -1;
    Rat best_score(-1);
    std::vector<Rat> plus_vol(A.poly.hs.size(), Rat(-1));
    for (size_t f = 0; f < A.poly.hs.size(); ++f) {
      const HalfSpace& h = A.poly.hs[f];
      Polytope bplus = B.poly;
      bplus.cached_vertices.reset();
      bplus.cached_volume.reset();
      bplus.hs.push_back({h.normal, h.bound, false});
      Rat vp = volume(bplus);
      plus_vol[f] = vp;
      Rat vm = B.vol - vp;
      Rat score = vp < vm ? vp : vm;
      if (score > best_score) { best_score = score; best = static_cast<int>(f); }
    }
    if (best < 0 || sgn(best_score) == 0) {
      // no facet of A properly slices B; should not happen after the
      // containment checks, but drop the pair rather than loop
      overlaps.erase(overlaps.begin());
      continue;
    }
    const HalfSpace& h = A.poly.hs[best];
    Polytope bplus = B.poly, bminus = B.poly;
    bplus.cached_vertices.reset();
    bplus.cached_volume.reset();
    bminus.cached_vertices.reset();
    bminus.cached_volume.reset();
    bplus.hs.push_back({h.normal, h.bound, false});
    Vec neg(h.normal.size());
    for (size_t i = 0; i < neg.size(); ++i) neg[i] = -h.normal[i];
    bminus.hs.push_back({neg, -h.bound, false});
    erase_pairs_with(ib);
    pool.erase(ib);
    for (Polytope* halfp : {&bplus, &bminus}) {
      Polytope& half = *halfp;
      Rat v = volume(half);
      if (sgn(v) <= 0) continue;
      Piece piece{prune_redundant(half), v};
      bool contained = false;
      for (auto& [id, q] : pool)
        if (overlap(piece, q) == v) { contained = true; break; }
      if (contained) {
        ++result.dropped_contained;
        continue;
      }
      int id = next_id++;
      for (auto& [jid, q] : pool)
        if (sgn(overlap(piece, q)) > 0) overlaps.insert({std::min(id, jid), std::max(id, jid)});
      pool.emplace(id, std::move(piece));
    }
  }
  Rat total(0);
  for (auto& [id, p] : pool) total += p.vol;
  result.volume = total;
  result.kept = static_cast<int>(pool.size());
  return result;
}

}  // namespace cusp
