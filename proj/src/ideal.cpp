#include "cusp/ideal.hpp"

#include "cusp/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace cusp {

void FractionalIdeal::canonicalize(Mat rational_rows) {
  int d = K_->d;
  Int den(1);
  for (const auto& r : rational_rows)
    for (const auto& v : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  IntMat rows;
  for (const auto& r : rational_rows) {
    IntVec ir(d);
    for (int j = 0; j < d; ++j) {
      Rat v = r[j] * Rat(den);
      ir[j] = v.get_num();
    }
    rows.push_back(ir);
  }
  IntMat H = hnf(std::move(rows), d);
  Int g = den;
  for (const auto& r : H)
    for (const auto& v : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  for (auto& r : H)
    for (auto& v : r) v /= g;
  rows_ = H;
  den_ = den / g;
}

FractionalIdeal FractionalIdeal::whole_ring(const FieldPtr& K) {
  FractionalIdeal I;
  I.K_ = K;
  Mat rows;
  for (int j = 0; j < K->d; ++j) {
    Vec e(K->d, Rat(0));
    e[j] = 1;
    rows.push_back(e);
  }
  I.canonicalize(rows);
  return I;
}

FractionalIdeal FractionalIdeal::from_rows(const FieldPtr& K, const Mat& rational_rows) {
  FractionalIdeal I;
  I.K_ = K;
  I.canonicalize(rational_rows);
  return I;
}

FractionalIdeal FractionalIdeal::from_data(const FieldPtr& K, const IdealData& data) {
  Mat rows;
  for (const auto& r : data.basis) {
    Vec v;
    for (const auto& e : r) v.push_back(Rat(e) / Rat(data.den));
    rows.push_back(v);
  }
  return from_rows(K, rows);
}

FractionalIdeal FractionalIdeal::principal(const FieldPtr& K, const Vec& g) {
  return from_gens(K, {g});
}

FractionalIdeal FractionalIdeal::from_gens(const FieldPtr& K, const std::vector<Vec>& gens) {
  Mat rows;
  for (const auto& g : gens) {
    for (int j = 0; j < K->d; ++j) {
      Vec e(K->d, Rat(0));
      e[j] = 1;
      rows.push_back(K->mul(g, e));
    }
  }
  FractionalIdeal I;
  I.K_ = K;
  I.canonicalize(rows);
  return I;
}

Mat FractionalIdeal::basis() const {
  Mat out;
  for (const auto& r : rows_) {
    Vec v;
    for (const auto& e : r) {
      Rat q(e, den_);
      q.canonicalize();
      v.push_back(q);
    }
    out.push_back(v);
  }
  return out;
}

Rat FractionalIdeal::norm() const {
  Rat p(1);
  for (size_t i = 0; i < rows_.size(); ++i) p *= Rat(rows_[i][i]);
  Rat dend(1);
  for (int i = 0; i < K_->d; ++i) dend *= Rat(den_);
  Rat r = p / dend;
  r.canonicalize();
  return r;
}

bool FractionalIdeal::is_integral() const { return den_ == 1; }

bool FractionalIdeal::contains(const Vec& x) const {
  int d = K_->d;
  Vec target(d);
  for (int j = 0; j < d; ++j) target[j] = x[j] * Rat(den_);
  Vec y(d, Rat(0));
  for (int i = 0; i < d; ++i) {
    Rat rem = target[i];
    for (int j = 0; j < i; ++j) rem -= y[j] * Rat(rows_[j][i]);
    y[i] = rem / Rat(rows_[i][i]);
    if (!is_integer(y[i])) return false;
  }
  return true;
}

bool FractionalIdeal::same_as(const FractionalIdeal& o) const {
  return den_ == o.den_ && rows_ == o.rows_;
}

std::string FractionalIdeal::key() const {
  std::ostringstream ss;
  ss << den_.get_str();
  for (const auto& r : rows_)
    for (const auto& v : r) ss << "," << v.get_str();
  return ss.str();
}

FractionalIdeal FractionalIdeal::mul(const FractionalIdeal& o) const {
  Mat rows;
  Mat a = basis(), b = o.basis();
  for (const auto& x : a)
    for (const auto& y : b) rows.push_back(K_->mul(x, y));
  FractionalIdeal I;
  I.K_ = K_;
  I.canonicalize(rows);
  return I;
}

FractionalIdeal FractionalIdeal::mul_element(const Vec& g) const {
  Mat rows;
  for (const auto& x : basis()) rows.push_back(K_->mul(x, g));
  FractionalIdeal I;
  I.K_ = K_;
  I.canonicalize(rows);
  return I;
}

FractionalIdeal FractionalIdeal::mul_rat(const Rat& r) const {
  Mat rows = basis();
  for (auto& row : rows) row = vec_scale(row, r);
  FractionalIdeal I;
  I.K_ = K_;
  I.canonicalize(rows);
  return I;
}

FractionalIdeal FractionalIdeal::inverse() const {
  if (norm() == 0) throw ToolkitError("inverse of the zero module");
  // (O : M) = intersection over basis elements m of { x : x m in O }
  int d = K_->d;
  Mat current;
  bool first = true;
  for (const auto& m : basis()) {
    Mat R = K_->regular_rep(m);
    auto Rinv = cusp::inverse(R);
    if (!Rinv) throw ToolkitError("singular regular representation");
    // lattice { z * Rinv : z integral }
    Mat L = *Rinv;
    current = first ? lattice_canonical(L, d) : lattice_intersect(current, L);
    first = false;
  }
  FractionalIdeal I;
  I.K_ = K_;
  I.canonicalize(current);
  return I;
}

FractionalIdeal FractionalIdeal::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FractionalIdeal r = whole_ring(K_);
  FractionalIdeal b = *this;
  while (e) {
    if (e & 1) r = r.mul(b);
    b = b.mul(b);
    e >>= 1;
  }
  return r;
}

Rat FractionalIdeal::min_rational() const {
  // smallest t > 0 with t*1 in the lattice: t * one * den in Z-span(rows)
  int d = K_->d;
  Vec one = K_->one_coords();
  Vec target(d);
  for (int j = 0; j < d; ++j) target[j] = one[j] * Rat(den_);
  // solve y * rows = t * target: y_i = t * w_i with w from back substitution
  Vec w(d, Rat(0));
  for (int i = 0; i < d; ++i) {
    Rat rem = target[i];
    for (int j = 0; j < i; ++j) rem -= w[j] * Rat(rows_[j][i]);
    w[i] = rem / Rat(rows_[i][i]);
  }
  // minimal t > 0 with t*w integral: t = 1 / gcd(w)
  Rat g(0);
  for (const auto& v : w) g = rat_gcd(g, v);
  if (sgn(g) == 0) throw ToolkitError("min of the zero module");
  return Rat(1) / g;
}

FractionalIdeal FractionalIdeal::trace_dual() const {
  // rows of (G B^T)^-1 where B = rational basis rows, G = trace Gram matrix
  Mat B = basis();
  Mat GBt = mat_mul(K_->gram(), transpose(B));
  auto inv = cusp::inverse(GBt);
  if (!inv) throw ToolkitError("trace_dual: singular");
  FractionalIdeal I;
  I.K_ = K_;
  I.canonicalize(*inv);
  return I;
}

FractionalIdeal codifferent(const FieldPtr& K) {
  return FractionalIdeal::whole_ring(K).trace_dual();
}

FractionalIdeal different(const FieldPtr& K) { return codifferent(K).inverse(); }

// ---- prime splitting ----

namespace {

using ModPoly = std::vector<Int>;  // dense, constant first, coefficients mod p

ModPoly mp_trim(ModPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ModPoly mp_mod(ModPoly a, const ModPoly& b, const Int& p) {
  // b monic
  a = mp_trim(std::move(a));
  while (a.size() >= b.size()) {
    Int c = a.back();
    size_t k = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[k + i] = ((a[k + i] - c * b[i]) % p + p) % p;
    a = mp_trim(std::move(a));
  }
  return a;
}

ModPoly mp_divexact(ModPoly a, const ModPoly& b, const Int& p) {
  // exact division, b monic up to unit: normalize b first
  ModPoly bb = mp_trim(b);
  Int lead = bb.back();
  Int inv;
  mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), p.get_mpz_t());
  for (auto& v : bb) v = (v * inv) % p;
  ModPoly q(a.size() - bb.size() + 1, Int(0));
  a = mp_trim(std::move(a));
  while (a.size() >= bb.size()) {
    Int c = a.back();
    size_t k = a.size() - bb.size();
    q[k] = c;
    for (size_t i = 0; i < bb.size(); ++i) a[k + i] = ((a[k + i] - c * bb[i]) % p + p) % p;
    a = mp_trim(std::move(a));
  }
  if (!a.empty()) throw ToolkitError("mp_divexact: not divisible");
  for (auto& v : q) v = (v * inv) % p;  // a = q_hat * (inv*b) so q = q_hat * inv
  return mp_trim(q);
}

// Roots of f mod p with multiplicity, by scanning residues (p stays small in
// this toolkit: primes divide norms of enumerated ideals).
std::vector<std::pair<Int, int>> mp_roots(const ModPoly& f, const Int& p) {
  if (p > 20000000) throw ToolkitError("prime too large for residue scan");
  std::vector<std::pair<Int, int>> out;
  ModPoly cur = mp_trim(f);
  for (Int a(0); a < p; ++a) {
    // evaluate
    Int v(0);
    for (size_t i = cur.size(); i-- > 0;) v = (v * a + cur[i]) % p;
    if (v != 0) continue;
    int mult = 0;
    ModPoly lin{(p - a) % p, Int(1)};
    for (;;) {
      ModPoly rem = mp_mod(cur, lin, p);
      if (!rem.empty()) break;
      cur = mp_divexact(cur, lin, p);
      ++mult;
    }
    if (mult > 0) out.push_back({a, mult});
    if (cur.size() <= 1) break;
  }
  return out;
}

}  // namespace

std::vector<PrimePower> primes_above(const FieldPtr& K, const Int& p) {
  if (K->power_basis_index() % p == 0)
    throw ToolkitError("prime divides the index of the power basis order: " + p.get_str());
  int d = K->d;
  ModPoly f;
  for (int i = 0; i <= d; ++i) {
    Int c = K->min_poly.c[i].get_num();
    f.push_back(((c % p) + p) % p);
  }
  auto roots = mp_roots(f, p);
  std::vector<PrimePower> out;
  ModPoly cof = f;
  Vec pel = K->from_rat(Rat(p));
  for (auto& [a, mult] : roots) {
    // prime (p, theta - a)
    Vec g = vec_sub(K->theta_power(1), K->from_rat(Rat(a)));
    PrimePower pp;
    pp.prime = FractionalIdeal::from_gens(K, {pel, g});
    pp.p = p;
    pp.f = 1;
    pp.e = mult;
    pp.exponent = 0;
    out.push_back(pp);
    ModPoly lin{(p - a) % p, Int(1)};
    for (int i = 0; i < mult; ++i) cof = mp_divexact(cof, lin, p);
  }
  cof = mp_trim(cof);
  if (cof.size() > 1) {
    // irreducible cofactor of degree 2 or 3 (all roots were removed)
    int deg = static_cast<int>(cof.size()) - 1;
    Vec g = K->zero();
    for (int i = 0; i <= deg; ++i)
      g = vec_add(g, vec_scale(K->theta_power(i), Rat(cof[i])));
    PrimePower pp;
    pp.prime = FractionalIdeal::from_gens(K, {pel, g});
    pp.p = p;
    pp.f = deg;
    pp.e = 1;
    pp.exponent = 0;
    out.push_back(pp);
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& x, const PrimePower& y) { return x.prime.key() < y.prime.key(); });
  return out;
}

std::vector<PrimePower> factor_ideal(const FractionalIdeal& I) {
  if (!I.is_integral()) throw ToolkitError("factor_ideal: ideal must be integral");
  Rat n = I.norm();
  Int N = n.get_num();
  std::vector<PrimePower> out;
  Int rem = N;
  for (Int p(2); p * p <= rem; ++p) {
    if (rem % p != 0) continue;
    while (rem % p == 0) rem /= p;
    for (auto pp : primes_above(I.field(), p)) {
      FractionalIdeal Pinv = pp.prime.inverse();
      FractionalIdeal J = I;
      int v = 0;
      for (;;) {
        FractionalIdeal nxt = J.mul(Pinv);
        if (!nxt.is_integral()) break;
        J = nxt;
        ++v;
      }
      if (v > 0) {
        pp.exponent = v;
        out.push_back(pp);
      }
    }
  }
  if (rem > 1) {
    for (auto pp : primes_above(I.field(), rem)) {
      FractionalIdeal Pinv = pp.prime.inverse();
      FractionalIdeal J = I;
      int v = 0;
      for (;;) {
        FractionalIdeal nxt = J.mul(Pinv);
        if (!nxt.is_integral()) break;
        J = nxt;
        ++v;
      }
      if (v > 0) {
        pp.exponent = v;
        out.push_back(pp);
      }
    }
  }
  return out;
}

std::vector<FractionalIdeal> divisors(const FractionalIdeal& I) {
  auto fac = factor_ideal(I);
  std::vector<FractionalIdeal> out{FractionalIdeal::whole_ring(I.field())};
  for (const auto& pp : fac) {
    std::vector<FractionalIdeal> next;
    FractionalIdeal pe = FractionalIdeal::whole_ring(I.field());
    for (int e = 0; e <= pp.exponent; ++e) {
      for (const auto& J : out) next.push_back(J.mul(pe));
      if (e < pp.exponent) pe = pe.mul(pp.prime);
    }
    out = std::move(next);
  }
  return out;
}

Rat level_index(const FractionalIdeal& I) {
  Rat idx = I.norm();
  for (const auto& pp : factor_ideal(I)) {
    Rat np = pp.prime.norm();
    idx *= Rat(1) + Rat(1) / np;
  }
  return idx;
}

// ---- principality ----

namespace {

// Elements g of the integral ideal J0 with |N(g)| = N(J0), inside the
// balanced box derived from the unit lattice covering bound.  Any principal
// ideal has a generator in this box, so an empty result is conclusive.
std::vector<Vec> generator_candidates(const FractionalIdeal& J0, const UnitGroupData& U) {
  const FieldPtr& K = J0.field();
  int d = K->d;
  Int N = J0.norm().get_num();
  // rho = (sum of sup-norms of unit log vectors)/2, outward rounded
  Rat rho(0);
  for (const Vec& u : U.fundamental_units) {
    Rat m(0);
    for (int i = 0; i < d; ++i) {
      QInterval l = K->log_embed_bound(u, i);
      Rat a = std::max(Rat(abs(l.lo)), Rat(abs(l.hi)));
      if (a > m) m = a;
    }
    rho += m;
  }
  rho = rho / 2 + Rat(1, 2);
  // embedding bound B = exp(rho) * N^(1/d), via 2^ceil(rho/ln2) and integer root
  Rat ln2_lo(Rat(693147, 1000000));
  long k = static_cast<long>(floor_rat(rho / ln2_lo).get_si()) + 1;
  if (k > 200) throw InconclusiveError("unit lattice too large for a complete generator search");
  Int shifted(1);
  mpz_mul_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(), static_cast<unsigned long>(k));
  Rat expb = Rat(shifted);
  Int root;
  mpz_root(root.get_mpz_t(), N.get_mpz_t(), d);
  Rat B = expb * Rat(root + 1);
  // coordinate box: z -> coords via triangular rows; coords bounded by |x_j| where
  // x = sum z_k rows[k]; use embedding box -> coordinate box via inverse embeddings
  IMat embI(d, std::vector<QInterval>(d, QInterval(Rat(0))));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec bj(d, Rat(0));
      bj[j] = 1;
      embI[i][j] = K->embed(bj, i, Rat(1, 1 << 20));
    }
  auto inv = interval_inverse(embI);
  if (!inv) throw ToolkitError("embedding matrix enclosure is singular");
  Vec coordB(d, Rat(0));
  for (int j = 0; j < d; ++j) {
    Rat s(0);
    for (int i = 0; i < d; ++i) {
      Rat a = std::max(Rat(abs((*inv)[i][j].lo)), Rat(abs((*inv)[i][j].hi)));
      s += a;
    }
    coordB[j] = s * B + 1;
  }
  // triangular enumeration of y with sum y_k rows[k][j] within coordB
  const IntMat& rows = J0.rows();
  std::vector<Vec> found;
  std::vector<Int> y(d, Int(0));
  Vec partial(d, Rat(0));
  auto rec = [&](auto&& self, int lvl) -> void {
    if (lvl == d) {
      Vec g(d);
      bool nonzero = false;
      for (int j = 0; j < d; ++j) {
        g[j] = partial[j];
        nonzero |= sgn(g[j]) != 0;
      }
      if (!nonzero) return;
      Rat n = K->norm(g);
      if (abs(n) == Rat(N)) found.push_back(g);
      return;
    }
    // coordinate lvl receives its last contribution from row lvl
    Rat lo = (-coordB[lvl] - partial[lvl]) / Rat(rows[lvl][lvl]);
    Rat hi = (coordB[lvl] - partial[lvl]) / Rat(rows[lvl][lvl]);
    if (lo > hi) std::swap(lo, hi);
    for (Int v = ceil_rat(lo); v <= floor_rat(hi); ++v) {
      Vec save = partial;
      for (int j = lvl; j < d; ++j) partial[j] += Rat(v) * Rat(rows[lvl][j]);
      y[lvl] = v;
      self(self, lvl + 1);
      partial = save;
    }
  };
  rec(rec, 0);
  return found;
}

}  // namespace

std::optional<Vec> principal_generator(const FractionalIdeal& J, const UnitGroupData& U) {
  // scale to a primitive integral ideal; generators scale back by the factor
  Rat scale = Rat(J.den());
  FractionalIdeal J0 = J.mul_rat(scale);
  auto cands = generator_candidates(J0, U);
  if (cands.empty()) return std::nullopt;
  Vec g = cands.front();
  return vec_scale(g, Rat(1) / scale);
}

std::optional<Vec> narrowly_principal(const FractionalIdeal& J, const UnitGroupData& U) {
  const FieldPtr& K = J.field();
  Rat scale = Rat(J.den());
  FractionalIdeal J0 = J.mul_rat(scale);
  auto cands = generator_candidates(J0, U);
  if (cands.empty()) return std::nullopt;
  const Vec& g = cands.front();
  SignVector s = K->signs_at_real_places(g);
  std::vector<int> target(K->d);
  for (int i = 0; i < K->d; ++i) target[i] = s[i] < 0 ? 1 : 0;
  auto e = gf2_solve(U.sign_matrix, target);
  if (!e) return std::nullopt;
  Vec u = K->one();
  if ((*e)[0]) u = vec_scale(u, Rat(-1));
  for (size_t i = 1; i < e->size(); ++i)
    if ((*e)[i]) u = K->mul(u, U.fundamental_units[i - 1]);
  Vec gg = K->mul(u, g);
  if (!K->totally_positive(gg)) throw ToolkitError("sign adjustment failed");
  return vec_scale(gg, Rat(1) / scale);
}

FractionalIdeal ideal_from_label(const FieldPtr& K, const std::string& label) {
  FractionalIdeal I = FractionalIdeal::whole_ring(K);
  size_t i = 0;
  auto read_int = [&]() {
    size_t j = i;
    while (j < label.size() && isdigit(label[j])) ++j;
    Int v(label.substr(i, j - i).c_str());
    i = j;
    return v;
  };
  while (i < label.size()) {
    char c = label[i];
    FractionalIdeal factor = FractionalIdeal::whole_ring(K);
    if (c == '(') {
      ++i;
      Int n = read_int();
      if (i >= label.size() || label[i] != ')') throw ToolkitError("bad ideal label: " + label);
      ++i;
      factor = FractionalIdeal::principal(K, K->from_rat(Rat(n)));
    } else if (isdigit(c)) {
      Int n = read_int();
      factor = FractionalIdeal::principal(K, K->from_rat(Rat(n)));
    } else if (c == 'p' || c == 'r') {
      ++i;
      Int n = read_int();
      // primes of norm n; 'r' wants a ramified one
      auto fac = [&] {
        Int p = n;
        int f = 1;
        for (int deg = 2; deg <= 3; ++deg) {
          Int root;
          if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), deg)) {
            p = root;
            f = deg;
          }
        }
        return std::make_pair(p, f);
      }();
      std::vector<PrimePower> prs = primes_above(K, fac.first);
      FractionalIdeal chosen;
      bool found = false;
      for (const auto& pp : prs) {
        if (pp.prime.norm() != Rat(n)) continue;
        bool ram = pp.e > 1;
        if ((c == 'r') != ram) continue;
        chosen = pp.prime;
        found = true;
        break;
      }
      if (!found) throw ToolkitError("no matching prime for label: " + label);
      factor = chosen;
    } else {
      throw ToolkitError("bad ideal label: " + label);
    }
    long e = 1;
    if (i < label.size() && label[i] == '^') {
      ++i;
      e = read_int().get_si();
    }
    I = I.mul(factor.pow(e));
  }
  return I;
}

Int unit_congruence_index(const FieldPtr& K, const std::vector<Vec>& tp_gens,
                          const FractionalIdeal& m) {
  if (!m.is_integral()) throw ToolkitError("unit_congruence_index: modulus must be integral");
  int r = static_cast<int>(tp_gens.size());
  // reduce an element's coordinates modulo the lattice of m
  auto reduce = [&](Vec x) {
    const IntMat& rows = m.rows();
    for (int i = K->d - 1; i >= 0; --i) {
      Rat q = x[i] / Rat(rows[i][i]);
      Int f = floor_rat(q);
      if (f != 0)
        for (int j = 0; j < K->d; ++j) x[j] -= Rat(f) * Rat(rows[i][j]);
    }
    return x;
  };
  auto key_of = [&](const Vec& x) {
    std::ostringstream ss;
    for (const auto& v : x) ss << rat_str(v) << ",";
    return ss.str();
  };
  // order of each generator in (O/m)^x
  std::vector<long> orders(r);
  for (int i = 0; i < r; ++i) {
    Vec cur = reduce(tp_gens[i]);
    std::string one = key_of(reduce(K->one()));
    long ord = 1;
    while (key_of(cur) != one) {
      cur = reduce(K->mul(cur, tp_gens[i]));
      ++ord;
      if (ord > 1000000) throw ToolkitError("unit order runaway");
    }
    orders[i] = ord;
  }
  long N = 1;
  for (long o : orders) N = N / std::gcd(N, o) * o;
  // kernel lattice of e -> prod gens^e mod m inside Z^r, containing N*Z^r
  IntMat gens;
  for (int i = 0; i < r; ++i) {
    IntVec row(r, Int(0));
    row[i] = N;
    gens.push_back(row);
  }
  std::string one = key_of(reduce(K->one()));
  std::vector<long> e(r, 0);
  for (;;) {
    int i = 0;
    while (i < r && e[i] == N - 1) e[i++] = 0;
    if (i == r) break;
    ++e[i];
    Vec prod = K->one();
    for (int j = 0; j < r; ++j)
      for (long t = 0; t < e[j]; ++t) prod = reduce(K->mul(prod, tp_gens[j]));
    if (key_of(reduce(prod)) == one) {
      IntVec row(r, Int(0));
      for (int j = 0; j < r; ++j) row[j] = e[j];
      gens.push_back(row);
    }
  }
  IntMat H = hnf(std::move(gens), r);
  Int idx(1);
  for (int i = 0; i < r; ++i) idx *= H[i][i];
  return idx;
}

}  // namespace cusp
