#include "cusp/poly.hpp"

#include <algorithm>

namespace cusp {

int Poly::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (sgn(c[i]) != 0) return i;
  return -1;
}

void Poly::trim() {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

Rat Poly::eval(const Rat& x) const {
  Rat v(0);
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c[i];
  return v;
}

QInterval Poly::eval(const QInterval& x) const {
  QInterval v{Rat(0)};
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c[i];
  return v;
}

Poly Poly::derivative() const {
  Poly d;
  for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rat(static_cast<long>(i)));
  return d;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  r.trim();
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  r.trim();
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.resize(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

Poly poly_rem(Poly a, const Poly& b) {
  int db = b.degree();
  if (db < 0) throw ToolkitError("poly_rem by zero");
  a.trim();
  while (a.degree() >= db) {
    int da = a.degree();
    Rat f = a.c[da] / b.c[db];
    for (int i = 0; i <= db; ++i) a.c[da - db + i] -= f * b.c[i];
    a.trim();
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    Poly r = poly_rem(a, b);
    a = b;
    b = r;
  }
  if (!a.is_zero()) {
    Rat lead = a.c[a.degree()];
    for (auto& v : a.c) v /= lead;
  }
  return a;
}

namespace {

std::vector<Poly> sturm_chain(const Poly& f) {
  std::vector<Poly> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    Poly r = poly_rem(chain[chain.size() - 2], chain.back());
    for (auto& v : r.c) v = -v;
    r.trim();
    if (r.is_zero()) break;
    chain.push_back(r);
  }
  return chain;
}

int sign_changes(const std::vector<Poly>& chain, const Rat& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::vector<QInterval> isolate_real_roots(const Poly& f) {
  auto chain = sturm_chain(f);
  // Cauchy bound
  Rat lead = abs(f.c[f.degree()]);
  Rat maxc(0);
  for (int i = 0; i < f.degree(); ++i) maxc = std::max(maxc, Rat(abs(f.c[i])));
  Rat B = Rat(1) + maxc / lead;
  std::vector<QInterval> out;
  struct Item { Rat a, b; int va, vb; };
  std::vector<Item> stack;
  Rat a = -B, b = B;
  stack.push_back({a, b, sign_changes(chain, a), sign_changes(chain, b)});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    int n = it.va - it.vb;
    if (n == 0) continue;
    if (n == 1) {
      // shrink until the endpoints bracket a sign change of f itself
      Rat lo = it.a, hi = it.b;
      while (sgn(f.eval(lo)) * sgn(f.eval(hi)) >= 0) {
        Rat m = (lo + hi) / 2;
        int sm = sgn(f.eval(m));
        if (sm == 0) {  // rational root: nudge the box around it
          Rat eps = (hi - lo) / 1024;
          out.push_back({m - eps, m + eps});
          goto next;
        }
        int vm = sign_changes(chain, m);
        if (it.va - vm == 1) hi = m, it.vb = vm;
        else lo = m, it.va = vm;
      }
      out.push_back({lo, hi});
    next:;
      continue;
    }
    Rat m = (it.a + it.b) / 2;
    while (sgn(f.eval(m)) == 0) m = (it.a + m) / 2;
    int vm = sign_changes(chain, m);
    stack.push_back({it.a, m, it.va, vm});
    stack.push_back({m, it.b, vm, it.vb});
  }
  std::sort(out.begin(), out.end(), [](const QInterval& x, const QInterval& y) { return x.lo < y.lo; });
  return out;
}

QInterval refine_root(const Poly& f, const QInterval& box) {
  Rat m = box.mid();
  int sm = sgn(f.eval(m));
  if (sm == 0) throw ToolkitError("refine_root: rational root");
  int sa = sgn(f.eval(box.lo));
  if (sa == sm) return {m, box.hi};
  return {box.lo, m};
}

}  // namespace cusp
