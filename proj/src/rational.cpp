#include "cusp/rational.hpp"

namespace cusp {

Rat parse_rat(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw ToolkitError("bad rational: " + s);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Int n, d;
  mpz_gcd(n.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_lcm(d.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Rat rat_lcm(const Rat& a, const Rat& b) {
  if (a == 0 || b == 0) return Rat(0);
  Int n, d;
  mpz_lcm(n.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_gcd(d.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  Rat r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace cusp
