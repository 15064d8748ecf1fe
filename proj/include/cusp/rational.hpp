#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace cusp {

using Rat = mpq_class;
using Int = mpz_class;
using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

inline Rat rat_of(long n, long d = 1) { return Rat(n, d); }

// Parse "p/q" or "p"; throws on malformed input.
Rat parse_rat(const std::string& s);

// Render as "p/q" ("p" when the denominator is 1).
std::string rat_str(const Rat& q);

inline Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// gcd of rationals: generator of the group sum a*Z + b*Z inside Q.
Rat rat_gcd(const Rat& a, const Rat& b);
// lcm: generator of the intersection a*Z ∩ b*Z.
Rat rat_lcm(const Rat& a, const Rat& b);

inline int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }

struct ToolkitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cusp
