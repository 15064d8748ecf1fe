#include "cusp/interval.hpp"

namespace cusp {

namespace {
// ln 2 to 30 digits, rounded both ways.
const QInterval kLn2{parse_rat("693147180559945309417232121458/1000000000000000000000000000000"),
                     parse_rat("693147180559945309417232121459/1000000000000000000000000000000")};
}  // namespace

QInterval log_enclosure(const Rat& q, int pow2) {
  if (sgn(q) <= 0) throw ToolkitError("log of nonpositive value");
  Rat p = q;
  for (int i = 0; i < pow2; ++i) p = p * p;
  // m with 2^m <= p < 2^(m+1)
  long bn = static_cast<long>(mpz_sizeinbase(p.get_num_mpz_t(), 2));
  long bd = static_cast<long>(mpz_sizeinbase(p.get_den_mpz_t(), 2));
  long m = bn - bd;  // within 1 of the truth; fix by comparison
  auto two_to = [](long e) {
    Rat r(1);
    if (e >= 0) {
      Int v;
      mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(e));
      r = Rat(v);
    } else {
      Int v;
      mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(-e));
      r = Rat(1) / Rat(v);
    }
    return r;
  };
  while (p < two_to(m)) --m;
  while (p >= two_to(m + 1)) ++m;
  QInterval scaled = kLn2 * Rat(m);
  QInterval upper = kLn2 * Rat(m + 1);
  Int dv(1);
  mpz_mul_2exp(dv.get_mpz_t(), dv.get_mpz_t(), static_cast<unsigned long>(pow2));
  Rat div(dv);
  return {scaled.lo / div, upper.hi / div};
}

std::optional<IMat> interval_inverse(IMat A) {
  size_t n = A.size();
  IMat I(n, std::vector<QInterval>(n, QInterval(Rat(0))));
  for (size_t i = 0; i < n; ++i) I[i][i] = QInterval(Rat(1));
  for (size_t c = 0; c < n; ++c) {
    size_t p = n;
    for (size_t r = c; r < n; ++r)
      if (!A[r][c].contains_zero()) { p = r; break; }
    if (p == n) return std::nullopt;
    std::swap(A[p], A[c]);
    std::swap(I[p], I[c]);
    QInterval piv = A[c][c];
    for (size_t j = 0; j < n; ++j) {
      A[c][j] = A[c][j] / piv;
      I[c][j] = I[c][j] / piv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      QInterval f = A[r][c];
      if (f.lo == 0 && f.hi == 0) continue;
      for (size_t j = 0; j < n; ++j) {
        A[r][j] = A[r][j] - f * A[c][j];
        I[r][j] = I[r][j] - f * I[c][j];
      }
    }
  }
  return I;
}

QInterval pi_enclosure() {
  return {parse_rat("31415926535897932384626433832795028841/10000000000000000000000000000000000000"),
          parse_rat("31415926535897932384626433832795028842/10000000000000000000000000000000000000")};
}

}  // namespace cusp
