#include "hyperturan/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperturan {

Rational factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(out);
}

Rational power(const Rational& base, int exp) {
  if (exp < 0) throw std::invalid_argument("power: negative exponent");
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational single_edge_density(int r) {
  if (r < 1) throw std::invalid_argument("single_edge_density: r must be positive");
  return factorial(r) / power(Rational(r), r);
}

Rational best_rational(double value, long max_denominator) {
  if (!std::isfinite(value)) throw std::invalid_argument("best_rational: non-finite value");
  if (max_denominator < 1) throw std::invalid_argument("best_rational: bad denominator cap");
  // Convergents p_k/q_k of the continued fraction of value.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest(value);
  for (int iter = 0; iter < 64; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class p2 = a * p1 + p0;
    mpz_class q2 = a * q1 + q0;
    if (q2 > max_denominator) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  if (q1 == 0) return Rational(mpz_class(std::floor(value)));
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace hyperturan
