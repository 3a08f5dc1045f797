// Exact rational scalars. All arithmetic in the library is exact; there is
// no floating point anywhere. Backed by GMP's mpq_class, which keeps values
// canonical (lowest terms, positive denominator) for all arithmetic ops.
#ifndef ALGD_SCALAR_HPP
#define ALGD_SCALAR_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace algd {

using Scalar = mpq_class;

inline Scalar scalar_of(long num, long den = 1)
{
  if (den == 0) throw std::invalid_argument("scalar_of: zero denominator");
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q". Throws on malformed input.
inline Scalar parse_scalar(const std::string& s)
{
  if (s.empty()) throw std::invalid_argument("parse_scalar: empty string");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class z(s);
      return Scalar(z);
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_scalar: zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (...) {
    throw std::invalid_argument("parse_scalar: malformed rational '" + s + "'");
  }
}

/// Canonical printing: integer when den == 1, otherwise "p/q".
inline std::string scalar_str(const Scalar& q)
{
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

/// n! as an exact scalar; safe in characteristic zero.
inline Scalar factorial(int n)
{
  Scalar r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

} // namespace algd

#endif
