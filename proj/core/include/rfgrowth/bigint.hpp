#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rfg {

// All group-theoretic quantities (moduli, sequence values, orders) are exact;
// the moduli d(k) outgrow 64 bits for every superlinear growth function.
using Bigint = mpz_class;

inline Bigint bigint_of(long v) { return Bigint(v); }

inline Bigint parse_bigint(const std::string& text) {
  Bigint v;
  if (v.set_str(text, 10) != 0) throw std::invalid_argument("not a decimal integer: " + text);
  return v;
}

inline std::string to_decimal(const Bigint& v) { return v.get_str(); }

// Least nonnegative residue of a mod m (m > 0). mpz % follows the sign of a.
inline Bigint mod_floor(const Bigint& a, const Bigint& m) {
  Bigint r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Bigint gcd(const Bigint& a, const Bigint& b) {
  Bigint r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Bigint lcm(const Bigint& a, const Bigint& b) {
  Bigint r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline size_t bit_length(const Bigint& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

inline bool fits_long(const Bigint& v) { return v.fits_slong_p(); }

inline long to_long(const Bigint& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("bigint does not fit a machine word: " + v.get_str());
  return v.get_si();
}

inline Bigint pow_big(const Bigint& base, unsigned long exp) {
  Bigint r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

}  // namespace rfg
