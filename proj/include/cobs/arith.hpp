// Big-integer helpers shared across the library (GMP-backed).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cobs {

using Int = mpz_class;

// Error taxonomy; the CLI maps these to exit codes.
struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularReduction : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentLift : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaError : BadInput {
  using BadInput::BadInput;
};
struct InvariantViolation : BadInput {
  using BadInput::BadInput;
};
struct TruncationInsufficient : PrecisionExhausted {
  using PrecisionExhausted::PrecisionExhausted;
};
struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

inline Int next_prime(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Non-negative residue of a mod m (m > 0).
inline Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Lift of a mod m into the symmetric interval (-m/2, m/2].
inline Int symmetric_lift(const Int& a, const Int& m) {
  Int r = mod_pos(a, m);
  if (2 * r > m) r -= m;
  return r;
}

// p-adic valuation of a; returns cap if a == 0 (interpreted as >= cap).
inline int valuation(const Int& a, const Int& p, int cap) {
  if (a == 0) return cap;
  Int x = a;
  int v = 0;
  while (v < cap && mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    x /= p;
    ++v;
  }
  return v;
}

inline Int invmod(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw PrecisionExhausted("invmod: non-invertible element mod " + m.get_str());
  return r;
}

inline int ceil_log(const Int& p, const Int& x) {
  // Smallest N >= 0 with p^N >= x.
  int n = 0;
  Int pw = 1;
  while (pw < x) {
    pw *= p;
    ++n;
  }
  return n;
}

}  // namespace cobs
