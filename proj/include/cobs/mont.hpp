// 64-bit Montgomery arithmetic for an odd modulus < 2^62 (used with p^W).
// The reduction sweeps are the runtime hot spot; everything here is inline.
#pragma once

#include <cstdint>

#include "cobs/arith.hpp"

namespace cobs {

struct Mont64 {
  using limb = uint64_t;
  uint64_t n = 0;     // odd modulus
  uint64_t ninv = 0;  // -n^{-1} mod 2^64
  uint64_t r2 = 0;    // 2^128 mod n
  uint64_t one = 0;   // 2^64 mod n (Montgomery form of 1)

  static Int to_int(uint64_t x) { return Int(static_cast<unsigned long>(x)); }
  static uint64_t from_int(const Int& x) { return mod_pos(x, pow_int(Int(2), 64)).get_ui(); }

  Mont64() = default;
  explicit Mont64(const Int& modulus_int) : Mont64(modulus_int.get_ui()) {
    if (modulus_int >= pow_int(Int(2), 62)) throw BadInput("Mont64: modulus too large");
  }
  explicit Mont64(uint64_t modulus) : n(modulus) {
    if (!(modulus & 1) || modulus >= (uint64_t(1) << 62))
      throw BadInput("Mont64: modulus must be odd and < 2^62");
    // Newton iteration for n^{-1} mod 2^64.
    uint64_t inv = modulus;
    for (int i = 0; i < 5; ++i) inv *= 2 - modulus * inv;
    ninv = ~inv + 1;  // -inv
    // 2^128 mod n via mpz (setup only).
    Int m(static_cast<unsigned long>(modulus));
    Int rr = mod_pos(pow_int(Int(2), 128), m);
    r2 = rr.get_ui();
    Int o = mod_pos(pow_int(Int(2), 64), m);
    one = o.get_ui();
  }

  // Montgomery reduction of a 128-bit value.
  uint64_t redc(__uint128_t x) const {
    uint64_t q = static_cast<uint64_t>(x) * ninv;
    __uint128_t t = (x + static_cast<__uint128_t>(q) * n) >> 64;
    uint64_t r = static_cast<uint64_t>(t);
    return r >= n ? r - n : r;
  }

  uint64_t mul(uint64_t a, uint64_t b) const { return redc(static_cast<__uint128_t>(a) * b); }
  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t r = a + b;
    return r >= n ? r - n : r;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + n - b; }
  uint64_t neg(uint64_t a) const { return a ? n - a : 0; }

  uint64_t to_mont(uint64_t a) const { return mul(a % n, r2); }
  uint64_t from_mont(uint64_t a) const { return redc(a); }

  uint64_t pow(uint64_t base_mont, uint64_t e) const {
    uint64_t r = one, b = base_mont;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  // Inverse of a unit (exact gcd computation; throws if not a unit).
  uint64_t inv(uint64_t a_mont) const {
    uint64_t a = from_mont(a_mont);
    Int ai(static_cast<unsigned long>(a)), m(static_cast<unsigned long>(n));
    Int r = invmod(ai, m);
    return to_mont(r.get_ui());
  }
};

// 128-bit Montgomery arithmetic for an odd modulus < 2^126 (p^W beyond the
// 64-bit range).  Same interface as Mont64.
struct Mont128 {
  using u128 = unsigned __int128;
  using limb = u128;
  u128 n = 0, ninv = 0, r2 = 0, one = 0;

  static Int to_int(u128 x) {
    Int r(static_cast<unsigned long>(x >> 64));
    r <<= 64;
    r += static_cast<unsigned long>(x);
    return r;
  }
  static u128 from_int(const Int& x) {
    Int lo = mod_pos(x, pow_int(Int(2), 64));
    Int hi = (x - lo) >> 64;
    return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
  }

  Mont128() = default;
  explicit Mont128(const Int& modulus) {
    n = from_int(modulus);
    if (!(n & 1) || modulus >= pow_int(Int(2), 126))
      throw BadInput("Mont128: modulus must be odd and < 2^126");
    u128 inv = n;
    for (int i = 0; i < 6; ++i) inv *= 2 - n * inv;
    ninv = ~inv + 1;
    r2 = from_int(mod_pos(pow_int(Int(2), 256), modulus));
    one = from_int(mod_pos(pow_int(Int(2), 128), modulus));
  }

  // 128 x 128 -> 256-bit product.
  static void mul_full(u128 a, u128 b, u128& hi, u128& lo) {
    u128 a0 = static_cast<uint64_t>(a), a1 = a >> 64;
    u128 b0 = static_cast<uint64_t>(b), b1 = b >> 64;
    u128 ll = a0 * b0;
    u128 m1 = a1 * b0 + (ll >> 64);
    u128 m2 = a0 * b1 + static_cast<uint64_t>(m1);
    hi = a1 * b1 + (m1 >> 64) + (m2 >> 64);
    lo = (m2 << 64) | static_cast<uint64_t>(ll);
  }

  u128 redc(u128 hi, u128 lo) const {
    u128 q = lo * ninv;
    u128 qh, ql;
    mul_full(q, n, qh, ql);
    // lo + ql == 0 mod 2^128 by construction; the carry is 1 iff lo != 0.
    u128 t = hi + qh + (lo != 0 ? 1 : 0);
    return t >= n ? t - n : t;
  }

  u128 mul(u128 a, u128 b) const {
    u128 hi, lo;
    mul_full(a, b, hi, lo);
    return redc(hi, lo);
  }
  u128 add(u128 a, u128 b) const {
    u128 r = a + b;
    return r >= n ? r - n : r;
  }
  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + n - b; }
  u128 neg(u128 a) const { return a ? n - a : 0; }
  u128 to_mont(u128 a) const { return mul(a % n, r2); }
  u128 from_mont(u128 a) const { return redc(0, a); }
  u128 pow(u128 base_mont, uint64_t e) const {
    u128 r = one, b = base_mont;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  u128 inv(u128 a_mont) const {
    Int ai = to_int(from_mont(a_mont)), m = to_int(n);
    return to_mont(from_int(invmod(ai, m)));
  }
};

}  // namespace cobs
