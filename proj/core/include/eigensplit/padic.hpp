#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace eigensplit {

using u64 = std::uint64_t;
using i64 = std::int64_t;

namespace modarith {

inline u64 mul(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}
inline u64 add(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}
inline u64 sub(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }
u64 pow(u64 base, u64 exp, u64 m);
/// Inverse of a modulo m; the caller guarantees gcd(a, m) = 1.
u64 inverse(u64 a, u64 m);
/// Reduces a signed value into [0, m).
u64 reduce(i64 a, u64 m);

}  // namespace modarith

bool is_prime(u64 n);

/// Working context for Z_p at absolute precision p^N.
class PadicCtx {
 public:
  PadicCtx(u64 p, int precision);

  u64 prime() const noexcept { return p_; }
  int precision() const noexcept { return n_; }
  u64 modulus() const noexcept { return mod_; }
  /// p^k for 0 <= k <= N.
  u64 pow_p(int k) const;

  /// Same prime at a different precision.
  PadicCtx with_precision(int precision) const { return PadicCtx(p_, precision); }

  friend bool operator==(const PadicCtx& a, const PadicCtx& b) noexcept {
    return a.p_ == b.p_ && a.n_ == b.n_;
  }

 private:
  u64 p_;
  int n_;
  u64 mod_;
};

/// p-adic valuation as far as the known digits can tell: either an exact
/// value, or a lower bound when every known digit is zero.
class Valuation {
 public:
  static Valuation exact(int v) { return Valuation(v, true); }
  static Valuation at_least(int bound) { return Valuation(bound, false); }

  bool is_finite() const noexcept { return finite_; }
  /// The exact valuation; throws IndistinguishableFromZero for a bound.
  int value() const;
  /// The exact valuation or the lower bound.
  int bound() const noexcept { return v_; }
  std::string to_string() const;

  friend bool operator==(const Valuation& a, const Valuation& b) noexcept {
    return a.v_ == b.v_ && a.finite_ == b.finite_;
  }

 private:
  Valuation(int v, bool finite) : v_(v), finite_(finite) {}
  int v_;
  bool finite_;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// Element of Z_p known modulo p^known_prec. The residue is always stored
/// reduced modulo p^known_prec, so two equal elements compare equal.
class PadicInt {
 public:
  PadicInt(const PadicCtx& ctx, i64 value);
  PadicInt(const PadicCtx& ctx, u64 residue, int known_prec);

  static PadicInt zero(const PadicCtx& ctx) { return PadicInt(ctx, 0); }
  static PadicInt one(const PadicCtx& ctx) { return PadicInt(ctx, 1); }

  const PadicCtx& ctx() const noexcept { return ctx_; }
  u64 residue() const noexcept { return value_; }
  int known_prec() const noexcept { return prec_; }

  Valuation valuation() const;
  bool is_unit() const { return valuation() == Valuation::exact(0); }
  bool is_zero() const { return value_ == 0; }

  PadicInt operator-() const;
  PadicInt& operator+=(const PadicInt& o);
  PadicInt& operator-=(const PadicInt& o);
  PadicInt& operator*=(const PadicInt& o);
  friend PadicInt operator+(PadicInt a, const PadicInt& b) { return a += b; }
  friend PadicInt operator-(PadicInt a, const PadicInt& b) { return a -= b; }
  friend PadicInt operator*(PadicInt a, const PadicInt& b) { return a *= b; }

  PadicInt pow(u64 e) const;
  /// Exact division by p^k; the known precision drops by k.
  PadicInt divide_by_p_power(int k) const;
  /// Division by a nonzero integer, consuming v_p(k) digits of precision.
  PadicInt divide_by_integer(i64 k) const;
  /// Reduction to fewer guaranteed digits.
  PadicInt truncated(int digits) const;
  /// Value reduced mod p (requires at least one known digit).
  u64 mod_p() const;

  /// True when the two elements agree modulo p^digits.
  bool congruent(const PadicInt& other, int digits) const;

  friend bool operator==(const PadicInt& a, const PadicInt& b) noexcept {
    return a.ctx_ == b.ctx_ && a.prec_ == b.prec_ && a.value_ == b.value_;
  }

 private:
  void check_ring(const PadicInt& o) const;

  PadicCtx ctx_;
  u64 value_;
  int prec_;
};

std::ostream& operator<<(std::ostream& os, const PadicInt& x);

/// Multiplicative inverse; NotAUnit when x is divisible by p.
PadicInt invert(const PadicInt& x);

/// Teichmüller representative of a mod p: the (p-1)-th root of unity
/// congruent to a, found as the fixed point of x -> x^p.
PadicInt teichmuller(const PadicCtx& ctx, u64 a);

/// The (p-1)-th root of 1 - p congruent to 1 mod p, by Newton iteration.
PadicInt beta(const PadicCtx& ctx);

/// Least primitive root modulo p.
u64 primitive_root(u64 p);

}  // namespace eigensplit
