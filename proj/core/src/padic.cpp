#include "eigensplit/padic.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <vector>

#include "eigensplit/error.hpp"

namespace eigensplit {

namespace modarith {

u64 pow(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base, m);
    base = mul(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 inverse(u64 a, u64 m) {
  // extended Euclid on signed 128-bit to stay clear of overflow
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) fail(ErrorCode::NotAUnit, "value has no inverse modulo " + std::to_string(m));
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

u64 reduce(i64 a, u64 m) {
  if (a >= 0) return static_cast<u64>(a) % m;
  u64 r = static_cast<u64>(-(a + 1)) % m;  // avoids negating INT64_MIN
  return m - 1 - r;
}

}  // namespace modarith

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 primitive_root(u64 p) {
  std::vector<u64> factors;
  u64 m = p - 1;
  for (u64 q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors.push_back(m);
  for (u64 g = 2; g < p; ++g) {
    bool ok = std::all_of(factors.begin(), factors.end(),
                          [&](u64 q) { return modarith::pow(g, (p - 1) / q, p) != 1; });
    if (ok) return g;
  }
  return 1;  // p = 2
}

PadicCtx::PadicCtx(u64 p, int precision) : p_(p), n_(precision), mod_(1) {
  if (p < 3 || !is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be an odd prime, got " + std::to_string(p));
  if (precision < 1) fail(ErrorCode::InvalidArgument, "precision must be at least 1");
  for (int k = 0; k < precision; ++k) {
    if (mod_ > (std::numeric_limits<u64>::max() >> 2) / p)
      fail(ErrorCode::InvalidArgument,
           "p^N does not fit the 62-bit residue range (p=" + std::to_string(p) + ", N=" + std::to_string(precision) + ")");
    mod_ *= p;
  }
}

u64 PadicCtx::pow_p(int k) const {
  if (k < 0 || k > n_) fail(ErrorCode::InvalidArgument, "p-power exponent outside [0, N]");
  u64 r = 1;
  for (int i = 0; i < k; ++i) r *= p_;
  return r;
}

int Valuation::value() const {
  if (!finite_) fail(ErrorCode::IndistinguishableFromZero, "valuation is only bounded below by " + std::to_string(v_));
  return v_;
}

std::string Valuation::to_string() const {
  return finite_ ? std::to_string(v_) : ">= " + std::to_string(v_);
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }

PadicInt::PadicInt(const PadicCtx& ctx, i64 value)
    : ctx_(ctx), value_(modarith::reduce(value, ctx.modulus())), prec_(ctx.precision()) {}

PadicInt::PadicInt(const PadicCtx& ctx, u64 residue, int known_prec) : ctx_(ctx), value_(0), prec_(known_prec) {
  if (known_prec < 0 || known_prec > ctx.precision())
    fail(ErrorCode::InvalidArgument, "known precision outside [0, N]");
  value_ = residue % ctx.pow_p(known_prec);
}

Valuation PadicInt::valuation() const {
  if (value_ == 0) return Valuation::at_least(prec_);
  int v = 0;
  u64 x = value_;
  while (x % ctx_.prime() == 0) {
    x /= ctx_.prime();
    ++v;
  }
  return Valuation::exact(v);
}

void PadicInt::check_ring(const PadicInt& o) const {
  if (!(ctx_ == o.ctx_)) fail(ErrorCode::RingMismatch, "p-adic operands live in different contexts");
}

PadicInt PadicInt::operator-() const {
  u64 m = ctx_.pow_p(prec_);
  return PadicInt(ctx_, value_ == 0 ? 0 : m - value_, prec_);
}

PadicInt& PadicInt::operator+=(const PadicInt& o) {
  check_ring(o);
  prec_ = std::min(prec_, o.prec_);
  u64 m = ctx_.pow_p(prec_);
  value_ = modarith::add(value_ % m, o.value_ % m, m);
  return *this;
}

PadicInt& PadicInt::operator-=(const PadicInt& o) {
  check_ring(o);
  prec_ = std::min(prec_, o.prec_);
  u64 m = ctx_.pow_p(prec_);
  value_ = modarith::sub(value_ % m, o.value_ % m, m);
  return *this;
}

PadicInt& PadicInt::operator*=(const PadicInt& o) {
  check_ring(o);
  // (a + O(p^A)) (b + O(p^B)) = ab + O(p^min(A + v(b), B + v(a)))
  int prec = std::min({prec_ + o.valuation().bound(), o.prec_ + valuation().bound(), ctx_.precision()});
  u64 full = modarith::mul(value_, o.value_, ctx_.modulus());
  prec_ = prec;
  value_ = full % ctx_.pow_p(prec_);
  return *this;
}

PadicInt PadicInt::pow(u64 e) const {
  PadicInt result = one(ctx_);
  PadicInt base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

PadicInt PadicInt::divide_by_p_power(int k) const {
  if (k < 0) fail(ErrorCode::InvalidArgument, "negative p-power divisor");
  if (k == 0) return *this;
  if (k > prec_) fail(ErrorCode::PrecisionExhausted, "dividing by p^" + std::to_string(k) + " exhausts all known digits");
  Valuation v = valuation();
  if (v.is_finite() && v.value() < k)
    fail(ErrorCode::NonIntegralCoefficient, "quotient by p^" + std::to_string(k) + " is not p-integral");
  return PadicInt(ctx_, value_ / ctx_.pow_p(k), prec_ - k);
}

PadicInt PadicInt::divide_by_integer(i64 k) const {
  if (k == 0) fail(ErrorCode::InvalidArgument, "division by zero");
  int v = 0;
  i64 unit = k;
  while (unit % static_cast<i64>(ctx_.prime()) == 0) {
    unit /= static_cast<i64>(ctx_.prime());
    ++v;
  }
  PadicInt q = divide_by_p_power(v);
  u64 inv = modarith::inverse(modarith::reduce(unit, ctx_.modulus()), ctx_.modulus());
  return q * PadicInt(ctx_, inv, ctx_.precision());
}

PadicInt PadicInt::truncated(int digits) const {
  return PadicInt(ctx_, value_, std::min(digits, prec_));
}

u64 PadicInt::mod_p() const {
  if (prec_ < 1) fail(ErrorCode::PrecisionExhausted, "no known digit to reduce mod p");
  return value_ % ctx_.prime();
}

bool PadicInt::congruent(const PadicInt& other, int digits) const {
  check_ring(other);
  if (digits > std::min(prec_, other.prec_))
    fail(ErrorCode::PrecisionExhausted, "congruence requested beyond known precision");
  u64 m = ctx_.pow_p(digits);
  return value_ % m == other.value_ % m;
}

std::ostream& operator<<(std::ostream& os, const PadicInt& x) {
  return os << x.residue() << " + O(" << x.ctx().prime() << "^" << x.known_prec() << ")";
}

PadicInt invert(const PadicInt& x) {
  if (!x.is_unit()) fail(ErrorCode::NotAUnit, "cannot invert an element of positive valuation");
  u64 m = x.ctx().pow_p(x.known_prec());
  return PadicInt(x.ctx(), modarith::inverse(x.residue(), m), x.known_prec());
}

PadicInt teichmuller(const PadicCtx& ctx, u64 a) {
  u64 p = ctx.prime();
  if (a % p == 0) fail(ErrorCode::ZeroResidue, "Teichmuller representative of 0 is not a unit");
  u64 m = ctx.modulus();
  u64 x = a % p;
  for (int i = 0; i <= ctx.precision(); ++i) {
    u64 next = modarith::pow(x, p, m);
    if (next == x) break;
    x = next;
  }
  return PadicInt(ctx, x, ctx.precision());
}

PadicInt beta(const PadicCtx& ctx) {
  u64 p = ctx.prime();
  u64 m = ctx.modulus();
  u64 target = modarith::sub(1, p % m, m);
  // Newton on f(x) = x^(p-1) - (1 - p); f'(x) = (p-1) x^(p-2) is a unit near 1
  u64 x = 1;
  for (int precision = 1; precision < 2 * ctx.precision() + 2; precision *= 2) {
    u64 fx = modarith::sub(modarith::pow(x, p - 1, m), target, m);
    u64 dfx = modarith::mul((p - 1) % m, modarith::pow(x, p - 2, m), m);
    x = modarith::sub(x, modarith::mul(fx, modarith::inverse(dfx, m), m), m);
  }
  return PadicInt(ctx, x, ctx.precision());
}

}  // namespace eigensplit
