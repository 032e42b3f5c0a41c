#include "eigensplit/rational.hpp"

#include "eigensplit/error.hpp"

namespace eigensplit {

int valuation(const BigInt& n, u64 p) {
  if (n == 0) fail(ErrorCode::IndistinguishableFromZero, "valuation of exact zero");
  BigInt x = abs(n);
  BigInt q = static_cast<unsigned long>(p);
  int v = 0;
  while (mpz_divisible_p(x.get_mpz_t(), q.get_mpz_t())) {
    x /= q;
    ++v;
  }
  return v;
}

int valuation(const BigRational& q, u64 p) {
  return valuation(BigInt(q.get_num()), p) - valuation(BigInt(q.get_den()), p);
}

PadicInt to_padic(const BigRational& q, const PadicCtx& ctx) {
  BigInt m = static_cast<unsigned long>(ctx.modulus());
  BigInt den = q.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(ctx.prime())))
    fail(ErrorCode::NonIntegralCoefficient, to_string(q) + " is not p-integral for p=" + std::to_string(ctx.prime()));
  BigInt num = q.get_num();
  BigInt r;
  mpz_mod(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  BigInt v = (r * inv) % m;
  return PadicInt(ctx, static_cast<u64>(v.get_ui()), ctx.precision());
}

std::string to_string(const BigRational& q) { return q.get_str(); }

}  // namespace eigensplit
