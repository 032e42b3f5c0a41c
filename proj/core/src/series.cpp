#include "eigensplit/series.hpp"

#include <gmpxx.h>

namespace eigensplit {

PadicInt ScalarTraits<PadicInt>::divide_by_integer(const PadicInt& x, i64 k) {
  try {
    PadicInt q = x.divide_by_integer(k);
    if (q.known_prec() == 0 && x.known_prec() > 0)
      fail(ErrorCode::PrecisionExhausted, "division by " + std::to_string(k) + " leaves no guaranteed digit");
    return q;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonIntegralCoefficient)
      fail(ErrorCode::PrecisionExhausted, "division by " + std::to_string(k) + " leaves Z_p");
    throw;
  }
}

PadicInt ScalarTraits<PadicInt>::log_constant(const PadicInt& c) {
  const PadicCtx& ctx = c.ctx();
  const u64 p = ctx.prime();
  const int n = c.known_prec();
  if (n == 0) return PadicInt(ctx, 0, 0);
  // x = c^(p-1) - 1 lies in pZ_p; sum (-1)^(k+1) x^k / k until x^k/k drops below p^n.
  constexpr int kSlack = 8;
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class mod_work, mod_out;
  mpz_pow_ui(mod_work.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(n + kSlack));
  mpz_pow_ui(mod_out.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_class x(static_cast<unsigned long>(c.residue()));
  mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p - 1), mod_work.get_mpz_t());
  x -= 1;
  mpz_class sum = 0, xk = 1;
  for (int k = 1; k <= 2 * n + kSlack; ++k) {
    xk = (xk * x) % mod_work;
    int v = 0;
    long unit = k;
    while (unit % static_cast<long>(p) == 0) {
      unit /= static_cast<long>(p);
      ++v;
    }
    mpz_class term = xk;
    mpz_class pv;
    mpz_pow_ui(pv.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(v));
    term /= pv;  // exact: v_p(x^k) >= k > v
    mpz_class inv, u(unit);
    mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), mod_out.get_mpz_t());
    term = (term * inv) % mod_out;
    if (k % 2 == 0) sum -= term; else sum += term;
  }
  mpz_class inv_pm1, pm1(static_cast<unsigned long>(p - 1));
  mpz_invert(inv_pm1.get_mpz_t(), pm1.get_mpz_t(), mod_out.get_mpz_t());
  sum = (sum * inv_pm1) % mod_out;
  if (sum < 0) sum += mod_out;
  return PadicInt(ctx, static_cast<u64>(sum.get_ui()), n);
}

}  // namespace eigensplit
