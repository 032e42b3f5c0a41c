#include "eigensplit/formal_group.hpp"

#include <vector>

#include "eigensplit/error.hpp"

namespace eigensplit {

std::size_t default_trunc(u64 p) { return static_cast<std::size_t>(p * p + 1); }

RationalSeries lubin_tate_log(u64 p, std::size_t trunc) {
  if (trunc < 1) fail(ErrorCode::InvalidArgument, "truncation must be positive");
  // [X^m] (X^p + pX)^k = C(k, j) p^(k-j) with m = k + j(p-1); the k = m term is p^m a_m,
  // so a_m (p - p^m) = sum over k < m.
  std::vector<BigRational> a(trunc, 0);
  if (trunc > 1) a[1] = 1;
  const BigInt pz = static_cast<unsigned long>(p);
  std::vector<BigInt> ppow{1};
  for (std::size_t k = 1; k < trunc; ++k) ppow.push_back(ppow.back() * pz);
  for (std::size_t m = 2; m < trunc; ++m) {
    BigRational rest = 0;
    for (std::size_t k = 1; k < m; ++k) {
      if ((m - k) % (p - 1) != 0 || a[k] == 0) continue;
      const std::size_t j = (m - k) / (p - 1);
      if (j > k) continue;
      BigInt b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
      rest += a[k] * BigRational(b * ppow[k - j]);
    }
    a[m] = rest / BigRational(pz - ppow[m]);
    a[m].canonicalize();
  }
  return RationalSeries(std::move(a));
}

FormalGroupData lubin_tate(u64 p, std::size_t trunc) {
  RationalSeries log = lubin_tate_log(p, trunc);
  RationalSeries exp = reversion(log);
  return FormalGroupData{p, trunc, std::move(log), std::move(exp)};
}

RationalSeries p_series(const FormalGroupData& fg) {
  return compose(fg.exp, fg.log.scaled(BigRational(static_cast<unsigned long>(fg.p))));
}

RationalSeries theta_rational(u64 p, std::size_t trunc) {
  const FormalGroupData fg = lubin_tate(p, trunc);
  std::vector<BigRational> l(trunc, 0);
  for (std::size_t k = 1; k < trunc; ++k) l[k] = BigRational(k % 2 == 1 ? 1 : -1, static_cast<unsigned long>(k));
  return compose(fg.exp, RationalSeries(std::move(l)));
}

PadicSeries theta(const PadicCtx& ctx, std::size_t trunc) {
  const RationalSeries t = theta_rational(ctx.prime(), trunc);
  std::vector<PadicInt> c;
  c.reserve(trunc);
  for (std::size_t k = 0; k < trunc; ++k) c.push_back(to_padic(t[k], ctx));
  return PadicSeries(std::move(c));
}

bool formal_group_law_integral(const FormalGroupData& fg) {
  const std::size_t t = fg.trunc;
  // bivariate truncated polynomials indexed [i][j], i + j < t
  using Bi = std::vector<std::vector<BigRational>>;
  auto zero = [&] {
    Bi z(t);
    for (std::size_t i = 0; i < t; ++i) z[i].assign(t - i, 0);
    return z;
  };
  auto mul = [&](const Bi& a, const Bi& b) {
    Bi r = zero();
    for (std::size_t i1 = 0; i1 < t; ++i1)
      for (std::size_t j1 = 0; i1 + j1 < t; ++j1) {
        if (a[i1][j1] == 0) continue;
        for (std::size_t i2 = 0; i1 + i2 < t; ++i2)
          for (std::size_t j2 = 0; i1 + i2 + j1 + j2 < t; ++j2)
            if (b[i2][j2] != 0) r[i1 + i2][j1 + j2] += a[i1][j1] * b[i2][j2];
      }
    return r;
  };
  Bi s = zero();
  for (std::size_t k = 1; k < t; ++k) {
    s[k][0] += fg.log[k];
    s[0][k] += fg.log[k];
  }
  Bi f = zero();
  Bi power = s;
  for (std::size_t n = 1; n < t; ++n) {
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; i + j < t; ++j) f[i][j] += fg.exp[n] * power[i][j];
    if (n + 1 < t) power = mul(power, s);
  }
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; i + j < t; ++j)
      if (f[i][j] != 0 && valuation(f[i][j], fg.p) < 0) return false;
  return true;
}

CycElt cw_tower_x(const CycRingPtr& ring) {
  const std::size_t trunc = static_cast<std::size_t>(ring->pi_prec()) + 1;
  return evaluate(theta(ring->ctx(), trunc), CycElt::pi(ring));
}

}  // namespace eigensplit
