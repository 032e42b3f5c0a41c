#include "eigensplit/kummer.hpp"

#include "eigensplit/error.hpp"
#include "eigensplit/formal_group.hpp"

namespace eigensplit {

namespace {

void check_index(int i, u64 p) {
  if (i < 1 || static_cast<u64>(i) > p - 2)
    fail(ErrorCode::InvalidArgument, "Kummer index must lie in 1..p-2, got " + std::to_string(i));
}

}  // namespace

UnitRep unit_rep(const CycElt& u) {
  const CycRing& ring = u.ring();
  if (ring.level() != 0) fail(ErrorCode::InvalidArgument, "Kummer representatives are read at level 0");
  if (!u.is_one_unit()) fail(ErrorCode::NotOneUnit, "u must be congruent to 1 mod pi");
  std::vector<PadicInt> c;
  for (int j = 0; j < ring.degree(); ++j) c.push_back(u.digit(j));
  return UnitRep{u, PadicSeries(std::move(c))};
}

u64 kummer_phi(int i, const PadicSeries& f) {
  const u64 p = f[0].ctx().prime();
  check_index(i, p);
  if (f[0].known_prec() < 1 || f[0].mod_p() != 1) fail(ErrorCode::NotOneUnit, "representative must have constant term 1 mod p");
  if (f.trunc() < p - 1) fail(ErrorCode::PrecisionExhausted, "representative known to fewer than p-1 terms");
  PadicSeries g = log_series(f.resized(p - 1));
  for (int k = 0; k < i; ++k) g = D(g);
  return g[0].mod_p();
}

u64 kummer_phi(int i, const CycElt& u) {
  check_index(i, u.ring().prime());
  return kummer_phi(i, unit_rep(u).f);
}

CycElt lang_unit(const CycRingPtr& ring, u64 a) {
  const u64 p = ring->prime();
  if (a % p == 1) fail(ErrorCode::LambdaIsOne, "lambda = 1 gives no Lang unit");
  if (a % p == 0) fail(ErrorCode::ZeroResidue, "lambda must be a (p-1)-th root of unity");
  const PadicCtx& ctx = ring->ctx();
  const PadicInt lambda = teichmuller(ctx, a);
  const PadicInt scale = invert(teichmuller(ctx, (a % p + p - 1) % p));
  const CycElt u = CycElt::from_padic(ring, scale) * (CycElt::from_padic(ring, lambda) - CycElt::zeta(ring));
  if (!u.is_one_unit()) fail(ErrorCode::NotOneUnit, "Lang unit is not a 1-unit");
  return u;
}

PadicSeries lang_series(const PadicCtx& ctx, u64 a) {
  const u64 p = ctx.prime();
  if (a % p == 1) fail(ErrorCode::LambdaIsOne, "lambda = 1 gives no Lang unit");
  const PadicInt scale = invert(teichmuller(ctx, (a % p + p - 1) % p));
  const PadicInt lm1 = teichmuller(ctx, a) - PadicInt::one(ctx);
  std::vector<PadicInt> c(p - 1, PadicInt::zero(ctx));
  c[0] = scale * lm1;
  if (p - 1 > 1) c[1] = -scale;
  return PadicSeries(std::move(c));
}

CycElt cw_unit(const CycRingPtr& ring) {
  const CycElt u = CycElt::from_padic(ring, beta(ring->ctx())) - cw_tower_x(ring);
  if (!u.is_one_unit()) fail(ErrorCode::NotOneUnit, "Coates-Wiles unit is not a 1-unit");
  return u;
}

u64 lang_generator_search(const CycRingPtr& ring, int i) {
  const u64 p = ring->prime();
  check_index(i, p);
  for (u64 a = 2; a < p; ++a)
    if (kummer_phi(i, lang_unit(ring, a)) != 0) return a;
  fail(ErrorCode::NoneFound, "no Lang unit has nonzero phi_" + std::to_string(i));
}

bool generator_certificate(int i, const CycElt& u) {
  if (kummer_phi(i, u) == 0) return false;
  if (i == 1) return pth_power_defect(1, u).is_finite();
  return true;
}

u64 bernoulli_surrogate(const CycRingPtr& ring, int i) {
  const u64 p = ring->prime();
  check_index(i, p);
  const PadicCtx& ctx = ring->ctx();
  const CycElt zeta = CycElt::zeta(ring);
  const PadicInt inv_pm1 = invert(PadicInt(ctx, static_cast<i64>(p - 1)));
  const u64 neg_i = modarith::reduce(-static_cast<i64>(i), p - 1);
  CycElt prod = CycElt::from_int(ring, 1);
  for (u64 alpha = 1; alpha < p; ++alpha) {
    // (zeta^a - 1)/(zeta - 1) = 1 + zeta + ... + zeta^(a-1)
    CycElt c = CycElt::from_int(ring, 0);
    CycElt z = CycElt::from_int(ring, 1);
    for (u64 k = 0; k < alpha; ++k) {
      c += z;
      z *= zeta;
    }
    const PadicInt w = teichmuller(ctx, alpha);
    c *= CycElt::from_padic(ring, invert(w));
    prod *= unit_pow_zp(c, w.pow(neg_i) * inv_pm1);
  }
  return kummer_phi(i, prod);
}

}  // namespace eigensplit
