#include <gtest/gtest.h>

#include "eigensplit/error.hpp"
#include "eigensplit/formal_group.hpp"

using namespace eigensplit;
using Q = BigRational;

namespace {

RationalSeries log1p(std::size_t t) {
  std::vector<Q> c(t, 0);
  for (std::size_t k = 1; k < t; ++k) c[k] = Q(k % 2 ? 1 : -1, static_cast<unsigned long>(k));
  return RationalSeries(c);
}

RationalSeries xp_plus_px(u64 p, std::size_t t) {
  std::vector<Q> c(t, 0);
  c[1] = static_cast<unsigned long>(p);
  if (p < t) c[p] = 1;
  return RationalSeries(c);
}

}  // namespace

TEST(FormalGroup, LogSolvesFunctionalEquation) {
  for (u64 p : {3, 5, 7}) {
    const std::size_t t = p == 7 ? 50 : 30;
    const RationalSeries l = lubin_tate_log(p, t);
    EXPECT_EQ(compose(l, xp_plus_px(p, t)), l.scaled(Q(static_cast<unsigned long>(p))));
  }
}

TEST(FormalGroup, LogCoefficients) {
  const RationalSeries l = lubin_tate_log(5, 30);
  EXPECT_EQ(l[0], 0);
  EXPECT_EQ(l[1], 1);
  EXPECT_EQ(l[2], 0);
  // X^5: a (p - p^5) = 1
  EXPECT_EQ(l[5], Q(1, 5) / Q(1 - 625));
  // [zeta](X) = zeta X for zeta in mu_(p-1), so only degrees 1 mod (p-1) survive
  for (std::size_t k = 0; k < 30; ++k)
    if (k % 4 != 1) EXPECT_EQ(l[k], 0) << k;
  // not the Honda-type log sum X^(p^n)/p^n
  EXPECT_NE(l[5], Q(1, 5));
}

TEST(FormalGroup, ExpLogInverse) {
  for (u64 p : {3, 5}) {
    const FormalGroupData fg = lubin_tate(p, default_trunc(p));
    const RationalSeries x = RationalSeries::variable(0, fg.trunc);
    EXPECT_EQ(compose(fg.exp, fg.log), x);
    EXPECT_EQ(compose(fg.log, fg.exp), x);
  }
}

TEST(FormalGroup, PSeries) {
  EXPECT_EQ(p_series(lubin_tate(5, 30)), xp_plus_px(5, 30));
  EXPECT_EQ(p_series(lubin_tate(3, 27)), xp_plus_px(3, 27));
  EXPECT_EQ(p_series(lubin_tate(7, 20))[0], 0);
}

TEST(FormalGroup, ThetaCongruenceAndIntegrality) {
  for (u64 p : {3, 5, 7}) {
    const std::size_t t = default_trunc(p);
    const PadicCtx ctx(p, 4);
    const PadicSeries th = theta(ctx, t);  // throws on a non-integral coefficient
    const RationalSeries thq = theta_rational(p, t);
    EXPECT_EQ(thq[1], 1);
    const RationalSeries l = log1p(p);
    for (std::size_t k = 0; k < p; ++k) EXPECT_EQ(thq[k], l[k]) << "p=" << p << " k=" << k;
    for (std::size_t k = 1; k < t; ++k)
      if (thq[k] != 0) EXPECT_GE(valuation(thq[k], p), 0);
    EXPECT_EQ(th[1].residue(), 1u);
  }
}

TEST(FormalGroup, ThetaIntertwinesPSeries) {
  // theta((1+X)^p - 1) = [p](theta(X))
  for (u64 p : {3, 5}) {
    const std::size_t t = p * p;
    const RationalSeries th = theta_rational(p, t);
    const RationalSeries one_plus_x = RationalSeries::variable(0, t) + RationalSeries::constant(1, t);
    const RationalSeries s = pow(one_plus_x, static_cast<unsigned>(p)) - RationalSeries::constant(1, t);
    EXPECT_EQ(compose(th, s), compose(xp_plus_px(p, t), th));
  }
}

TEST(FormalGroup, LawIsIntegral) {
  EXPECT_TRUE(formal_group_law_integral(lubin_tate(3, 12)));
  EXPECT_TRUE(formal_group_law_integral(lubin_tate(5, 12)));
}

TEST(FormalGroup, TowerLevelZero) {
  for (u64 p : {3, 5, 7}) {
    const PadicCtx ctx(p, 4);
    const CycRingPtr r0 = make_cyc_ring(ctx, 0, static_cast<int>(p) + 3);
    const CycElt x0 = cw_tower_x(r0);
    const CycElt lhs = x0.pow(p) + x0 * CycElt::from_int(r0, static_cast<i64>(p));
    EXPECT_FALSE(lhs.valuation().is_finite()) << "p=" << p;
    EXPECT_EQ(lhs.prec(), static_cast<int>(p) + 3);
    // x0 = pi mod pi^2
    EXPECT_GE((x0 - CycElt::pi(r0)).valuation().bound(), 2);
    // x0 = log(1 + pi) mod pi^p
    std::vector<PadicInt> c;
    const RationalSeries l = log1p(p);
    for (std::size_t k = 0; k < p; ++k) c.push_back(to_padic(l[k], ctx));
    const CycElt lg = evaluate(PadicSeries(c), CycElt::pi(r0));
    EXPECT_GE((x0 - lg).valuation().bound(), static_cast<int>(p));
  }
}

TEST(FormalGroup, TowerLevelOne) {
  for (u64 p : {3, 5}) {
    const PadicCtx ctx(p, 4);
    const int m = static_cast<int>(p) + 3;
    const CycRingPtr r0 = make_cyc_ring(ctx, 0, m);
    const CycRingPtr r1 = make_cyc_ring(ctx, 1, static_cast<int>(p) * m);
    const CycElt x0 = cw_tower_x(r0);
    const CycElt x1 = cw_tower_x(r1);
    const CycElt lhs = x1.pow(p) + x1 * CycElt::from_int(r1, static_cast<i64>(p));
    const CycElt diff = lhs - embed_up(x0, r1);
    EXPECT_FALSE(diff.valuation().is_finite()) << diff.valuation();
    EXPECT_EQ(diff.prec(), static_cast<int>(p) * m);
  }
}
