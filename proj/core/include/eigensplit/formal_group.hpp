#pragma once

#include <cstddef>

#include "eigensplit/cyclotomic.hpp"
#include "eigensplit/series.hpp"

namespace eigensplit {

/// Lubin-Tate group with [p](X) = X^p + pX, over Q, truncated at X^trunc.
struct FormalGroupData {
  u64 p = 0;
  std::size_t trunc = 0;
  RationalSeries log;
  RationalSeries exp;
};

/// Default truncation p^2 + 1.
std::size_t default_trunc(u64 p);

/// Strict logarithm solved degree by degree from log([p](X)) = p log(X).
RationalSeries lubin_tate_log(u64 p, std::size_t trunc);

FormalGroupData lubin_tate(u64 p, std::size_t trunc);

/// exp(p log X); equals X^p + pX.
RationalSeries p_series(const FormalGroupData& fg);

/// theta = exp_Gamma(log(1+X)) over Q.
RationalSeries theta_rational(u64 p, std::size_t trunc);

/// theta reduced into Z_p; NonIntegralCoefficient on a p in a denominator.
PadicSeries theta(const PadicCtx& ctx, std::size_t trunc);

/// Checks that F(X,Y) = exp(log X + log Y) has p-integral coefficients in
/// total degree < trunc.
bool formal_group_law_integral(const FormalGroupData& fg);

/// x_n = theta(zeta_n - 1) in the ring at its level, theta truncated past pi_prec.
CycElt cw_tower_x(const CycRingPtr& ring);

}  // namespace eigensplit
