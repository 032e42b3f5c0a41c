#pragma once

#include "eigensplit/cyclotomic.hpp"
#include "eigensplit/series.hpp"

namespace eigensplit {

/// A level-0 1-unit together with a power-series representative f, f(pi) = u.
struct UnitRep {
  CycElt u;
  PadicSeries f;
};

/// f read off the pi-adic digits of u (degree < p - 1).
UnitRep unit_rep(const CycElt& u);

/// phi_i(u) = D^i log f_u at X = 0, mod p; i in 1..p-2.
u64 kummer_phi(int i, const CycElt& u);
/// Same, from an explicit representative (constant term a 1-unit of Z_p).
u64 kummer_phi(int i, const PadicSeries& f);

/// u_0(lambda) = omega(lambda - 1)^(-1) (lambda - zeta_0) for lambda = omega(a).
CycElt lang_unit(const CycRingPtr& ring, u64 a);
/// omega(lambda - 1)^(-1) (lambda - 1 - X), truncated at X^(p-1).
PadicSeries lang_series(const PadicCtx& ctx, u64 a);

/// beta - theta(zeta_n - 1) at the ring's level.
CycElt cw_unit(const CycRingPtr& ring);

/// Least a in 2..p-1 with phi_i(u_0(omega(a))) != 0.
u64 lang_generator_search(const CycRingPtr& ring, int i);

/// phi_i(u) != 0, and for i = 1 also epsilon_1(u) certified non-torsion.
bool generator_certificate(int i, const CycElt& u);

/// phi_i of epsilon_i applied to the cyclotomic units (zeta^a - 1)/((zeta - 1) omega(a)).
/// Finite-level stand-in for the Bernoulli criterion; informational only.
u64 bernoulli_surrogate(const CycRingPtr& ring, int i);

}  // namespace eigensplit
