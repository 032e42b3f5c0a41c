#pragma once

#include <random>

#include "eigensplit/cyclotomic.hpp"

namespace eigensplit::testing {

inline CycElt random_one_unit(const CycRingPtr& ring, std::mt19937_64& rng) {
  const u64 m = ring->ctx().modulus();
  const u64 p = ring->prime();
  std::vector<u64> d(static_cast<std::size_t>(ring->degree()));
  for (auto& x : d) x = rng() % m;
  d[0] = (d[0] - d[0] % p + 1) % m;
  return CycElt(ring, d, ring->pi_prec());
}

inline PadicInt random_unit(const PadicCtx& ctx, std::mt19937_64& rng) {
  u64 r = rng() % ctx.modulus();
  if (r % ctx.prime() == 0) r += 1;
  return PadicInt(ctx, r, ctx.precision());
}

}  // namespace eigensplit::testing
