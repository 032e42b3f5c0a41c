#pragma once

#include <gmpxx.h>

#include <string>

#include "eigensplit/padic.hpp"

namespace eigensplit {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// p-adic valuation of a nonzero big integer.
int valuation(const BigInt& n, u64 p);
/// p-adic valuation of a nonzero rational (negative when p divides the denominator).
int valuation(const BigRational& q, u64 p);

/// Image of a p-integral rational in Z_p at the context's precision;
/// NonIntegralCoefficient when p divides the reduced denominator.
PadicInt to_padic(const BigRational& q, const PadicCtx& ctx);

/// "num/den" or "num" for integers.
std::string to_string(const BigRational& q);

}  // namespace eigensplit
