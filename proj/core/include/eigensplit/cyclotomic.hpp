#pragma once

#include <memory>
#include <vector>

#include "eigensplit/padic.hpp"
#include "eigensplit/rational.hpp"
#include "eigensplit/series.hpp"

namespace eigensplit {

/// O_F / p^N for F = Q_p(zeta_{p^(n+1)}), n in {0, 1}, in the basis of powers
/// of pi = zeta - 1. Elements are known modulo pi^pi_prec.
class CycRing {
 public:
  CycRing(const PadicCtx& ctx, int level, int pi_prec);

  const PadicCtx& ctx() const noexcept { return ctx_; }
  u64 prime() const noexcept { return ctx_.prime(); }
  int level() const noexcept { return level_; }
  /// Field degree p^n (p - 1); also the pi-adic valuation of p.
  int degree() const noexcept { return d_; }
  int pi_prec() const noexcept { return m_; }
  /// p^(n+1): Galois exponents live in (Z/p^(n+1))^x.
  u64 exponent_modulus() const noexcept { return exp_mod_; }
  /// Lower coefficients e_j of the Eisenstein polynomial, so pi^d = -sum e_j pi^j.
  const std::vector<u64>& relation() const noexcept { return rel_; }
  /// Number of p-adic digits of the coefficient of pi^j determined by an
  /// element known mod pi^prec.
  int digit_prec(int j, int prec) const;

  friend bool operator==(const CycRing& a, const CycRing& b) noexcept {
    return a.ctx_ == b.ctx_ && a.level_ == b.level_ && a.m_ == b.m_;
  }

 private:
  PadicCtx ctx_;
  int level_;
  int d_;
  int m_;
  u64 exp_mod_;
  std::vector<u64> rel_;
};

using CycRingPtr = std::shared_ptr<const CycRing>;

CycRingPtr make_cyc_ring(const PadicCtx& ctx, int level, int pi_prec);

class CycElt {
 public:
  /// Digits are reduced modulo p^N; prec is clamped to the ring's pi_prec.
  CycElt(CycRingPtr ring, std::vector<u64> digits, int prec);

  static CycElt from_int(CycRingPtr ring, i64 v);
  static CycElt from_padic(CycRingPtr ring, const PadicInt& c);
  /// pi = zeta - 1.
  static CycElt pi(CycRingPtr ring);
  static CycElt zeta(CycRingPtr ring);

  const CycRing& ring() const noexcept { return *ring_; }
  const CycRingPtr& ring_ptr() const noexcept { return ring_; }
  const std::vector<u64>& digits() const noexcept { return digits_; }
  /// Coefficient of pi^j with the digits it is known to.
  PadicInt digit(int j) const;
  int prec() const noexcept { return prec_; }

  /// pi-adic valuation, or a lower bound when the element is 0 mod pi^prec.
  Valuation valuation() const;
  bool is_one_unit() const;
  CycElt truncated(int prec) const;

  CycElt operator-() const;
  CycElt& operator+=(const CycElt& o);
  CycElt& operator-=(const CycElt& o);
  CycElt& operator*=(const CycElt& o);
  friend CycElt operator+(CycElt a, const CycElt& b) { return a += b; }
  friend CycElt operator-(CycElt a, const CycElt& b) { return a -= b; }
  friend CycElt operator*(CycElt a, const CycElt& b) { return a *= b; }
  CycElt pow(u64 e) const;

  friend bool operator==(const CycElt& a, const CycElt& b);

 private:
  void check_ring(const CycElt& o) const;
  void canonicalize();

  CycRingPtr ring_;
  std::vector<u64> digits_;
  int prec_;
};

/// Inverse of a unit (valuation 0), by Newton iteration.
CycElt inverse(const CycElt& x);

/// f(x) for v(x) >= 1; the tail beyond the truncation costs precision.
CycElt evaluate(const PadicSeries& f, const CycElt& x);

/// sigma_a: zeta -> zeta^a.
CycElt galois_apply(u64 a, const CycElt& x);

/// Level-0 element viewed at level 1 (pi_0 -> (1 + pi_1)^p - 1).
CycElt embed_up(const CycElt& x, const CycRingPtr& level1);

/// Relative norm from level 1 to the level-0 ring.
CycElt norm_down(const CycElt& x, const CycRingPtr& level0);

/// Norm from level 0 to Q_p.
PadicInt norm_to_qp(const CycElt& x);

/// u^c for a 1-unit u and c in Z_p.
CycElt unit_pow_zp(const CycElt& u, const PadicInt& c);

/// epsilon_i applied multiplicatively to a 1-unit.
CycElt eigen_unit(i64 i, const CycElt& u);

/// Integer pi-adic valuation; IndistinguishableFromZero for an element 0 at precision.
int extended_valuation(const CycElt& x);

/// (1/(p-1)) sum over alpha of v(sigma_omega(alpha) x).
BigRational eigen_valuation(const CycElt& x);

/// omega(a) reduced mod p^(n+1), the Galois exponent of the Teichmuller lift.
u64 teichmuller_exponent(const CycRing& ring, u64 a);

/// v(epsilon_i(u)^p - 1): finite means epsilon_i(u) is certainly not a p-th root of unity.
Valuation pth_power_defect(i64 i, const CycElt& u);

struct Eps1Report {
  u64 lambda_residue = 0;
  /// (1 - pi/(lambda-1))^p == 1 - p pi/(lambda-1) mod pi^(p+1)
  bool congruence_minus = false;
  /// (1 - pi/(lambda-1))^p == 1 - p pi/(1-lambda) mod pi^(p+1)
  bool congruence_plus = false;
  Valuation w_defect = Valuation::at_least(0);
  /// epsilon_1(u_0)^p != 1 mod pi^(p+1)
  bool pth_power_test = false;
  /// v(epsilon_1(u_0)^p - 1) at the ring's full pi-precision.
  Valuation defect = Valuation::at_least(0);
  bool nontorsion_certified() const { return defect.is_finite(); }
  /// The test as stated: congruence holds and the p-th power is not 1 mod pi^(p+1).
  bool holds() const { return congruence_minus && pth_power_test; }
};

/// lambda = omega(a), a in 2..p-1, at level 0.
Eps1Report check_eps1_nontorsion(const CycRingPtr& ring, u64 a);

}  // namespace eigensplit
