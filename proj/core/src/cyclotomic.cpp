#include "eigensplit/cyclotomic.hpp"

#include <algorithm>

#include "eigensplit/error.hpp"

namespace eigensplit {

namespace {

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

int vp(u64 x, u64 p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

CycRing::CycRing(const PadicCtx& ctx, int level, int pi_prec) : ctx_(ctx), level_(level), d_(0), m_(pi_prec), exp_mod_(0) {
  if (level != 0 && level != 1) fail(ErrorCode::InvalidArgument, "only levels 0 and 1 are modeled");
  const u64 p = ctx.prime();
  const u64 pn = level == 0 ? 1 : p;
  d_ = static_cast<int>(pn * (p - 1));
  exp_mod_ = pn * p;
  if (pi_prec < 1) fail(ErrorCode::InvalidArgument, "pi-precision must be at least 1");
  if (pi_prec > ctx.precision() * d_)
    fail(ErrorCode::InvalidArgument, "pi-precision " + std::to_string(pi_prec) + " exceeds N*d = " +
                                         std::to_string(ctx.precision() * d_) + "; raise --precision");

  // Phi_{p^(n+1)}(1+X) = sum_{k<p} (1+X)^(k p^n)
  std::vector<BigInt> poly(static_cast<std::size_t>(d_) + 1, 0);
  for (u64 k = 0; k < p; ++k) {
    const unsigned long e = static_cast<unsigned long>(k * pn);
    for (unsigned long m = 0; m <= e; ++m) {
      BigInt b;
      mpz_bin_uiui(b.get_mpz_t(), e, m);
      poly[m] += b;
    }
  }
  BigInt mod = static_cast<unsigned long>(ctx.modulus());
  rel_.resize(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j) {
    BigInt r = poly[static_cast<std::size_t>(j)] % mod;
    rel_[static_cast<std::size_t>(j)] = r.get_ui();
  }
}

int CycRing::digit_prec(int j, int prec) const { return std::min(ceil_div(prec - j, d_), ctx_.precision()); }

CycRingPtr make_cyc_ring(const PadicCtx& ctx, int level, int pi_prec) {
  return std::make_shared<const CycRing>(ctx, level, pi_prec);
}

CycElt::CycElt(CycRingPtr ring, std::vector<u64> digits, int prec)
    : ring_(std::move(ring)), digits_(std::move(digits)), prec_(std::min(prec, ring_->pi_prec())) {
  if (digits_.size() != static_cast<std::size_t>(ring_->degree()))
    fail(ErrorCode::InvalidArgument, "digit vector length must equal the field degree");
  if (prec_ < 0) prec_ = 0;
  canonicalize();
}

CycElt CycElt::from_int(CycRingPtr ring, i64 v) {
  std::vector<u64> d(static_cast<std::size_t>(ring->degree()), 0);
  d[0] = modarith::reduce(v, ring->ctx().modulus());
  const int prec = ring->pi_prec();
  return CycElt(std::move(ring), std::move(d), prec);
}

CycElt CycElt::from_padic(CycRingPtr ring, const PadicInt& c) {
  if (!(c.ctx() == ring->ctx())) fail(ErrorCode::RingMismatch, "scalar from a different p-adic context");
  std::vector<u64> d(static_cast<std::size_t>(ring->degree()), 0);
  d[0] = c.residue();
  const int prec = c.known_prec() * ring->degree();
  return CycElt(std::move(ring), std::move(d), prec);
}

CycElt CycElt::pi(CycRingPtr ring) {
  std::vector<u64> d(static_cast<std::size_t>(ring->degree()), 0);
  if (ring->degree() > 1) {
    d[1] = 1;
  } else {
    d[0] = modarith::reduce(-static_cast<i64>(ring->relation()[0]), ring->ctx().modulus());
  }
  const int prec = ring->pi_prec();
  return CycElt(std::move(ring), std::move(d), prec);
}

CycElt CycElt::zeta(CycRingPtr ring) {
  CycElt one = from_int(ring, 1);
  return one + pi(std::move(ring));
}

PadicInt CycElt::digit(int j) const {
  return PadicInt(ring_->ctx(), digits_.at(static_cast<std::size_t>(j)), ring_->digit_prec(j, prec_));
}

void CycElt::canonicalize() {
  const int d = ring_->degree();
  for (int j = 0; j < d; ++j) {
    const int k = ring_->digit_prec(j, prec_);
    digits_[static_cast<std::size_t>(j)] %= ring_->ctx().pow_p(k);
  }
}

void CycElt::check_ring(const CycElt& o) const {
  if (ring_ != o.ring_ && !(*ring_ == *o.ring_)) fail(ErrorCode::RingMismatch, "cyclotomic operands from different rings");
}

Valuation CycElt::valuation() const {
  const u64 p = ring_->prime();
  const int d = ring_->degree();
  int best = prec_;
  for (int j = 0; j < d; ++j) {
    const u64 c = digits_[static_cast<std::size_t>(j)];
    if (c != 0) best = std::min(best, d * vp(c, p) + j);
  }
  return best < prec_ ? Valuation::exact(best) : Valuation::at_least(prec_);
}

bool CycElt::is_one_unit() const { return (*this - from_int(ring_, 1)).valuation().bound() >= 1; }

CycElt CycElt::truncated(int prec) const { return CycElt(ring_, digits_, std::min(prec, prec_)); }

CycElt CycElt::operator-() const {
  const u64 m = ring_->ctx().modulus();
  std::vector<u64> d(digits_.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = modarith::sub(0, digits_[j], m);
  return CycElt(ring_, std::move(d), prec_);
}

CycElt& CycElt::operator+=(const CycElt& o) {
  check_ring(o);
  const u64 m = ring_->ctx().modulus();
  for (std::size_t j = 0; j < digits_.size(); ++j) digits_[j] = modarith::add(digits_[j], o.digits_[j], m);
  prec_ = std::min(prec_, o.prec_);
  canonicalize();
  return *this;
}

CycElt& CycElt::operator-=(const CycElt& o) {
  check_ring(o);
  const u64 m = ring_->ctx().modulus();
  for (std::size_t j = 0; j < digits_.size(); ++j) digits_[j] = modarith::sub(digits_[j], o.digits_[j], m);
  prec_ = std::min(prec_, o.prec_);
  canonicalize();
  return *this;
}

CycElt& CycElt::operator*=(const CycElt& o) {
  check_ring(o);
  const u64 m = ring_->ctx().modulus();
  const std::size_t d = digits_.size();
  std::vector<u64> r(2 * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (digits_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) r[i + j] = modarith::add(r[i + j], modarith::mul(digits_[i], o.digits_[j], m), m);
  }
  const std::vector<u64>& e = ring_->relation();
  for (std::size_t k = 2 * d - 1; k >= d; --k) {
    const u64 t = r[k];
    if (t == 0) continue;
    r[k] = 0;
    for (std::size_t j = 0; j < d; ++j) r[k - d + j] = modarith::sub(r[k - d + j], modarith::mul(t, e[j], m), m);
  }
  r.resize(d);
  const int prec = std::min(prec_ + o.valuation().bound(), o.prec_ + valuation().bound());
  digits_ = std::move(r);
  prec_ = std::min(prec, ring_->pi_prec());
  canonicalize();
  return *this;
}

CycElt CycElt::pow(u64 e) const {
  CycElt result = from_int(ring_, 1);
  CycElt base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool operator==(const CycElt& a, const CycElt& b) {
  return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.prec_ == b.prec_ && a.digits_ == b.digits_;
}

CycElt inverse(const CycElt& x) {
  if (x.valuation().bound() != 0 || !x.valuation().is_finite()) fail(ErrorCode::NotAUnit, "only units are invertible");
  const CycRingPtr& ring = x.ring_ptr();
  const PadicInt c0 = x.digit(0);
  CycElt y = CycElt::from_padic(ring, invert(c0));
  const CycElt two = CycElt::from_int(ring, 2);
  // error valuation doubles each round
  for (int v = 1; v < 2 * x.prec(); v *= 2) y = y * (two - x * y);
  return y.truncated(x.prec());
}

CycElt evaluate(const PadicSeries& f, const CycElt& x) {
  const Valuation vx = x.valuation();
  if (vx.bound() < 1) fail(ErrorCode::NonzeroConstantTerm, "series can only be evaluated at elements of (pi)");
  const CycRingPtr& ring = x.ring_ptr();
  const int n = static_cast<int>(f.trunc());
  CycElt acc = CycElt::from_padic(ring, f[static_cast<std::size_t>(n - 1)]);
  for (int k = n - 2; k >= 0; --k) acc = acc * x + CycElt::from_padic(ring, f[static_cast<std::size_t>(k)]);
  // the unknown tail is a multiple of x^n
  return acc.truncated(n * vx.bound());
}

CycElt galois_apply(u64 a, const CycElt& x) {
  const CycRing& ring = x.ring();
  const u64 p = ring.prime();
  if (a % p == 0) fail(ErrorCode::NotAUnitExponent, "Galois exponent must be prime to p, got " + std::to_string(a));
  a %= ring.exponent_modulus();
  if (a == 1) return x;
  const CycRingPtr& rp = x.ring_ptr();
  const CycElt one = CycElt::from_int(rp, 1);
  const CycElt s = CycElt::zeta(rp).pow(a) - one;
  const int d = ring.degree();
  const u64 m = ring.ctx().modulus();
  auto scalar = [&](u64 c) {
    std::vector<u64> v(static_cast<std::size_t>(d), 0);
    v[0] = c % m;
    return CycElt(rp, std::move(v), ring.pi_prec());
  };
  CycElt acc = scalar(x.digits()[static_cast<std::size_t>(d - 1)]);
  for (int j = d - 2; j >= 0; --j) acc = acc * s + scalar(x.digits()[static_cast<std::size_t>(j)]);
  // sigma is an isometry, so the answer is known exactly as far as x is
  return acc.truncated(x.prec());
}

CycElt embed_up(const CycElt& x, const CycRingPtr& level1) {
  const CycRing& r0 = x.ring();
  if (r0.level() != 0 || level1->level() != 1 || !(r0.ctx() == level1->ctx()))
    fail(ErrorCode::InvalidArgument, "embedding goes from level 0 to level 1 over the same Z_p");
  const u64 p = r0.prime();
  const u64 m = r0.ctx().modulus();
  const int d1 = level1->degree();
  const CycElt s = CycElt::zeta(level1).pow(p) - CycElt::from_int(level1, 1);
  auto scalar = [&](u64 c) {
    std::vector<u64> v(static_cast<std::size_t>(d1), 0);
    v[0] = c % m;
    return CycElt(level1, std::move(v), level1->pi_prec());
  };
  const int d0 = r0.degree();
  CycElt acc = scalar(x.digits()[static_cast<std::size_t>(d0 - 1)]);
  for (int j = d0 - 2; j >= 0; --j) acc = acc * s + scalar(x.digits()[static_cast<std::size_t>(j)]);
  return acc.truncated(static_cast<int>(p) * x.prec());
}

CycElt norm_down(const CycElt& x, const CycRingPtr& level0) {
  const CycRing& r1 = x.ring();
  if (r1.level() != 1 || level0->level() != 0 || !(r1.ctx() == level0->ctx()))
    fail(ErrorCode::InvalidArgument, "norm_down maps level 1 to level 0 over the same Z_p");
  const u64 p = r1.prime();
  CycElt prod = x;
  for (u64 k = 1; k < p; ++k) prod *= galois_apply(1 + k * p, x);

  // Peel off level-0 terms from the lowest valuation upward.
  const int d1 = r1.degree();
  const int d0 = level0->degree();
  const int prec0 = std::min((prod.prec() + static_cast<int>(p) - 1) / static_cast<int>(p), level0->pi_prec());
  std::vector<u64> y(static_cast<std::size_t>(d0), 0);
  CycElt rest = prod;
  const u64 m = r1.ctx().modulus();
  while (true) {
    const Valuation v = rest.valuation();
    if (!v.is_finite()) break;
    const int w = v.value();
    const int j = w % d1;
    if (j % static_cast<int>(p) != 0)
      fail(ErrorCode::NotInSubfield, "norm has a pi_1^" + std::to_string(j) + " term that no level-0 element produces");
    const u64 c = rest.digits()[static_cast<std::size_t>(j)];
    const int k = j / static_cast<int>(p);
    y[static_cast<std::size_t>(k)] = modarith::add(y[static_cast<std::size_t>(k)], c, m);
    std::vector<u64> term(static_cast<std::size_t>(d0), 0);
    term[static_cast<std::size_t>(k)] = c;
    rest -= embed_up(CycElt(level0, std::move(term), level0->pi_prec()), x.ring_ptr());
  }
  return CycElt(level0, std::move(y), prec0);
}

PadicInt norm_to_qp(const CycElt& x) {
  const CycRing& ring = x.ring();
  if (ring.level() != 0) fail(ErrorCode::InvalidArgument, "norm_to_qp expects a level-0 element");
  const u64 p = ring.prime();
  CycElt prod = x;
  for (u64 a = 2; a < p; ++a) prod *= galois_apply(a, x);
  for (int j = 1; j < ring.degree(); ++j)
    if (prod.digits()[static_cast<std::size_t>(j)] != 0)
      fail(ErrorCode::NotInBaseField, "norm has a nonzero pi^" + std::to_string(j) + " digit");
  return prod.digit(0);
}

CycElt unit_pow_zp(const CycElt& u, const PadicInt& c) {
  if (!u.is_one_unit()) fail(ErrorCode::NotOneUnit, "Z_p-powers are defined on 1-units only");
  const CycRing& ring = u.ring();
  if (c.ctx().prime() != ring.prime()) fail(ErrorCode::RingMismatch, "exponent lives in a different Z_p");
  const u64 p = ring.prime();
  const int d = ring.degree();
  // v(u^(p^k) - 1) grows like s -> min(p s, s + d); beyond that the exponent's unknown digits do not matter
  int s = (u - CycElt::from_int(u.ring_ptr(), 1)).valuation().bound();
  for (int k = 0; k < c.known_prec() && s < u.prec(); ++k) s = std::min(static_cast<int>(p) * s, s + d);
  return u.pow(c.residue()).truncated(std::min(u.prec(), s));
}

u64 teichmuller_exponent(const CycRing& ring, u64 a) {
  return teichmuller(ring.ctx(), a).residue() % ring.exponent_modulus();
}

CycElt eigen_unit(i64 i, const CycElt& u) {
  if (!u.is_one_unit()) fail(ErrorCode::NotOneUnit, "eigenprojection is applied to 1-units");
  const CycRing& ring = u.ring();
  const PadicCtx& ctx = ring.ctx();
  const u64 p = ring.prime();
  const u64 pm1 = p - 1;
  const u64 neg_i = modarith::reduce(-i, pm1);
  const PadicInt inv_pm1 = invert(PadicInt(ctx, static_cast<i64>(pm1)));
  CycElt result = CycElt::from_int(u.ring_ptr(), 1);
  for (u64 alpha = 1; alpha < p; ++alpha) {
    const PadicInt w = teichmuller(ctx, alpha);
    const PadicInt expo = w.pow(neg_i) * inv_pm1;
    result *= unit_pow_zp(galois_apply(teichmuller_exponent(ring, alpha), u), expo);
  }
  return result;
}

int extended_valuation(const CycElt& x) { return x.valuation().value(); }

BigRational eigen_valuation(const CycElt& x) {
  const CycRing& ring = x.ring();
  const u64 p = ring.prime();
  long total = 0;
  for (u64 alpha = 1; alpha < p; ++alpha) total += galois_apply(teichmuller_exponent(ring, alpha), x).valuation().value();
  BigRational r(total, static_cast<unsigned long>(p - 1));
  r.canonicalize();
  return r;
}

Valuation pth_power_defect(i64 i, const CycElt& u) {
  const CycElt e = eigen_unit(i, u);
  return (e.pow(u.ring().prime()) - CycElt::from_int(u.ring_ptr(), 1)).valuation();
}

Eps1Report check_eps1_nontorsion(const CycRingPtr& ring, u64 a) {
  const u64 p = ring->prime();
  if (ring->level() != 0) fail(ErrorCode::InvalidArgument, "the epsilon_1 test runs at level 0");
  if (a % p == 0 || a % p == 1) fail(ErrorCode::LambdaIsOne, "lambda must be a root of unity other than 1 (a in 2..p-1)");
  const int need = static_cast<int>(p) + 2;
  if (ring->pi_prec() < need)
    fail(ErrorCode::PrecisionExhausted, "the pi^(p+1) test needs pi-precision at least " + std::to_string(need));
  const PadicCtx& ctx = ring->ctx();
  const PadicInt lambda = teichmuller(ctx, a);
  const PadicInt lm1 = lambda - PadicInt::one(ctx);
  const PadicInt inv_lm1 = invert(lm1);
  const CycElt one = CycElt::from_int(ring, 1);
  const CycElt pi = CycElt::pi(ring);
  const int test_prec = static_cast<int>(p) + 1;

  Eps1Report rep;
  rep.lambda_residue = a % p;
  const CycElt w = one - pi * CycElt::from_padic(ring, inv_lm1);
  const CycElt wp = w.pow(p);
  const CycElt p_pi = pi * CycElt::from_int(ring, static_cast<i64>(p)) * CycElt::from_padic(ring, inv_lm1);
  rep.congruence_minus = (wp - (one - p_pi)).valuation().bound() >= test_prec;
  rep.congruence_plus = (wp - (one + p_pi)).valuation().bound() >= test_prec;
  rep.w_defect = (wp - one).valuation();

  // u_0 = omega(lambda - 1)^(-1) (lambda - 1 - pi)
  const PadicInt scale = invert(teichmuller(ctx, (a + p - 1) % p));
  const CycElt u0 = CycElt::from_padic(ring, scale) * (CycElt::from_padic(ring, lm1) - pi);
  const CycElt e = eigen_unit(1, u0);
  const Valuation v = (e.pow(p) - one).valuation();
  rep.pth_power_test = v.bound() < test_prec && v.is_finite();
  rep.defect = v;
  return rep;
}

}  // namespace eigensplit
