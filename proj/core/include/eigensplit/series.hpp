#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "eigensplit/error.hpp"
#include "eigensplit/padic.hpp"
#include "eigensplit/rational.hpp"

namespace eigensplit {

/// Per-ring hooks used by the generic series code. A ring is identified by a
/// prototype element, which for Z_p carries the precision context.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<BigRational> {
  static BigRational from_int(const BigRational&, i64 v) { return BigRational(static_cast<long>(v)); }
  static void check_same_ring(const BigRational&, const BigRational&) {}
  static bool is_zero(const BigRational& x) { return x == 0; }
  static bool is_unit(const BigRational& x) { return x != 0; }
  static BigRational inverse(const BigRational& x) { return BigRational(1) / x; }
  static BigRational divide_by_integer(const BigRational& x, i64 k) {
    return x / BigRational(static_cast<long>(k));
  }
  static void cap_precision(BigRational&, const BigRational&) {}
  /// log of a constant term; only log(1) = 0 is rational.
  static BigRational log_constant(const BigRational& c) {
    if (c != 1) fail(ErrorCode::NonUnitConstantTerm, "rational logarithm needs constant term exactly 1");
    return 0;
  }
};

template <>
struct ScalarTraits<PadicInt> {
  static PadicInt from_int(const PadicInt& proto, i64 v) { return PadicInt(proto.ctx(), v); }
  static void check_same_ring(const PadicInt& a, const PadicInt& b) {
    if (!(a.ctx() == b.ctx())) fail(ErrorCode::RingMismatch, "series coefficients from different p-adic contexts");
  }
  static bool is_zero(const PadicInt& x) { return x.is_zero(); }
  static bool is_unit(const PadicInt& x) { return x.is_unit(); }
  static PadicInt inverse(const PadicInt& x) { return invert(x); }
  static PadicInt divide_by_integer(const PadicInt& x, i64 k);
  static void cap_precision(PadicInt& x, const PadicInt& bound) { x = x.truncated(bound.known_prec()); }
  /// Iwasawa p-adic logarithm log_p(c) = log(c^(p-1)) / (p-1) of a unit.
  static PadicInt log_constant(const PadicInt& c);
};

/// Power series known modulo X^trunc, trunc >= 1.
template <class S>
class TruncSeries {
 public:
  using Traits = ScalarTraits<S>;

  explicit TruncSeries(std::vector<S> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) fail(ErrorCode::InvalidArgument, "a truncated series needs at least one coefficient");
    for (const S& x : c_) Traits::check_same_ring(c_.front(), x);
  }

  static TruncSeries constant(const S& value, std::size_t trunc) {
    std::vector<S> c(std::max<std::size_t>(trunc, 1), Traits::from_int(value, 0));
    c[0] = value;
    return TruncSeries(std::move(c));
  }
  /// The series X (or 0 when trunc = 1).
  static TruncSeries variable(const S& proto, std::size_t trunc) {
    std::vector<S> c(std::max<std::size_t>(trunc, 1), Traits::from_int(proto, 0));
    if (c.size() > 1) c[1] = Traits::from_int(proto, 1);
    return TruncSeries(std::move(c));
  }

  std::size_t trunc() const noexcept { return c_.size(); }
  const S& operator[](std::size_t k) const { return c_.at(k); }
  const std::vector<S>& coeffs() const noexcept { return c_; }
  S zero() const { return Traits::from_int(c_.front(), 0); }
  S one() const { return Traits::from_int(c_.front(), 1); }

  /// Truncates to fewer terms, or pads with zeros (which asserts the new
  /// coefficients are known to vanish).
  TruncSeries resized(std::size_t t) const {
    std::vector<S> c(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(t, c_.size())));
    while (c.size() < t) c.push_back(zero());
    return TruncSeries(std::move(c));
  }

  TruncSeries& operator+=(const TruncSeries& o) {
    Traits::check_same_ring(c_.front(), o.c_.front());
    c_.resize(std::min(c_.size(), o.c_.size()), zero());
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    Traits::check_same_ring(c_.front(), o.c_.front());
    c_.resize(std::min(c_.size(), o.c_.size()), zero());
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  TruncSeries operator-() const {
    TruncSeries r = *this;
    for (S& x : r.c_) x = zero() - x;
    return r;
  }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    Traits::check_same_ring(a.c_.front(), b.c_.front());
    const std::size_t t = std::min(a.trunc(), b.trunc());
    std::vector<S> c(t, a.zero());
    for (std::size_t i = 0; i < t; ++i) {
      if (Traits::is_zero(a.c_[i]) && i > 0) continue;
      for (std::size_t j = 0; i + j < t; ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return TruncSeries(std::move(c));
  }

  TruncSeries scaled(const S& s) const {
    TruncSeries r = *this;
    for (S& x : r.c_) x = x * s;
    return r;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<S> c_;
};

using RationalSeries = TruncSeries<BigRational>;
using PadicSeries = TruncSeries<PadicInt>;

template <class S>
TruncSeries<S> pow(const TruncSeries<S>& f, unsigned n) {
  TruncSeries<S> result = TruncSeries<S>::constant(f.one(), f.trunc());
  TruncSeries<S> base = f;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

/// Formal derivative; known modulo X^(trunc-1).
template <class S>
TruncSeries<S> derivative(const TruncSeries<S>& f) {
  if (f.trunc() < 2) return TruncSeries<S>::constant(f.zero(), 1);
  std::vector<S> c;
  c.reserve(f.trunc() - 1);
  for (std::size_t k = 1; k < f.trunc(); ++k) c.push_back(f[k] * ScalarTraits<S>::from_int(f[0], static_cast<i64>(k)));
  return TruncSeries<S>(std::move(c));
}

/// D f = (1 + X) f'(X).
template <class S>
TruncSeries<S> D(const TruncSeries<S>& f) {
  TruncSeries<S> d = derivative(f);
  std::vector<S> c = d.coeffs();
  for (std::size_t k = c.size(); k-- > 1;) c[k] += d[k - 1];
  return TruncSeries<S>(std::move(c));
}

/// Multiplicative inverse of a series with unit constant term.
template <class S>
TruncSeries<S> reciprocal(const TruncSeries<S>& f) {
  using Tr = ScalarTraits<S>;
  if (!Tr::is_unit(f[0])) fail(ErrorCode::NonUnitConstantTerm, "reciprocal needs a unit constant term");
  const S inv0 = Tr::inverse(f[0]);
  std::vector<S> g{inv0};
  g.reserve(f.trunc());
  for (std::size_t m = 1; m < f.trunc(); ++m) {
    S acc = f.zero();
    for (std::size_t k = 1; k <= m; ++k) acc += f[k] * g[m - k];
    g.push_back(f.zero() - inv0 * acc);
  }
  return TruncSeries<S>(std::move(g));
}

/// f(g(X)) for g with zero constant term (baby-step giant-step Horner).
template <class S>
TruncSeries<S> compose(const TruncSeries<S>& f, const TruncSeries<S>& g) {
  using Tr = ScalarTraits<S>;
  Tr::check_same_ring(f[0], g[0]);
  if (!Tr::is_zero(g[0])) fail(ErrorCode::NonzeroConstantTerm, "inner series of a composition must vanish at 0");
  const std::size_t t = std::min(f.trunc(), g.trunc());
  const TruncSeries<S> inner = g.resized(t);
  const std::size_t step = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(t)))));

  std::vector<TruncSeries<S>> powers{TruncSeries<S>::constant(f.one(), t)};
  for (std::size_t r = 1; r <= step; ++r) powers.push_back(powers.back() * inner);
  const TruncSeries<S>& giant = powers[step];

  const std::size_t blocks = (t + step - 1) / step;
  auto block = [&](std::size_t j) {
    std::vector<S> c(t, f.zero());
    for (std::size_t r = 0; r < step && j * step + r < t; ++r) {
      const S& a = f[j * step + r];
      if (Tr::is_zero(a)) continue;
      for (std::size_t k = r; k < t; ++k) c[k] += a * powers[r][k];
    }
    return TruncSeries<S>(std::move(c));
  };

  TruncSeries<S> result = block(blocks - 1);
  for (std::size_t j = blocks - 1; j-- > 0;) result = result * giant + block(j);

  std::vector<S> c = result.coeffs();
  for (S& x : c) Tr::cap_precision(x, g[0]);
  return TruncSeries<S>(std::move(c));
}

/// log f = (f - 1) - (f - 1)^2/2 + ..., computed as log f(0) + integral of f'/f.
template <class S>
TruncSeries<S> log_series(const TruncSeries<S>& f) {
  using Tr = ScalarTraits<S>;
  if (!Tr::is_unit(f[0])) fail(ErrorCode::NonUnitConstantTerm, "logarithm needs a unit constant term");
  std::vector<S> c{Tr::log_constant(f[0])};
  if (f.trunc() > 1) {
    const TruncSeries<S> q = derivative(f) * reciprocal(f.resized(f.trunc() - 1));
    for (std::size_t m = 1; m < f.trunc(); ++m) c.push_back(Tr::divide_by_integer(q[m - 1], static_cast<i64>(m)));
  }
  return TruncSeries<S>(std::move(c));
}

/// Compositional inverse g with f(g(X)) = X, by Newton iteration.
template <class S>
TruncSeries<S> reversion(const TruncSeries<S>& f) {
  using Tr = ScalarTraits<S>;
  if (f.trunc() < 2) fail(ErrorCode::NotReversible, "need at least the linear coefficient");
  if (!Tr::is_zero(f[0]) || !Tr::is_unit(f[1]))
    fail(ErrorCode::NotReversible, "reversion needs f(0) = 0 and a unit linear coefficient");
  const std::size_t t_final = f.trunc();
  TruncSeries<S> g = TruncSeries<S>::variable(f[0], 2).scaled(Tr::inverse(f[1]));
  std::size_t t = 2;
  while (t < t_final) {
    t = std::min(2 * t, t_final);
    const TruncSeries<S> ft = f.resized(t);
    const TruncSeries<S> gt = g.resized(t);
    const TruncSeries<S> residual = compose(ft, gt) - TruncSeries<S>::variable(f[0], t);
    const TruncSeries<S> slope = compose(derivative(ft), gt.resized(t - 1));
    g = gt - residual * reciprocal(slope).resized(t);
  }
  return g.resized(t_final);
}

}  // namespace eigensplit
