#include "eigensplit/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "eigensplit/error.hpp"
#include "eigensplit/lfunctions.hpp"
#include "eigensplit/rational.hpp"

namespace eigensplit {

FgZpModule::FgZpModule(int r, std::vector<int> t) : rank(r), torsion(std::move(t)) {
  if (r < 0) fail(ErrorCode::InvalidArgument, "negative rank");
  torsion.erase(std::remove_if(torsion.begin(), torsion.end(), [](int e) { return e <= 0; }), torsion.end());
  std::sort(torsion.begin(), torsion.end(), std::greater<>());
}

int FgZpModule::torsion_length() const { return std::accumulate(torsion.begin(), torsion.end(), 0); }

FgZpModule& FgZpModule::operator+=(const FgZpModule& o) {
  rank += o.rank;
  torsion.insert(torsion.end(), o.torsion.begin(), o.torsion.end());
  std::sort(torsion.begin(), torsion.end(), std::greater<>());
  return *this;
}

std::string FgZpModule::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z_p";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (int e : torsion) {
    if (!first) os << "+";
    os << "Z/p";
    if (e > 1) os << "^" << e;
    first = false;
  }
  return os.str();
}

GradedModule::GradedModule(int lo, int hi) : lo_(lo), hi_(hi) {}

const FgZpModule& GradedModule::at(int n) const {
  static const FgZpModule zero;
  if (n < lo_ || n > hi_)
    fail(ErrorCode::WindowInsufficient,
         "degree " + std::to_string(n) + " outside [" + std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  auto it = entries_.find(n);
  return it == entries_.end() ? zero : it->second;
}

void GradedModule::set(int n, FgZpModule m) {
  if (n < lo_ || n > hi_) return;
  if (m.is_zero()) {
    entries_.erase(n);
  } else {
    entries_[n] = std::move(m);
  }
}

void GradedModule::add(int n, const FgZpModule& m) {
  if (n < lo_ || n > hi_ || m.is_zero()) return;
  entries_[n] += m;
}

GradedModule GradedModule::restricted(int lo, int hi) const {
  if (lo < lo_ || hi > hi_)
    fail(ErrorCode::WindowInsufficient, "restriction window exceeds the computed window");
  GradedModule r(lo, hi);
  for (const auto& [n, m] : entries_) r.set(n, m);
  return r;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  GradedModule r(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
  for (const auto& [n, m] : a.entries()) r.add(n, m);
  for (const auto& [n, m] : b.entries()) r.add(n, m);
  return r;
}

GradedModule shift(const GradedModule& m, int k) {
  GradedModule r(m.lo() + k, m.hi() + k);
  for (const auto& [n, mod] : m.entries()) r.set(n + k, mod);
  return r;
}

GradedModule connected_cover(const GradedModule& m, int c) {
  GradedModule r(m.lo(), m.hi());
  for (const auto& [n, mod] : m.entries())
    if (n > c) r.set(n, mod);
  return r;
}

GradedModule anderson_dual(const GradedModule& m) {
  if (m.hi() <= m.lo()) fail(ErrorCode::WindowInsufficient, "dual needs a window of at least two degrees");
  GradedModule r(-m.hi(), -m.lo() - 1);
  for (int n = r.lo(); n <= r.hi(); ++n) {
    const FgZpModule& hom = m.at(-n);
    const FgZpModule& ext = m.at(-n - 1);
    r.set(n, FgZpModule(hom.rank, ext.torsion));
  }
  return r;
}

u64 topological_generator(u64 p) {
  const u64 p2 = p * p;
  for (u64 l = 2;; ++l) {
    if (!is_prime(l) || l % p == 0) continue;
    // generates (Z/p^2)^x iff primitive mod p and l^(p-1) != 1 mod p^2
    bool prim = true;
    u64 m = p - 1;
    for (u64 q = 2; q <= m; ++q) {
      if (m % q) continue;
      if (modarith::pow(l, (p - 1) / q, p) == 1) prim = false;
      while (m % q == 0) m /= q;
    }
    if (prim && modarith::pow(l, p - 1, p2) != 1) return l;
  }
  return 0;
}

int adams_torsion_exponent(u64 p, u64 l, i64 k) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k = 0 carries the free classes of J");
  const u64 ak = static_cast<u64>(k < 0 ? -k : k);
  // l^((p-1)k) - 1 for negative k differs by a unit from the positive case
  BigInt pz = static_cast<unsigned long>(p);
  BigInt mod;
  unsigned long digits = 4;
  for (u64 t = ak; t > 0; t /= p) ++digits;
  mpz_pow_ui(mod.get_mpz_t(), pz.get_mpz_t(), digits);
  BigInt base = static_cast<unsigned long>(l);
  BigInt e = static_cast<unsigned long>((p - 1) * ak);
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  r -= 1;
  if (r == 0) fail(ErrorCode::PrecisionExhausted, "torsion exponent exceeds the working modulus");
  return valuation(r, p);
}

std::string SpectrumId::name() const {
  switch (tag) {
    case SpectrumTag::ell: return "ell";
    case SpectrumTag::L: return "L";
    case SpectrumTag::j: return "j";
    case SpectrumTag::J: return "J";
    case SpectrumTag::Jprime: return "Jprime";
    case SpectrumTag::jprime: return "jprime";
    case SpectrumTag::Y: return "Y" + std::to_string(index);
    case SpectrumTag::y: return "y" + std::to_string(index);
    case SpectrumTag::Z: return "Z" + std::to_string(index);
    case SpectrumTag::z: return "z" + std::to_string(index);
    case SpectrumTag::X: return "X" + std::to_string(index);
    case SpectrumTag::x: return "x" + std::to_string(index);
    case SpectrumTag::KZ: return "KZ";
    case SpectrumTag::TCZ: return "TCZ";
    case SpectrumTag::FibTau: return "FibTau";
  }
  return "?";
}

SpectrumId SpectrumId::parse(const std::string& s) {
  static const std::map<std::string, SpectrumTag> plain = {
      {"ell", SpectrumTag::ell}, {"L", SpectrumTag::L},           {"j", SpectrumTag::j},
      {"J", SpectrumTag::J},     {"Jprime", SpectrumTag::Jprime}, {"jprime", SpectrumTag::jprime},
      {"KZ", SpectrumTag::KZ},   {"TCZ", SpectrumTag::TCZ},       {"FibTau", SpectrumTag::FibTau}};
  if (auto it = plain.find(s); it != plain.end()) return SpectrumId{it->second, 0};
  static const std::map<char, SpectrumTag> family = {{'Y', SpectrumTag::Y}, {'y', SpectrumTag::y},
                                                     {'Z', SpectrumTag::Z}, {'z', SpectrumTag::z},
                                                     {'X', SpectrumTag::X}, {'x', SpectrumTag::x}};
  if (s.size() >= 2) {
    auto it = family.find(s[0]);
    const std::string rest = s.substr(1);
    if (it != family.end() && std::all_of(rest.begin(), rest.end(), ::isdigit) && rest.size() < 6)
      return SpectrumId{it->second, std::stoi(rest)};
  }
  fail(ErrorCode::InvalidArgument, "unknown spectrum '" + s + "'");
}

bool DualityRow::pass() const {
  return std::none_of(cells.begin(), cells.end(),
                      [](const DualityCell& c) { return c.status == DualityCell::Status::Mismatch; });
}

bool DualityReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const DualityRow& r) { return r.pass(); });
}

bool LesReport::pass() const {
  return std::all_of(runs.begin(), runs.end(), [](const Run& r) { return r.ok; });
}

bool LesReport::forced() const {
  return std::all_of(runs.begin(), runs.end(), [](const Run& r) { return !r.closed || r.forced; });
}

LesReport les_consistency(const GradedModule& x, const GradedModule& y, const GradedModule& z) {
  const int lo = std::max({x.lo(), y.lo(), z.lo()});
  const int hi = std::min({x.hi(), y.hi(), z.hi()});
  struct Term {
    std::string label;
    FgZpModule m;
  };
  std::vector<Term> seq;
  for (int n = hi; n >= lo; --n) {
    seq.push_back({"pi_" + std::to_string(n) + " X", x.at(n)});
    seq.push_back({"pi_" + std::to_string(n) + " Y", y.at(n)});
    seq.push_back({"pi_" + std::to_string(n) + " Z", z.at(n)});
  }
  LesReport rep;
  std::size_t k = 0;
  while (k < seq.size()) {
    if (seq[k].m.is_zero()) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < seq.size() && !seq[end].m.is_zero()) ++end;
    LesReport::Run run;
    run.start_position = static_cast<int>(k);
    for (std::size_t t = k; t < end; ++t) run.terms.push_back(seq[t].label + " = " + seq[t].m.to_string());
    run.closed = k > 0 && end < seq.size();
    run.ok = true;
    run.forced = false;
    if (run.closed) {
      const std::size_t r = end - k;
      int rank_sum = 0, len_sum = 0;
      bool finite = true;
      for (std::size_t t = k; t < end; ++t) {
        const int sign = ((t - k) % 2 == 0) ? 1 : -1;
        rank_sum += sign * seq[t].m.rank;
        len_sum += sign * seq[t].m.torsion_length();
        finite = finite && seq[t].m.is_finite();
      }
      if (r == 1) {
        run.ok = false;
        run.note = "nonzero group between zeros";
      } else if (rank_sum != 0) {
        run.ok = false;
        run.note = "alternating rank sum " + std::to_string(rank_sum);
      } else if (finite && len_sum != 0) {
        run.ok = false;
        run.note = "alternating torsion length " + std::to_string(len_sum);
      } else if (r == 2) {
        run.ok = seq[k].m == seq[k + 1].m;
        run.forced = true;
        run.note = run.ok ? "isomorphism" : "ends of a two-term run differ";
      } else if (r == 3) {
        const FgZpModule &a = seq[k].m, &b = seq[k + 1].m, &c = seq[k + 2].m;
        if (a.generators() > b.generators() || b.generators() > a.generators() + c.generators() ||
            a.torsion_length() > b.torsion_length()) {
          run.ok = false;
          run.note = "generator bounds violated";
        } else if (c.torsion.empty()) {
          FgZpModule sum = a;
          sum += c;
          run.ok = sum == b;
          run.forced = true;
          run.note = run.ok ? "split" : "free quotient forces a split, which fails";
        } else {
          run.note = "extension not determined";
        }
      } else {
        run.note = "rank/length conditions only";
      }
    } else {
      run.note = "touches the window edge";
    }
    rep.runs.push_back(std::move(run));
    k = end;
  }
  return rep;
}

HomotopyEngine::HomotopyEngine(u64 p, EngineOptions opts) : p_(p), opts_(opts), regular_(false), l_(0) {
  if (p < 3 || !is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be an odd prime");
  regular_ = known_regular(p);
  l_ = topological_generator(p);
}

int HomotopyEngine::window_bound() const noexcept { return std::max(6 * static_cast<int>(p_ - 1), 48); }

void HomotopyEngine::check_window(int lo, int hi) const {
  if (lo > hi) fail(ErrorCode::InvalidArgument, "empty window");
  const int b = window_bound();
  if (lo < -b || hi > b)
    fail(ErrorCode::InvalidArgument, "window exceeds +-" + std::to_string(b) + " for p = " + std::to_string(p_));
}

void HomotopyEngine::require_kv(const SpectrumId& id) const {
  if (regular_ || opts_.kv_assume) return;
  const int i = id.index;
  bool needs = false;
  switch (id.tag) {
    case SpectrumTag::Y:
    case SpectrumTag::y: needs = i >= 2 && i % 2 == 0; break;
    case SpectrumTag::X:
    case SpectrumTag::x: needs = i >= 3 && i % 2 == 1; break;
    case SpectrumTag::KZ:
    case SpectrumTag::FibTau: needs = true; break;
    default: break;
  }
  if (needs)
    fail(ErrorCode::KummerVandiverRequired,
         "p = " + std::to_string(p_) +
             " is not known to be regular; these groups hold under the Kummer-Vandiver condition, pass --kv-assume to assume it");
}

int HomotopyEngine::lvalue_valuation(i64 i, i64 s) {
  const i64 ci = static_cast<i64>(modarith::reduce(i, p_ - 1));
  {
    std::lock_guard lock(mu_);
    if (auto it = lcache_.find({ci, s}); it != lcache_.end()) return it->second;
  }
  int v = -1;
  if (s <= 0 && modarith::reduce(1 - s, p_ - 1) == static_cast<u64>(ci)) {
    const LValue lv = lp_neg(p_, ci, 1 - s, 2);
    if (!lv.exact_valuation) fail(ErrorCode::IndistinguishableFromZero, "L-value vanishes exactly");
    v = *lv.exact_valuation;
  } else {
    for (int m = opts_.lvalue_precision;; ++m) {
      try {
        v = lp_at(p_, ci, s, m).valuation().value();
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PrecisionExhausted || m >= opts_.lvalue_precision_max) throw;
      }
    }
  }
  std::lock_guard lock(mu_);
  lcache_[{ci, s}] = v;
  return v;
}

GradedModule HomotopyEngine::periodic(int offset, int lo, int hi) const {
  const int period = 2 * static_cast<int>(p_ - 1);
  GradedModule r(lo, hi);
  for (int n = lo; n <= hi; ++n)
    if (((n - offset) % period + period) % period == 0) r.set(n, FgZpModule::free(1));
  return r;
}

GradedModule HomotopyEngine::j_model(int lo, int hi, bool connective) const {
  const int period = 2 * static_cast<int>(p_ - 1);
  GradedModule r(lo, hi);
  r.set(0, FgZpModule::free(1));
  if (!connective) r.set(-1, FgZpModule::free(1));
  for (int n = lo; n <= hi; ++n) {
    if (((n + 1) % period + period) % period != 0) continue;
    const i64 k = (n + 1) / period;
    if (k == 0 || (connective && k < 0)) continue;
    r.set(n, FgZpModule::cyclic(adams_torsion_exponent(p_, l_, k)));
  }
  return r;
}

GradedModule HomotopyEngine::y_model(int i, int lo, int hi) {
  const int q = static_cast<int>(p_ - 1);
  if (i == 0) return GradedModule(lo, hi);
  if (i % 2 == 1) return periodic(2 * i - 1, lo, hi);
  // even i: pi_(2n) = Z/p^v(L_p(-n, omega^i)), n = i - 1 mod p - 1
  GradedModule r(lo, hi);
  for (int deg = lo; deg <= hi; ++deg) {
    if (deg % 2 != 0) continue;
    const int n = deg / 2;
    if (((n - (i - 1)) % q + q) % q != 0) continue;
    r.set(deg, FgZpModule::cyclic(lvalue_valuation(i, -n)));
  }
  return r;
}

GradedModule HomotopyEngine::x_model(int i, int lo, int hi) {
  const int q = static_cast<int>(p_ - 1);
  if (i == 1) return GradedModule(lo, hi);
  if (i % 2 == 0) return periodic(2 * i - 2, lo, hi);
  // odd i >= 3: pi_(2n) = Z/p^v(L_p(n + 1, omega^(1-i))), n = i - 1 mod p - 1
  GradedModule r(lo, hi);
  for (int deg = lo; deg <= hi; ++deg) {
    if (deg % 2 != 0) continue;
    const int n = deg / 2;
    if (((n - (i - 1)) % q + q) % q != 0) continue;
    r.set(deg, FgZpModule::cyclic(lvalue_valuation(1 - i, n + 1)));
  }
  return r;
}

namespace {

void assert_support(const GradedModule& m, int i, u64 p, bool odd_free, const std::string& what) {
  const int period = 2 * static_cast<int>(p - 1);
  for (const auto& [n, mod] : m.entries()) {
    const int r = ((n - (2 * i - 1)) % period + period) % period;
    const int r2 = ((n - (2 * i - 2)) % period + period) % period;
    if (r != 0 && r2 != 0) throw std::logic_error(what + " has homotopy in degree " + std::to_string(n));
    if (odd_free && n % 2 != 0 && !mod.torsion.empty())
      throw std::logic_error(what + " has torsion in odd degree " + std::to_string(n));
  }
}

}  // namespace

GradedModule HomotopyEngine::model(const SpectrumId& raw, int lo, int hi) {
  SpectrumId id = raw;
  const int q = static_cast<int>(p_ - 1);
  id.index = ((id.index % q) + q) % q;
  require_kv(id);
  const int i = id.index;
  switch (id.tag) {
    case SpectrumTag::ell: return connected_cover(periodic(0, lo, hi), -1);
    case SpectrumTag::L: return periodic(0, lo, hi);
    case SpectrumTag::J:
    case SpectrumTag::Jprime: return j_model(lo, hi, false);
    case SpectrumTag::j:
    case SpectrumTag::jprime: return j_model(lo, hi, true);
    case SpectrumTag::Y: {
      GradedModule m = y_model(i, lo, hi);
      assert_support(m, i, p_, true, id.name());
      return m;
    }
    case SpectrumTag::y: return connected_cover(model({SpectrumTag::Y, i}, lo, hi), 1);
    case SpectrumTag::Z: return periodic(2 * i - 1, lo, hi);
    case SpectrumTag::z: return connected_cover(periodic(2 * i - 1, lo, hi), i == 0 ? -2 : 1);
    case SpectrumTag::X: {
      GradedModule m = x_model(i, lo, hi);
      assert_support(m, i, p_, false, id.name());
      return m;
    }
    case SpectrumTag::x: return connected_cover(model({SpectrumTag::X, i}, lo, hi), -3);
    case SpectrumTag::KZ:
    case SpectrumTag::TCZ:
    case SpectrumTag::FibTau: {
      GradedModule r = j_model(lo, hi, true);  // j, or j' for the fiber
      if (id.tag == SpectrumTag::TCZ) r = direct_sum(r, shift(j_model(lo - 1, hi - 1, true), 1));
      const SpectrumTag part = id.tag == SpectrumTag::KZ ? SpectrumTag::y
                               : id.tag == SpectrumTag::TCZ ? SpectrumTag::z
                                                            : SpectrumTag::x;
      for (int k = 0; k < q; ++k) r = direct_sum(r, model({part, k}, lo, hi));
      return r;
    }
  }
  fail(ErrorCode::InvalidArgument, "unhandled spectrum");
}

GradedModule HomotopyEngine::homotopy_of(const SpectrumId& id, int lo, int hi) {
  check_window(lo, hi);
  return model(id, lo, hi);
}

GradedModule HomotopyEngine::assemble(SpectrumTag tag, int lo, int hi) {
  if (tag != SpectrumTag::KZ && tag != SpectrumTag::TCZ && tag != SpectrumTag::FibTau)
    fail(ErrorCode::InvalidArgument, "assemble takes KZ, TCZ or FibTau");
  check_window(lo, hi);
  return model({tag, 0}, lo, hi);
}

DualityReport HomotopyEngine::verify_main_duality(int lo, int hi) {
  check_window(lo, hi);
  const int q = static_cast<int>(p_ - 1);
  DualityReport rep{p_, lo, hi, {}};
  auto dual_route = [&](const GradedModule& src) {
    return shift(anderson_dual(src), -1).restricted(lo, hi);
  };
  auto compare = [&](DualityRow& row, const GradedModule& a, const GradedModule& b, bool convention_band) {
    for (int n = lo; n <= hi; ++n) {
      const FgZpModule& ma = a.at(n);
      const FgZpModule& mb = b.at(n);
      if (ma.is_zero() && mb.is_zero()) continue;
      DualityCell::Status st = DualityCell::Status::Match;
      if (!(ma == mb))
        st = (convention_band && n >= -3 && n <= 0) ? DualityCell::Status::ConventionSensitive
                                                    : DualityCell::Status::Mismatch;
      row.cells.push_back({n, ma, mb, st});
    }
  };

  for (int i = 0; i < q; ++i) {
    DualityRow row{"x" + std::to_string(i), i, {}, {}};
    const GradedModule a = model({SpectrumTag::x, i}, lo, hi);
    const int dual_index = static_cast<int>((p_ - static_cast<u64>(i)) % (p_ - 1));
    const GradedModule y = model({SpectrumTag::Y, dual_index}, -hi - 2, -lo - 1);
    const GradedModule b = connected_cover(dual_route(y), -3);
    compare(row, a, b, false);
    if (i % 2 == 0) {
      // the Sigma^(2i) L reading of the even rows, reported but not used
      const GradedModule prose = connected_cover(periodic(2 * i, lo, hi), -3);
      for (int n = lo; n <= hi; ++n)
        if (!(prose.at(n) == a.at(n))) row.prose_pattern_differs.push_back(n);
    }
    rep.rows.push_back(std::move(row));
  }

  const GradedModule jdual = dual_route(j_model(-hi - 2, -lo - 1, false));
  DualityRow local{"Jprime", -1, {}, {}};
  compare(local, j_model(lo, hi, false), jdual, false);
  rep.rows.push_back(std::move(local));
  DualityRow conn{"jprime", -1, {}, {}};
  compare(conn, j_model(lo, hi, true), connected_cover(jdual, -3), true);
  rep.rows.push_back(std::move(conn));
  return rep;
}

}  // namespace eigensplit
