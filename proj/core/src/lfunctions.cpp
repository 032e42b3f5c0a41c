#include "eigensplit/lfunctions.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "eigensplit/error.hpp"

namespace eigensplit {

namespace {

std::mutex g_table_mu;
std::unique_ptr<BernoulliTable> g_table;

}  // namespace

BernoulliTable::BernoulliTable(std::filesystem::path cache_dir) {
  std::filesystem::create_directories(cache_dir);
  file_ = cache_dir / "bernoulli.tsv";
  load();
}

void BernoulliTable::load() {
  std::ifstream in(*file_);
  if (!in) return;
  std::string line;
  std::vector<BigRational> vals;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    unsigned n = 0;
    std::string num, den;
    if (!(ls >> n >> num >> den) || n != vals.size()) break;  // keep the valid prefix
    BigRational q;
    if (q.get_num().set_str(num, 10) != 0 || q.get_den().set_str(den, 10) != 0 || q.get_den() <= 0) break;
    q.canonicalize();
    vals.push_back(q);
  }
  values_ = std::move(vals);
}

void BernoulliTable::save() const {
  const std::filesystem::path tmp = file_->string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (std::size_t n = 0; n < values_.size(); ++n)
      out << n << '\t' << values_[n].get_num().get_str() << '\t' << values_[n].get_den().get_str() << '\n';
    if (!out) return;  // the cache is an optimization; a failed write is not an error
  }
  std::error_code ec;
  std::filesystem::rename(tmp, *file_, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

BigRational BernoulliTable::get(unsigned n) {
  std::lock_guard lock(mu_);
  if (n < values_.size()) return values_[n];
  // sum_{k<=m} C(m+1, k) B_k = 0
  while (values_.size() <= n) {
    const unsigned m = static_cast<unsigned>(values_.size());
    if (m == 0) {
      values_.emplace_back(1);
      continue;
    }
    if (m > 1 && m % 2 == 1) {
      values_.emplace_back(0);
      continue;
    }
    BigRational acc = 0;
    BigInt binom = 1;  // C(m+1, k)
    for (unsigned k = 0; k < m; ++k) {
      if (values_[k] != 0) acc += BigRational(binom) * values_[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    BigRational b = -acc / BigRational(m + 1);
    b.canonicalize();
    values_.push_back(b);
  }
  if (file_) save();
  return values_[n];
}

std::size_t BernoulliTable::size() const {
  std::lock_guard lock(mu_);
  return values_.size();
}

BernoulliTable& BernoulliTable::global() {
  std::lock_guard lock(g_table_mu);
  if (!g_table) g_table = std::make_unique<BernoulliTable>();
  return *g_table;
}

void BernoulliTable::set_global_cache_dir(const std::filesystem::path& dir) {
  std::lock_guard lock(g_table_mu);
  g_table = std::make_unique<BernoulliTable>(dir);
}

BigRational bernoulli(unsigned n) { return BernoulliTable::global().get(n); }

Valuation LValue::valuation() const {
  if (exact_valuation && *exact_valuation < guaranteed_prec) return Valuation::exact(*exact_valuation);
  return value.valuation();
}

namespace {

void check_character(u64 p, i64 i) {
  if (modarith::reduce(i, p - 1) == 0)
    fail(ErrorCode::PoleAtZeroCharacter, "the trivial-character branch (i = 0 mod p-1) is excluded");
}

}  // namespace

LValue lp_neg(u64 p, i64 i, i64 n, int precision) {
  check_character(p, i);
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be at least 1");
  if (modarith::reduce(n, p - 1) != modarith::reduce(i, p - 1))
    fail(ErrorCode::CongruenceClassMismatch,
         "n = " + std::to_string(n) + " is not congruent to i = " + std::to_string(i) + " mod " + std::to_string(p - 1));
  const PadicCtx ctx(p, precision);
  BigInt pp;
  BigInt pz = static_cast<unsigned long>(p);
  mpz_pow_ui(pp.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(n - 1));
  BigRational val = -(BigRational(1) - BigRational(pp)) * bernoulli(static_cast<unsigned>(n)) / BigRational(static_cast<long>(n));
  val.canonicalize();
  std::optional<int> exact;
  if (val != 0) exact = valuation(val, p);
  return LValue{to_padic(val, ctx), 1 - n, static_cast<int>(modarith::reduce(i, p - 1)), precision, exact};
}

PadicInt lp_measure(u64 p, i64 i, i64 s, int M) {
  check_character(p, i);
  const PadicCtx ctx(p, M);
  const u64 P = ctx.modulus();
  const u64 c = primitive_root(p);
  const u64 cinv = modarith::inverse(c, P);
  std::vector<u64> omega(p), omega_inv(p);
  for (u64 a = 1; a < p; ++a) {
    omega[a] = teichmuller(ctx, a).residue();
    omega_inv[a] = modarith::inverse(omega[a], P);
  }
  const u64 ei = modarith::reduce(i - 1, p - 1);
  const u64 half_cm1 = modarith::mul((c - 1) % P, modarith::inverse(2, P), P);
  // E(a) = (a - c b)/P + (c - 1)/2 with b = c^(-1) a mod P: the regularized Bernoulli measure
  u64 sum = 0;
  for (u64 a = 1; a < P; ++a) {
    const u64 r = a % p;
    if (r == 0) continue;
    const u64 b = modarith::mul(cinv, a, P);
    const __int128 diff = static_cast<__int128>(a) - static_cast<__int128>(c) * b;
    const i64 q = static_cast<i64>(diff / static_cast<__int128>(P));
    const u64 e = modarith::add(modarith::reduce(q, P), half_cm1, P);
    const u64 bracket = modarith::mul(a, omega_inv[r], P);  // <a>
    const u64 twist = s <= 0 ? modarith::pow(bracket, static_cast<u64>(-s), P)
                             : modarith::pow(modarith::inverse(bracket, P), static_cast<u64>(s), P);
    const u64 w = modarith::pow(omega[r], ei, P);
    sum = modarith::add(sum, modarith::mul(modarith::mul(w, twist, P), e, P), P);
  }
  // denominator 1 - omega(c)^i <c>^(1-s) is a unit because c generates (Z/p)^x
  const u64 cr = c % p;
  const u64 cbr = modarith::mul(c, omega_inv[cr], P);
  const u64 cb_pow = (1 - s) >= 0 ? modarith::pow(cbr, static_cast<u64>(1 - s), P)
                                  : modarith::pow(modarith::inverse(cbr, P), static_cast<u64>(s - 1), P);
  const u64 den = modarith::sub(1, modarith::mul(modarith::pow(omega[cr], modarith::reduce(i, p - 1), P), cb_pow, P), P);
  const u64 val = modarith::sub(0, modarith::mul(sum, modarith::inverse(den, P), P), P);
  return PadicInt(ctx, val, M);
}

LValue lp_at(u64 p, i64 i, i64 s, int M) {
  check_character(p, i);
  if (M < 2) fail(ErrorCode::InvalidArgument, "lp_at needs M >= 2");
  LValue out = [&] {
    if (s <= 0 && modarith::reduce(1 - s, p - 1) == modarith::reduce(i, p - 1)) return lp_neg(p, i, 1 - s, M);
    return LValue{lp_measure(p, i, s, M), s, static_cast<int>(modarith::reduce(i, p - 1)), M, std::nullopt};
  }();
  out.argument = s;
  const Valuation v = out.valuation();
  if (v.bound() >= M - 1)
    fail(ErrorCode::PrecisionExhausted, "valuation of L_" + std::to_string(p) + "(" + std::to_string(s) + ") is " +
                                            v.to_string() + ", not certifiable at M = " + std::to_string(M));
  return out;
}

unsigned irregular_scan_limit(u64 p) { return p > 200 ? 60U : static_cast<unsigned>(p >= 3 ? p - 3 : 0); }

std::vector<unsigned> irregular_pairs(u64 p) {
  if (p < 3 || !is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be an odd prime");
  std::vector<unsigned> out;
  const unsigned limit = irregular_scan_limit(p);
  BigInt pz = static_cast<unsigned long>(p);
  for (unsigned k = 2; k <= limit; k += 2) {
    const BigRational b = bernoulli(k);
    if (mpz_divisible_p(b.get_num_mpz_t(), pz.get_mpz_t())) out.push_back(k);
  }
  return out;
}

bool known_regular(u64 p) { return p <= 200 && irregular_pairs(p).empty(); }

}  // namespace eigensplit
