#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <vector>

#include "eigensplit/padic.hpp"
#include "eigensplit/rational.hpp"

namespace eigensplit {

/// Bernoulli numbers (t/(e^t - 1) convention, B_1 = -1/2), filled on demand and
/// optionally mirrored to <dir>/bernoulli.tsv.
class BernoulliTable {
 public:
  BernoulliTable() = default;
  explicit BernoulliTable(std::filesystem::path cache_dir);

  BigRational get(unsigned n);
  std::size_t size() const;
  const std::optional<std::filesystem::path>& cache_file() const noexcept { return file_; }

  /// Process-wide table; set_global_cache_dir switches it to a disk-backed one.
  static BernoulliTable& global();
  static void set_global_cache_dir(const std::filesystem::path& dir);

 private:
  void load();
  void save() const;

  mutable std::mutex mu_;
  std::vector<BigRational> values_;
  std::optional<std::filesystem::path> file_;
};

BigRational bernoulli(unsigned n);

/// L_p(s, omega^i) known mod p^guaranteed_prec.
struct LValue {
  PadicInt value;
  i64 argument;
  int character;
  int guaranteed_prec;
  /// Exact valuation when the value came from an exact rational.
  std::optional<int> exact_valuation;

  Valuation valuation() const;
};

/// L_p(1 - n, omega^i) = -(1 - p^(n-1)) B_n / n, for n >= 1, n = i mod (p - 1).
LValue lp_neg(u64 p, i64 i, i64 n, int precision);

/// L_p(s, omega^i) mod p^M; PrecisionExhausted when the valuation is M - 1 or more.
LValue lp_at(u64 p, i64 i, i64 s, int M = 3);

/// The p-adic measure sum for L_p(s, omega^i) mod p^M, usable at every integer s.
PadicInt lp_measure(u64 p, i64 i, i64 s, int M);

/// Scan limit for irregular pairs: p - 3, or 60 for p > 200.
unsigned irregular_scan_limit(u64 p);
/// Even k <= scan limit with p | numerator(B_k).
std::vector<unsigned> irregular_pairs(u64 p);
/// True when the scan covers 2..p-3 and finds nothing.
bool known_regular(u64 p);

}  // namespace eigensplit
