#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "eigensplit/padic.hpp"

namespace eigensplit {

/// Z_p^rank + sum of Z/p^e.
struct FgZpModule {
  int rank = 0;
  std::vector<int> torsion;  // descending

  FgZpModule() = default;
  FgZpModule(int r, std::vector<int> t);
  static FgZpModule free(int r) { return FgZpModule(r, {}); }
  static FgZpModule cyclic(int e) { return e > 0 ? FgZpModule(0, {e}) : FgZpModule(); }

  bool is_zero() const noexcept { return rank == 0 && torsion.empty(); }
  bool is_finite() const noexcept { return rank == 0; }
  /// Length of the torsion part: log_p of its order.
  int torsion_length() const;
  /// Minimal number of generators.
  int generators() const noexcept { return rank + static_cast<int>(torsion.size()); }
  FgZpModule& operator+=(const FgZpModule& o);
  std::string to_string() const;

  friend bool operator==(const FgZpModule& a, const FgZpModule& b) noexcept {
    return a.rank == b.rank && a.torsion == b.torsion;
  }
};

/// Degree -> module on a window [lo, hi]; absent degrees inside the window are 0.
class GradedModule {
 public:
  GradedModule(int lo, int hi);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  bool covers(int lo, int hi) const noexcept { return lo >= lo_ && hi <= hi_; }
  /// WindowInsufficient outside the window.
  const FgZpModule& at(int n) const;
  void set(int n, FgZpModule m);
  void add(int n, const FgZpModule& m);
  /// Nonzero entries in increasing degree.
  const std::map<int, FgZpModule>& entries() const noexcept { return entries_; }
  GradedModule restricted(int lo, int hi) const;

  friend bool operator==(const GradedModule& a, const GradedModule& b) noexcept {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.entries_ == b.entries_;
  }

 private:
  int lo_;
  int hi_;
  std::map<int, FgZpModule> entries_;
};

/// Degreewise sum on the common window.
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);
/// pi_n(Sigma^k M) = pi_(n-k) M.
GradedModule shift(const GradedModule& m, int k);
/// Kills degrees <= c.
GradedModule connected_cover(const GradedModule& m, int c);
/// pi_n I M = Hom(pi_-n M, Z_p) + Ext(pi_(-n-1) M, Z_p), on the window [-hi, -lo-1].
GradedModule anderson_dual(const GradedModule& m);

/// Least prime l whose class generates (Z/p^2)^x.
u64 topological_generator(u64 p);
/// v_p(l^((p-1)k) - 1) for k != 0: the order of pi_(2(p-1)k-1) J.
int adams_torsion_exponent(u64 p, u64 l, i64 k);

enum class SpectrumTag { ell, L, j, J, Jprime, jprime, Y, y, Z, z, X, x, KZ, TCZ, FibTau };

struct SpectrumId {
  SpectrumTag tag;
  int index = 0;  // reduced mod p-1 for the Y/y/Z/z/X/x families

  std::string name() const;
  /// Parses "J", "jprime", "y3", "X0", "KZ", ...
  static SpectrumId parse(const std::string& s);
};

struct DualityCell {
  int degree;
  FgZpModule route_a;
  FgZpModule route_b;
  enum class Status { Match, Mismatch, ConventionSensitive } status;
};

struct DualityRow {
  std::string label;  // "x0", ..., "Jprime", "jprime"
  int index;          // i, or -1 for the J rows
  std::vector<DualityCell> cells;
  /// Degrees where the Sigma^(2i) L reading of the even-index pattern would differ.
  std::vector<int> prose_pattern_differs;
  bool pass() const;
};

struct DualityReport {
  u64 p;
  int lo;
  int hi;
  std::vector<DualityRow> rows;
  bool pass() const;
};

struct LesReport {
  struct Run {
    int start_position;
    std::vector<std::string> terms;
    bool closed;  // bounded by zeros inside the window
    bool ok;
    bool forced;  // the check determines the sequence up to isomorphism
    std::string note;
  };
  std::vector<Run> runs;
  bool pass() const;
  bool forced() const;
};

/// Consistency of ... -> pi_n X -> pi_n Y -> pi_n Z -> pi_(n-1) X -> ... on the common window.
LesReport les_consistency(const GradedModule& x, const GradedModule& y, const GradedModule& z);

struct EngineOptions {
  bool kv_assume = false;
  int lvalue_precision = 3;
  int lvalue_precision_max = 6;
};

/// Graded models of the summands, for one prime. L-value valuations are cached.
class HomotopyEngine {
 public:
  explicit HomotopyEngine(u64 p, EngineOptions opts = {});

  u64 prime() const noexcept { return p_; }
  /// Largest |degree| accepted: max(6(p-1), 48).
  int window_bound() const noexcept;
  bool regular() const noexcept { return regular_; }

  GradedModule homotopy_of(const SpectrumId& id, int lo, int hi);
  GradedModule assemble(SpectrumTag tag, int lo, int hi);
  DualityReport verify_main_duality(int lo, int hi);

  /// v_p(L_p(s, omega^i)).
  int lvalue_valuation(i64 i, i64 s);

 private:
  void check_window(int lo, int hi) const;
  void require_kv(const SpectrumId& id) const;
  GradedModule model(const SpectrumId& id, int lo, int hi);
  GradedModule periodic(int offset, int lo, int hi) const;
  GradedModule j_model(int lo, int hi, bool connective) const;
  GradedModule y_model(int i, int lo, int hi);
  GradedModule x_model(int i, int lo, int hi);

  u64 p_;
  EngineOptions opts_;
  bool regular_;
  u64 l_;
  std::mutex mu_;
  std::map<std::pair<i64, i64>, int> lcache_;
};

}  // namespace eigensplit
