#include <gtest/gtest.h>

#include <random>

#include "eigensplit/error.hpp"
#include "eigensplit/homotopy.hpp"
#include "eigensplit/lfunctions.hpp"

using namespace eigensplit;

namespace eigensplit {
void PrintTo(const FgZpModule& m, std::ostream* os) { *os << m.to_string(); }
void PrintTo(const GradedModule& g, std::ostream* os) {
  *os << "[" << g.lo() << "," << g.hi() << "]";
  for (const auto& [n, m] : g.entries()) *os << " " << n << ":" << m.to_string();
}
}  // namespace eigensplit

namespace {

const FgZpModule Zp = FgZpModule::free(1);

GradedModule random_module(std::mt19937_64& rng, int lo, int hi) {
  GradedModule m(lo, hi);
  for (int n = lo; n <= hi; ++n) {
    if (rng() % 3 != 0) continue;
    std::vector<int> t;
    for (int k = static_cast<int>(rng() % 3); k > 0; --k) t.push_back(1 + static_cast<int>(rng() % 3));
    m.set(n, FgZpModule(static_cast<int>(rng() % 3), t));
  }
  return m;
}

int vp(u64 x, u64 p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

SpectrumId id(SpectrumTag t, int i = 0) { return SpectrumId{t, i}; }

}  // namespace

TEST(Module, CanonicalForm) {
  const FgZpModule m(1, {1, 3, 0, 2});
  EXPECT_EQ(m.torsion, (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(m.torsion_length(), 6);
  EXPECT_EQ(m.generators(), 4);
  EXPECT_EQ(m.to_string(), "Z_p+Z/p^3+Z/p^2+Z/p");
  EXPECT_EQ(FgZpModule::cyclic(0), FgZpModule());
  EXPECT_THROW(FgZpModule(-1, {}), Error);
}

TEST(Graded, WindowAndSum) {
  GradedModule m(-2, 5);
  m.set(0, Zp);
  EXPECT_EQ(m.at(0), Zp);
  EXPECT_TRUE(m.at(3).is_zero());
  try {
    m.at(6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowInsufficient);
  }
  GradedModule n(0, 8);
  n.set(0, FgZpModule::cyclic(2));
  const GradedModule s = direct_sum(m, n);
  EXPECT_EQ(s.lo(), 0);
  EXPECT_EQ(s.hi(), 5);
  EXPECT_EQ(s.at(0), FgZpModule(1, {2}));
}

TEST(Graded, ShiftAndCover) {
  std::mt19937_64 rng(1);
  const GradedModule m = random_module(rng, -6, 10);
  EXPECT_EQ(shift(shift(m, 1), -1), m);
  EXPECT_EQ(connected_cover(m, -1000), m);
  const GradedModule c = connected_cover(m, 2);
  for (int n = -6; n <= 10; ++n) EXPECT_EQ(c.at(n), n <= 2 ? FgZpModule() : m.at(n));
  const GradedModule s = shift(m, 3);
  EXPECT_EQ(s.at(5), m.at(2));
}

TEST(Graded, AndersonDualExamples) {
  GradedModule a(-5, 5);
  a.set(0, Zp);
  GradedModule da = anderson_dual(a);
  EXPECT_EQ(da.entries().size(), 1u);
  EXPECT_EQ(da.at(0), Zp);

  GradedModule b(-6, 6);
  b.set(3, FgZpModule::cyclic(2));
  GradedModule db = anderson_dual(b);
  EXPECT_EQ(db.entries().size(), 1u);
  EXPECT_EQ(db.at(-4), FgZpModule::cyclic(2));
}

TEST(Graded, AndersonDualInvolution) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const GradedModule m = random_module(rng, -8, 12);
    // the dual lives on [-hi, -lo-1], so the double dual sees [lo+1, hi-1]
    EXPECT_EQ(anderson_dual(anderson_dual(m)), m.restricted(-7, 11));
  }
}

TEST(J, Generator) {
  EXPECT_EQ(topological_generator(3), 2u);
  EXPECT_EQ(topological_generator(5), 2u);
  EXPECT_EQ(topological_generator(7), 3u);
  for (u64 p : {3, 5, 7, 11, 13, 29, 37}) {
    const u64 l = topological_generator(p);
    u64 x = 1, ord = 0;
    do {
      x = x * l % (p * p);
      ++ord;
    } while (x != 1);
    EXPECT_EQ(ord, p * (p - 1));
  }
}

TEST(J, TorsionIndependentOfGenerator) {
  // 2 and 3 both generate (Z/25)^x
  for (i64 k : {1, 2, 5, 10, 25, -1, -5})
    for (u64 l : {2, 3}) EXPECT_EQ(adams_torsion_exponent(5, l, k), 1 + vp(static_cast<u64>(k < 0 ? -k : k), 5)) << k;
  EXPECT_EQ(adams_torsion_exponent(7, 3, 7), 2);
  EXPECT_EQ(adams_torsion_exponent(7, 5, 7), 2);
}

TEST(J, PatternAtFive) {
  HomotopyEngine e(5);
  const GradedModule j = e.homotopy_of(id(SpectrumTag::J), -20, 20);
  EXPECT_EQ(j.at(0), Zp);
  EXPECT_EQ(j.at(-1), Zp);
  EXPECT_EQ(j.at(7), FgZpModule::cyclic(1));
  EXPECT_TRUE(j.at(-2).is_zero());
  EXPECT_EQ(j.at(-9), FgZpModule::cyclic(1));
  const GradedModule c = e.homotopy_of(id(SpectrumTag::j), -20, 20);
  EXPECT_TRUE(c.at(-1).is_zero());
  EXPECT_TRUE(c.at(-9).is_zero());
  EXPECT_EQ(c.at(15), FgZpModule::cyclic(1));
  EXPECT_EQ(e.homotopy_of(id(SpectrumTag::J), 38, 40).at(39), FgZpModule::cyclic(2));
}

TEST(Spectra, Examples) {
  HomotopyEngine e5(5);
  EXPECT_TRUE(e5.homotopy_of(id(SpectrumTag::Y, 0), -40, 40).entries().empty());
  EXPECT_TRUE(e5.homotopy_of(id(SpectrumTag::y, 4), -40, 40).entries().empty());  // 4 = 0 mod 4

  const GradedModule x0 = e5.homotopy_of(id(SpectrumTag::x, 0), -10, 20);
  EXPECT_EQ(x0.entries().begin()->first, -2);
  EXPECT_EQ(x0.at(-2), Zp);
  EXPECT_EQ(std::next(x0.entries().begin())->first, 6);

  HomotopyEngine e691(691, EngineOptions{true});
  EXPECT_EQ(e691.homotopy_of(id(SpectrumTag::y, 12), 0, 30).at(22), FgZpModule::cyclic(1));

  const GradedModule z0 = e5.homotopy_of(id(SpectrumTag::z, 0), -30, 30);
  EXPECT_EQ(z0, connected_cover(e5.homotopy_of(id(SpectrumTag::Z, 0), -30, 30), -2));
  EXPECT_EQ(z0.at(-1), Zp);
  EXPECT_TRUE(e5.homotopy_of(id(SpectrumTag::X, 1), -30, 30).entries().empty());
}

TEST(Spectra, ParseNames) {
  for (const char* s : {"J", "jprime", "y3", "X0", "KZ", "ell", "FibTau"}) EXPECT_EQ(SpectrumId::parse(s).name(), s);
  EXPECT_THROW(SpectrumId::parse("Q3"), Error);
  EXPECT_THROW(SpectrumId::parse("y"), Error);
}

TEST(Spectra, WindowGuard) {
  HomotopyEngine e(5);
  EXPECT_EQ(e.window_bound(), 48);
  EXPECT_EQ(HomotopyEngine(37, EngineOptions{true}).window_bound(), 216);
  EXPECT_THROW(e.homotopy_of(id(SpectrumTag::L), -49, 0), Error);
}

TEST(Spectra, KummerVandiverFlag) {
  HomotopyEngine e(37);
  EXPECT_FALSE(e.regular());
  try {
    e.homotopy_of(id(SpectrumTag::Y, 32), 0, 80);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::KummerVandiverRequired);
  }
  EXPECT_NO_THROW(e.homotopy_of(id(SpectrumTag::Y, 3), 0, 80));
  EXPECT_THROW(e.assemble(SpectrumTag::KZ, 0, 10), Error);
  EXPECT_NO_THROW(e.assemble(SpectrumTag::TCZ, 0, 10));
  HomotopyEngine kv(37, EngineOptions{true});
  const GradedModule y = kv.homotopy_of(id(SpectrumTag::Y, 32), 0, 80);
  EXPECT_EQ(y.at(62), FgZpModule::cyclic(1));
}

TEST(Spectra, SupportInvariants) {
  for (u64 p : {5, 7, 37}) {
    HomotopyEngine e(p, EngineOptions{true});
    const int q = static_cast<int>(p - 1);
    const int b = std::min(e.window_bound(), 80);
    for (int i = 0; i < q; ++i)
      for (SpectrumTag t : {SpectrumTag::Y, SpectrumTag::X}) {
        const GradedModule m = e.homotopy_of(id(t, i), -b, b);
        for (const auto& [n, mod] : m.entries()) {
          const int r1 = ((n - (2 * i - 1)) % (2 * q) + 2 * q) % (2 * q);
          const int r2 = ((n - (2 * i - 2)) % (2 * q) + 2 * q) % (2 * q);
          EXPECT_TRUE(r1 == 0 || r2 == 0) << p << " " << i << " " << n;
          if (t == SpectrumTag::Y && n % 2 != 0) EXPECT_TRUE(mod.torsion.empty());
        }
      }
  }
}

TEST(Spectra, RegularEvenYIsTrivial) {
  // regular p: every L_p(-n, omega^i) is a unit, so even Y_i vanish
  HomotopyEngine e(7);
  for (int i = 2; i < 6; i += 2) EXPECT_TRUE(e.homotopy_of(id(SpectrumTag::Y, i), -36, 36).entries().empty());
  for (int i = 3; i < 6; i += 2) EXPECT_TRUE(e.homotopy_of(id(SpectrumTag::X, i), -36, 36).entries().empty());
}

TEST(Assemble, Examples) {
  HomotopyEngine e5(5);
  EXPECT_EQ(e5.assemble(SpectrumTag::KZ, -10, 40).at(0), Zp);
  EXPECT_EQ(e5.assemble(SpectrumTag::FibTau, -10, 40).at(-2), Zp);
  for (u64 p : {5, 7, 11}) {
    HomotopyEngine e(p);
    EXPECT_EQ(e.assemble(SpectrumTag::TCZ, -10, 40).at(1).rank, 1) << p;
  }
  EXPECT_THROW(e5.assemble(SpectrumTag::J, 0, 1), Error);
}

TEST(Assemble, KZRankPerPeriod) {
  for (u64 p : {5, 7, 11, 13}) {
    HomotopyEngine e(p);
    const int period = 2 * static_cast<int>(p - 1);
    const GradedModule k = e.assemble(SpectrumTag::KZ, 0, 2 * period + 1);
    EXPECT_EQ(k.at(1).rank, 0);
    int odd_classes = 0;
    for (int i = 1; i < static_cast<int>(p) - 1; i += 2) ++odd_classes;
    // from degree 2 on: the class of y_1 in degree 1 is cut by the 1-connected cover
    for (int start : {2, period + 2}) {
      int r = 0;
      for (int n = start; n < start + period; ++n) r += k.at(n).rank;
      EXPECT_EQ(r, odd_classes) << p << " " << start;
    }
    EXPECT_EQ(k.at(0).rank, 1);
  }
}

TEST(Duality, RegularPrimesPass) {
  for (u64 p : {3, 5, 7, 11}) {
    HomotopyEngine e(p);
    const int w = std::min(e.window_bound(), 40);
    const DualityReport r = e.verify_main_duality(-4, w);
    EXPECT_TRUE(r.pass()) << p;
    for (const DualityRow& row : r.rows) {
      if (row.index >= 1 && row.index % 2 == 1) EXPECT_TRUE(row.cells.empty()) << p << " " << row.label;
      if (row.index >= 0 && row.index % 2 == 0) EXPECT_FALSE(row.prose_pattern_differs.empty());
    }
  }
  const DualityReport r5 = HomotopyEngine(5).verify_main_duality(-4, 40);
  ASSERT_EQ(r5.rows.size(), 6u);
  EXPECT_EQ(r5.rows[4].label, "Jprime");
  EXPECT_TRUE(r5.rows[4].pass());
  for (const DualityCell& c : r5.rows[4].cells) EXPECT_EQ(c.status, DualityCell::Status::Match);
  bool sensitive = false;
  for (const DualityCell& c : r5.rows[5].cells) sensitive |= c.status == DualityCell::Status::ConventionSensitive;
  EXPECT_TRUE(sensitive);
}

TEST(Duality, IrregularPairShowsOnBothRoutes) {
  HomotopyEngine e(37, EngineOptions{true});
  const DualityReport r = e.verify_main_duality(-4, 100);
  EXPECT_TRUE(r.pass());
  int torsion_cells = 0;
  for (const DualityRow& row : r.rows)
    for (const DualityCell& c : row.cells)
      if (!c.route_a.torsion.empty() && row.index >= 0) {
        EXPECT_EQ(c.route_a, FgZpModule::cyclic(1));
        EXPECT_EQ(c.route_b, c.route_a);
        ++torsion_cells;
      }
  EXPECT_GT(torsion_cells, 0);
}

TEST(Les, Trivial) {
  GradedModule zero(-5, 5), m(-5, 5);
  m.set(0, Zp);
  m.set(2, FgZpModule::cyclic(1));
  const LesReport r = les_consistency(zero, m, m);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.forced());
}

TEST(Les, DetectsInconsistency) {
  GradedModule zero(-5, 5), m(-5, 5), n(-5, 5);
  m.set(0, Zp);
  n.set(0, FgZpModule::cyclic(1));
  EXPECT_FALSE(les_consistency(zero, m, n).pass());
  GradedModule lone(-5, 5);
  lone.set(1, Zp);
  EXPECT_FALSE(les_consistency(lone, zero, zero).pass());
}

TEST(Les, SummandsAtFive) {
  HomotopyEngine e(5);
  for (int i = 0; i < 4; ++i) {
    const auto x = e.homotopy_of(id(SpectrumTag::x, i), -2, 40);
    const auto y = e.homotopy_of(id(SpectrumTag::y, i), -2, 40);
    const auto z = e.homotopy_of(id(SpectrumTag::z, i), -2, 40);
    const LesReport r = les_consistency(x, y, z);
    EXPECT_TRUE(r.pass()) << i;
    EXPECT_TRUE(r.forced()) << i;
  }
  // y0 = 0: pi_n z0 = pi_(n-1) x0
  const auto x0 = e.homotopy_of(id(SpectrumTag::x, 0), -10, 40);
  const auto z0 = e.homotopy_of(id(SpectrumTag::z, 0), -10, 40);
  for (int n = -9; n <= 40; ++n) EXPECT_EQ(z0.at(n), x0.at(n - 1)) << n;
}

TEST(Engine, LValueCache) {
  HomotopyEngine e(37, EngineOptions{true});
  EXPECT_EQ(e.lvalue_valuation(32, -31), 1);
  EXPECT_EQ(e.lvalue_valuation(32, -31), 1);
  EXPECT_EQ(e.lvalue_valuation(32, 5), 1);
  EXPECT_EQ(e.lvalue_valuation(2, 3), 0);
}
