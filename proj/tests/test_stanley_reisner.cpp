#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace torichom;
using namespace torichom::testing;

namespace {

SRMonomial mono(std::initializer_list<int> e) { return SRMonomial(e); }
SRElement elem(const SRMonomial& m, long long c = 1) { return SRElement{{m, Int(c)}}; }

// All degree-p exponent vectors in n variables whose support is a cone.
std::size_t brute_force_dimension(const Fan& fan, int p) {
  const std::size_t n = fan.ray_count();
  std::size_t count = 0;
  SRMonomial m(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      if (left == 0 && fan.is_cone(monomial_support(m))) ++count;
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m[i] = e;
      rec(i + 1, left - e);
    }
    m[i] = 0;
  };
  rec(0, p);
  return count;
}

}  // namespace

TEST(SrBasis, Examples) {
  const Fan punctured = load("punctured_c2");
  EXPECT_EQ(sr_basis(punctured, 2), (std::vector<SRMonomial>{mono({0, 2}), mono({2, 0})}));
  EXPECT_EQ(sr_basis(load("p2"), 0), (std::vector<SRMonomial>{mono({0, 0, 0})}));
  EXPECT_EQ(sr_basis(load("p2"), 1).size(), 3u);
  EXPECT_TRUE(sr_basis(load("torus_r2"), 3).empty());
}

TEST(SrBasis, MatchesBruteForceAndDimensionFormula) {
  for (const auto& name : corpus_names()) {
    const Fan fan = load(name);
    if (fan.ray_count() > 8) continue;
    for (int p = 0; p <= 4; ++p) {
      const auto basis = sr_basis(fan, p);
      EXPECT_EQ(basis.size(), brute_force_dimension(fan, p)) << name << " p=" << p;
      EXPECT_EQ(Int(basis.size()), sr_dimension(fan, p)) << name << " p=" << p;
      EXPECT_TRUE(std::is_sorted(basis.begin(), basis.end()));
    }
  }
}

TEST(SrMultiply, Examples) {
  const Fan punctured = load("punctured_c2");
  EXPECT_TRUE(sr_multiply(punctured, elem(mono({1, 0})), elem(mono({0, 1}))).empty());
  const Fan p1p1 = load("p1xp1");
  const SRElement a = elem(mono({1, 0, 2, 0}), 3);
  EXPECT_EQ(sr_multiply(p1p1, elem(mono({0, 0, 0, 0})), a), a);
  EXPECT_TRUE(sr_multiply(p1p1, elem(mono({1, 0, 0, 0})), elem(mono({0, 1, 0, 0}))).empty());
  EXPECT_EQ(sr_multiply(p1p1, elem(mono({1, 0, 0, 0})), elem(mono({0, 0, 1, 0}))), elem(mono({1, 0, 1, 0})));
}

TEST(SstarImage, Examples) {
  const Fan p2 = load("p2");
  SRElement expected{{mono({1, 0, 0}), Int(1)}, {mono({0, 0, 1}), Int(-1)}};
  EXPECT_EQ(sstar_image(p2, 0), expected);
  const Fan c3 = load("affine_r3");
  for (int i = 0; i < 3; ++i) {
    SRMonomial m(3, 0);
    m[static_cast<std::size_t>(i)] = 1;
    EXPECT_EQ(sstar_image(c3, i), elem(m));
  }
  EXPECT_TRUE(sstar_image(load("torus_r2"), 1).empty());
}

TEST(SrDimension, CoxFanAgrees) {
  for (const auto& name : corpus_names()) {
    const Fan fan = load(name);
    const Fan c = cox(fan);
    for (int p = 0; p <= fan.rank() + 1; ++p) EXPECT_EQ(sr_dimension(fan, p), sr_dimension(c, p)) << name;
  }
}
