#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace torichom;
using namespace torichom::testing;

namespace {

std::vector<Int> unit_vector(std::size_t n, std::size_t i) {
  std::vector<Int> e(n);
  e.at(i) = 1;
  return e;
}

bool sum_is_zero(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  const IntMatrix da = a.to_dense();
  return da == IntMatrix(da.rows(), da.cols()) - b.to_dense();
}

// H^t(C; Z/m) from the integral groups: H^t ⊗ Z/m ⊕ Tor(H^{t+1}, Z/m).
std::vector<HomologyGroup> uct_oracle(const std::vector<HomologyGroup>& integral, int m) {
  std::vector<HomologyGroup> out;
  for (std::size_t t = 0; t < integral.size(); ++t) {
    std::vector<Int> orders;
    for (const auto& d : integral[t].torsion) orders.push_back(gcd(d, Int(m)));
    if (t + 1 < integral.size())
      for (const auto& d : integral[t + 1].torsion) orders.push_back(gcd(d, Int(m)));
    std::vector<Int> kept;
    for (auto& o : orders)
      if (o > 1) kept.push_back(o);
    out.push_back(group_from_cyclic_orders(integral[t].free_rank, kept, Ring::mod(Int(m))));
  }
  return out;
}

}  // namespace

TEST(SmallComplex, Examples) {
  const SmallComplex torus(load("torus_r2"));
  EXPECT_EQ(torus.dim(0) + torus.dim(1) + torus.dim(2), 4u);
  for (int t = 0; t < 4; ++t) EXPECT_TRUE(torus.complex().differential(t).is_zero());

  const SmallComplex c1(load("affine_r1"));
  EXPECT_EQ(c1.dim(0) + c1.dim(1) + c1.dim(2), 3u);
  EXPECT_EQ(cohomology(load("affine_r1")), (std::vector<HomologyGroup>{{1, {}}, {}, {}}));

  const SmallComplex p1(load("p1"));
  EXPECT_EQ(p1.dim(0) + p1.dim(1) + p1.dim(2), 4u);
  EXPECT_EQ(group_strings(cohomology(load("p1"))), (std::vector<std::string>{"Z", "0", "Z"}));
}

TEST(FullComplex, Examples) {
  const auto torus = build_full_complex(load("torus_r2"));
  for (int t = 0; t <= torus.top_degree(); ++t) EXPECT_TRUE(torus.differential(t).is_zero());
  EXPECT_EQ(group_strings(cohomology_full_complex(load("affine_r2"))),
            (std::vector<std::string>{"Z", "0", "0", "0", "0"}));
  EXPECT_EQ(group_strings(cohomology_full_complex(load("punctured_c2"))),
            (std::vector<std::string>{"Z", "0", "0", "Z", "0"}));
}

TEST(Complexes, SquareToZeroOnCorpusAndRandomFans) {
  std::vector<Fan> fans;
  for (const auto& name : corpus_names()) fans.push_back(load(name));
  std::mt19937 rng(31);
  for (int i = 0; i < 30; ++i) fans.push_back(random_regular_fan(1 + static_cast<int>(rng() % 3), rng));
  for (const auto& fan : fans) {
    if (fan.ray_count() > 8) continue;
    EXPECT_TRUE(build_full_complex(fan, 2 * fan.rank() + 2).squares_to_zero());
    EXPECT_TRUE(build_small_complex(fan).complex().squares_to_zero());
  }
}

TEST(Cohomology, CorpusMatchesFixturesAndFullComplex) {
  for (const auto& name : corpus_names(false)) {
    if (!has_expected(name)) continue;
    const Fan fan = load(name);
    const auto small = cohomology(fan);
    const auto exp = expected(name)["cohomology"].get<std::vector<std::string>>();
    EXPECT_EQ(group_strings(small), exp) << name;
    if (fan.ray_count() <= 8) EXPECT_EQ(cohomology_full_complex(fan), small) << name;
  }
}

TEST(Cohomology, HochsterOracleOnArrangementComplements) {
  int checked = 0;
  for (const auto& name : corpus_names()) {
    const Fan fan = load(name);
    if (!classify(fan).arrangement_complement) continue;
    EXPECT_EQ(cohomology(fan), hochster_oracle(fan)) << name;
    ++checked;
  }
  EXPECT_GE(checked, 10);
  const auto rp2 = cohomology(load("rp2_arrangement"));
  EXPECT_EQ(rp2[9], (HomologyGroup{0, {Int(2)}}));
}

TEST(Cohomology, ModularMatchesUniversalCoefficients) {
  for (const auto& name : {"rp2_arrangement", "p2", "punctured_c2", "torus_r2", "cox_hirzebruch_2"}) {
    const Fan fan = load(name);
    const auto integral = cohomology(fan);
    for (int m : {2, 3, 4, 6}) EXPECT_EQ(cohomology(fan, Ring::mod(Int(m))), uct_oracle(integral, m)) << name;
  }
}

TEST(Cohomology, ParallelJobsGiveSameTable) {
  const Fan fan = load("rp2_arrangement");
  EXPECT_EQ(cohomology(fan, Ring::integers(), 4), cohomology(fan));
}

TEST(Cohomology, RejectsInvalidFan) {
  EXPECT_THROW(cohomology(read_fan_file(fans_dir() + "/bad_overlap.json")), InvalidFan);
}

TEST(QuasiIso, CorpusWithFewRays) {
  for (const auto& name : corpus_names()) {
    const Fan fan = load(name);
    if (fan.ray_count() > 8) continue;
    const auto rep = quasi_iso_report(fan);
    EXPECT_TRUE(rep.groups_equal) << name;
    EXPECT_TRUE(rep.inclusion_iso) << name;
  }
}

TEST(BasisIndependence, UnimodularChangesKeepTables) {
  std::mt19937 rng(41);
  for (const auto& name : corpus_names(false)) {
    const Fan fan = load(name);
    const Fan moved = transform_fan(fan, random_unimodular(static_cast<std::size_t>(fan.rank()), rng));
    EXPECT_EQ(cohomology(moved), cohomology(fan)) << name;
  }
}

TEST(LambdaAction, TorusExample) {
  const Fan torus = load("torus_r2");
  const SmallComplex a(torus);
  const auto z = torus.zero_cone();
  const std::size_t top = a.index(ACell{z, 0b11});
  const std::size_t second = a.index(ACell{z, 0b10});
  const auto image = a.action_matrix(0, 2).apply(unit_vector(a.dim(2), top));
  EXPECT_EQ(image, unit_vector(a.dim(1), second));

  const CohomologyAlgebra alg(torus);
  const auto c = alg.class_of(2, unit_vector(a.dim(2), top));
  EXPECT_EQ(alg.lambda_action(0, c), alg.class_of(1, unit_vector(a.dim(1), second)));
  EXPECT_TRUE(alg.lambda_action(1, alg.unit()).coords.empty());
}

TEST(LambdaAction, PuncturedPlaneTopClassIsKilled) {
  const CohomologyAlgebra alg(load("punctured_c2"));
  ASSERT_EQ(alg.basis(3).size(), 1u);
  for (int i = 0; i < 2; ++i) EXPECT_TRUE(alg.lambda_action(i, alg.generator(3, 0)).is_zero());
}

// x_i x_j = -x_j x_i and x_i d = -d x_i on chains; the induced action on
// classes is therefore well defined and graded anticommutative.
TEST(LambdaAction, GradedAnticommutationOnChains) {
  std::mt19937 rng(43);
  std::vector<Fan> fans{load("p2"), load("hirzebruch_2"), load("rp2_arrangement"), load("blowup_c2")};
  for (int k = 0; k < 10; ++k) fans.push_back(random_regular_fan(2 + static_cast<int>(rng() % 2), rng));
  for (const auto& fan : fans) {
    const SmallComplex a(fan);
    const auto& c = a.complex();
    for (int t = 2; t <= 2 * fan.rank(); ++t)
      for (int i = 0; i < fan.rank(); ++i)
        for (int j = 0; j < fan.rank(); ++j) {
          const auto ij = a.action_matrix(i, t - 1) * a.action_matrix(j, t);
          const auto ji = a.action_matrix(j, t - 1) * a.action_matrix(i, t);
          EXPECT_TRUE(sum_is_zero(ij, ji));
        }
    for (int t = 0; t < 2 * fan.rank(); ++t)
      for (int i = 0; i < fan.rank(); ++i) {
        // A^t -> A^{t+1} -> A^t versus A^t -> A^{t-1} -> A^t.
        const auto xd = a.action_matrix(i, t + 1) * c.differential(t);
        if (t == 0) {
          EXPECT_TRUE(xd.is_zero());
          continue;
        }
        const auto dx = c.differential(t - 1) * a.action_matrix(i, t);
        EXPECT_TRUE(sum_is_zero(xd, dx));
      }
  }
}

TEST(Leibniz, RandomChainPairs) {
  std::mt19937 rng(47);
  for (const auto& name : {"p1xp1", "p2", "punctured_c2", "hirzebruch_1"}) {
    const Fan fan = load(name);
    FullComplex full(fan);
    for (int trial = 0; trial < 200; ++trial) {
      const int s = static_cast<int>(rng() % 5), t = static_cast<int>(rng() % 5);
      const auto a = random_chain(full, s, rng);
      const auto b = random_chain(full, t, rng);
      KoszulChain rhs = koszul_product(fan, koszul_differential(fan, a), b);
      for (const auto& [k, c] : koszul_product(fan, a, koszul_differential(fan, b)))
        chain_add(rhs, k, (s % 2) ? Int(-c) : c);
      EXPECT_EQ(koszul_differential(fan, koszul_product(fan, a, b)), rhs) << name;
    }
  }
}

TEST(Cup, ProjectiveLineSquared) {
  CohomologyAlgebra alg(load("p1xp1"));
  ASSERT_EQ(alg.basis(2).size(), 2u);
  const auto u = alg.generator(2, 0), v = alg.generator(2, 1);
  const auto uu = alg.cup(u, u).value, uv = alg.cup(u, v).value, vv = alg.cup(v, v).value;
  EXPECT_TRUE(uu.is_zero());
  EXPECT_TRUE(vv.is_zero());
  ASSERT_EQ(uv.coords.size(), 1u);
  EXPECT_EQ(abs_value(uv.coords[0]), 1);
  EXPECT_EQ(alg.cup(v, u).value, uv);
  EXPECT_TRUE(alg.cup(u, v).verified);
}

TEST(Cup, UnitAndGradedCommutativityOnTorus) {
  CohomologyAlgebra alg(load("torus_r3"));
  const auto one = alg.unit();
  for (int t = 0; t <= 3; ++t)
    for (std::size_t i = 0; i < alg.basis(t).size(); ++i) {
      const auto g = alg.generator(t, i);
      EXPECT_EQ(alg.cup(one, g).value, g);
      EXPECT_EQ(alg.cup(g, one).value, g);
    }
  for (int s = 0; s <= 3; ++s)
    for (int t = 0; t <= 3; ++t)
      for (std::size_t i = 0; i < alg.basis(s).size(); ++i)
        for (std::size_t j = 0; j < alg.basis(t).size(); ++j) {
          const auto a = alg.generator(s, i), b = alg.generator(t, j);
          const auto ab = alg.cup(a, b).value, ba = alg.cup(b, a).value;
          EXPECT_EQ(ab, (s * t) % 2 ? alg.scale(Int(-1), ba) : ba);
        }
  // The degree-3 class is the product of the three degree-1 classes, up to sign.
  const auto top = alg.cup(alg.cup(alg.generator(1, 0), alg.generator(1, 1)).value, alg.generator(1, 2)).value;
  ASSERT_EQ(top.coords.size(), 1u);
  EXPECT_EQ(abs_value(top.coords[0]), 1);
}

TEST(Cup, RefusedOutsideProductFansUnlessConjectureMode) {
  CohomologyAlgebra alg(load("p2"));
  const auto h = alg.generator(2, 0);
  EXPECT_THROW(alg.cup(h, h), NotP1RSubfan);
  const auto res = alg.cup(h, h, true);
  EXPECT_FALSE(res.verified);
  ASSERT_EQ(res.value.coords.size(), 1u);
  EXPECT_EQ(abs_value(res.value.coords[0]), 1);
}
