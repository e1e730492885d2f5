#include <random>

#include <gtest/gtest.h>

#include "torichom/exact_linalg.hpp"
#include "torichom/sparse.hpp"

using namespace torichom;

namespace {

IntMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937& rng, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

bool is_snf(const SnfDecomposition& s) {
  const auto d = s.diagonal();
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0) return false;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i + 1 < d.size() && d[i] == 0 && d[i + 1] != 0) return false;
    if (i + 1 < d.size() && d[i] != 0 && d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

// Brute-force |ker/im| over Z/m by enumerating Z/m^n.
std::size_t brute_force_order(const IntMatrix& d_out, const IntMatrix& d_in, int m) {
  const std::size_t n = d_in.rows();
  std::vector<std::vector<int>> all(1, std::vector<int>(n, 0));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& v : all)
      for (int a = 0; a < m; ++a) {
        auto w = v;
        w[k] = a;
        next.push_back(std::move(w));
      }
    all = std::move(next);
  }
  auto encode = [&](const std::vector<Int>& v) {
    std::size_t code = 0;
    for (const auto& x : v) code = code * static_cast<std::size_t>(m) + static_cast<std::size_t>(mod_floor(x, m));
    return code;
  };
  std::size_t kernel = 0;
  for (const auto& v : all) {
    std::vector<Int> x(v.begin(), v.end());
    bool zero = true;
    for (const auto& y : d_out.apply(x))
      if (mod_floor(y, m) != 0) zero = false;
    if (zero) ++kernel;
  }
  // Image size over Z/m: closure of the column span.
  std::vector<bool> seen(all.size(), false);
  std::vector<std::vector<Int>> frontier{std::vector<Int>(n, Int(0))};
  seen[0] = true;
  std::size_t image = 1;
  while (!frontier.empty()) {
    auto v = frontier.back();
    frontier.pop_back();
    for (std::size_t j = 0; j < d_in.cols(); ++j) {
      auto w = v;
      for (std::size_t i = 0; i < n; ++i) w[i] = mod_floor(w[i] + d_in(i, j), m);
      const auto code = encode(w);
      if (!seen[code]) {
        seen[code] = true;
        ++image;
        frontier.push_back(std::move(w));
      }
    }
  }
  return kernel / image;
}

std::size_t order_of(const HomologyGroup& g, int m) {
  std::size_t o = 1;
  for (std::size_t i = 0; i < g.free_rank; ++i) o *= static_cast<std::size_t>(m);
  for (const auto& t : g.torsion) o *= t.convert_to<std::size_t>();
  return o;
}

}  // namespace

TEST(Snf, Examples) {
  EXPECT_EQ(snf(IntMatrix{{2, 0}, {0, 3}}).diagonal(), (std::vector<Int>{1, 6}));
  EXPECT_EQ(snf(IntMatrix{{0}}).diagonal(), (std::vector<Int>{0}));
  EXPECT_EQ(snf(IntMatrix{{2, 4}, {6, 8}}).diagonal(), (std::vector<Int>{2, 4}));
}

TEST(Snf, RandomMatricesSatisfyUMVEqualsD) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_matrix(1 + rng() % 6, 1 + rng() % 6, rng);
    const auto s = snf(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(s.U * s.U_inverse, IntMatrix::identity(m.rows()));
    EXPECT_EQ(s.V * s.V_inverse, IntMatrix::identity(m.cols()));
    EXPECT_TRUE(is_snf(s));
    const auto again = snf(m);
    EXPECT_EQ(again.U, s.U);
    EXPECT_EQ(again.V, s.V);
  }
}

TEST(Snf, SparseFactorsMatchDense) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_matrix(1 + rng() % 8, 1 + rng() % 8, rng, -2, 2);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (rng() % 2) m(i, j) = 0;
    EXPECT_EQ(invariant_factors(SparseIntMatrix::from_dense(m)), invariant_factors(m));
  }
}

TEST(BasisCompletion, Examples) {
  EXPECT_EQ(basis_completion({{Int(1), Int(0)}}, 2), IntMatrix::identity(2));
  const auto b = basis_completion({{Int(1), Int(1)}}, 2);
  EXPECT_EQ(b(0, 0), 1);
  EXPECT_EQ(b(1, 0), 1);
  EXPECT_EQ(abs_value(determinant(b)), 1);
  EXPECT_THROW(basis_completion({{Int(2), Int(0)}}, 2), NotUnimodular);
}

TEST(BasisCompletion, RandomUnimodularColumns) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 5;
    IntMatrix g = IntMatrix::identity(r);
    for (int s = 0; s < 10; ++s) {
      const std::size_t i = rng() % r, j = rng() % r;
      if (i == j) continue;
      const Int f = static_cast<int>(rng() % 5) - 2;
      for (std::size_t c = 0; c < r; ++c) g(i, c) += f * g(j, c);
    }
    const std::size_t k = rng() % (r + 1);
    std::vector<std::vector<Int>> cols;
    for (std::size_t j = 0; j < k; ++j) cols.push_back(g.column(j));
    const auto b = basis_completion(cols, r);
    EXPECT_EQ(abs_value(determinant(b)), 1);
    for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(b.column(j), cols[j]);
  }
}

TEST(HomologyOfPair, Examples) {
  auto g = homology_of_pair(IntMatrix(0, 1), IntMatrix{{2}});
  EXPECT_EQ(g.free_rank, 0u);
  EXPECT_EQ(g.torsion, (std::vector<Int>{2}));
  EXPECT_TRUE(homology_of_pair(IntMatrix{{1}}, IntMatrix(1, 0)).is_zero());
  EXPECT_EQ(homology_of_pair(IntMatrix(0, 3), IntMatrix(3, 0)).free_rank, 3u);
  EXPECT_THROW(homology_of_pair(IntMatrix{{1}}, IntMatrix{{1}}), NotAComplex);
}

TEST(HomologyOfPair, StringForm) {
  HomologyGroup g{2, {Int(2), Int(6)}};
  EXPECT_EQ(g.str(), "Z^2 ⊕ Z/2 ⊕ Z/6");
  EXPECT_EQ(HomologyGroup{}.str(), "0");
  EXPECT_EQ((HomologyGroup{1, {Int(2)}}.str(Ring::mod(Int(4)))), "Z/4 ⊕ Z/2");
}

// Universal coefficients against a brute-force count over Z/m.
TEST(HomologyOfPair, ModMatchesBruteForce) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    // d_out * d_in = 0 by construction: d_in = K * R with K a kernel basis.
    const auto a = random_matrix(1 + rng() % 3, n, rng, -3, 3);
    const auto s = snf(a);
    IntMatrix kernel(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) kernel(i, j - s.rank) = s.V(i, j);
    const auto coeffs = random_matrix(n - s.rank, 1 + rng() % 3, rng, -3, 3);
    const IntMatrix d_in = kernel.cols() ? kernel * coeffs : IntMatrix(n, 1);
    for (int m : {2, 3, 4, 6}) {
      const auto via_uct = homology_of_pair(a, d_in, Ring::mod(Int(m)));
      const auto direct = homology_of_pair_mod_direct(a, d_in, Int(m));
      EXPECT_EQ(via_uct, direct);
      EXPECT_EQ(order_of(via_uct, m), brute_force_order(a, d_in, m));
    }
  }
}

TEST(Solve, DenseAndSparseAgree) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(1 + rng() % 5, 1 + rng() % 5, rng, -3, 3);
    std::vector<Int> x(m.cols());
    for (auto& v : x) v = static_cast<int>(rng() % 7) - 3;
    const auto b = m.apply(x);
    const auto dense = solve_integral(m, b);
    const auto sparse = solve_integral(SparseIntMatrix::from_dense(m), b);
    ASSERT_TRUE(dense);
    ASSERT_TRUE(sparse);
    EXPECT_EQ(m.apply(*dense), b);
    EXPECT_EQ(m.apply(*sparse), b);
  }
  EXPECT_FALSE(solve_integral(IntMatrix{{2}}, {Int(1)}));
  EXPECT_FALSE(solve_integral(SparseIntMatrix::from_dense(IntMatrix{{2}}), {Int(1)}));
}
