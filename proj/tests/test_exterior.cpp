#include <random>

#include <gtest/gtest.h>

#include "torichom/exterior.hpp"

using namespace torichom;

namespace {

Form xi(int rank, std::initializer_list<int> idx) {
  return Form::basis(rank, subset_from_indices(std::vector<int>(idx)));
}
Multivector x(int rank, std::initializer_list<int> idx) {
  return Multivector::basis(rank, subset_from_indices(std::vector<int>(idx)));
}

template <class E>
E random_element(int rank, std::mt19937& rng, int degree = -1) {
  E e(rank);
  std::uniform_int_distribution<int> coef(-3, 3);
  const IndexSet full = (IndexSet{1} << rank) - 1;
  for (int k = 0; k < 4; ++k) {
    const IndexSet s = static_cast<IndexSet>(rng()) & full;
    if (degree >= 0 && subset_size(s) != degree) continue;
    e.add(s, Int(coef(rng)));
  }
  return e;
}

}  // namespace

TEST(Wedge, Examples) {
  EXPECT_EQ(wedge(xi(2, {0}), xi(2, {1})), xi(2, {0, 1}));
  EXPECT_TRUE(wedge(xi(2, {0}), xi(2, {0})).is_zero());
  EXPECT_EQ(wedge(xi(2, {1}), xi(2, {0})), -xi(2, {0, 1}));
  EXPECT_THROW(wedge(xi(2, {0}), xi(3, {0})), RankMismatch);
}

TEST(Contract, Examples) {
  EXPECT_EQ(contract(0, xi(2, {0, 1})), xi(2, {1}));
  EXPECT_EQ(contract(1, xi(2, {0, 1})), -xi(2, {0}));
  EXPECT_TRUE(contract(2, xi(3, {0})).is_zero());
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval(xi(2, {0, 1}), x(2, {0, 1})), 1);
  EXPECT_EQ(eval(xi(3, {0, 1}), x(3, {0, 2})), 0);
  EXPECT_EQ(eval(xi(2, {0}), x(2, {0, 1})), 0);
}

TEST(Cap, Examples) {
  EXPECT_EQ(cap(xi(2, {0}), x(2, {0, 1})), -x(2, {1}));
  const Multivector a = x(3, {0, 2}) + Int(2) * x(3, {1});
  EXPECT_EQ(cap(Form::one(3), a), a);
  EXPECT_EQ(cap(xi(2, {0, 1}), x(2, {0, 1})), Multivector::one(2));
}

TEST(Contract, SquaresToZero) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 6);
    const Form a = random_element<Form>(r, rng);
    for (int i = 0; i < r; ++i) EXPECT_TRUE(contract(i, contract(i, a)).is_zero());
  }
}

TEST(Contract, GradedAnticommutes) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 2 + static_cast<int>(rng() % 5);
    const Form a = random_element<Form>(r, rng);
    const int i = static_cast<int>(rng() % r), j = static_cast<int>(rng() % r);
    EXPECT_EQ(contract(i, contract(j, a)), -contract(j, contract(i, a)));
  }
}

TEST(Contract, IsADerivation) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 6);
    const int q = static_cast<int>(rng() % (r + 1));
    const Form a = random_element<Form>(r, rng, q);
    const Form b = random_element<Form>(r, rng);
    const int i = static_cast<int>(rng() % r);
    Form rhs = wedge(contract(i, a), b);
    const Form second = wedge(a, contract(i, b));
    rhs += (q % 2 == 0) ? second : -second;
    EXPECT_EQ(contract(i, wedge(a, b)), rhs);
  }
}

TEST(Cap, AdjointToWedgeExhaustive) {
  for (int r = 0; r <= 4; ++r) {
    const IndexSet n = IndexSet{1} << r;
    for (IndexSet s = 0; s < n; ++s)
      for (IndexSet t = 0; t < n; ++t) {
        const Form alpha = Form::basis(r, s);
        const Multivector a = Multivector::basis(r, t);
        for (IndexSet b = 0; b < n; ++b) {
          const Form beta = Form::basis(r, b);
          EXPECT_EQ(eval(beta, cap(alpha, a)), eval(wedge(beta, alpha), a));
        }
      }
  }
}

TEST(PushForward, IdentityAndSwap) {
  const std::vector<Multivector> id{x(2, {0}), x(2, {1})};
  const std::vector<Multivector> swap{x(2, {1}), x(2, {0})};
  EXPECT_EQ(push_forward(id, x(2, {0, 1}), 2), x(2, {0, 1}));
  EXPECT_EQ(push_forward(swap, x(2, {0, 1}), 2), -x(2, {0, 1}));
}
