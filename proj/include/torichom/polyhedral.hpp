#pragma once

// Exact rational feasibility of {x >= 0, A x = b}: equalities are solved
// by Gauss-Jordan elimination, the remaining inequalities in the free
// variables by Fourier-Motzkin elimination.

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace torichom {

using Rational = boost::multiprecision::cpp_rational;

namespace detail {

// Row  sum_j coeff[j] x_j <= rhs.
struct Inequality {
  std::vector<Rational> coeff;
  Rational rhs;

  // Scale so that the first nonzero coefficient has absolute value 1.
  void normalize() {
    for (const auto& c : coeff)
      if (c != 0) {
        Rational s = c < 0 ? Rational(-c) : c;
        for (auto& x : coeff) x /= s;
        rhs /= s;
        return;
      }
  }
  friend bool operator<(const Inequality& a, const Inequality& b) {
    if (a.coeff != b.coeff) return a.coeff < b.coeff;
    return a.rhs < b.rhs;
  }
};

inline bool fourier_motzkin_feasible(std::vector<Inequality> rows, std::size_t vars) {
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<Inequality> pos, neg;
    std::set<Inequality> next;
    for (auto& r : rows) {
      if (r.coeff[v] > 0) pos.push_back(std::move(r));
      else if (r.coeff[v] < 0) neg.push_back(std::move(r));
      else next.insert(std::move(r));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Inequality c;
        c.coeff.resize(vars);
        const Rational fp = 1 / p.coeff[v];
        const Rational fn = -1 / n.coeff[v];
        for (std::size_t j = 0; j < vars; ++j) c.coeff[j] = p.coeff[j] * fp + n.coeff[j] * fn;
        c.coeff[v] = 0;
        c.rhs = p.rhs * fp + n.rhs * fn;
        c.normalize();
        next.insert(std::move(c));
      }
    rows.assign(next.begin(), next.end());
  }
  return std::all_of(rows.begin(), rows.end(), [](const Inequality& r) { return r.rhs >= 0; });
}

}  // namespace detail

/// True iff some rational x >= 0 satisfies A x = b.
inline bool nonnegative_solution_exists(std::vector<std::vector<Rational>> a,
                                        std::vector<Rational> b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    b[row] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (b[i] != 0) return false;

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  // x_pivot = b - sum a x_free >= 0  and  x_free >= 0.
  std::vector<detail::Inequality> rows;
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
    detail::Inequality q;
    q.coeff.resize(free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) q.coeff[f] = a[i][free_cols[f]];
    q.rhs = b[i];
    rows.push_back(std::move(q));
  }
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    detail::Inequality q;
    q.coeff.assign(free_cols.size(), Rational(0));
    q.coeff[f] = -1;
    q.rhs = 0;
    rows.push_back(std::move(q));
  }
  return detail::fourier_motzkin_feasible(std::move(rows), free_cols.size());
}

}  // namespace torichom
