#pragma once

// Sparse integer matrices and elimination on unit pivots. The truncated
// Koszul complexes reach a few thousand basis elements per degree with a
// handful of nonzeros per column; unit pivots are cleared sparsely and only
// the leftover core goes through the dense Smith form.

#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "torichom/exact_linalg.hpp"

namespace torichom {

/// Column-compressed integer matrix; entries within a column sorted by row.
class SparseIntMatrix {
 public:
  using Entry = std::pair<std::size_t, Int>;
  using Column = std::vector<Entry>;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static SparseIntMatrix from_dense(const IntMatrix& m) {
    SparseIntMatrix s(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, j) != 0) s.columns_[j].emplace_back(i, m(i, j));
    return s;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Replaces column j; entries may be unsorted and contain duplicates.
  void set_column(std::size_t j, const std::map<std::size_t, Int>& entries) {
    Column c;
    for (const auto& [i, v] : entries)
      if (v != 0) {
        if (i >= rows_) throw DimensionMismatch("sparse row index out of range");
        c.emplace_back(i, v);
      }
    columns_.at(j) = std::move(c);
  }
  const Column& column(std::size_t j) const { return columns_.at(j); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }
  bool is_zero() const { return nonzeros() == 0; }

  IntMatrix to_dense() const {
    IntMatrix m(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) m(i, j) = v;
    return m;
  }

  std::vector<Int> apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("sparse matrix-vector size");
    std::vector<Int> y(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (x[j] == 0) continue;
      for (const auto& [i, v] : columns_[j]) y[i] += v * x[j];
    }
    return y;
  }

  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("sparse matrix product");
    SparseIntMatrix c(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) {
      std::map<std::size_t, Int> acc;
      for (const auto& [k, bv] : b.columns_[j])
        for (const auto& [i, av] : a.columns_[k]) acc[i] += av * bv;
      c.set_column(j, acc);
    }
    return c;
  }
  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Column> columns_;
};

namespace detail {

/// Row-oriented working copy used by the elimination routines.
class UnitEliminator {
 public:
  explicit UnitEliminator(const SparseIntMatrix& m, bool keep_pivot_rows)
      : rows_(m.rows()), cols_(m.cols()), keep_(keep_pivot_rows) {
    row_.resize(rows_);
    col_.resize(cols_);
    rhs_.assign(rows_, Int(0));
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : m.column(j)) {
        row_[i].emplace(j, v);
        col_[j].insert(i);
      }
    pivot_row_of_col_.assign(cols_, npos);
    is_pivot_row_.assign(rows_, false);
  }

  void set_rhs(const std::vector<Int>& b) { rhs_ = b; }

  /// Clears every column that admits a +-1 pivot. Columns are visited by
  /// increasing fill; within a column the sparsest unit row wins.
  void eliminate() {
    using Key = std::pair<std::size_t, std::size_t>;  // (active nnz, column)
    std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
    for (std::size_t j = 0; j < cols_; ++j) heap.emplace(active_count(j), j);
    while (!heap.empty()) {
      auto [count, j] = heap.top();
      heap.pop();
      if (pivot_row_of_col_[j] != npos || count != active_count(j) || count == 0) continue;
      std::size_t best = npos;
      for (std::size_t i : col_[j]) {
        if (is_pivot_row_[i]) continue;
        const Int& v = row_[i].at(j);
        if (v != 1 && v != -1) continue;
        if (best == npos || row_[i].size() < row_[best].size()) best = i;
      }
      if (best == npos) continue;
      pivot(best, j, heap);
    }
  }

  std::size_t pivot_count() const { return pivots_.size(); }

  /// Remaining (non-pivot rows) x (non-pivot columns) block.
  IntMatrix residual(std::vector<std::size_t>& row_ids, std::vector<std::size_t>& col_ids) const {
    row_ids.clear();
    col_ids.clear();
    std::vector<std::size_t> col_pos(cols_, npos);
    for (std::size_t j = 0; j < cols_; ++j)
      if (pivot_row_of_col_[j] == npos) {
        col_pos[j] = col_ids.size();
        col_ids.push_back(j);
      }
    for (std::size_t i = 0; i < rows_; ++i)
      if (!is_pivot_row_[i]) row_ids.push_back(i);
    IntMatrix r(row_ids.size(), col_ids.size());
    for (std::size_t a = 0; a < row_ids.size(); ++a)
      for (const auto& [j, v] : row_[row_ids[a]]) r(a, col_pos[j]) = v;
    return r;
  }

  /// Residual restricted to rows that still carry entries (for invariants).
  IntMatrix compact_residual() const {
    std::vector<std::size_t> rows, cols;
    std::vector<std::size_t> col_pos(cols_, npos);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (is_pivot_row_[i] || row_[i].empty()) continue;
      rows.push_back(i);
      for (const auto& [j, v] : row_[i])
        if (col_pos[j] == npos) {
          col_pos[j] = cols.size();
          cols.push_back(j);
        }
    }
    IntMatrix r(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (const auto& [j, v] : row_[rows[a]]) r(a, col_pos[j]) = v;
    return r;
  }

  const std::vector<Int>& rhs() const { return rhs_; }

  /// Given values of the non-pivot columns, recovers pivot columns.
  /// Requires keep_pivot_rows (Gauss-Jordan form).
  std::vector<Int> back_substitute(const std::vector<Int>& free_values) const {
    std::vector<Int> x = free_values;
    for (const auto& [i, j] : pivots_) {
      const Int& p = row_[i].at(j);
      Int acc = rhs_[i];
      for (const auto& [c, v] : row_[i])
        if (c != j) acc -= v * free_values[c];
      x[j] = acc * p;  // p = +-1 is its own inverse
    }
    return x;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t active_count(std::size_t j) const {
    if (!keep_) return col_[j].size();
    std::size_t n = 0;
    for (std::size_t i : col_[j])
      if (!is_pivot_row_[i]) ++n;
    return n;
  }

  template <class Heap>
  void pivot(std::size_t p, std::size_t j, Heap& heap) {
    const Int pv = row_[p].at(j);
    std::vector<std::size_t> targets;
    for (std::size_t i : col_[j])
      if (i != p) targets.push_back(i);
    std::set<std::size_t> touched;
    for (std::size_t i : targets) {
      Int f = row_[i].at(j) * pv;
      for (const auto& [c, v] : row_[p]) {
        Int& e = row_[i][c];
        e -= f * v;
        if (e == 0) {
          row_[i].erase(c);
          col_[c].erase(i);
        } else {
          col_[c].insert(i);
        }
        touched.insert(c);
      }
      if (rhs_[p] != 0) rhs_[i] -= f * rhs_[p];
    }
    pivots_.emplace_back(p, j);
    pivot_row_of_col_[j] = p;
    is_pivot_row_[p] = true;
    if (!keep_) {
      // Column operations clear the rest of row p without touching other rows.
      for (const auto& [c, v] : row_[p]) {
        col_[c].erase(p);
        touched.insert(c);
      }
      row_[p].clear();
    }
    for (std::size_t c : touched)
      if (pivot_row_of_col_[c] == npos) heap.emplace(active_count(c), c);
  }

  std::size_t rows_, cols_;
  bool keep_;
  std::vector<std::map<std::size_t, Int>> row_;
  std::vector<std::set<std::size_t>> col_;
  std::vector<Int> rhs_;
  std::vector<std::size_t> pivot_row_of_col_;
  std::vector<bool> is_pivot_row_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;
};

}  // namespace detail

/// Nonzero invariant factors (with multiplicity, including ones) of a
/// sparse matrix.
inline std::vector<Int> invariant_factors(const SparseIntMatrix& m) {
  detail::UnitEliminator e(m, false);
  e.eliminate();
  std::vector<Int> factors(e.pivot_count(), Int(1));
  for (auto& f : invariant_factors(e.compact_residual())) factors.push_back(std::move(f));
  std::sort(factors.begin(), factors.end());
  return factors;
}

inline std::size_t rank(const SparseIntMatrix& m) { return invariant_factors(m).size(); }

inline HomologyGroup homology_of_pair(const SparseIntMatrix& d_out, const SparseIntMatrix& d_in,
                                      const Ring& ring = Ring::integers()) {
  detail::check_pair_shapes(d_out.cols(), d_in.rows());
  SparseIntMatrix prod = d_out * d_in;
  if (!prod.is_zero()) {
    if (!ring.is_integers())
      return homology_of_pair(d_out.to_dense(), d_in.to_dense(), ring);
    throw NotAComplex("d_out * d_in is nonzero over Z");
  }
  return detail::homology_from_factors(d_in.rows(), invariant_factors(d_out),
                                       invariant_factors(d_in), ring);
}

/// Solves M x = b over Z by sparse Gauss-Jordan on unit pivots followed by
/// a dense Smith solve of the leftover block.
inline std::optional<std::vector<Int>> solve_integral(const SparseIntMatrix& m,
                                                      const std::vector<Int>& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length");
  detail::UnitEliminator e(m, true);
  e.set_rhs(b);
  e.eliminate();
  std::vector<std::size_t> row_ids, col_ids;
  IntMatrix core = e.residual(row_ids, col_ids);
  std::vector<Int> core_rhs;
  for (std::size_t i : row_ids) core_rhs.push_back(e.rhs()[i]);
  std::vector<Int> free_values(m.cols(), Int(0));
  if (!col_ids.empty()) {
    auto y = solve_integral(core, core_rhs);
    if (!y) return std::nullopt;
    for (std::size_t a = 0; a < col_ids.size(); ++a) free_values[col_ids[a]] = (*y)[a];
  } else {
    for (const auto& v : core_rhs)
      if (v != 0) return std::nullopt;
  }
  return e.back_substitute(free_values);
}

}  // namespace torichom
