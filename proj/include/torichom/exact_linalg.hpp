#pragma once

// Exact integer matrix algebra: Smith normal form with unimodular
// transforms, lattice basis completion and homology of a pair of
// composable differentials over Z or Z/m.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace torichom {

using Int = boost::multiprecision::cpp_int;

inline Int abs_value(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(abs_value(a), abs_value(b));
}

/// Non-negative residue of a modulo m (m > 0).
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

struct NotUnimodular : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotAComplex : std::domain_error {
  using std::domain_error::domain_error;
};
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Coefficient ring: Z when modulus == 0, Z/m otherwise (m >= 2).
struct Ring {
  Int modulus = 0;

  static Ring integers() { return {}; }
  static Ring mod(const Int& m) {
    if (m < 2) throw std::invalid_argument("Z/m needs m >= 2");
    return Ring{m};
  }
  bool is_integers() const { return modulus == 0; }
  std::string name() const {
    return is_integers() ? std::string("Z") : "Z/" + modulus.str();
  }
  friend bool operator==(const Ring&, const Ring&) = default;
};

// ---------------------------------------------------------------------------
// IntMatrix

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged IntMatrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix diagonal(const std::vector<Int>& diag) {
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows,
                                const std::vector<std::vector<Int>>& columns) {
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw DimensionMismatch("column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<Int> column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<Int> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [r0, r1) and columns [c0, c1).
  IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    IntMatrix b(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
    return b;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector size");
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Int acc = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero_entry(i, j) && v[j] != 0) acc += (*this)(i, j) * v[j];
      out[i] = std::move(acc);
    }
    return out;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference");
    IntMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += f * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(src, j) != 0) (*this)(dst, j) += f * (*this)(src, j);
  }
  /// col[dst] += f * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, src) != 0) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  bool is_zero_entry(std::size_t i, std::size_t j) const { return (*this)(i, j) == 0; }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

/// Rewrites a list of cyclic orders (each >= 1) as invariant factors
/// d_1 | d_2 | ... with all ones dropped.
inline std::vector<Int> invariant_factor_form(std::vector<Int> orders) {
  for (std::size_t i = 0; i < orders.size(); ++i)
    for (std::size_t j = i + 1; j < orders.size(); ++j) {
      Int g = gcd(orders[i], orders[j]);
      if (g == 0) continue;
      Int l = orders[i] / g * orders[j];
      orders[i] = g;
      orders[j] = abs_value(l);
    }
  std::vector<Int> out;
  for (auto& o : orders)
    if (o > 1) out.push_back(std::move(o));
  std::sort(out.begin(), out.end());
  return out;
}

/// Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | ... | d_k, each d_i > 1.
/// Over Z/m, free_rank counts Z/m summands and torsion lists the proper
/// cyclic summands Z/d, d | m, d < m.
struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }

  /// Number of cyclic summands in invariant-factor form.
  std::size_t generator_count() const { return free_rank + torsion.size(); }

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;

  /// "0", "Z", "Z^2 ⊕ Z/2 ⊕ Z/6"; over Z/m the free part prints as (Z/m)^k.
  std::string str(const Ring& ring = Ring::integers()) const {
    if (is_zero()) return "0";
    std::vector<std::string> parts;
    if (free_rank > 0) {
      std::string base = ring.is_integers() ? "Z" : "(Z/" + ring.modulus.str() + ")";
      if (free_rank == 1 && ring.is_integers()) parts.push_back(base);
      else if (free_rank == 1) parts.push_back("Z/" + ring.modulus.str());
      else parts.push_back(base + "^" + std::to_string(free_rank));
    }
    for (const auto& d : torsion) parts.push_back("Z/" + d.str());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " ⊕ " : "") + parts[i];
    return out;
  }
};

/// Direct sum of groups over the same ring.
inline HomologyGroup direct_sum(const HomologyGroup& a, const HomologyGroup& b) {
  HomologyGroup s;
  s.free_rank = a.free_rank + b.free_rank;
  std::vector<Int> t = a.torsion;
  t.insert(t.end(), b.torsion.begin(), b.torsion.end());
  s.torsion = invariant_factor_form(std::move(t));
  return s;
}

/// Group built from cyclic orders over `ring`: order 0 means Z (over Z);
/// over Z/m an order equal to m is a free summand.
inline HomologyGroup group_from_cyclic_orders(std::size_t free_rank,
                                              std::vector<Int> orders,
                                              const Ring& ring) {
  HomologyGroup g;
  g.free_rank = free_rank;
  auto factors = invariant_factor_form(std::move(orders));
  for (auto& f : factors) {
    if (!ring.is_integers() && f == ring.modulus) ++g.free_rank;
    else g.torsion.push_back(std::move(f));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Smith normal form

/// U * M * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inverse;
  IntMatrix V_inverse;
  std::size_t rank = 0;

  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

class SmithReducer {
 public:
  SmithReducer(const IntMatrix& m, bool track) : d_(m), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(m.rows());
      ui_ = u_;
      v_ = IntMatrix::identity(m.cols());
      vi_ = v_;
    }
  }

  void run() {
    const std::size_t limit = std::min(d_.rows(), d_.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      if (!stage(t)) break;
      rank_ = t + 1;
    }
  }

  SnfDecomposition take() {
    SnfDecomposition out;
    out.D = std::move(d_);
    out.rank = rank_;
    if (track_) {
      out.U = std::move(u_);
      out.V = std::move(v_);
      out.U_inverse = std::move(ui_);
      out.V_inverse = std::move(vi_);
    }
    return out;
  }

 private:
  // Smallest nonzero |entry| in the trailing submatrix, ties row-major.
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < d_.rows(); ++i)
      for (std::size_t j = t; j < d_.cols(); ++j) {
        const Int& v = d_(i, j);
        if (v == 0) continue;
        Int a = abs_value(v);
        if (!found || a < best) {
          found = true;
          best = std::move(a);
          pi = i;
          pj = j;
          if (best == 1) return true;
        }
      }
    return found;
  }

  void row_swap(std::size_t a, std::size_t b) {
    d_.swap_rows(a, b);
    if (track_) {
      u_.swap_rows(a, b);
      ui_.swap_cols(a, b);
    }
  }
  void col_swap(std::size_t a, std::size_t b) {
    d_.swap_cols(a, b);
    if (track_) {
      v_.swap_cols(a, b);
      vi_.swap_rows(a, b);
    }
  }
  // row[dst] -= q * row[src]
  void row_sub(std::size_t dst, std::size_t src, const Int& q) {
    d_.add_row_multiple(dst, src, -q);
    if (track_) {
      u_.add_row_multiple(dst, src, -q);
      ui_.add_col_multiple(src, dst, q);
    }
  }
  // col[dst] -= q * col[src]
  void col_sub(std::size_t dst, std::size_t src, const Int& q) {
    d_.add_col_multiple(dst, src, -q);
    if (track_) {
      v_.add_col_multiple(dst, src, -q);
      vi_.add_row_multiple(src, dst, q);
    }
  }
  void row_negate(std::size_t i) {
    d_.negate_row(i);
    if (track_) {
      u_.negate_row(i);
      ui_.negate_col(i);
    }
  }

  bool stage(std::size_t t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(t, pi, pj)) return false;
    for (;;) {
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < d_.rows(); ++i) {
        if (d_(i, t) == 0) continue;
        Int q = d_(i, t) / d_(t, t);
        row_sub(i, t, q);
        if (d_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (d_(t, j) == 0) continue;
        Int q = d_(t, j) / d_(t, t);
        col_sub(j, t, q);
        if (d_(t, j) != 0) clean = false;
      }
      if (clean) {
        // Enforce divisibility of the remaining block by the pivot.
        bool divides = true;
        for (std::size_t i = t + 1; i < d_.rows() && divides; ++i)
          for (std::size_t j = t + 1; j < d_.cols(); ++j)
            if (d_(i, j) % d_(t, t) != 0) {
              row_sub(t, i, Int(-1));
              divides = false;
              break;
            }
        if (divides) break;
      }
      find_pivot(t, pi, pj);
    }
    if (d_(t, t) < 0) row_negate(t);
    return true;
  }

  IntMatrix d_, u_, ui_, v_, vi_;
  bool track_;
  std::size_t rank_ = 0;
};

}  // namespace detail

/// Smith normal form with unimodular transforms (and their inverses).
/// Deterministic: pivot is the smallest nonzero |entry|, ties row-major.
inline SnfDecomposition snf(const IntMatrix& m) {
  detail::SmithReducer r(m, true);
  r.run();
  return r.take();
}

/// Nonzero diagonal entries of the Smith form (no transforms kept).
inline std::vector<Int> invariant_factors(const IntMatrix& m) {
  detail::SmithReducer r(m, false);
  r.run();
  auto s = r.take();
  std::vector<Int> out;
  for (std::size_t i = 0; i < s.rank; ++i) out.push_back(s.D(i, i));
  return out;
}

inline std::size_t rank(const IntMatrix& m) { return invariant_factors(m).size(); }

/// Inverse of a unimodular matrix, exact.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  auto s = snf(m);
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (s.D(i, i) != 1) throw NotUnimodular("matrix is not unimodular");
  // U M V = I  =>  M^{-1} = V U
  return s.V * s.U;
}

// ---------------------------------------------------------------------------
// Basis completion

/// Extends k lattice vectors of Z^r to a Z-basis. Returns the r x r
/// unimodular matrix whose first k columns are the given vectors.
/// Throws NotUnimodular when the vectors are not part of any Z-basis.
inline IntMatrix basis_completion(const std::vector<std::vector<Int>>& vectors,
                                  std::size_t rank) {
  const std::size_t k = vectors.size();
  if (k > rank) throw NotUnimodular("more vectors than the lattice rank");
  IntMatrix a = IntMatrix::from_columns(rank, vectors);
  // Row-style Hermite reduction: W * A = [I_k; 0] with W unimodular.
  IntMatrix w = IntMatrix::identity(rank);
  IntMatrix w_inv = IntMatrix::identity(rank);
  auto row_sub = [&](std::size_t dst, std::size_t src, Int q) {
    a.add_row_multiple(dst, src, -q);
    w.add_row_multiple(dst, src, -q);
    w_inv.add_col_multiple(src, dst, q);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    w.swap_rows(x, y);
    w_inv.swap_cols(x, y);
  };
  for (std::size_t c = 0; c < k; ++c) {
    // Euclid on column c over rows c..rank-1.
    for (;;) {
      std::size_t best = rank;
      for (std::size_t i = c; i < rank; ++i)
        if (a(i, c) != 0 && (best == rank || abs_value(a(i, c)) < abs_value(a(best, c))))
          best = i;
      if (best == rank) throw NotUnimodular("vectors are linearly dependent");
      row_swap(c, best);
      bool done = true;
      for (std::size_t i = c + 1; i < rank; ++i) {
        if (a(i, c) == 0) continue;
        row_sub(i, c, a(i, c) / a(c, c));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (abs_value(a(c, c)) != 1)
      throw NotUnimodular("vectors do not extend to a lattice basis");
    if (a(c, c) < 0) {
      a.negate_row(c);
      w.negate_row(c);
      w_inv.negate_col(c);
    }
    for (std::size_t i = 0; i < c; ++i)
      if (a(i, c) != 0) row_sub(i, c, a(i, c));
  }
  // W A = [I;0]  =>  A = W^{-1} [I;0], so the first k columns of W^{-1} are A.
  return w_inv;
}

// ---------------------------------------------------------------------------
// Homology of a pair

namespace detail {

inline void check_pair_shapes(std::size_t out_cols, std::size_t in_rows) {
  if (out_cols != in_rows) throw DimensionMismatch("d_out and d_in are not composable");
}

/// Assembles ker(d_out)/im(d_in) from ambient rank and invariant factors.
inline HomologyGroup homology_from_factors(std::size_t ambient,
                                           const std::vector<Int>& out_factors,
                                           const std::vector<Int>& in_factors,
                                           const Ring& ring) {
  const std::size_t rank_out = out_factors.size();
  const std::size_t rank_in = in_factors.size();
  if (rank_out + rank_in > ambient) throw NotAComplex("ranks exceed ambient dimension");
  const std::size_t free_z = ambient - rank_out - rank_in;
  if (ring.is_integers()) {
    HomologyGroup g;
    g.free_rank = free_z;
    for (const auto& f : in_factors)
      if (f > 1) g.torsion.push_back(f);
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
  }
  // Universal coefficients: H(C;Z/m) = H(C)(x)Z/m + Tor(H_next(C), Z/m); the
  // torsion of the next group is given by the invariant factors of d_out.
  std::vector<Int> orders;
  for (const auto& f : in_factors)
    if (f > 1) orders.push_back(gcd(f, ring.modulus));
  for (const auto& f : out_factors)
    if (f > 1) orders.push_back(gcd(f, ring.modulus));
  return group_from_cyclic_orders(free_z, std::move(orders), ring);
}

inline bool product_vanishes(const IntMatrix& d_out, const IntMatrix& d_in, const Ring& ring) {
  IntMatrix p = d_out * d_in;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (ring.is_integers() ? p(i, j) != 0 : p(i, j) % ring.modulus != 0) return false;
    }
  return true;
}

}  // namespace detail

/// ker(d_out) / im(d_in) computed directly as a quotient of lattices over
/// Z/m: K = {x : d_out x = 0 mod m}, I = im(d_in) + mZ^n. Only needs the
/// composition to vanish modulo m.
inline HomologyGroup homology_of_pair_mod_direct(const IntMatrix& d_out, const IntMatrix& d_in,
                                                 const Int& m) {
  const std::size_t n = d_in.rows();
  detail::check_pair_shapes(d_out.cols(), n);
  if (n == 0) return {};
  auto s = snf(d_out);
  // In coordinates y = V^{-1} x the kernel condition reads D_ii y_i = 0 mod m.
  std::vector<Int> scale(n, Int(1));
  for (std::size_t i = 0; i < s.rank; ++i) scale[i] = m / gcd(s.D(i, i), m);
  IntMatrix image = s.V_inverse * d_in;
  IntMatrix gens(n, d_in.cols() + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d_in.cols(); ++j) {
      if (image(i, j) % scale[i] != 0)
        throw NotAComplex("image of d_in leaves the mod-m kernel of d_out");
      gens(i, j) = image(i, j) / scale[i];
    }
    gens(i, d_in.cols() + i) = m / scale[i];
  }
  std::vector<Int> orders = invariant_factors(gens);
  if (orders.size() != n) throw NotAComplex("quotient is not finite");
  return group_from_cyclic_orders(0, std::move(orders), Ring::mod(m));
}

/// ker(d_out) / im(d_in) over `ring`. Over Z/m the result comes from the
/// Smith forms over Z followed by reduction; if the composition only
/// vanishes modulo m the lattice-quotient route is used instead.
inline HomologyGroup homology_of_pair(const IntMatrix& d_out, const IntMatrix& d_in,
                                      const Ring& ring = Ring::integers()) {
  detail::check_pair_shapes(d_out.cols(), d_in.rows());
  if (!detail::product_vanishes(d_out, d_in, Ring::integers())) {
    if (!ring.is_integers() && detail::product_vanishes(d_out, d_in, ring))
      return homology_of_pair_mod_direct(d_out, d_in, ring.modulus);
    throw NotAComplex("d_out * d_in is nonzero over " + ring.name());
  }
  return detail::homology_from_factors(d_in.rows(), invariant_factors(d_out),
                                       invariant_factors(d_in), ring);
}

/// Solves M x = b over Z. Returns nullopt when no integral solution exists.
inline std::optional<std::vector<Int>> solve_integral(const IntMatrix& m,
                                                      const std::vector<Int>& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length");
  auto s = snf(m);
  std::vector<Int> ub = s.U.apply(b);
  std::vector<Int> w(m.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (ub[i] % s.D(i, i) != 0) return std::nullopt;
      w[i] = ub[i] / s.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(w);
}

}  // namespace torichom
