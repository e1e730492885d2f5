#pragma once

// Exterior algebras over a lattice of rank r: multivectors (Λ) and forms
// (Λ*), with coordinates keyed by index subsets stored as bitmasks. Every
// sign comes from the permutation sorting a concatenation of two ascending
// index lists.

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torichom/exact_linalg.hpp"

namespace torichom {

/// Subset of {0, ..., r-1}, bit i set when index i is present.
using IndexSet = std::uint32_t;

inline constexpr std::size_t kMaxExteriorRank = 31;

inline int subset_size(IndexSet s) { return std::popcount(s); }

inline std::vector<int> subset_indices(IndexSet s) {
  std::vector<int> out;
  for (int i = 0; s; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

inline IndexSet subset_from_indices(const std::vector<int>& idx) {
  IndexSet s = 0;
  for (int i : idx) s |= IndexSet{1} << i;
  return s;
}

/// Sign of the permutation sorting the concatenation (a, b) of two disjoint
/// ascending lists: (-1)^{#{(i,j) : i in a, j in b, i > j}}.
inline int shuffle_sign(IndexSet a, IndexSet b) {
  int inversions = 0;
  for (int j : subset_indices(b)) inversions += std::popcount(a >> (j + 1));
  return (inversions & 1) ? -1 : 1;
}

/// All q-subsets of {0..n-1} in lexicographic order of their sorted tuples.
inline std::vector<IndexSet> subsets_of_size(int n, int q) {
  std::vector<IndexSet> out;
  if (q < 0 || q > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(subset_from_indices(idx));
    int k = q - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - q + k) --k;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    for (int l = k + 1; l < q; ++l)
      idx[static_cast<std::size_t>(l)] = idx[static_cast<std::size_t>(l - 1)] + 1;
  }
  return out;
}

struct RankMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MultivectorTag {};
struct FormTag {};

/// Element of an exterior algebra on a rank-r lattice (or its dual).
template <class Kind>
class ExteriorElement {
 public:
  using Coords = std::map<IndexSet, Int>;

  ExteriorElement() = default;
  explicit ExteriorElement(int rank) : rank_(rank) {
    if (rank < 0 || static_cast<std::size_t>(rank) > kMaxExteriorRank)
      throw std::invalid_argument("exterior rank out of range");
  }

  static ExteriorElement one(int rank) { return basis(rank, 0); }
  static ExteriorElement basis(int rank, IndexSet s, Int coeff = 1) {
    ExteriorElement e(rank);
    e.add(s, coeff);
    return e;
  }
  /// Degree-one element with the given coordinates.
  static ExteriorElement linear(const std::vector<Int>& coords) {
    ExteriorElement e(static_cast<int>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) e.add(IndexSet{1} << i, coords[i]);
    return e;
  }

  int rank() const { return rank_; }
  const Coords& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  Int coefficient(IndexSet s) const {
    auto it = coords_.find(s);
    return it == coords_.end() ? Int(0) : it->second;
  }

  void add(IndexSet s, const Int& c) {
    if (c == 0) return;
    if (rank_ < 32 && (s >> rank_) != 0) throw std::out_of_range("index beyond exterior rank");
    auto [it, inserted] = coords_.emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coords_.erase(it);
    }
  }

  /// Homogeneous degree, or -1 for zero / mixed elements.
  int degree() const {
    int d = -1;
    for (const auto& [s, c] : coords_) {
      int k = subset_size(s);
      if (d == -1) d = k;
      else if (d != k) return -1;
    }
    return d;
  }

  ExteriorElement& operator+=(const ExteriorElement& o) {
    check_rank(o);
    for (const auto& [s, c] : o.coords_) add(s, c);
    return *this;
  }
  ExteriorElement& operator-=(const ExteriorElement& o) {
    check_rank(o);
    for (const auto& [s, c] : o.coords_) add(s, -c);
    return *this;
  }
  ExteriorElement& operator*=(const Int& f) {
    if (f == 0) {
      coords_.clear();
      return *this;
    }
    for (auto& [s, c] : coords_) c *= f;
    return *this;
  }
  friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) { return a += b; }
  friend ExteriorElement operator-(ExteriorElement a, const ExteriorElement& b) { return a -= b; }
  friend ExteriorElement operator*(const Int& f, ExteriorElement a) { return a *= f; }
  friend ExteriorElement operator-(ExteriorElement a) { return a *= Int(-1); }
  friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) {
    return a.rank_ == b.rank_ && a.coords_ == b.coords_;
  }

  void check_rank(const ExteriorElement& o) const {
    if (rank_ != o.rank_) throw RankMismatch("exterior elements of different rank");
  }

  std::string str(const char* symbol) const {
    if (coords_.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : coords_) {
      if (!out.empty()) out += " + ";
      out += c.str();
      if (s != 0) {
        out += std::string("*") + symbol + "_{";
        for (int i : subset_indices(s)) out += std::to_string(i + 1);
        out += "}";
      }
    }
    return out;
  }

 private:
  int rank_ = 0;
  Coords coords_;
};

using Multivector = ExteriorElement<MultivectorTag>;
using Form = ExteriorElement<FormTag>;

/// Exterior product with the sorting-permutation sign.
template <class Kind>
ExteriorElement<Kind> wedge(const ExteriorElement<Kind>& a, const ExteriorElement<Kind>& b) {
  a.check_rank(b);
  ExteriorElement<Kind> out(a.rank());
  for (const auto& [s, c] : a.coords())
    for (const auto& [t, d] : b.coords()) {
      if (s & t) continue;
      Int v = c * d;
      if (shuffle_sign(s, t) < 0) v = -v;
      out.add(s | t, v);
    }
  return out;
}

/// Action of the basis vector x_i on forms:
/// x_i . xi_{j1..jq} = (-1)^{k-1} xi_{j1..^jk..jq} when j_k = i.
inline Form contract(int i, const Form& alpha) {
  Form out(alpha.rank());
  const IndexSet bit = IndexSet{1} << i;
  for (const auto& [s, c] : alpha.coords()) {
    if (!(s & bit)) continue;
    const int before = std::popcount(s & (bit - 1));
    out.add(s & ~bit, (before & 1) ? Int(-c) : c);
  }
  return out;
}

/// Contraction by an arbitrary lattice vector, linear in the vector.
inline Form contract_by(const std::vector<Int>& v, const Form& alpha) {
  if (static_cast<int>(v.size()) != alpha.rank()) throw RankMismatch("vector rank");
  Form out(alpha.rank());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out += v[i] * contract(static_cast<int>(i), alpha);
  return out;
}

/// Pairing with <xi_S, x_T> = delta_{S,T}; mismatched degrees pair to zero.
inline Int eval(const Form& beta, const Multivector& a) {
  if (beta.rank() != a.rank()) throw RankMismatch("eval of different ranks");
  Int total = 0;
  for (const auto& [s, c] : beta.coords()) total += c * a.coefficient(s);
  return total;
}

/// Cap product, characterised by beta(alpha ∩ a) = (beta ∧ alpha)(a).
inline Multivector cap(const Form& alpha, const Multivector& a) {
  if (alpha.rank() != a.rank()) throw RankMismatch("cap of different ranks");
  Multivector out(a.rank());
  for (const auto& [t, at] : a.coords())
    for (const auto& [s, c] : alpha.coords()) {
      if ((s & t) != s) continue;
      const IndexSet u = t & ~s;
      Int v = c * at;
      if (shuffle_sign(u, s) < 0) v = -v;
      out.add(u, v);
    }
  return out;
}

/// Image of a multivector under the linear map with the given columns
/// (column j is the image of x_j), extended to exterior powers.
inline Multivector push_forward(const std::vector<Multivector>& images, const Multivector& a,
                                int target_rank) {
  Multivector out(target_rank);
  for (const auto& [s, c] : a.coords()) {
    Multivector term = Multivector::one(target_rank);
    for (int j : subset_indices(s)) term = wedge(term, images.at(static_cast<std::size_t>(j)));
    out += c * term;
  }
  return out;
}

/// Pull-back of a form along a linear map given by the images of the
/// target-side basis 1-forms xi_j expressed as forms on the source.
inline Form pull_back(const std::vector<Form>& images, const Form& alpha, int source_rank) {
  Form out(source_rank);
  for (const auto& [s, c] : alpha.coords()) {
    Form term = Form::one(source_rank);
    for (int j : subset_indices(s)) term = wedge(term, images.at(static_cast<std::size_t>(j)));
    out += c * term;
  }
  return out;
}

}  // namespace torichom
