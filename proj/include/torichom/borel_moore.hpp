#pragma once

// Borel-Moore homology from the complex C(Σ): C_{p,q} = ⊕_{σ ∈ Σ_{r-p}} Λ^σ_q
// where Λ^σ is the exterior algebra of N / lin(σ), with
//   d(a) = Σ_{σ <₁ τ} Or_{στ} (-1)^q pr_τ(a)   for a ∈ Λ^σ_q.
// The differential keeps q, so homology splits by bidegree; the total
// degree is n = p + q. Chow groups are the diagonal terms H_{kk}.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torichom/cohomology.hpp"
#include "torichom/exact_linalg.hpp"
#include "torichom/exterior.hpp"
#include "torichom/fan.hpp"
#include "torichom/parallel.hpp"
#include "torichom/sparse.hpp"

namespace torichom {

/// Basis element x_U of Λ^σ, U indexing the adapted basis of N / lin(σ).
struct BMCell {
  std::size_t cone;
  IndexSet local;
  friend auto operator<=>(const BMCell&, const BMCell&) = default;
};

class CSigmaComplex {
 public:
  /// flips holds one sign per cone (empty means all +1); flipping a cone
  /// reverses its chosen orientation.
  explicit CSigmaComplex(Fan fan, std::vector<int> flips = {}) : fan_(std::move(fan)) {
    require_valid(fan_);
    contexts_ = quotient_contexts(fan_);
    OrientationData od(fan_, contexts_);
    if (!flips.empty()) {
      if (flips.size() != fan_.cone_count()) throw DimensionMismatch("one flip per cone expected");
      for (std::size_t c = 0; c < flips.size(); ++c)
        if (flips[c] < 0) od.flip(c);
    }
    const int r = fan_.rank();
    const auto side = static_cast<std::size_t>(r + 1);
    cells_.assign(side, std::vector<std::vector<BMCell>>(side));
    total_cells_.assign(static_cast<std::size_t>(2 * r + 1), {});
    for (std::size_t c = 0; c < fan_.cone_count(); ++c) {
      omega_.push_back(od.omega(c));
      const int p = r - static_cast<int>(fan_.cone(c).dim());
      for (int q = 0; q <= p; ++q)
        for (IndexSet u : subsets_of_size(p, q)) {
          const BMCell cell{c, u};
          auto& list = cells_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
          index_.emplace(cell, list.size());
          list.push_back(cell);
          auto& tot = total_cells_[static_cast<std::size_t>(p + q)];
          total_index_.emplace(cell, tot.size());
          tot.push_back(cell);
        }
      std::vector<int> signs;
      for (const auto& cf : fan_.cofaces(c)) signs.push_back(od.orientation_sign(c, cf.tau));
      or_signs_.push_back(std::move(signs));
    }
    diffs_.assign(side, std::vector<SparseIntMatrix>(side));
    for (int p = 0; p <= r; ++p)
      for (int q = 0; q <= r; ++q)
        diffs_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = build_differential(p, q);
  }

  const Fan& fan() const { return fan_; }
  int rank() const { return fan_.rank(); }
  const std::vector<QuotientContext>& contexts() const { return contexts_; }

  const std::vector<BMCell>& cells(int p, int q) const {
    static const std::vector<BMCell> none;
    const int r = rank();
    if (p < 0 || q < 0 || p > r || q > r) return none;
    return cells_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
  }
  std::size_t dim(int p, int q) const { return cells(p, q).size(); }

  /// d : C_{p,q} -> C_{p-1,q}; an empty-target matrix outside the range.
  SparseIntMatrix differential(int p, int q) const {
    const int r = rank();
    if (p < 0 || q < 0 || p > r || q > r) return SparseIntMatrix(dim(p - 1, q), 0);
    return diffs_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
  }

  const std::vector<BMCell>& total_cells(int n) const {
    static const std::vector<BMCell> none;
    if (n < 0 || n >= static_cast<int>(total_cells_.size())) return none;
    return total_cells_[static_cast<std::size_t>(n)];
  }
  std::size_t total_dim(int n) const { return total_cells(n).size(); }
  std::size_t total_index(const BMCell& c) const { return total_index_.at(c); }

  /// Totalized differential T_n -> T_{n-1}.
  SparseIntMatrix total_differential(int n) const {
    SparseIntMatrix m(total_dim(n - 1), total_dim(n));
    const auto& src = total_cells(n);
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto col = apply_d(src[j]);
      std::map<std::size_t, Int> entries;
      for (const auto& [cell, v] : col) entries[total_index_.at(cell)] += v;
      m.set_column(j, entries);
    }
    return m;
  }

  /// Chosen orientation ω_σ in the local coordinates of Λ^σ.
  const Multivector& omega(std::size_t cone) const { return omega_.at(cone); }

  /// Or_{στ} for the k-th coface of σ (fan.cofaces order).
  int orientation_sign(std::size_t sigma, std::size_t k) const { return or_signs_.at(sigma).at(k); }

  /// x_i · a = pr_σ(x_i) ∧ a on the totalized complex, T_n -> T_{n+1}.
  SparseIntMatrix action_matrix(int i, int n) const {
    SparseIntMatrix m(total_dim(n + 1), total_dim(n));
    const auto& src = total_cells(n);
    std::vector<Int> e(static_cast<std::size_t>(rank()));
    e.at(static_cast<std::size_t>(i)) = 1;
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto& ctx = contexts_[src[j].cone];
      const Multivector x = Multivector::linear(ctx.quotient_coords(e));
      const Multivector image = wedge(x, Multivector::basis(ctx.local_rank(), src[j].local));
      std::map<std::size_t, Int> entries;
      for (const auto& [u, v] : image.coords()) entries[total_index_.at(BMCell{src[j].cone, u})] += v;
      m.set_column(j, entries);
    }
    return m;
  }

  bool squares_to_zero() const {
    for (int p = 1; p <= rank(); ++p)
      for (int q = 0; q <= rank(); ++q)
        if (!(differential(p - 1, q) * differential(p, q)).is_zero()) return false;
    return true;
  }

 private:
  /// pr_τ of a basis multivector of Λ^σ, as local coordinates of Λ^τ.
  Multivector project(std::size_t sigma, std::size_t tau, IndexSet u) const {
    const auto& cs = contexts_[sigma];
    const auto& ct = contexts_[tau];
    std::vector<Multivector> images;
    for (int j = cs.cone_dim(); j < rank(); ++j)
      images.push_back(
          Multivector::linear(ct.quotient_coords(cs.basis().column(static_cast<std::size_t>(j)))));
    return push_forward(images, Multivector::basis(cs.local_rank(), u), ct.local_rank());
  }

  std::map<BMCell, Int> apply_d(const BMCell& cell) const {
    std::map<BMCell, Int> out;
    const int q = subset_size(cell.local);
    const auto& cofaces = fan_.cofaces(cell.cone);
    for (std::size_t k = 0; k < cofaces.size(); ++k) {
      const int sign = or_signs_[cell.cone][k] * ((q & 1) ? -1 : 1);
      const Multivector image = project(cell.cone, cofaces[k].tau, cell.local);
      for (const auto& [v, c] : image.coords()) {
        Int& e = out[BMCell{cofaces[k].tau, v}];
        e += sign * c;
      }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }

  SparseIntMatrix build_differential(int p, int q) const {
    SparseIntMatrix m(dim(p - 1, q), dim(p, q));
    const auto& src = cells(p, q);
    for (std::size_t j = 0; j < src.size(); ++j) {
      std::map<std::size_t, Int> entries;
      for (const auto& [cell, v] : apply_d(src[j])) entries[index_.at(cell)] += v;
      m.set_column(j, entries);
    }
    return m;
  }

  Fan fan_;
  std::vector<QuotientContext> contexts_;
  std::vector<Multivector> omega_;
  std::vector<std::vector<int>> or_signs_;
  std::vector<std::vector<std::vector<BMCell>>> cells_;
  std::vector<std::vector<BMCell>> total_cells_;
  std::map<BMCell, std::size_t> index_;
  std::map<BMCell, std::size_t> total_index_;
  std::vector<std::vector<SparseIntMatrix>> diffs_;
};

inline CSigmaComplex build_c_sigma(const Fan& fan) { return CSigmaComplex(fan); }

struct BMHomologyTable {
  Ring ring;
  std::vector<std::vector<HomologyGroup>> pq;  // pq[p][q]
  std::vector<HomologyGroup> totals;           // ⊕_{p+q=n} H_{pq}
  std::vector<HomologyGroup> totalized;        // homology of the totalized complex
  bool consistent() const { return totals == totalized; }
};

inline BMHomologyTable bm_homology(const CSigmaComplex& c, const Ring& ring = Ring::integers(),
                                   unsigned jobs = 1) {
  const int r = c.rank();
  const auto side = static_cast<std::size_t>(r + 1);
  BMHomologyTable t;
  t.ring = ring;
  t.pq.assign(side, std::vector<HomologyGroup>(side));
  detail::parallel_for(side * side, jobs, [&](std::size_t k) {
    const int p = static_cast<int>(k / side), q = static_cast<int>(k % side);
    t.pq[k / side][k % side] = homology_of_pair(c.differential(p, q), c.differential(p + 1, q), ring);
  });
  t.totals.assign(static_cast<std::size_t>(2 * r + 1), HomologyGroup{});
  for (int p = 0; p <= r; ++p)
    for (int q = 0; q <= r; ++q) {
      auto& g = t.totals[static_cast<std::size_t>(p + q)];
      g = direct_sum(g, t.pq[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);
    }
  t.totalized.assign(t.totals.size(), HomologyGroup{});
  detail::parallel_for(t.totalized.size(), jobs, [&](std::size_t n) {
    const int ni = static_cast<int>(n);
    t.totalized[n] = homology_of_pair(c.total_differential(ni), c.total_differential(ni + 1), ring);
  });
  return t;
}

inline BMHomologyTable bm_homology(const Fan& fan, const Ring& ring = Ring::integers(),
                                   unsigned jobs = 1) {
  return bm_homology(CSigmaComplex(fan), ring, jobs);
}

// ---------------------------------------------------------------------------
// Duality A(Σ) -> C(Σ)

/// Sign attached to the cap product block at a cone of dimension k with
/// output degree q: (-1)^{k(k-1)/2 + q(q-1)/2}. It makes π a Λ-linear chain
/// map, using (x·α)∩ω = (-1)^q x∧(α∩ω) and pr_τ(α∩(x_ρ∧w)) = (-1)^q (x_ρ·α)∩w.
inline int duality_sign(int k, int q) {
  const int e = k * (k - 1) / 2 + q * (q - 1) / 2;
  return (e & 1) ? -1 : 1;
}

/// π : A^t -> T_{2r-t}, α⊗ξ_σ ↦ ± α ∩ ω_σ.
inline SparseIntMatrix duality_matrix(const SmallComplex& a, const CSigmaComplex& c, int t) {
  const int r = a.rank();
  SparseIntMatrix m(c.total_dim(2 * r - t), a.dim(t));
  const auto& cells = a.cells(t);
  for (std::size_t j = 0; j < cells.size(); ++j) {
    const std::size_t cone = cells[j].cone;
    const int p = r - static_cast<int>(a.fan().cone(cone).dim());
    const Multivector image = cap(Form::basis(p, cells[j].local), c.omega(cone));
    const int sign = duality_sign(r - p, p - subset_size(cells[j].local));
    std::map<std::size_t, Int> entries;
    for (const auto& [u, v] : image.coords()) entries[c.total_index(BMCell{cone, u})] += sign * v;
    m.set_column(j, entries);
  }
  return m;
}

struct DualityReport {
  bool bijective = false;
  bool chain_map = false;
  bool equivariant = false;
  std::size_t rank_small = 0;
  std::size_t rank_c = 0;
  bool ok() const { return bijective && chain_map && equivariant; }
};

inline DualityReport duality_check(const SmallComplex& a, const CSigmaComplex& c) {
  DualityReport rep;
  const int r = a.rank();
  std::vector<SparseIntMatrix> pi;
  for (int t = 0; t <= 2 * r; ++t) {
    pi.push_back(duality_matrix(a, c, t));
    rep.rank_small += a.dim(t);
    rep.rank_c += c.total_dim(t);
  }
  // Every block is square; π is bijective iff each block has determinant ±1.
  rep.bijective = rep.rank_small == rep.rank_c;
  for (int t = 0; t <= 2 * r && rep.bijective; ++t) {
    const IntMatrix d = pi[static_cast<std::size_t>(t)].to_dense();
    if (d.rows() != d.cols()) {
      rep.bijective = false;
      break;
    }
    if (d.rows() > 0) {
      const Int det = determinant(d);
      rep.bijective = det == 1 || det == -1;
    }
  }
  rep.chain_map = true;
  for (int t = 0; t < 2 * r; ++t) {
    const auto lhs = pi[static_cast<std::size_t>(t + 1)] * a.complex().differential(t);
    const auto rhs = c.total_differential(2 * r - t) * pi[static_cast<std::size_t>(t)];
    if (!(lhs == rhs)) rep.chain_map = false;
  }
  rep.equivariant = true;
  for (int i = 0; i < r && rep.equivariant; ++i)
    for (int t = 1; t <= 2 * r; ++t) {
      const auto lhs = pi[static_cast<std::size_t>(t - 1)] * a.action_matrix(i, t);
      const auto rhs = c.action_matrix(i, 2 * r - t) * pi[static_cast<std::size_t>(t)];
      if (!(lhs == rhs)) {
        rep.equivariant = false;
        break;
      }
    }
  return rep;
}

inline DualityReport duality_check(const Fan& fan) {
  return duality_check(SmallComplex(fan), CSigmaComplex(fan));
}

// ---------------------------------------------------------------------------
// Chow groups

/// A_k = H_{kk}(C(Σ)) over Z, k = 0..r.
inline std::vector<HomologyGroup> chow_groups(const BMHomologyTable& t) {
  std::vector<HomologyGroup> out;
  for (std::size_t k = 0; k < t.pq.size(); ++k) out.push_back(t.pq[k][k]);
  return out;
}

inline std::vector<HomologyGroup> chow_groups(const Fan& fan) { return chow_groups(bm_homology(fan)); }

/// Generators [V(σ)] for σ of codimension k; for every τ of codimension
/// k+1 and every u in a basis of τ^⊥ ∩ M the relation
/// Σ_{σ = τ+ρ} <u, x_ρ> [V(σ)] = 0.
inline std::vector<HomologyGroup> chow_presentation_oracle(const Fan& fan) {
  require_valid(fan);
  const int r = fan.rank();
  std::vector<HomologyGroup> out;
  for (int k = 0; k <= r; ++k) {
    const auto gens = fan.cones_of_dim(static_cast<std::size_t>(r - k));
    std::map<std::size_t, std::size_t> col;
    for (std::size_t i = 0; i < gens.size(); ++i) col[gens[i]] = i;
    std::vector<std::vector<Int>> rows;
    if (r - k - 1 >= 0)
      for (auto tau : fan.cones_of_dim(static_cast<std::size_t>(r - k - 1))) {
        const QuotientContext ctx(fan, tau);
        for (int j = ctx.cone_dim(); j < r; ++j) {
          const auto u = ctx.dual_basis().row(static_cast<std::size_t>(j));
          std::vector<Int> row(gens.size());
          for (const auto& cf : fan.cofaces(tau)) {
            const auto& x = fan.ray(cf.ray);
            Int pairing = 0;
            for (std::size_t l = 0; l < x.size(); ++l) pairing += u[l] * x[l];
            row[col.at(cf.tau)] += pairing;
          }
          rows.push_back(std::move(row));
        }
      }
    IntMatrix rel(rows.size(), gens.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j) rel(i, j) = rows[i][j];
    const auto factors = invariant_factors(rel);
    HomologyGroup g;
    g.free_rank = gens.size() - factors.size();
    for (const auto& f : factors)
      if (f > 1) g.torsion.push_back(f);
    out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cycle map modulo m

struct CycleMapReport {
  Int modulus;
  bool decomposition_ok = false;     // ⊕_{p+q=n} H_pq(Z/m) = H_n(Z/m) computed directly
  std::vector<bool> injective;       // per p: H_pp(Z/m) -> H_2p(Z/m)
  bool ok() const {
    if (!decomposition_ok) return false;
    for (bool b : injective)
      if (!b) return false;
    return true;
  }
};

namespace detail {

/// Index of the sublattice spanned by the columns of m (full rank assumed).
inline Int lattice_index(const IntMatrix& m) {
  Int idx = 1;
  const auto f = invariant_factors(m);
  if (f.size() != m.rows()) throw std::logic_error("lattice is not of full rank");
  for (const auto& v : f) idx *= v;
  return idx;
}

inline Int group_order(const HomologyGroup& g, const Int& m) {
  Int o = 1;
  for (std::size_t i = 0; i < g.free_rank; ++i) o *= m;
  for (const auto& t : g.torsion) o *= t;
  return o;
}

}  // namespace detail

/// For every p, checks that the inclusion of the q = p summand
/// H_pp(Z/m) -> H^cld_2p(Z/m) is injective, with H^cld computed directly
/// over Z/m on the totalized complex, and that the bidegree decomposition
/// matches the direct computation.
inline CycleMapReport cycle_map_check(const CSigmaComplex& c, const Int& m) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  CycleMapReport rep;
  rep.modulus = m;
  const int r = c.rank();
  const Ring ring = Ring::mod(m);
  const BMHomologyTable table = bm_homology(c, ring);
  rep.decomposition_ok = true;
  for (int n = 0; n <= 2 * r; ++n) {
    const HomologyGroup direct = homology_of_pair_mod_direct(
        c.total_differential(n).to_dense(), c.total_differential(n + 1).to_dense(), m);
    if (!(direct == table.totals[static_cast<std::size_t>(n)])) rep.decomposition_ok = false;
  }
  for (int p = 0; p <= r; ++p) {
    const HomologyGroup& hpp = table.pq[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)];
    const std::size_t n_pp = c.dim(p, p);
    const std::size_t n_tot = c.total_dim(2 * p);
    if (n_pp == 0 || n_tot == 0) {
      rep.injective.push_back(hpp.is_zero());
      continue;
    }
    // Generators of the mod-m cycles of C_{p,p}.
    const auto s = snf(c.differential(p, p).to_dense());
    std::vector<std::vector<Int>> kernel;
    for (std::size_t i = 0; i < n_pp; ++i) {
      Int scale = 1;
      if (i < s.rank) scale = m / gcd(s.D(i, i), m);
      std::vector<Int> v = s.V.column(i);
      for (auto& x : v) x *= scale;
      kernel.push_back(std::move(v));
    }
    // Boundary lattice of T_{2p} over Z/m, then the same enlarged by the cycles.
    const IntMatrix din = c.total_differential(2 * p + 1).to_dense();
    IntMatrix base(n_tot, din.cols() + n_tot);
    for (std::size_t i = 0; i < n_tot; ++i) {
      for (std::size_t j = 0; j < din.cols(); ++j) base(i, j) = din(i, j);
      base(i, din.cols() + i) = m;
    }
    IntMatrix enlarged(n_tot, base.cols() + kernel.size());
    for (std::size_t i = 0; i < n_tot; ++i)
      for (std::size_t j = 0; j < base.cols(); ++j) enlarged(i, j) = base(i, j);
    const auto& pp_cells = c.cells(p, p);
    for (std::size_t k = 0; k < kernel.size(); ++k)
      for (std::size_t i = 0; i < n_pp; ++i)
        enlarged(c.total_index(pp_cells[i]), base.cols() + k) = kernel[k][i];
    const Int image_order = detail::lattice_index(base) / detail::lattice_index(enlarged);
    rep.injective.push_back(image_order == detail::group_order(hpp, m));
  }
  return rep;
}

inline CycleMapReport cycle_map_check(const Fan& fan, const Int& m) {
  return cycle_map_check(CSigmaComplex(fan), m);
}

}  // namespace torichom
