#pragma once

// Cohomology of a smooth toric variety from its fan. The Koszul-type complex
// Λ*⊗SR(Σ) has d(α⊗m) = Σ_i x_i·α ⊗ s_i·m, where s_i is the image of the
// basis form ξ_i in SR(Σ). Its finite subcomplex A(Σ) = ⊕_σ Λ*_σ⊗ξ_σ is the
// default engine.
//
// Grading: α⊗m with |α| = q and deg m = p sits in total degree t = 2p + q,
// and the differential raises t by one.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torichom/exact_linalg.hpp"
#include "torichom/exterior.hpp"
#include "torichom/fan.hpp"
#include "torichom/parallel.hpp"
#include "torichom/sparse.hpp"
#include "torichom/stanley_reisner.hpp"

namespace torichom {

struct NotP1RSubfan : std::domain_error {
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Graded complexes

/// Cochain complex C^0 -> C^1 -> ... -> C^{L-1}. The last differential is
/// unknown (truncation), so homology is determined in degrees 0..L-2.
class GradedComplex {
 public:
  GradedComplex() = default;
  GradedComplex(std::vector<std::size_t> dims, std::vector<SparseIntMatrix> diffs)
      : dims_(std::move(dims)), diffs_(std::move(diffs)) {
    if (dims_.empty() || diffs_.size() + 1 != dims_.size())
      throw DimensionMismatch("graded complex needs one differential per degree gap");
    for (std::size_t t = 0; t < diffs_.size(); ++t)
      if (diffs_[t].cols() != dims_[t] || diffs_[t].rows() != dims_[t + 1])
        throw DimensionMismatch("differential " + std::to_string(t) + " has the wrong shape");
  }

  std::size_t degrees() const { return dims_.size(); }
  int top_degree() const { return static_cast<int>(dims_.size()) - 2; }

  std::size_t dim(int t) const {
    return t < 0 || t >= static_cast<int>(dims_.size()) ? 0 : dims_[static_cast<std::size_t>(t)];
  }

  /// d^t : C^t -> C^{t+1}; zero for t < 0.
  SparseIntMatrix differential(int t) const {
    if (t < 0) return SparseIntMatrix(dim(t + 1), 0);
    if (t > top_degree()) throw std::out_of_range("differential beyond truncation");
    return diffs_[static_cast<std::size_t>(t)];
  }

  HomologyGroup homology(int t, const Ring& ring = Ring::integers()) const {
    if (t < 0) return {};
    return homology_of_pair(differential(t), differential(t - 1), ring);
  }

  bool squares_to_zero() const {
    for (std::size_t t = 0; t + 1 < diffs_.size(); ++t)
      if (!(diffs_[t + 1] * diffs_[t]).is_zero()) return false;
    return true;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<SparseIntMatrix> diffs_;
};

/// Homology in degrees 0..t_max, one independent task per degree.
inline std::vector<HomologyGroup> homology_table(const GradedComplex& c, int t_max,
                                                 const Ring& ring = Ring::integers(),
                                                 unsigned jobs = 1) {
  std::vector<HomologyGroup> out(static_cast<std::size_t>(t_max + 1));
  detail::parallel_for(out.size(), jobs,
                       [&](std::size_t t) { out[t] = c.homology(static_cast<int>(t), ring); });
  return out;
}

// ---------------------------------------------------------------------------
// Chains of Λ*⊗SR(Σ)

/// Summand ξ_S ⊗ m, keyed as (m, S).
using KoszulKey = std::pair<SRMonomial, IndexSet>;
using KoszulChain = std::map<KoszulKey, Int>;

inline void chain_add(KoszulChain& z, const KoszulKey& k, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = z.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) z.erase(it);
  }
}

inline int total_degree(const KoszulKey& k) {
  return 2 * monomial_degree(k.first) + subset_size(k.second);
}

inline KoszulChain koszul_differential(const Fan& fan, const KoszulChain& z) {
  KoszulChain out;
  for (const auto& [key, c] : z) {
    const auto& [m, s] = key;
    for (int i : subset_indices(s)) {
      const IndexSet bit = IndexSet{1} << i;
      const int before = subset_size(s & (bit - 1));
      const Int signed_c = (before & 1) ? Int(-c) : c;
      for (std::size_t r = 0; r < fan.ray_count(); ++r) {
        const Int& xi = fan.ray(static_cast<int>(r))[static_cast<std::size_t>(i)];
        if (xi == 0) continue;
        SRMonomial m2 = m;
        ++m2[r];
        if (!fan.is_cone(monomial_support(m2))) continue;
        chain_add(out, {std::move(m2), s & ~bit}, signed_c * xi);
      }
    }
  }
  return out;
}

/// (α⊗m)(α'⊗m') = α∧α' ⊗ mm', zero when the support of mm' is no cone.
inline KoszulChain koszul_product(const Fan& fan, const KoszulChain& a, const KoszulChain& b) {
  KoszulChain out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      if (ka.second & kb.second) continue;
      SRMonomial m(ka.first.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ka.first[i] + kb.first[i];
      if (!fan.is_cone(monomial_support(m))) continue;
      Int v = ca * cb;
      if (shuffle_sign(ka.second, kb.second) < 0) v = -v;
      chain_add(out, {std::move(m), ka.second | kb.second}, v);
    }
  return out;
}

/// Λ*⊗SR(Σ) with bases and differentials built on demand, degree by degree.
/// Basis of degree t: (p, monomial, S) in lexicographic order with
/// 2p + |S| = t.
class FullComplex {
 public:
  explicit FullComplex(Fan fan) : fan_(std::move(fan)) {}

  const Fan& fan() const { return fan_; }

  const std::vector<KoszulKey>& basis(int t) {
    auto it = basis_.find(t);
    if (it != basis_.end()) return it->second;
    std::vector<KoszulKey> keys;
    const int r = fan_.rank();
    for (int p = 0; 2 * p <= t; ++p) {
      const int q = t - 2 * p;
      if (q > r) continue;
      const auto subsets = subsets_of_size(r, q);
      for (const auto& m : monomials(p))
        for (IndexSet s : subsets) keys.emplace_back(m, s);
    }
    auto& idx = index_[t];
    for (std::size_t i = 0; i < keys.size(); ++i) idx.emplace(keys[i], i);
    return basis_.emplace(t, std::move(keys)).first->second;
  }

  std::optional<std::size_t> index(int t, const KoszulKey& k) {
    basis(t);
    const auto& idx = index_.at(t);
    auto it = idx.find(k);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  /// d^t : C^t -> C^{t+1}.
  const SparseIntMatrix& differential(int t) {
    auto it = diff_.find(t);
    if (it != diff_.end()) return it->second;
    const auto& src = basis(t);
    const std::size_t rows = basis(t + 1).size();
    SparseIntMatrix d(rows, src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const KoszulChain image = koszul_differential(fan_, KoszulChain{{src[j], Int(1)}});
      std::map<std::size_t, Int> col;
      for (const auto& [k, c] : image) col[*index(t + 1, k)] += c;
      d.set_column(j, col);
    }
    return diff_.emplace(t, std::move(d)).first->second;
  }

  std::vector<Int> coordinates(int t, const KoszulChain& z) {
    std::vector<Int> v(basis(t).size());
    for (const auto& [k, c] : z) {
      auto i = index(t, k);
      if (!i) throw std::invalid_argument("chain has a summand outside degree " + std::to_string(t));
      v[*i] += c;
    }
    return v;
  }

  KoszulChain chain(int t, const std::vector<Int>& v) {
    const auto& keys = basis(t);
    KoszulChain z;
    for (std::size_t i = 0; i < v.size(); ++i) chain_add(z, keys.at(i), v[i]);
    return z;
  }

  /// Degrees 0..t_max+1 with differentials d^0..d^{t_max}.
  GradedComplex truncated(int t_max) {
    std::vector<std::size_t> dims;
    std::vector<SparseIntMatrix> diffs;
    for (int t = 0; t <= t_max + 1; ++t) dims.push_back(basis(t).size());
    for (int t = 0; t <= t_max; ++t) diffs.push_back(differential(t));
    return GradedComplex(std::move(dims), std::move(diffs));
  }

 private:
  const std::vector<SRMonomial>& monomials(int p) {
    auto it = sr_.find(p);
    if (it != sr_.end()) return it->second;
    return sr_.emplace(p, sr_basis(fan_, p)).first->second;
  }

  Fan fan_;
  std::map<int, std::vector<SRMonomial>> sr_;
  std::map<int, std::vector<KoszulKey>> basis_;
  std::map<int, std::map<KoszulKey, std::size_t>> index_;
  std::map<int, SparseIntMatrix> diff_;
};

/// Truncated Λ*⊗SR(Σ): degrees 0..t_max+1 (default t_max = 2r).
inline GradedComplex build_full_complex(const Fan& fan, int t_max = -1) {
  require_valid(fan);
  FullComplex full(fan);
  return full.truncated(t_max < 0 ? 2 * fan.rank() : t_max);
}

// ---------------------------------------------------------------------------
// The finite subcomplex A(Σ)

/// Basis element ξ_U ⊗ ξ_σ of A(Σ), U indexing the adapted dual basis of σ.
struct ACell {
  std::size_t cone;
  IndexSet local;
  friend auto operator<=>(const ACell&, const ACell&) = default;
};

/// A(Σ) = ⊕_σ Λ*_σ⊗ξ_σ. The component at (σ, U) has degree 2·dim σ + |U|;
/// within a degree cells are ordered by cone, then by subset.
class SmallComplex {
 public:
  explicit SmallComplex(Fan fan) : fan_(std::move(fan)) {
    require_valid(fan_);
    contexts_ = quotient_contexts(fan_);
    const int r = fan_.rank();
    cells_.assign(static_cast<std::size_t>(2 * r + 2), {});
    for (std::size_t c = 0; c < fan_.cone_count(); ++c) {
      const int k = static_cast<int>(fan_.cone(c).dim());
      for (int q = 0; q <= r - k; ++q)
        for (IndexSet u : subsets_of_size(r - k, q))
          cells_[static_cast<std::size_t>(2 * k + q)].push_back(ACell{c, u});
    }
    for (std::size_t t = 0; t < cells_.size(); ++t)
      for (std::size_t i = 0; i < cells_[t].size(); ++i) index_.emplace(cells_[t][i], i);

    std::vector<std::size_t> dims;
    for (const auto& cs : cells_) dims.push_back(cs.size());
    std::vector<SparseIntMatrix> diffs;
    for (int t = 0; t + 1 < static_cast<int>(cells_.size()); ++t) diffs.push_back(build_differential(t));
    complex_ = GradedComplex(std::move(dims), std::move(diffs));
  }

  const Fan& fan() const { return fan_; }
  int rank() const { return fan_.rank(); }
  const GradedComplex& complex() const { return complex_; }
  const std::vector<QuotientContext>& contexts() const { return contexts_; }

  const std::vector<ACell>& cells(int t) const {
    static const std::vector<ACell> none;
    if (t < 0 || t >= static_cast<int>(cells_.size())) return none;
    return cells_[static_cast<std::size_t>(t)];
  }
  std::size_t dim(int t) const { return cells(t).size(); }
  std::size_t index(const ACell& c) const { return index_.at(c); }

  static int degree_of(const Fan& fan, const ACell& c) {
    return 2 * static_cast<int>(fan.cone(c.cone).dim()) + subset_size(c.local);
  }

  /// The form of a cell written in the standard dual basis of the lattice.
  Form standard_form(const ACell& c) const {
    const auto& ctx = contexts_[c.cone];
    return ctx.form_to_standard(Form::basis(ctx.local_rank(), c.local));
  }

  /// Inclusion A(Σ) -> Λ*⊗SR(Σ) on a degree-t coordinate vector.
  KoszulChain include(int t, const std::vector<Int>& a) const {
    KoszulChain z;
    const auto& cs = cells(t);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      const SRMonomial m = cone_monomial(fan_, cs[i].cone);
      const Form alpha = standard_form(cs[i]);
      for (const auto& [s, c] : alpha.coords()) chain_add(z, {m, s}, a[i] * c);
    }
    return z;
  }

  /// Inverse of include on its image; nullopt when z is not of the form
  /// Σ_σ α_σ⊗ξ_σ with α_σ ∈ Λ*_σ.
  std::optional<std::vector<Int>> restrict(int t, const KoszulChain& z) const {
    std::map<std::size_t, Form> by_cone;
    for (const auto& [key, c] : z) {
      for (int e : key.first)
        if (e > 1) return std::nullopt;
      auto cone = fan_.find(monomial_support(key.first));
      if (!cone) return std::nullopt;
      auto [it, inserted] = by_cone.try_emplace(*cone, Form(fan_.rank()));
      it->second.add(key.second, c);
    }
    std::vector<Int> a(dim(t));
    for (const auto& [cone, alpha] : by_cone) {
      auto local = contexts_[cone].form_to_local(alpha);
      if (!local) return std::nullopt;
      for (const auto& [u, c] : local->coords()) {
        auto it = index_.find(ACell{cone, u});
        if (it == index_.end() || degree_of(fan_, it->first) != t) return std::nullopt;
        a[it->second] += c;
      }
    }
    return a;
  }

  /// Contraction by the basis vector x_i: A^t -> A^{t-1}.
  SparseIntMatrix action_matrix(int i, int t) const {
    SparseIntMatrix m(dim(t - 1), dim(t));
    const auto& cs = cells(t);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const auto& ctx = contexts_[cs[j].cone];
      auto local = ctx.form_to_local(contract(i, standard_form(cs[j])));
      if (!local) throw std::logic_error("contraction left the cone's exterior algebra");
      std::map<std::size_t, Int> col;
      for (const auto& [u, c] : local->coords()) col[index_.at(ACell{cs[j].cone, u})] += c;
      m.set_column(j, col);
    }
    return m;
  }

 private:
  SparseIntMatrix build_differential(int t) const {
    const auto& src = cells(t);
    SparseIntMatrix d(dim(t + 1), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const Form alpha = standard_form(src[j]);
      std::map<std::size_t, Int> col;
      for (const auto& cf : fan_.cofaces(src[j].cone)) {
        const Form beta = contract_by(fan_.ray(cf.ray), alpha);
        if (beta.is_zero()) continue;
        auto local = contexts_[cf.tau].form_to_local(beta);
        if (!local) throw std::logic_error("x_rho · α left Λ*_τ");
        for (const auto& [u, c] : local->coords()) col[index_.at(ACell{cf.tau, u})] += c;
      }
      d.set_column(j, col);
    }
    return d;
  }

  Fan fan_;
  std::vector<QuotientContext> contexts_;
  std::vector<std::vector<ACell>> cells_;
  std::map<ACell, std::size_t> index_;
  GradedComplex complex_;
};

inline SmallComplex build_small_complex(const Fan& fan) { return SmallComplex(fan); }

/// H^t(X; ring) for t = 0..2r from A(Σ).
inline std::vector<HomologyGroup> cohomology(const Fan& fan, const Ring& ring = Ring::integers(),
                                             unsigned jobs = 1) {
  SmallComplex a(fan);
  return homology_table(a.complex(), 2 * fan.rank(), ring, jobs);
}

/// H^t(X; ring) for t = 0..2r from the truncated full complex.
inline std::vector<HomologyGroup> cohomology_full_complex(const Fan& fan,
                                                          const Ring& ring = Ring::integers(),
                                                          unsigned jobs = 1) {
  return homology_table(build_full_complex(fan, 2 * fan.rank()), 2 * fan.rank(), ring, jobs);
}

// ---------------------------------------------------------------------------
// Homology bases and classes

/// ker(d_out)/im(d_in) with explicit generators. Generators are listed
/// free ones first, then torsion by increasing order; coordinates of
/// torsion generators are reduced modulo their order.
class HomologyBasis {
 public:
  HomologyBasis() = default;
  HomologyBasis(const IntMatrix& d_out, const IntMatrix& d_in) : d_out_(d_out) {
    detail::check_pair_shapes(d_out.cols(), d_in.rows());
    const std::size_t n = d_in.rows();
    n_ = n;
    if (n == 0) return;
    const auto so = snf(d_out);
    const std::size_t rho = so.rank;
    const std::size_t k = n - rho;
    kernel_coords_ = so.V_inverse.block(rho, n, 0, n);
    const IntMatrix z = so.V.block(0, n, rho, n);
    const IntMatrix bz = kernel_coords_ * d_in;
    const auto sb = snf(bz);
    ub_ = sb.U;
    const IntMatrix gens = z * sb.U_inverse;
    for (std::size_t i = sb.rank; i < k; ++i) add_generator(gens, i, Int(0));
    group_.free_rank = k - sb.rank;
    for (std::size_t i = 0; i < sb.rank; ++i)
      if (sb.D(i, i) > 1) {
        add_generator(gens, i, sb.D(i, i));
        group_.torsion.push_back(sb.D(i, i));
      }
  }

  const HomologyGroup& group() const { return group_; }
  std::size_t size() const { return slots_.size(); }
  std::size_t chain_dim() const { return n_; }
  const Int& order(std::size_t i) const { return orders_.at(i); }
  const std::vector<Int>& representative(std::size_t i) const { return reps_.at(i); }

  bool is_cycle(const std::vector<Int>& c) const {
    if (c.size() != n_) return false;
    for (const auto& v : d_out_.apply(c))
      if (v != 0) return false;
    return true;
  }

  std::vector<Int> reduce(std::vector<Int> coords) const {
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (orders_[i] != 0) coords[i] = mod_floor(coords[i], orders_[i]);
    return coords;
  }

  std::vector<Int> coordinates(const std::vector<Int>& cycle) const {
    if (!is_cycle(cycle)) throw std::invalid_argument("chain is not a cycle");
    std::vector<Int> out(slots_.size());
    if (slots_.empty()) return out;
    const std::vector<Int> w = ub_.apply(kernel_coords_.apply(cycle));
    for (std::size_t i = 0; i < slots_.size(); ++i) out[i] = w[slots_[i]];
    return reduce(std::move(out));
  }

  /// Chain representing the class with the given coordinates.
  std::vector<Int> chain(const std::vector<Int>& coords) const {
    std::vector<Int> c(n_);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) c[j] += coords[i] * reps_[i][j];
    }
    return c;
  }

 private:
  void add_generator(const IntMatrix& gens, std::size_t col, const Int& order) {
    slots_.push_back(col);
    orders_.push_back(order);
    reps_.push_back(gens.column(col));
  }

  std::size_t n_ = 0;
  IntMatrix d_out_;
  IntMatrix kernel_coords_;
  IntMatrix ub_;
  HomologyGroup group_;
  std::vector<std::size_t> slots_;
  std::vector<Int> orders_;
  std::vector<std::vector<Int>> reps_;
};

/// Element of H^degree, in the coordinates of the degree's HomologyBasis.
struct CohomologyClass {
  int degree = 0;
  std::vector<Int> coords;

  bool is_zero() const {
    for (const auto& c : coords)
      if (c != 0) return false;
    return true;
  }
  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
};

struct CupResult {
  CohomologyClass value;
  bool verified = true;  // false for products computed in conjecture mode
};

/// Integral cohomology of a fan with its Λ-module structure and product.
class CohomologyAlgebra {
 public:
  explicit CohomologyAlgebra(const Fan& fan, unsigned jobs = 1)
      : small_(fan), full_(fan), classification_(classify(fan)) {
    const int top = 2 * fan.rank();
    bases_.resize(static_cast<std::size_t>(top + 1));
    detail::parallel_for(bases_.size(), jobs, [&](std::size_t t) {
      const auto& c = small_.complex();
      bases_[t] = HomologyBasis(c.differential(static_cast<int>(t)).to_dense(),
                                c.differential(static_cast<int>(t) - 1).to_dense());
    });
  }

  const SmallComplex& small_complex() const { return small_; }
  FullComplex& full_complex() { return full_; }
  const FanClass& classification() const { return classification_; }
  int top_degree() const { return 2 * small_.rank(); }

  const HomologyBasis& basis(int t) const { return bases_.at(static_cast<std::size_t>(t)); }
  const HomologyGroup& group(int t) const { return basis(t).group(); }

  CohomologyClass zero(int t) const {
    if (t < 0 || t > top_degree()) return {t, {}};
    return {t, std::vector<Int>(basis(t).size())};
  }
  CohomologyClass generator(int t, std::size_t i) const {
    CohomologyClass c = zero(t);
    c.coords.at(i) = 1;
    return c;
  }
  CohomologyClass unit() const { return {0, basis(0).coordinates(one_chain())}; }

  CohomologyClass normalize(CohomologyClass c) const {
    if (c.degree >= 0 && c.degree <= top_degree()) c.coords = basis(c.degree).reduce(std::move(c.coords));
    return c;
  }
  CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b) const {
    if (a.degree != b.degree) throw std::invalid_argument("adding classes of different degree");
    CohomologyClass s = a;
    for (std::size_t i = 0; i < s.coords.size(); ++i) s.coords[i] += b.coords.at(i);
    return normalize(std::move(s));
  }
  CohomologyClass scale(const Int& f, const CohomologyClass& a) const {
    CohomologyClass s = a;
    for (auto& c : s.coords) c *= f;
    return normalize(std::move(s));
  }

  /// Cycle of A(Σ) representing the class.
  std::vector<Int> representative(const CohomologyClass& c) const {
    if (c.degree < 0 || c.degree > top_degree()) return {};
    return basis(c.degree).chain(c.coords);
  }
  CohomologyClass class_of(int t, const std::vector<Int>& cycle) const {
    if (t < 0 || t > top_degree()) return {t, {}};
    return {t, basis(t).coordinates(cycle)};
  }

  /// Induced action of x_i, computed on representatives by contraction.
  CohomologyClass lambda_action(int i, const CohomologyClass& c) const {
    if (i < 0 || i >= small_.rank()) throw std::out_of_range("basis index out of range");
    const int t = c.degree - 1;
    if (t < 0 || basis(t).size() == 0) return zero(t);
    return class_of(t, small_.action_matrix(i, c.degree).apply(representative(c)));
  }

  /// Class of a cycle of Λ*⊗SR(Σ) of degree t, via the inclusion of A(Σ).
  CohomologyClass class_of_full_cycle(int t, const KoszulChain& z) {
    if (t < 0 || t > top_degree() || basis(t).size() == 0) return zero(t);
    if (auto a = small_.restrict(t, z)) return class_of(t, *a);
    // Solve ι(a) + d(b) = z.
    const std::vector<Int> target = full_.coordinates(t, z);
    const std::size_t na = small_.dim(t);
    const std::size_t nb = full_.basis(t - 1).size();
    SparseIntMatrix system(target.size(), na + nb);
    for (std::size_t j = 0; j < na; ++j) {
      std::vector<Int> e(na);
      e[j] = 1;
      std::map<std::size_t, Int> col;
      for (const auto& [k, c] : small_.include(t, e)) col[*full_.index(t, k)] += c;
      system.set_column(j, col);
    }
    if (nb > 0) {
      const SparseIntMatrix& db = full_.differential(t - 1);
      for (std::size_t j = 0; j < nb; ++j) {
        std::map<std::size_t, Int> col(db.column(j).begin(), db.column(j).end());
        system.set_column(na + j, col);
      }
    }
    auto x = solve_integral(system, target);
    if (!x) throw std::logic_error("cycle of the full complex is not cohomologous to A(Σ)");
    return class_of(t, std::vector<Int>(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(na)));
  }

  /// Product induced by (α⊗m)(α'⊗m') = α∧α'⊗mm'. Refused unless the fan is
  /// a subfan of the product fan of (P¹)^r or conjecture mode is on.
  CupResult cup(const CohomologyClass& a, const CohomologyClass& b, bool conjecture_mode = false) {
    if (!classification_.p1r_subfan && !conjecture_mode)
      throw NotP1RSubfan("cup product is only established for subfans of (P^1)^r");
    CupResult res;
    res.verified = classification_.p1r_subfan;
    const int t = a.degree + b.degree;
    if (t > top_degree() || a.degree < 0 || b.degree < 0 || basis(t).size() == 0 || a.is_zero() ||
        b.is_zero()) {
      res.value = zero(t);
      return res;
    }
    const KoszulChain za = small_.include(a.degree, representative(a));
    const KoszulChain zb = small_.include(b.degree, representative(b));
    res.value = class_of_full_cycle(t, koszul_product(small_.fan(), za, zb));
    return res;
  }

 private:
  std::vector<Int> one_chain() const {
    // 1⊗1 sits at the zero cone with the empty subset.
    std::vector<Int> v(small_.dim(0));
    v[small_.index(ACell{small_.fan().zero_cone(), 0})] = 1;
    return v;
  }

  SmallComplex small_;
  FullComplex full_;
  FanClass classification_;
  std::vector<HomologyBasis> bases_;
};

// ---------------------------------------------------------------------------
// Quasi-isomorphism A(Σ) -> Λ*⊗SR(Σ)

struct QuasiIsoReport {
  std::vector<HomologyGroup> small;
  std::vector<HomologyGroup> full;
  bool groups_equal = false;
  bool inclusion_iso = false;
  bool ok() const { return groups_equal && inclusion_iso; }
};

/// Compares homology of both complexes in degrees 0..2r and checks that
/// the mapping cone of the inclusion, Cone^t = A^{t+1} ⊕ B^t with
/// d(a, b) = (-d a, ι a + d b), is acyclic in degrees -1..2r.
inline QuasiIsoReport quasi_iso_report(const Fan& fan, unsigned jobs = 1) {
  SmallComplex a(fan);
  FullComplex b(fan);
  const int top = 2 * fan.rank();
  const GradedComplex gb = b.truncated(top);
  const GradedComplex& ga = a.complex();

  // ι_t : A^t -> B^t for t = 0..top+1.
  std::vector<SparseIntMatrix> iota;
  for (int t = 0; t <= top + 1; ++t) {
    SparseIntMatrix m(gb.dim(t), a.dim(t));
    for (std::size_t j = 0; j < a.dim(t); ++j) {
      std::vector<Int> e(a.dim(t));
      e[j] = 1;
      std::map<std::size_t, Int> col;
      for (const auto& [k, c] : a.include(t, e)) col[*b.index(t, k)] += c;
      m.set_column(j, col);
    }
    iota.push_back(std::move(m));
  }
  auto iota_at = [&](int t) {
    if (t < 0 || t > top + 1) return SparseIntMatrix(gb.dim(t), a.dim(t));
    return iota[static_cast<std::size_t>(t)];
  };
  auto a_diff = [&](int t) {
    if (t > ga.top_degree()) return SparseIntMatrix(0, ga.dim(t));
    return ga.differential(t);
  };
  auto cone_dim = [&](int t) { return a.dim(t + 1) + gb.dim(t); };
  auto cone_diff = [&](int t) {
    const SparseIntMatrix da = a_diff(t + 1);
    const SparseIntMatrix il = iota_at(t + 1);
    const SparseIntMatrix db = t < 0 ? SparseIntMatrix(gb.dim(t + 1), 0) : gb.differential(t);
    const std::size_t na = a.dim(t + 1), na2 = a.dim(t + 2);
    SparseIntMatrix m(cone_dim(t + 1), cone_dim(t));
    for (std::size_t j = 0; j < na; ++j) {
      std::map<std::size_t, Int> col;
      for (const auto& [i, v] : da.column(j)) col[i] -= v;
      for (const auto& [i, v] : il.column(j)) col[na2 + i] += v;
      m.set_column(j, col);
    }
    for (std::size_t j = 0; j < gb.dim(t); ++j) {
      std::map<std::size_t, Int> col;
      for (const auto& [i, v] : db.column(j)) col[na2 + i] += v;
      m.set_column(na + j, col);
    }
    return m;
  };

  QuasiIsoReport rep;
  rep.small = homology_table(ga, top, Ring::integers(), jobs);
  rep.full = homology_table(gb, top, Ring::integers(), jobs);
  rep.groups_equal = rep.small == rep.full;

  // Invariant factors of the cone differential d^t for t = -2..top.
  const int lo = -2;
  std::vector<std::vector<Int>> factors(static_cast<std::size_t>(top - lo + 1));
  detail::parallel_for(factors.size(), jobs, [&](std::size_t k) {
    factors[k] = invariant_factors(cone_diff(static_cast<int>(k) + lo));
  });
  rep.inclusion_iso = true;
  for (int t = -1; t <= top; ++t) {
    const auto& in = factors[static_cast<std::size_t>(t - 1 - lo)];
    const auto& out = factors[static_cast<std::size_t>(t - lo)];
    if (in.size() + out.size() != cone_dim(t)) rep.inclusion_iso = false;
    for (const auto& f : in)
      if (f != 1) rep.inclusion_iso = false;
  }
  return rep;
}

inline bool quasi_iso_check(const Fan& fan, unsigned jobs = 1) {
  return quasi_iso_report(fan, jobs).ok();
}

}  // namespace torichom
