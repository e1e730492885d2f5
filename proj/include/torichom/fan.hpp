#pragma once

// Regular fans: construction by face closure, validation, facet structure,
// adapted lattice bases per cone, orientation data, the Cox construction
// and structural classification.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "torichom/exact_linalg.hpp"
#include "torichom/exterior.hpp"
#include "torichom/polyhedral.hpp"

namespace torichom {

using RayMask = std::uint64_t;
inline constexpr std::size_t kMaxRays = 64;

/// Cone given by strictly ascending indices into the fan's ray table; the
/// empty list is the zero cone.
struct Cone {
  std::vector<int> rays;

  std::size_t dim() const { return rays.size(); }
  RayMask mask() const {
    RayMask m = 0;
    for (int r : rays) m |= RayMask{1} << r;
    return m;
  }
  bool contains_ray(int r) const { return std::binary_search(rays.begin(), rays.end(), r); }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? "," : "") + std::to_string(rays[i]);
    return s + "}";
  }
  friend bool operator==(const Cone&, const Cone&) = default;
  friend auto operator<=>(const Cone& a, const Cone& b) {
    if (a.rays.size() != b.rays.size()) return a.rays.size() <=> b.rays.size();
    return a.rays <=> b.rays;
  }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

struct InvalidFan : std::runtime_error {
  ValidationReport report;
  explicit InvalidFan(ValidationReport r)
      : std::runtime_error("invalid fan: " +
                           (r.violations.empty() ? std::string("?") : r.violations.front())),
        report(std::move(r)) {}
};

struct ConeNotInFan : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct NotAFacet : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A facet relation sigma <_1 tau together with the additional ray.
struct Coface {
  std::size_t tau;
  int ray;
};

class Fan {
 public:
  using Vector = std::vector<Int>;

  Fan() = default;

  /// Builds the face closure of the given maximal cones. Every listed ray
  /// is a one-dimensional cone and the zero cone is always present.
  /// Structural problems (bad indices, duplicates) are recorded for
  /// validate() rather than thrown.
  static Fan from_max_cones(int rank, std::vector<Vector> rays,
                            const std::vector<std::vector<int>>& max_cones) {
    Fan f(rank, std::move(rays));
    std::map<std::vector<int>, int> seen;
    std::vector<Cone> well_formed;
    for (const auto& c : max_cones) {
      if (!f.check_cone_indices(c)) continue;
      if (seen[c]++ == 1) {
        f.issues_.push_back("cone " + Cone{c}.str() + " listed twice");
        continue;
      }
      well_formed.push_back(Cone{c});
    }
    std::map<RayMask, Cone> closure;
    closure.emplace(0, Cone{});
    for (std::size_t i = 0; i < f.rays_.size(); ++i)
      closure.emplace(RayMask{1} << i, Cone{{static_cast<int>(i)}});
    for (const auto& c : well_formed) {
      const RayMask m = c.mask();
      // Enumerate all sub-masks of m.
      for (RayMask s = m;; s = (s - 1) & m) {
        if (!closure.count(s)) closure.emplace(s, cone_from_mask(s));
        if (s == 0) break;
      }
    }
    std::vector<Cone> cones;
    for (auto& [m, c] : closure) cones.push_back(std::move(c));
    f.set_cones(std::move(cones));
    return f;
  }

  /// Uses the given cone list verbatim (no closure); for validation tests.
  static Fan from_cones(int rank, std::vector<Vector> rays, const std::vector<std::vector<int>>& cones) {
    Fan f(rank, std::move(rays));
    std::vector<Cone> list;
    std::map<std::vector<int>, int> seen;
    for (const auto& c : cones) {
      if (!f.check_cone_indices(c)) continue;
      if (seen[c]++ == 1) {
        f.issues_.push_back("cone " + Cone{c}.str() + " listed twice");
        continue;
      }
      list.push_back(Cone{c});
    }
    f.set_cones(std::move(list));
    return f;
  }

  int rank() const { return rank_; }
  std::size_t ray_count() const { return rays_.size(); }
  const Vector& ray(int i) const { return rays_.at(static_cast<std::size_t>(i)); }
  const std::vector<Vector>& rays() const { return rays_; }

  std::size_t cone_count() const { return cones_.size(); }
  const Cone& cone(std::size_t i) const { return cones_.at(i); }
  const std::vector<Cone>& cones() const { return cones_; }
  const std::vector<std::string>& construction_issues() const { return issues_; }

  std::optional<std::size_t> find(RayMask m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find(const Cone& c) const { return find(c.mask()); }
  bool is_cone(RayMask m) const { return index_.count(m) != 0; }

  std::size_t zero_cone() const { return *find(RayMask{0}); }

  std::vector<std::size_t> cones_of_dim(std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cones_.size(); ++i)
      if (cones_[i].dim() == k) out.push_back(i);
    return out;
  }

  /// Cones that are not a proper face of another cone, in cone order.
  std::vector<std::size_t> maximal_cones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cones_.size(); ++i)
      if (cofaces_[i].empty()) out.push_back(i);
    return out;
  }

  /// All tau with sigma <_1 tau, ordered by cone index.
  const std::vector<Coface>& cofaces(std::size_t sigma) const { return cofaces_.at(sigma); }

  /// Codimension-one faces of tau (cones obtained by dropping one ray).
  std::vector<std::size_t> facets(std::size_t tau) const {
    std::vector<std::size_t> out;
    const RayMask m = cones_.at(tau).mask();
    for (int r : cones_[tau].rays)
      if (auto f = find(m & ~(RayMask{1} << r))) out.push_back(*f);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<Cone> facets(const Cone& tau) const {
    auto idx = find(tau);
    if (!idx) throw ConeNotInFan("cone " + tau.str() + " is not in the fan");
    std::vector<Cone> out;
    for (auto f : facets(*idx)) out.push_back(cones_[f]);
    return out;
  }

  /// Column vectors of the rays of a cone, in ascending ray order.
  std::vector<Vector> ray_vectors(std::size_t cone) const {
    std::vector<Vector> v;
    for (int r : cones_.at(cone).rays) v.push_back(rays_[static_cast<std::size_t>(r)]);
    return v;
  }

  std::vector<std::size_t> cone_counts_by_dim() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(rank_) + 1, 0);
    for (const auto& c : cones_)
      if (c.dim() < counts.size()) ++counts[c.dim()];
    return counts;
  }

 private:
  Fan(int rank, std::vector<Vector> rays) : rank_(rank), rays_(std::move(rays)) {
    if (rank_ < 0 || static_cast<std::size_t>(rank_) > kMaxExteriorRank)
      throw std::invalid_argument("lattice rank out of supported range");
    if (rays_.size() > kMaxRays) throw std::invalid_argument("too many rays");
  }

  static Cone cone_from_mask(RayMask m) {
    Cone c;
    for (int i = 0; m; ++i, m >>= 1)
      if (m & 1u) c.rays.push_back(i);
    return c;
  }

  bool check_cone_indices(const std::vector<int>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || static_cast<std::size_t>(c[i]) >= rays_.size()) {
        issues_.push_back("cone " + Cone{c}.str() + " references unknown ray " + std::to_string(c[i]));
        return false;
      }
      if (i > 0 && c[i] <= c[i - 1]) {
        issues_.push_back("cone " + Cone{c}.str() + " ray indices not strictly ascending");
        return false;
      }
    }
    return true;
  }

  void set_cones(std::vector<Cone> cones) {
    std::sort(cones.begin(), cones.end());
    cones_ = std::move(cones);
    index_.clear();
    for (std::size_t i = 0; i < cones_.size(); ++i) index_.emplace(cones_[i].mask(), i);
    cofaces_.assign(cones_.size(), {});
    for (std::size_t t = 0; t < cones_.size(); ++t) {
      const RayMask m = cones_[t].mask();
      for (int r : cones_[t].rays)
        if (auto s = find(m & ~(RayMask{1} << r))) cofaces_[*s].push_back(Coface{t, r});
    }
  }

  int rank_ = 0;
  std::vector<Vector> rays_;
  std::vector<Cone> cones_;
  std::unordered_map<RayMask, std::size_t> index_;
  std::vector<std::vector<Coface>> cofaces_;
  std::vector<std::string> issues_;
};

namespace detail {

inline bool is_primitive(const std::vector<Int>& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g == 1;
}

/// Two simplicial cones meet in the cone on their shared rays iff no point
/// of the first with positive weight outside the shared rays lies in the
/// second.
inline bool meets_in_common_face(const Fan& fan, const Cone& a, const Cone& b) {
  std::vector<int> outside;
  for (int r : a.rays)
    if (!b.contains_ray(r)) outside.push_back(r);
  if (outside.empty()) return true;
  const std::size_t n = a.rays.size() + b.rays.size();
  const auto r = static_cast<std::size_t>(fan.rank());
  std::vector<std::vector<Rational>> eq(r + 1, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> rhs(r + 1, Rational(0));
  for (std::size_t j = 0; j < a.rays.size(); ++j) {
    const auto& v = fan.ray(a.rays[j]);
    for (std::size_t i = 0; i < r; ++i) eq[i][j] = Rational(v[i]);
    if (!b.contains_ray(a.rays[j])) eq[r][j] = 1;
  }
  for (std::size_t j = 0; j < b.rays.size(); ++j) {
    const auto& v = fan.ray(b.rays[j]);
    for (std::size_t i = 0; i < r; ++i) eq[i][a.rays.size() + j] = -Rational(v[i]);
  }
  rhs[r] = 1;
  return !nonnegative_solution_exists(std::move(eq), std::move(rhs));
}

}  // namespace detail

/// Reports every violation: non-primitive or malformed rays, missing faces,
/// non-regular cones, and pairs of cones overlapping outside a common face.
inline ValidationReport validate(const Fan& fan) {
  ValidationReport rep;
  rep.violations = fan.construction_issues();
  const auto r = static_cast<std::size_t>(fan.rank());
  bool rays_ok = true;
  for (std::size_t i = 0; i < fan.ray_count(); ++i) {
    const auto& v = fan.ray(static_cast<int>(i));
    if (v.size() != r) {
      rep.violations.push_back("ray " + std::to_string(i) + " has " + std::to_string(v.size()) +
                               " coordinates, expected " + std::to_string(r));
      rays_ok = false;
    } else if (!detail::is_primitive(v)) {
      rep.violations.push_back("ray " + std::to_string(i) + " not primitive");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (fan.ray(static_cast<int>(j)) == v)
        rep.violations.push_back("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  if (!rays_ok) return rep;

  if (!fan.find(RayMask{0})) rep.violations.push_back("zero cone missing");
  for (std::size_t c = 0; c < fan.cone_count(); ++c) {
    const Cone& cone = fan.cone(c);
    const RayMask m = cone.mask();
    for (int ray : cone.rays) {
      const RayMask f = m & ~(RayMask{1} << ray);
      if (!fan.is_cone(f)) {
        Cone face;
        for (int x : cone.rays)
          if (x != ray) face.rays.push_back(x);
        rep.violations.push_back("face " + face.str() + " of cone " + cone.str() + " missing");
      }
    }
    try {
      basis_completion(fan.ray_vectors(c), r);
    } catch (const NotUnimodular&) {
      rep.violations.push_back("cone " + cone.str() + " is not regular");
    }
  }
  if (!rep.valid()) return rep;

  // Pairwise intersections among maximal cones.
  const auto maximal = fan.maximal_cones();
  for (std::size_t a = 0; a < maximal.size(); ++a)
    for (std::size_t b = a + 1; b < maximal.size(); ++b) {
      const Cone& ca = fan.cone(maximal[a]);
      const Cone& cb = fan.cone(maximal[b]);
      if (!detail::meets_in_common_face(fan, ca, cb) || !detail::meets_in_common_face(fan, cb, ca))
        rep.violations.push_back("cones " + ca.str() + " and " + cb.str() +
                                 " intersect outside a common face");
    }
  return rep;
}

inline void require_valid(const Fan& fan) {
  auto rep = validate(fan);
  if (!rep.valid()) throw InvalidFan(std::move(rep));
}

// ---------------------------------------------------------------------------
// Adapted bases

/// Unimodular basis B of Z^r whose first k = dim(sigma) columns are the rays
/// of sigma in ascending order; the remaining columns project to a basis of
/// N / lin(sigma). Local coordinates of the quotient and of the forms
/// vanishing on sigma are indexed 0..r-k-1.
class QuotientContext {
 public:
  QuotientContext() = default;
  QuotientContext(const Fan& fan, std::size_t cone)
      : cone_(cone), rank_(fan.rank()), k_(static_cast<int>(fan.cone(cone).dim())) {
    basis_ = basis_completion(fan.ray_vectors(cone), static_cast<std::size_t>(rank_));
    dual_ = unimodular_inverse(basis_);
    det_ = determinant(basis_);
    for (int j = 0; j < rank_; ++j) {
      columns_.push_back(Multivector::linear(basis_.column(static_cast<std::size_t>(j))));
      rows_.push_back(Form::linear(dual_.row(static_cast<std::size_t>(j))));
    }
  }

  std::size_t cone() const { return cone_; }
  int rank() const { return rank_; }
  int cone_dim() const { return k_; }
  int local_rank() const { return rank_ - k_; }
  const IntMatrix& basis() const { return basis_; }
  const IntMatrix& dual_basis() const { return dual_; }
  const Int& basis_determinant() const { return det_; }

  /// Coordinates of the image of v in N / lin(sigma).
  std::vector<Int> quotient_coords(const std::vector<Int>& v) const {
    std::vector<Int> full = dual_.apply(v);
    return {full.begin() + k_, full.end()};
  }

  /// Lift of a local multivector to Λ using the complement columns of B.
  Multivector lift(const Multivector& local) const {
    std::vector<Multivector> images(columns_.begin() + k_, columns_.end());
    return push_forward(images, local, rank_);
  }

  /// Local dual coordinates -> standard form in Λ*.
  Form form_to_standard(const Form& local) const {
    std::vector<Form> images(rows_.begin() + k_, rows_.end());
    return pull_back(images, local, rank_);
  }

  /// Standard form -> local coordinates; nullopt when the form does not lie
  /// in the subalgebra generated by forms vanishing on lin(sigma).
  std::optional<Form> form_to_local(const Form& alpha) const {
    Form local(local_rank());
    std::map<int, std::vector<IndexSet>> by_degree;
    for (const auto& [s, c] : alpha.coords()) {
      const int q = subset_size(s);
      if (q > local_rank()) return std::nullopt;
      if (!by_degree.count(q)) by_degree[q] = subsets_of_size(local_rank(), q);
    }
    for (const auto& [q, subsets] : by_degree)
      for (IndexSet u : subsets) {
        Int c = eval(alpha, lift(Multivector::basis(local_rank(), u)));
        local.add(u, c);
      }
    if (!(form_to_standard(local) == alpha)) return std::nullopt;
    return local;
  }

 private:
  std::size_t cone_ = 0;
  int rank_ = 0;
  int k_ = 0;
  IntMatrix basis_;
  IntMatrix dual_;
  Int det_ = 1;
  std::vector<Multivector> columns_;
  std::vector<Form> rows_;
};

/// Adapted bases for every cone of a fan, indexed like fan.cones().
inline std::vector<QuotientContext> quotient_contexts(const Fan& fan) {
  std::vector<QuotientContext> out;
  out.reserve(fan.cone_count());
  for (std::size_t c = 0; c < fan.cone_count(); ++c) out.emplace_back(fan, c);
  return out;
}

// ---------------------------------------------------------------------------
// Orientations

/// omega'_sigma = s_sigma * (wedge of the rays in ascending index order),
/// omega_0 = x_1 ∧ ... ∧ x_r and omega_sigma determined by
/// omega'_sigma ∧ omega_sigma = omega_0. The signs s_sigma default to +1.
class OrientationData {
 public:
  OrientationData(const Fan& fan, const std::vector<QuotientContext>& contexts)
      : fan_(&fan), contexts_(&contexts), flips_(fan.cone_count(), 1) {}

  void flip(std::size_t cone) { flips_.at(cone) = -flips_.at(cone); }
  int cone_sign(std::size_t cone) const { return flips_.at(cone); }

  Multivector omega_zero() const {
    return Multivector::basis(fan_->rank(), fan_->rank() == 32 ? ~IndexSet{0}
                                                               : (IndexSet{1} << fan_->rank()) - 1);
  }

  Multivector omega_prime(std::size_t cone) const {
    Multivector w = Multivector::one(fan_->rank());
    for (int r : fan_->cone(cone).rays) w = wedge(w, Multivector::linear(fan_->ray(r)));
    return Int(flips_[cone]) * w;
  }

  /// omega_sigma in the local coordinates of Λ^sigma.
  Multivector omega(std::size_t cone) const {
    const auto& ctx = (*contexts_)[cone];
    const int n = ctx.local_rank();
    const IndexSet all = n == 0 ? 0 : (IndexSet{1} << n) - 1;
    return Multivector::basis(n, all, Int(flips_[cone]) * ctx.basis_determinant());
  }

  /// Or_{sigma,tau}: omega'_tau = Or * x_rho ∧ omega'_sigma.
  int orientation_sign(std::size_t sigma, std::size_t tau) const {
    const Cone& s = fan_->cone(sigma);
    const Cone& t = fan_->cone(tau);
    if (t.dim() != s.dim() + 1 || (s.mask() & ~t.mask()) != 0)
      throw NotAFacet("cone " + s.str() + " is not a facet of " + t.str());
    const int rho = std::countr_zero(t.mask() & ~s.mask());
    const Multivector lhs = omega_prime(tau);
    const Multivector rhs = wedge(Multivector::linear(fan_->ray(rho)), omega_prime(sigma));
    if (lhs == rhs) return 1;
    if (lhs == -rhs) return -1;
    throw std::logic_error("orientation comparison failed");
  }

 private:
  const Fan* fan_;
  const std::vector<QuotientContext>* contexts_;
  std::vector<int> flips_;
};

// ---------------------------------------------------------------------------
// Cox construction and classification

/// Fan in the lattice freely generated by the rays (plus a copy of N when
/// the rays do not span N ⊗ Q), with the same cone poset.
inline Fan cox(const Fan& fan) {
  const std::size_t n = fan.ray_count();
  std::size_t target = n;
  const auto r = static_cast<std::size_t>(fan.rank());
  if (n == 0 || rank(IntMatrix::from_columns(r, fan.rays())) < r) target = n + r;
  std::vector<Fan::Vector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    Fan::Vector v(target, Int(0));
    v[i] = 1;
    rays.push_back(std::move(v));
  }
  std::vector<std::vector<int>> max_cones;
  for (auto c : fan.maximal_cones()) max_cones.push_back(fan.cone(c).rays);
  return Fan::from_max_cones(static_cast<int>(target), std::move(rays), max_cones);
}

struct FanClass {
  bool complete = false;
  bool p1r_subfan = false;
  bool arrangement_complement = false;
  friend bool operator==(const FanClass&, const FanClass&) = default;
};

namespace detail {

/// Index of the coordinate when v = ±e_i, else -1; sign returned through s.
inline int signed_basis_index(const std::vector<Int>& v, int& s) {
  int idx = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (idx != -1 || abs_value(v[i]) != 1) return -1;
    idx = static_cast<int>(i);
    s = v[i] > 0 ? 1 : -1;
  }
  return idx;
}

}  // namespace detail

/// Structural flags. Completeness uses the fact that a valid simplicial fan
/// covers Q^r exactly when it is pure of dimension r and every
/// (r-1)-dimensional cone lies in exactly two r-dimensional cones.
inline FanClass classify(const Fan& fan) {
  FanClass fc;
  const auto r = static_cast<std::size_t>(fan.rank());
  bool pure = true;
  for (auto c : fan.maximal_cones())
    if (fan.cone(c).dim() != r) pure = false;
  if (pure) {
    fc.complete = true;
    if (r > 0)
      for (auto w : fan.cones_of_dim(r - 1))
        if (fan.cofaces(w).size() != 2) fc.complete = false;
  }
  fc.p1r_subfan = true;
  fc.arrangement_complement = true;
  for (std::size_t i = 0; i < fan.ray_count(); ++i) {
    int s = 0;
    if (detail::signed_basis_index(fan.ray(static_cast<int>(i)), s) < 0) {
      fc.p1r_subfan = fc.arrangement_complement = false;
    } else if (s < 0) {
      fc.arrangement_complement = false;
    }
  }
  if (fc.p1r_subfan)
    for (const auto& c : fan.cones()) {
      RayMask used = 0;
      for (int ray : c.rays) {
        int s = 0;
        const int idx = detail::signed_basis_index(fan.ray(ray), s);
        if (used & (RayMask{1} << idx)) fc.p1r_subfan = false;
        used |= RayMask{1} << idx;
      }
    }
  return fc;
}

/// Image of a fan under a unimodular change of lattice basis g (rays map to
/// g * x_rho); the cone structure is unchanged.
inline Fan transform_fan(const Fan& fan, const IntMatrix& g) {
  std::vector<Fan::Vector> rays;
  for (const auto& v : fan.rays()) rays.push_back(g.apply(v));
  std::vector<std::vector<int>> max_cones;
  for (auto c : fan.maximal_cones()) max_cones.push_back(fan.cone(c).rays);
  return Fan::from_max_cones(fan.rank(), std::move(rays), max_cones);
}

}  // namespace torichom
