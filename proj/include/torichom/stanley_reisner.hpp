#pragma once

// Graded pieces of the Stanley-Reisner ring SR(Σ): polynomials in one
// variable per ray modulo monomials whose support is not a cone. Degree
// here is polynomial degree; cohomological degree is twice that.

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "torichom/fan.hpp"

namespace torichom {

/// Exponent vector over the fan's rays; entry i is the power of xi_{rho_i}.
using SRMonomial = std::vector<int>;

/// Homogeneous integer combination of monomials (zero coefficients absent).
using SRElement = std::map<SRMonomial, Int>;

inline int monomial_degree(const SRMonomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

inline RayMask monomial_support(const SRMonomial& m) {
  RayMask s = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > 0) s |= RayMask{1} << i;
  return s;
}

/// Squarefree monomial xi_sigma of a cone.
inline SRMonomial cone_monomial(const Fan& fan, std::size_t cone) {
  SRMonomial m(fan.ray_count(), 0);
  for (int r : fan.cone(cone).rays) m[static_cast<std::size_t>(r)] = 1;
  return m;
}

inline void sr_add(SRElement& acc, const SRMonomial& m, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = acc.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

/// Degree-p monomials supported on cones, sorted lexicographically.
inline std::vector<SRMonomial> sr_basis(const Fan& fan, int p) {
  std::vector<SRMonomial> out;
  const std::size_t n = fan.ray_count();
  if (p < 0) return out;
  if (p == 0) {
    out.emplace_back(n, 0);
    return out;
  }
  for (const auto& cone : fan.cones()) {
    const int k = static_cast<int>(cone.dim());
    if (k == 0 || k > p) continue;
    // Compositions of p into k positive parts.
    SRMonomial m(n, 0);
    std::function<void(int, int)> place = [&](int slot, int remaining) {
      const auto ray = static_cast<std::size_t>(cone.rays[static_cast<std::size_t>(slot)]);
      if (slot == k - 1) {
        m[ray] = remaining;
        out.push_back(m);
        m[ray] = 0;
        return;
      }
      for (int e = 1; e <= remaining - (k - 1 - slot); ++e) {
        m[ray] = e;
        place(slot + 1, remaining - e);
      }
      m[ray] = 0;
    };
    place(0, p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Polynomial product with non-cone supports deleted.
inline SRElement sr_multiply(const Fan& fan, const SRElement& a, const SRElement& b) {
  SRElement out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      SRMonomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      if (!fan.is_cone(monomial_support(m))) continue;
      sr_add(out, m, ca * cb);
    }
  return out;
}

/// Image of the basis form xi_i under S* -> SR(Σ): sum_rho xi_i(x_rho) xi_rho.
inline SRElement sstar_image(const Fan& fan, int i) {
  SRElement out;
  for (std::size_t r = 0; r < fan.ray_count(); ++r) {
    const Int& c = fan.ray(static_cast<int>(r)).at(static_cast<std::size_t>(i));
    if (c == 0) continue;
    SRMonomial m(fan.ray_count(), 0);
    m[r] = 1;
    sr_add(out, m, c);
  }
  return out;
}

/// Dimension of SR_p(Σ) counted cone by cone: a cone of dimension k
/// contributes C(p-1, k-1) monomials with full support on it.
inline Int sr_dimension(const Fan& fan, int p) {
  if (p < 0) return 0;
  if (p == 0) return 1;
  Int total = 0;
  for (const auto& cone : fan.cones()) {
    const auto k = static_cast<int>(cone.dim());
    if (k == 0 || k > p) continue;
    Int binom = 1;
    for (int j = 1; j <= k - 1; ++j) binom = binom * (p - j) / j;
    total += binom;
  }
  return total;
}

}  // namespace torichom
