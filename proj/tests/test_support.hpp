#pragma once

// Shared fixtures: corpus access, random fans and chains, and a
// Hochster-formula oracle for coordinate arrangement complements.

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "torichom/torichom.hpp"

namespace torichom::testing {

inline std::string fans_dir() { return TORICHOM_FANS_DIR; }

/// Corpus fan files (valid ones, including cox_*), sorted by name.
inline std::vector<std::string> corpus_names(bool include_cox = true) {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(fans_dir())) {
    const std::string f = e.path().filename().string();
    if (f.size() < 5 || f.substr(f.size() - 5) != ".json") continue;
    if (f.find(".expected.") != std::string::npos || f.rfind("bad_", 0) == 0) continue;
    if (!include_cox && f.rfind("cox_", 0) == 0) continue;
    names.push_back(f.substr(0, f.size() - 5));
  }
  std::sort(names.begin(), names.end());
  return names;
}

inline Fan load(const std::string& name) { return read_fan_file(fans_dir() + "/" + name + ".json"); }

inline bool has_expected(const std::string& name) {
  return std::filesystem::exists(fans_dir() + "/" + name + ".expected.json");
}

inline nlohmann::json expected(const std::string& name) {
  std::ifstream in(fans_dir() + "/" + name + ".expected.json");
  return nlohmann::json::parse(in);
}

inline std::vector<std::string> group_strings(const std::vector<HomologyGroup>& t) {
  std::vector<std::string> out;
  for (const auto& g : t) out.push_back(g.str());
  return out;
}

// ---------------------------------------------------------------------------
// Random objects

/// Product of random elementary matrices and sign changes.
inline IntMatrix random_unimodular(std::size_t r, std::mt19937& rng, int steps = 8) {
  IntMatrix g = IntMatrix::identity(r);
  if (r == 0) return g;
  std::uniform_int_distribution<std::size_t> idx(0, r - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) {
      if (rng() % 4 == 0)
        for (std::size_t c = 0; c < r; ++c) g(i, c) = -g(i, c);
      continue;
    }
    const Int f = coef(rng);
    for (std::size_t c = 0; c < r; ++c) g(i, c) += f * g(j, c);
  }
  return g;
}

/// Random subfan of the product fan of (P^1)^r: a random nonempty set of
/// maximal cones, each a random face of a maximal cone of the product.
inline Fan random_p1r_subfan(int r, std::mt19937& rng) {
  std::vector<Fan::Vector> rays;
  for (int i = 0; i < r; ++i)
    for (int s : {1, -1}) {
      Fan::Vector v(static_cast<std::size_t>(r), Int(0));
      v[static_cast<std::size_t>(i)] = s;
      rays.push_back(std::move(v));
    }
  std::vector<std::vector<int>> cones;
  const int count = 1 + static_cast<int>(rng() % (1u << std::min(r, 4)));
  for (int c = 0; c < count; ++c) {
    std::vector<int> cone;
    for (int i = 0; i < r; ++i) {
      const auto pick = rng() % 3;
      if (pick == 0) cone.push_back(2 * i);
      else if (pick == 1) cone.push_back(2 * i + 1);
    }
    if (std::find(cones.begin(), cones.end(), cone) == cones.end()) cones.push_back(cone);
  }
  return Fan::from_max_cones(r, std::move(rays), cones);
}

/// Random regular fan: the image of a random (P^1)^r subfan under a random
/// unimodular map.
inline Fan random_regular_fan(int r, std::mt19937& rng) {
  return transform_fan(random_p1r_subfan(r, rng), random_unimodular(static_cast<std::size_t>(r), rng));
}

inline KoszulChain random_chain(FullComplex& full, int t, std::mt19937& rng, int terms = 3) {
  KoszulChain z;
  const auto& keys = full.basis(t);
  if (keys.empty()) return z;
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int i = 0; i < terms; ++i) chain_add(z, keys[pick(rng)], Int(coef(rng)));
  return z;
}

// ---------------------------------------------------------------------------
// Hochster oracle

/// Reduced cohomology of a simplicial complex given by its faces (vertex
/// subsets as bit masks, closed under subsets, including the empty face).
/// Returns H̃^j for j = -1..top.
inline std::vector<HomologyGroup> reduced_cohomology(const std::vector<RayMask>& faces, int top) {
  std::vector<std::vector<RayMask>> by_dim(static_cast<std::size_t>(top + 3));
  for (RayMask f : faces) {
    const int d = std::popcount(f) - 1;
    if (d + 1 < static_cast<int>(by_dim.size())) by_dim[static_cast<std::size_t>(d + 1)].push_back(f);
  }
  for (auto& v : by_dim) std::sort(v.begin(), v.end());
  // Coboundary δ^j : C^j -> C^{j+1}, indices shifted by one (slot 0 is j = -1).
  auto coboundary = [&](std::size_t slot) {
    const auto& src = by_dim[slot];
    const auto& dst = slot + 1 < by_dim.size() ? by_dim[slot + 1] : std::vector<RayMask>{};
    IntMatrix m(dst.size(), src.size());
    for (std::size_t a = 0; a < dst.size(); ++a)
      for (std::size_t b = 0; b < src.size(); ++b) {
        if ((src[b] & ~dst[a]) != 0) continue;
        const RayMask v = dst[a] & ~src[b];
        const int pos = std::popcount(dst[a] & (v - 1));
        m(a, b) = (pos % 2 == 0) ? 1 : -1;
      }
    return m;
  };
  std::vector<HomologyGroup> out;
  for (std::size_t slot = 0; slot + 1 < by_dim.size(); ++slot) {
    const IntMatrix in = slot == 0 ? IntMatrix(by_dim[0].size(), 0) : coboundary(slot - 1);
    out.push_back(homology_of_pair(coboundary(slot), in));
  }
  return out;
}

/// Cohomology of the toric variety of a fan whose rays are distinct
/// standard basis vectors: H^t(Z_K) by Hochster's formula, tensored with
/// the exterior algebra of the coordinates not used by any ray.
inline std::vector<HomologyGroup> hochster_oracle(const Fan& fan) {
  const int n = static_cast<int>(fan.ray_count());
  const int r = fan.rank();
  std::vector<RayMask> faces;
  for (const auto& c : fan.cones()) faces.push_back(c.mask());
  std::vector<HomologyGroup> zk(static_cast<std::size_t>(2 * r + 1));
  for (RayMask j = 0; j < (RayMask{1} << n); ++j) {
    std::vector<RayMask> sub;
    for (RayMask f : faces)
      if ((f & ~j) == 0) sub.push_back(f);
    const int size = std::popcount(j);
    const auto h = reduced_cohomology(sub, std::max(size - 1, 0));
    for (std::size_t slot = 0; slot < h.size(); ++slot) {
      const int t = static_cast<int>(slot) - 1 + size + 1;
      if (t >= 0 && t <= 2 * r) zk[static_cast<std::size_t>(t)] = direct_sum(zk[static_cast<std::size_t>(t)], h[slot]);
    }
  }
  const int free = r - n;
  std::vector<HomologyGroup> out(static_cast<std::size_t>(2 * r + 1));
  for (int t = 0; t <= 2 * r; ++t)
    for (int j = 0; j <= free && j <= t; ++j) {
      std::size_t binom = 1;
      for (int a = 0; a < j; ++a) binom = binom * static_cast<std::size_t>(free - a) / static_cast<std::size_t>(a + 1);
      for (std::size_t b = 0; b < binom; ++b)
        out[static_cast<std::size_t>(t)] = direct_sum(out[static_cast<std::size_t>(t)], zk[static_cast<std::size_t>(t - j)]);
    }
  return out;
}

}  // namespace torichom::testing
