#pragma once

// Fan files: {"rank": r, "rays": [[int, ...], ...], "max_cones": [[i, ...], ...]}
// with 0-based ray indices in strictly ascending order inside each cone.

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "torichom/fan.hpp"

namespace torichom {

/// The input does not follow the fan file schema.
struct MalformedFan : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Fan fan_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw MalformedFan("fan file must hold a JSON object");
  for (const char* key : {"rank", "rays", "max_cones"})
    if (!j.contains(key)) throw MalformedFan(std::string("missing key \"") + key + "\"");
  for (const auto& [key, value] : j.items())
    if (key != "rank" && key != "rays" && key != "max_cones" && key != "name")
      throw MalformedFan("unknown key \"" + key + "\"");
  if (!j["rank"].is_number_integer() || j["rank"].get<long long>() < 0)
    throw MalformedFan("\"rank\" must be a nonnegative integer");
  const long long rank = j["rank"].get<long long>();
  if (rank > static_cast<long long>(kMaxExteriorRank))
    throw MalformedFan("rank exceeds " + std::to_string(kMaxExteriorRank));
  if (!j["rays"].is_array()) throw MalformedFan("\"rays\" must be an array");
  if (j["rays"].size() > kMaxRays) throw MalformedFan("more than " + std::to_string(kMaxRays) + " rays");
  std::vector<Fan::Vector> rays;
  for (const auto& ray : j["rays"]) {
    if (!ray.is_array() || static_cast<long long>(ray.size()) != rank)
      throw MalformedFan("every ray must be an array of " + std::to_string(rank) + " integers");
    Fan::Vector v;
    for (const auto& x : ray) {
      if (!x.is_number_integer()) throw MalformedFan("ray coordinates must be integers");
      v.emplace_back(x.get<long long>());
    }
    rays.push_back(std::move(v));
  }
  if (!j["max_cones"].is_array()) throw MalformedFan("\"max_cones\" must be an array");
  std::vector<std::vector<int>> cones;
  for (const auto& cone : j["max_cones"]) {
    if (!cone.is_array()) throw MalformedFan("every cone must be an array of ray indices");
    std::vector<int> c;
    for (const auto& x : cone) {
      if (!x.is_number_integer()) throw MalformedFan("ray indices must be integers");
      const long long i = x.get<long long>();
      if (i < 0 || i >= static_cast<long long>(rays.size()))
        throw MalformedFan("ray index " + std::to_string(i) + " out of range");
      if (!c.empty() && i <= c.back()) throw MalformedFan("ray indices must be strictly ascending");
      c.push_back(static_cast<int>(i));
    }
    for (const auto& seen : cones)
      if (seen == c) throw MalformedFan("cone " + Cone{c}.str() + " listed twice");
    cones.push_back(std::move(c));
  }
  return Fan::from_max_cones(static_cast<int>(rank), std::move(rays), cones);
}

inline Fan read_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedFan("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedFan(path + ": " + e.what());
  }
  return fan_from_json(j);
}

inline long long to_int64(const Int& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("integer does not fit in 64 bits");
  return v.convert_to<long long>();
}

/// Writes rays and maximal cones, the inverse of fan_from_json.
inline nlohmann::ordered_json fan_to_json(const Fan& fan) {
  nlohmann::ordered_json j;
  j["rank"] = fan.rank();
  j["rays"] = nlohmann::ordered_json::array();
  for (const auto& ray : fan.rays()) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& x : ray) row.push_back(to_int64(x));
    j["rays"].push_back(std::move(row));
  }
  j["max_cones"] = nlohmann::ordered_json::array();
  for (auto c : fan.maximal_cones()) {
    const auto& rays = fan.cone(c).rays;
    if (rays.size() == 1 || rays.empty()) continue;  // rays are implicit 1-cones
    j["max_cones"].push_back(rays);
  }
  return j;
}

}  // namespace torichom
