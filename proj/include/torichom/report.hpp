#pragma once

// Report produced by the command-line tool: fan summary, the requested
// tables, named boolean checks and a provenance block. JSON is the
// canonical form; to_json and from_json are exact inverses.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torichom/exact_linalg.hpp"
#include "torichom/fan.hpp"
#include "torichom/fan_io.hpp"

namespace torichom {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct FanSummary {
  int rank = 0;
  std::size_t ray_count = 0;
  std::vector<std::size_t> cone_counts;  // by dimension
  FanClass classification;
  friend bool operator==(const FanSummary&, const FanSummary&) = default;
};

inline FanSummary summarize(const Fan& fan) {
  return {fan.rank(), fan.ray_count(), fan.cone_counts_by_dim(), classify(fan)};
}

struct Provenance {
  std::string engine;
  std::string ring = "Z";
  std::string version = kToolVersion;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct CupEntry {
  int degree1 = 0;
  std::size_t index1 = 0;
  int degree2 = 0;
  std::size_t index2 = 0;
  int degree = 0;
  HomologyGroup group;
  std::vector<long long> coords;
  bool verified = true;
  friend bool operator==(const CupEntry&, const CupEntry&) = default;
};

struct Report {
  std::string command;
  std::string source;
  FanSummary fan;
  Provenance provenance;
  std::vector<std::string> violations;
  std::optional<std::vector<HomologyGroup>> cohomology;
  std::optional<std::vector<HomologyGroup>> full_complex_cohomology;
  std::optional<std::vector<std::vector<HomologyGroup>>> bm_bidegree;
  std::optional<std::vector<HomologyGroup>> borel_moore;
  std::optional<std::vector<HomologyGroup>> chow;
  std::optional<std::vector<HomologyGroup>> chow_oracle;
  std::optional<CupEntry> cup;
  std::optional<Json> cox_fan;
  std::map<std::string, bool> checks;
  friend bool operator==(const Report&, const Report&) = default;
};

inline Ring ring_from_name(const std::string& name) {
  if (name == "Z") return Ring::integers();
  if (name.rfind("Z/", 0) == 0) return Ring::mod(Int(name.substr(2)));
  throw std::invalid_argument("unknown ring " + name);
}

// ---------------------------------------------------------------------------
// JSON

inline Json group_to_json(const HomologyGroup& g, const Ring& ring) {
  Json j;
  j["group"] = g.str(ring);
  j["free_rank"] = g.free_rank;
  j["torsion"] = Json::array();
  for (const auto& t : g.torsion) j["torsion"].push_back(to_int64(t));
  return j;
}

inline HomologyGroup group_from_json(const Json& j) {
  HomologyGroup g;
  g.free_rank = j.at("free_rank").get<std::size_t>();
  for (const auto& t : j.at("torsion")) g.torsion.emplace_back(t.get<long long>());
  return g;
}

inline Json table_to_json(const std::vector<HomologyGroup>& t, const Ring& ring, const char* index) {
  Json a = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json e;
    e[index] = i;
    e.update(group_to_json(t[i], ring));
    a.push_back(std::move(e));
  }
  return a;
}

inline std::vector<HomologyGroup> table_from_json(const Json& a) {
  std::vector<HomologyGroup> t;
  for (const auto& e : a) t.push_back(group_from_json(e));
  return t;
}

inline Json to_json(const Report& r) {
  const Ring ring = ring_from_name(r.provenance.ring);
  Json j;
  j["command"] = r.command;
  j["source"] = r.source;
  Json fan;
  fan["rank"] = r.fan.rank;
  fan["ray_count"] = r.fan.ray_count;
  fan["cone_counts"] = r.fan.cone_counts;
  fan["classification"] = {{"complete", r.fan.classification.complete},
                           {"p1r_subfan", r.fan.classification.p1r_subfan},
                           {"arrangement_complement", r.fan.classification.arrangement_complement}};
  j["fan"] = std::move(fan);
  j["provenance"] = {{"engine", r.provenance.engine},
                     {"ring", r.provenance.ring},
                     {"version", r.provenance.version}};
  j["violations"] = r.violations;
  if (r.cohomology) j["cohomology"] = table_to_json(*r.cohomology, ring, "degree");
  if (r.full_complex_cohomology)
    j["full_complex_cohomology"] = table_to_json(*r.full_complex_cohomology, ring, "degree");
  if (r.bm_bidegree) {
    Json a = Json::array();
    for (std::size_t p = 0; p < r.bm_bidegree->size(); ++p)
      for (std::size_t q = 0; q < (*r.bm_bidegree)[p].size(); ++q) {
        Json e;
        e["p"] = p;
        e["q"] = q;
        e.update(group_to_json((*r.bm_bidegree)[p][q], ring));
        a.push_back(std::move(e));
      }
    j["bm_bidegree"] = std::move(a);
  }
  if (r.borel_moore) j["borel_moore"] = table_to_json(*r.borel_moore, ring, "degree");
  if (r.chow) j["chow"] = table_to_json(*r.chow, Ring::integers(), "dimension");
  if (r.chow_oracle) j["chow_oracle"] = table_to_json(*r.chow_oracle, Ring::integers(), "dimension");
  if (r.cup) {
    const auto& c = *r.cup;
    Json e;
    e["degree1"] = c.degree1;
    e["index1"] = c.index1;
    e["degree2"] = c.degree2;
    e["index2"] = c.index2;
    e["degree"] = c.degree;
    e["group"] = group_to_json(c.group, Ring::integers());
    e["coords"] = c.coords;
    e["verified"] = c.verified;
    e["label"] = c.verified ? "verified" : "UNVERIFIED";
    j["cup"] = std::move(e);
  }
  if (r.cox_fan) j["cox_fan"] = *r.cox_fan;
  Json checks = Json::object();
  for (const auto& [k, v] : r.checks) checks[k] = v;
  j["checks"] = std::move(checks);
  return j;
}

inline Report report_from_json(const Json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.source = j.at("source").get<std::string>();
  const auto& fan = j.at("fan");
  r.fan.rank = fan.at("rank").get<int>();
  r.fan.ray_count = fan.at("ray_count").get<std::size_t>();
  r.fan.cone_counts = fan.at("cone_counts").get<std::vector<std::size_t>>();
  const auto& cls = fan.at("classification");
  r.fan.classification.complete = cls.at("complete").get<bool>();
  r.fan.classification.p1r_subfan = cls.at("p1r_subfan").get<bool>();
  r.fan.classification.arrangement_complement = cls.at("arrangement_complement").get<bool>();
  const auto& prov = j.at("provenance");
  r.provenance.engine = prov.at("engine").get<std::string>();
  r.provenance.ring = prov.at("ring").get<std::string>();
  r.provenance.version = prov.at("version").get<std::string>();
  r.violations = j.at("violations").get<std::vector<std::string>>();
  if (j.contains("cohomology")) r.cohomology = table_from_json(j["cohomology"]);
  if (j.contains("full_complex_cohomology"))
    r.full_complex_cohomology = table_from_json(j["full_complex_cohomology"]);
  if (j.contains("bm_bidegree")) {
    std::vector<std::vector<HomologyGroup>> t;
    for (const auto& e : j["bm_bidegree"]) {
      const auto p = e.at("p").get<std::size_t>();
      const auto q = e.at("q").get<std::size_t>();
      if (t.size() <= p) t.resize(p + 1);
      if (t[p].size() <= q) t[p].resize(q + 1);
      t[p][q] = group_from_json(e);
    }
    r.bm_bidegree = std::move(t);
  }
  if (j.contains("borel_moore")) r.borel_moore = table_from_json(j["borel_moore"]);
  if (j.contains("chow")) r.chow = table_from_json(j["chow"]);
  if (j.contains("chow_oracle")) r.chow_oracle = table_from_json(j["chow_oracle"]);
  if (j.contains("cup")) {
    const auto& e = j["cup"];
    CupEntry c;
    c.degree1 = e.at("degree1").get<int>();
    c.index1 = e.at("index1").get<std::size_t>();
    c.degree2 = e.at("degree2").get<int>();
    c.index2 = e.at("index2").get<std::size_t>();
    c.degree = e.at("degree").get<int>();
    c.group = group_from_json(e.at("group"));
    c.coords = e.at("coords").get<std::vector<long long>>();
    c.verified = e.at("verified").get<bool>();
    r.cup = std::move(c);
  }
  if (j.contains("cox_fan")) r.cox_fan = j["cox_fan"];
  for (const auto& [k, v] : j.at("checks").items()) r.checks[k] = v.get<bool>();
  return r;
}

// ---------------------------------------------------------------------------
// Aligned text

namespace detail {

inline void print_rows(std::ostringstream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  auto display_width = [](const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
      if ((c & 0xC0) != 0x80) ++n;  // count UTF-8 code points
    return n;
  };
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], display_width(row[i]));
    }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - display_width(row[i]) + 2, ' ');
    }
    out << line << "\n";
  }
}

inline void print_table(std::ostringstream& out, const std::string& title, const char* index,
                        const std::vector<HomologyGroup>& t, const Ring& ring) {
  out << "\n" << title << "\n";
  std::vector<std::vector<std::string>> rows{{index, "group"}};
  for (std::size_t i = 0; i < t.size(); ++i) rows.push_back({std::to_string(i), t[i].str(ring)});
  print_rows(out, rows);
}

}  // namespace detail

inline std::string render_table(const Report& r) {
  const Ring ring = ring_from_name(r.provenance.ring);
  std::ostringstream out;
  const auto& c = r.fan.classification;
  out << r.command << " " << r.source << "\n";
  out << "rank " << r.fan.rank << ", " << r.fan.ray_count << " rays, cones by dimension [";
  for (std::size_t i = 0; i < r.fan.cone_counts.size(); ++i) out << (i ? ", " : "") << r.fan.cone_counts[i];
  out << "]\n";
  out << "complete " << (c.complete ? "yes" : "no") << ", (P^1)^r subfan "
      << (c.p1r_subfan ? "yes" : "no") << ", arrangement complement "
      << (c.arrangement_complement ? "yes" : "no") << "\n";
  out << "engine " << r.provenance.engine << ", ring " << r.provenance.ring << ", version "
      << r.provenance.version << "\n";
  if (!r.violations.empty()) {
    out << "\nviolations\n";
    for (const auto& v : r.violations) out << "  " << v << "\n";
  }
  if (r.cohomology) detail::print_table(out, "cohomology", "degree", *r.cohomology, ring);
  if (r.full_complex_cohomology)
    detail::print_table(out, "cohomology (full complex)", "degree", *r.full_complex_cohomology, ring);
  if (r.bm_bidegree) {
    out << "\nBorel-Moore homology by bidegree (rows p, columns q)\n";
    std::vector<std::vector<std::string>> rows{{"p\\q"}};
    for (std::size_t q = 0; q < r.bm_bidegree->size(); ++q) rows[0].push_back(std::to_string(q));
    for (std::size_t p = 0; p < r.bm_bidegree->size(); ++p) {
      std::vector<std::string> row{std::to_string(p)};
      for (const auto& g : (*r.bm_bidegree)[p]) row.push_back(g.str(ring));
      rows.push_back(std::move(row));
    }
    detail::print_rows(out, rows);
  }
  if (r.borel_moore) detail::print_table(out, "Borel-Moore homology", "degree", *r.borel_moore, ring);
  if (r.chow) detail::print_table(out, "Chow groups", "dimension", *r.chow, Ring::integers());
  if (r.chow_oracle)
    detail::print_table(out, "Chow groups (presentation)", "dimension", *r.chow_oracle, Ring::integers());
  if (r.cup) {
    const auto& e = *r.cup;
    out << "\nproduct of generator " << e.index1 << " in degree " << e.degree1 << " and generator "
        << e.index2 << " in degree " << e.degree2 << "\n";
    out << "degree " << e.degree << ", group " << e.group.str() << ", coordinates [";
    for (std::size_t i = 0; i < e.coords.size(); ++i) out << (i ? ", " : "") << e.coords[i];
    out << "]" << (e.verified ? "" : "  UNVERIFIED") << "\n";
  }
  if (r.cox_fan) out << "\ncox fan\n" << r.cox_fan->dump() << "\n";
  if (!r.checks.empty()) {
    out << "\nchecks\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : r.checks) rows.push_back({"  " + k, v ? "true" : "false"});
    detail::print_rows(out, rows);
  }
  return out.str();
}

}  // namespace torichom
