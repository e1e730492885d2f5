// Command-line front end.
//
// Exit codes: 0 success, 1 malformed input, 2 invalid fan,
// 3 precondition failure, 4 internal error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torichom/torichom.hpp"

namespace {

using namespace torichom;

struct Options {
  std::string format = "json";
  unsigned jobs = 1;
  std::string fan_file;
  std::string ring = "z";
  bool full_complex = false;
  bool oracle = false;
  std::vector<long long> degs;
  bool conjecture_mode = false;
  std::string out;
  long long modulus = 0;
};

struct ExitError {
  int code;
  std::string message;
};

Ring parse_ring(const std::string& s) {
  if (s == "z" || s == "Z") return Ring::integers();
  if (s.rfind("zmod:", 0) == 0) {
    try {
      const long long m = std::stoll(s.substr(5));
      if (m >= 2) return Ring::mod(Int(m));
    } catch (const std::exception&) {
    }
  }
  throw ExitError{1, "ring must be z or zmod:M with M >= 2"};
}

void emit(const Report& r, const Options& o) {
  if (o.format == "table") std::cout << render_table(r);
  else std::cout << to_json(r).dump(2) << "\n";
}

Report base_report(const std::string& command, const Fan& fan, const Options& o) {
  Report r;
  r.command = command;
  r.source = o.fan_file;
  r.fan = summarize(fan);
  r.provenance.engine = "A(Sigma)";
  return r;
}

int run(const std::string& command, const Options& o) {
  Fan fan;
  try {
    fan = read_fan_file(o.fan_file);
  } catch (const MalformedFan& e) {
    throw ExitError{1, e.what()};
  }
  Report r = base_report(command, fan, o);
  const ValidationReport v = validate(fan);
  r.violations = v.violations;
  if (!v.valid()) {
    r.checks["valid"] = false;
    r.provenance.engine = "validation";
    emit(r, o);
    return 2;
  }

  if (command == "check") {
    r.provenance.engine = "validation";
    r.checks["valid"] = true;
  } else if (command == "cohomology") {
    const Ring ring = parse_ring(o.ring);
    r.provenance.ring = ring.name();
    if (o.full_complex) {
      r.provenance.engine = "full complex";
      r.full_complex_cohomology = cohomology_full_complex(fan, ring, o.jobs);
    } else {
      r.cohomology = cohomology(fan, ring, o.jobs);
    }
  } else if (command == "borel-moore") {
    const Ring ring = parse_ring(o.ring);
    r.provenance.ring = ring.name();
    r.provenance.engine = "C(Sigma)";
    const auto t = bm_homology(fan, ring, o.jobs);
    r.bm_bidegree = t.pq;
    r.borel_moore = t.totals;
    r.checks["totalized_consistent"] = t.consistent();
  } else if (command == "chow") {
    r.provenance.engine = "C(Sigma)";
    r.chow = chow_groups(bm_homology(fan, Ring::integers(), o.jobs));
    if (o.oracle) {
      r.chow_oracle = chow_presentation_oracle(fan);
      r.checks["match"] = *r.chow == *r.chow_oracle;
    }
  } else if (command == "cup") {
    if (o.degs.size() != 4) throw ExitError{1, "cup needs --deg T1 I1 --deg T2 I2"};
    const FanClass fc = classify(fan);
    if (!fc.p1r_subfan && !o.conjecture_mode)
      throw ExitError{3, "fan is not a subfan of (P^1)^r; pass --conjecture-mode to compute anyway"};
    CohomologyAlgebra alg(fan, o.jobs);
    const int top = alg.top_degree();
    auto pick = [&](long long t, long long i) {
      if (t < 0 || t > top) throw ExitError{3, "degree " + std::to_string(t) + " outside 0.." + std::to_string(top)};
      if (i < 0 || static_cast<std::size_t>(i) >= alg.basis(static_cast<int>(t)).size())
        throw ExitError{3, "H^" + std::to_string(t) + " has no generator " + std::to_string(i)};
      return alg.generator(static_cast<int>(t), static_cast<std::size_t>(i));
    };
    const auto a = pick(o.degs[0], o.degs[1]);
    const auto b = pick(o.degs[2], o.degs[3]);
    const CupResult res = alg.cup(a, b, o.conjecture_mode);
    CupEntry e;
    e.degree1 = a.degree;
    e.index1 = static_cast<std::size_t>(o.degs[1]);
    e.degree2 = b.degree;
    e.index2 = static_cast<std::size_t>(o.degs[3]);
    e.degree = res.value.degree;
    if (e.degree <= top) e.group = alg.group(e.degree);
    for (const auto& c : res.value.coords) e.coords.push_back(to_int64(c));
    e.verified = res.verified;
    r.cup = e;
    std::vector<HomologyGroup> table;
    for (int t = 0; t <= top; ++t) table.push_back(alg.group(t));
    r.cohomology = table;
  } else if (command == "duality-check") {
    r.provenance.engine = "A(Sigma) -> C(Sigma)";
    const auto d = duality_check(fan);
    r.checks["bijective"] = d.bijective;
    r.checks["chain_map"] = d.chain_map;
    r.checks["equivariant"] = d.equivariant;
    r.cohomology = cohomology(fan, Ring::integers(), o.jobs);
    r.borel_moore = bm_homology(fan, Ring::integers(), o.jobs).totals;
    bool pd = true;
    const auto n = r.cohomology->size();
    for (std::size_t t = 0; t < n; ++t)
      if (!((*r.cohomology)[t] == (*r.borel_moore)[n - 1 - t])) pd = false;
    r.checks["poincare_duality"] = pd;
  } else if (command == "quasi-iso-check") {
    r.provenance.engine = "A(Sigma) -> full complex";
    const auto q = quasi_iso_report(fan, o.jobs);
    r.cohomology = q.small;
    r.full_complex_cohomology = q.full;
    r.checks["groups_equal"] = q.groups_equal;
    r.checks["inclusion_iso"] = q.inclusion_iso;
  } else if (command == "cox") {
    r.provenance.engine = "cox";
    const Fan c = cox(fan);
    const Json j = fan_to_json(c);
    r.cox_fan = j;
    r.checks["valid"] = validate(c).valid();
    r.checks["arrangement_complement"] = classify(c).arrangement_complement;
    bool same = true;
    for (int p = 0; p <= fan.rank() + 1; ++p)
      if (sr_dimension(fan, p) != sr_dimension(c, p)) same = false;
    r.checks["sr_dimensions_match"] = same;
    if (!o.out.empty()) {
      std::ofstream out(o.out);
      if (!out) throw ExitError{1, "cannot write " + o.out};
      out << j.dump(2) << "\n";
    }
  } else if (command == "cycle-map") {
    if (o.modulus < 2) throw ExitError{1, "--mod must be at least 2"};
    r.provenance.engine = "C(Sigma)";
    r.provenance.ring = Ring::mod(Int(o.modulus)).name();
    const auto c = cycle_map_check(fan, Int(o.modulus));
    r.checks["decomposition"] = c.decomposition_ok;
    for (std::size_t p = 0; p < c.injective.size(); ++p)
      r.checks["injective_p" + std::to_string(p)] = c.injective[p];
    r.checks["cycle_map"] = c.ok();
  }
  emit(r, o);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology, Borel-Moore homology and Chow groups of smooth toric varieties"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--jobs", o.jobs, "Worker threads for independent degrees")->check(CLI::Range(1u, 256u));

  auto fan_arg = [&](CLI::App* sub) {
    sub->add_option("fan", o.fan_file, "Fan file (JSON)")->required();
    // Global options are also accepted after the subcommand.
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    return sub;
  };
  fan_arg(app.add_subcommand("check", "Validate a fan"));
  auto* coh = fan_arg(app.add_subcommand("cohomology", "Cohomology groups"));
  coh->add_option("--ring", o.ring, "z or zmod:M");
  coh->add_flag("--full-complex", o.full_complex, "Use the truncated full complex");
  auto* bm = fan_arg(app.add_subcommand("borel-moore", "Borel-Moore homology"));
  bm->add_option("--ring", o.ring, "z or zmod:M");
  auto* chow = fan_arg(app.add_subcommand("chow", "Chow groups"));
  chow->add_flag("--oracle", o.oracle, "Also compute the generators-and-relations presentation");
  auto* cup = fan_arg(app.add_subcommand("cup", "Product of two generators"));
  cup->add_option("--deg", o.degs, "Degree and generator index")
      ->type_size(2)
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->required();
  cup->add_flag("--conjecture-mode", o.conjecture_mode, "Allow fans outside (P^1)^r; result is unverified");
  fan_arg(app.add_subcommand("duality-check", "Check the duality map A -> C"));
  fan_arg(app.add_subcommand("quasi-iso-check", "Check the inclusion of A into the full complex"));
  auto* cx = fan_arg(app.add_subcommand("cox", "Cox fan"));
  cx->add_option("--out", o.out, "Write the Cox fan to this file");
  auto* cm = fan_arg(app.add_subcommand("cycle-map", "Mod-m cycle map check"));
  cm->add_option("--mod", o.modulus, "Modulus")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const NotP1RSubfan& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
