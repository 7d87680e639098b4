// dnormal: analyze point sets, build strict double-normal constructions,
// run the lemma checks and prune near-collinear classes.
//
// Every command prints one JSON report on stdout. Exit codes:
//   0 ok, 1 property violation, 2 usage or format error, 3 duplicate points,
//   4 subset filtering shortfall, 5 eps budget exhausted, 6 betweenness.

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dnormal/constructions.hpp"
#include "dnormal/io.hpp"
#include "dnormal/lemmas.hpp"
#include "dnormal/pair_analysis.hpp"
#include "dnormal/pruning.hpp"

using namespace dnormal;
using nlohmann::json;

namespace {

enum Exit : int {
  kOk = 0,
  kViolation = 1,
  kUsage = 2,
  kDuplicates = 3,
  kShortfall = 4,
  kEpsBudget = 5,
  kBetweenness = 6,
};

// Raised when an internal verification fails.
struct Violation {
  std::string what;
};

json tolerance_json(const Tolerance& t) {
  return {{"mode", t.is_exact() ? "exact" : "floating"},
          {"eq_margin", t.eq_margin},
          {"scale_relative", t.scale_relative}};
}

json edge_json(const Edge& e) { return {{"i", e.i}, {"j", e.j}, {"class", to_string(e.cls)}}; }

json suite_json(const SuiteResult& s) {
  return {{"lemma", s.lemma},
          {"accepted", s.accepted},
          {"vacuous", s.vacuous},
          {"violations", s.violations},
          {"worst_ratio", s.worst_ratio},
          {"worst_context", s.worst.context},
          {"vacuous_reasons", s.vacuous_reasons},
          {"ok", s.ok()}};
}

GraphOptions graph_options(const std::string& strategy) {
  GraphOptions o;
  o.strategy = strategy == "witness" ? GraphStrategy::witness_first : GraphStrategy::brute_force;
  o.threads = threads_from_environment();
  return o;
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  double tol = 1e-9;
  bool exact = false;
  std::string edges_out;
  std::string strategy = "brute";
};

json run_analyze(const AnalyzeArgs& a) {
  const PointSetFile f = read_point_set(a.input);
  const PointSet v = f.point_set();
  const Tolerance tol = a.exact ? Tolerance::exact() : Tolerance::floating(a.tol);
  tol.validate();
  const GraphOptions opt = graph_options(a.strategy);

  const PairGraph g = double_normal_graph(v, tol, opt);
  const auto diam = diameter_pairs(v, tol);
  const std::size_t n = v.size();

  json r;
  r["input"] = a.input;
  r["tolerance"] = tolerance_json(tol);
  r["dim"] = v.dim();
  r["n"] = n;
  r["N"] = g.double_normal_count;
  r["N_strict"] = g.strict_count;
  r["diameter_pairs"] = diam.size();
  r["density_ratio"] = n > 0 ? double(g.double_normal_count) / (double(n) * double(n) / 2.0) : 0.0;
  json turan = json::array();
  for (std::size_t k = 1; k <= std::max<std::size_t>(1, v.dim() - 1); ++k) {
    turan.push_back({{"k", k}, {"edges", 0.5 * (1.0 - 1.0 / double(k)) * double(n) * double(n)}});
  }
  r["turan_curve"] = turan;

  if (f.classes) {
    const MultipartiteReport m = verify_complete_multipartite(v, *f.classes, true, tol, opt);
    json missing = json::array();
    for (std::size_t e = 0; e < std::min<std::size_t>(m.missing.size(), 20); ++e) {
      missing.push_back(edge_json(m.missing[e]));
    }
    r["classes"] = {{"count", f.classes->size()},
                    {"cross_pairs", m.cross_pairs},
                    {"strict_complete_multipartite", m.ok},
                    {"missing_count", m.missing.size()},
                    {"missing", missing},
                    {"parts_equal_dim", m.ok && f.classes->size() == v.dim()}};
  }
  if (!a.edges_out.empty()) {
    write_atomic(a.edges_out, edges_tsv(g));
    r["edges_out"] = a.edges_out;
  }
  return r;
}

// --- construct --------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  std::size_t n_per_class = 4;
  std::uint64_t rng_seed = 1;
  double eps = 0.1;
  std::size_t dim = 3;
  double tol = 1e-9;
  bool midpoint = false;
  std::string out;
};

json lift_json(const LiftResult& l) {
  json radii = json::array(), arcs = json::array();
  for (const auto& c : l.state.classes) {
    radii.push_back(c.radius);
    arcs.push_back(c.arc);
  }
  const EpsBreakdown& e = l.state.initial;
  return {{"eps", l.state.eps},
          {"halvings", l.state.halvings},
          {"eps_initial",
           {{"interval", e.interval}, {"slab", e.slab}, {"spacing", e.spacing}, {"arc", e.arc}, {"eps", e.eps}}},
          {"radii", radii},
          {"arc_parameters", arcs}};
}

json run_construct(const ConstructArgs& a, const CLI::App& sub) {
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  auto forbid = [&](std::initializer_list<const char*> names) {
    for (const char* nm : names) {
      if (given(nm)) throw InvalidArgument(std::string(nm) + " is not valid for kind " + a.kind);
    }
  };
  const Tolerance tol = Tolerance::floating(a.tol);
  tol.validate();
  const GraphOptions opt = graph_options("brute");
  const LiftParams params = a.midpoint ? LiftParams::midpoint() : LiftParams{};

  json r;
  r["kind"] = a.kind;
  r["tolerance"] = tolerance_json(tol);
  PointSetFile file;
  json prov;
  prov["kind"] = a.kind;

  if (a.kind == "simplex" || a.kind == "subsets") {
    forbid({"--k", "--eps", "--dim"});
    Seed seed;
    if (a.kind == "simplex") {
      forbid({"--d", "--rng-seed"});
      if (!given("--m")) throw InvalidArgument("construct simplex needs --m");
      seed = simplex_seed(a.m);
      prov["m"] = a.m;
    } else {
      if (!given("--d")) throw InvalidArgument("construct subsets needs --d");
      if (a.d < 4) throw InvalidArgument("construct subsets needs --d >= 4");
      const SubsetSeedResult s = subset_seed(a.d, a.rng_seed, a.m);
      json fam = json::array();
      for (const Subset& x : s.family.sets) fam.push_back(x.to_string());
      r["family"] = fam;
      r["survivors"] = s.survivors;
      r["bad_triples"] = s.bad_triples.size();
      prov["d"] = a.d;
      prov["m"] = s.m;
      prov["rng_seed"] = a.rng_seed;
      if (!s.exact_seed) {
        throw FilteringShortfall(std::to_string(s.survivors.size()) + " of " + std::to_string(s.m) +
                                 " required sets survived; retry with another --rng-seed");
      }
      r["exact_seed_verification"] = {{"ok", s.report.ok},
                                      {"min_acute_margin", s.report.min_acute_margin},
                                      {"min_cond_gap", s.report.min_cond_gap}};
      if (!s.report.ok) throw Violation{"exact seed verification failed"};
      seed = s.require_seed();
    }
    const SeedReport sr = verify_seed(seed, tol);
    r["seed_verification"] = {
        {"ok", sr.ok}, {"min_acute_margin", sr.min_acute_margin}, {"min_cond_gap", sr.min_cond_gap}};
    const LiftResult l = lift(seed, a.n_per_class, tol, params, opt);
    // Independent re-check of the written set before claiming success.
    const MultipartiteReport check = verify_complete_multipartite(l.points, l.classes, true, tol, opt);
    r["lift"] = lift_json(l);
    r["verification"] = {{"strict_complete_multipartite", check.ok},
                         {"cross_pairs", check.cross_pairs},
                         {"missing_count", check.missing.size()}};
    r["within_class"] = {{"double_normal", l.within_double_normal}, {"strict", l.within_strict}};
    if (!check.ok) throw Violation{"lift output failed strict verification"};

    file.dim = l.points.dim();
    file.points = l.points.points();
    file.classes = l.classes;
    prov["n_per_class"] = a.n_per_class;
    prov["policy"] = a.midpoint ? "midpoint" : "default";
    prov["eps"] = l.state.eps;
    prov["halvings"] = l.state.halvings;
    prov["radii"] = r["lift"]["radii"];
    prov["verified_strict_multipartite"] = true;
  } else {
    forbid({"--m", "--d", "--n-per-class", "--midpoint"});
    if (!given("--k")) throw InvalidArgument("construct near-collinear needs --k");
    const auto classes = gen_near_collinear(a.k, a.eps, a.rng_seed, a.dim);
    file.dim = a.dim;
    file.classes.emplace();
    for (const auto& c : classes) {
      std::vector<std::size_t> idx;
      for (const Point& p : c.points) {
        idx.push_back(file.points.size());
        file.points.push_back(p);
      }
      file.classes->push_back(std::move(idx));
    }
    json angles = json::array();
    for (const auto& c : classes) angles.push_back(max_line_angle(c.points));
    r["max_line_angle"] = angles;
    r["class_size"] = classes.front().points.size();
    prov["k"] = a.k;
    prov["eps"] = a.eps;
    prov["rng_seed"] = a.rng_seed;
    prov["verified_strict_multipartite"] = false;
  }
  r["dim"] = file.dim;
  r["n"] = file.points.size();
  r["parts"] = file.classes->size();
  file.provenance = prov;
  if (!a.out.empty()) {
    write_point_set(a.out, file);
    r["out"] = a.out;
  }
  return r;
}

// --- lemmas -----------------------------------------------------------------

struct LemmaArgs {
  std::string suite;
  std::size_t trials = 100000;
  std::size_t dmax = 0;
  std::uint64_t rng_seed = 1;
};

json run_lemmas(const LemmaArgs& a, bool& violated) {
  json r;
  r["suite"] = a.suite;
  r["trials"] = a.trials;
  r["rng_seed"] = a.rng_seed;
  const bool all = a.suite == "all";
  auto record = [&](const SuiteResult& s) {
    if (!s.ok()) violated = true;
    r["results"].push_back(suite_json(s));
  };
  if (all || a.suite == "ipr") record(run_ipr_suite(a.trials, a.rng_seed));
  if (all || a.suite == "dn") {
    record(run_dn1_suite(a.trials, a.rng_seed));
    record(run_dn2_suite(a.trials, a.rng_seed));
    record(run_dn3_suite(a.trials, a.rng_seed));
  }
  if (all || a.suite == "perp") {
    const std::size_t dmax = a.dmax ? a.dmax : 64;
    json rows = json::array();
    bool ok = true;
    for (std::size_t d = 1; d <= dmax; ++d) {
      const BigInt count = perp_triple_count_exact(d);
      const BigInt six = boost::multiprecision::pow(BigInt(6), static_cast<unsigned>(d));
      const BigRational ratio(count, boost::multiprecision::pow(BigInt(8), static_cast<unsigned>(d)));
      const bool row_ok =
          count == six && ratio == BigRational(boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(d)),
                                               boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(d)));
      ok = ok && row_ok;
      rows.push_back({{"d", d},
                      {"count", count.str()},
                      {"method", d <= 5 ? "enumeration" : "product"},
                      {"ratio", to_double(ratio)},
                      {"ok", row_ok}});
    }
    if (!ok) violated = true;
    r["perp"] = {{"dmax", dmax}, {"ok", ok}, {"table", rows}};
  }
  if (all || a.suite == "condprob") {
    const std::size_t dmax = a.dmax ? a.dmax : 200;
    const auto sweep = bad_prob_sweep(dmax);
    json rows = json::array();
    bool ok = bad_prob_exact(1) == BigRational(1, 2);
    if (dmax >= 2) ok = ok && bad_prob_exact(2) == BigRational(3, 8);
    for (std::size_t d = 1; d <= dmax; ++d) {
      const bool row_ok = bad_prob_within_bound(sweep[d - 1], d);
      ok = ok && row_ok;
      rows.push_back({{"d", d},
                      {"p", to_double(sweep[d - 1])},
                      {"bound", std::pow(65.0 / 72.0, double(d))},
                      {"ok", row_ok}});
    }
    if (!ok) violated = true;
    r["condprob"] = {{"dmax", dmax}, {"ok", ok}, {"table", rows}};
  }
  return r;
}

// --- prune ------------------------------------------------------------------

struct PruneArgs {
  std::string input;
  double eps = 0.0;
  std::string witness_out;
};

json run_prune(const PruneArgs& a, bool& violated) {
  const PointSetFile f = read_point_set(a.input);
  if (!f.classes) throw FormatError("prune needs a file with classes");
  std::vector<NearCollinearClass> classes;
  for (const auto& idx : *f.classes) {
    NearCollinearClass c;
    c.eps = a.eps;
    for (std::size_t i : idx) c.points.push_back(f.points[i]);
    classes.push_back(std::move(c));
  }
  const PruneWitness w = prune(classes, a.eps);
  for (const auto& c : classes) {
    if (!(max_line_angle(c.points) < a.eps)) {
      throw BetweennessInconsistent("a class violates the line-angle precondition");
    }
  }
  const WitnessCheck check = check_witness(w.points, a.eps);
  bool sizes_ok = true;
  for (std::size_t i = 0; i < w.iteration_sizes.size(); ++i) {
    for (std::size_t s : w.iteration_sizes[i]) {
      sizes_ok = sizes_ok && s == prune_class_size(w.t, classes.size() - 1 - i);
    }
  }

  json per = json::array();
  for (std::size_t i = 0; i < w.abc.size(); ++i) {
    const auto& idx = (*f.classes)[w.class_order[i]];
    std::vector<std::size_t> pruned;
    for (std::size_t x : w.pruned[i]) pruned.push_back(idx[x]);
    per.push_back({{"position", i},
                   {"class", w.class_order[i]},
                   {"a", idx[w.abc[i][0]]},
                   {"b", idx[w.abc[i][1]]},
                   {"c", idx[w.abc[i][2]]},
                   {"pruned", pruned}});
  }
  json witness = {{"eps", a.eps},
                  {"t", w.t},
                  {"classes", per},
                  {"iteration_sizes", w.iteration_sizes},
                  {"check",
                   {{"q2", check.q2},
                    {"q3", check.q3},
                    {"q4", check.q4},
                    {"min_angle", check.min_angle},
                    {"max_ratio", check.max_ratio},
                    {"min_factor", check.min_factor},
                    {"iteration_sizes", sizes_ok}}}};
  if (!check.ok() || !sizes_ok) violated = true;
  if (!a.witness_out.empty() && !violated) write_atomic(a.witness_out, witness.dump(1) + "\n");

  json r;
  r["input"] = a.input;
  r["witness"] = witness;
  if (!a.witness_out.empty()) r["witness_out"] = a.witness_out;
  return r;
}

// --- bound ------------------------------------------------------------------

json run_bound(const std::vector<std::uint64_t>& ds) {
  json rows = json::array();
  for (std::uint64_t d : ds) {
    const Corollary2 c = corollary2_m(d);
    rows.push_back({{"d", c.d},
                    {"n", c.n},
                    {"bound", c.bound},
                    {"applicable", c.applicable},
                    {"closed_form", c.closed_form}});
  }
  return {{"table", rows}};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const DuplicatePoints*>(&e) || dynamic_cast<const CoincidentPoints*>(&e)) return kDuplicates;
  if (dynamic_cast<const FilteringShortfall*>(&e)) return kShortfall;
  if (dynamic_cast<const EpsilonBudgetExhausted*>(&e)) return kEpsBudget;
  if (dynamic_cast<const BetweennessInconsistent*>(&e) || dynamic_cast<const NoQualifyingWindow*>(&e)) {
    return kBetweenness;
  }
  if (dynamic_cast<const FormatError*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
      dynamic_cast<const ClassSizeMismatch*>(&e) || dynamic_cast<const DimensionMismatch*>(&e)) {
    return kUsage;
  }
  return kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-normal pairs: analysis, constructions, lemma checks and pruning"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Classify every pair of a point-set file");
  analyze->add_option("input", an.input, "Point-set JSON file")->required();
  analyze->add_option("--tol", an.tol, "Floating equality margin (relative)")->capture_default_str();
  analyze->add_flag("--exact", an.exact, "Exact integer arithmetic");
  analyze->add_option("--edges-out", an.edges_out, "Write the edge list as TSV");
  analyze->add_option("--strategy", an.strategy, "Graph strategy")
      ->check(CLI::IsMember({"brute", "witness"}))
      ->capture_default_str();

  ConstructArgs co;
  auto* construct = app.add_subcommand("construct", "Build and verify a construction");
  construct->add_option("kind", co.kind, "simplex | subsets | near-collinear")
      ->required()
      ->check(CLI::IsMember({"simplex", "subsets", "near-collinear"}));
  construct->add_option("--m", co.m, "Number of classes (subsets: 0 = formula)");
  construct->add_option("--d", co.d, "Ground-set size for subsets");
  construct->add_option("--k", co.k, "Number of near-collinear classes");
  construct->add_option("--n-per-class", co.n_per_class, "Points per class")->capture_default_str();
  construct->add_option("--rng-seed", co.rng_seed, "Random seed")->capture_default_str();
  construct->add_option("--eps", co.eps, "Line-angle bound for near-collinear classes");
  construct->add_option("--dim", co.dim, "Ambient dimension for near-collinear classes");
  construct->add_option("--tol", co.tol, "Floating equality margin (relative)")->capture_default_str();
  construct->add_flag("--midpoint", co.midpoint, "Midpoint lift policy");
  construct->add_option("--out", co.out, "Output point-set file");

  LemmaArgs le;
  auto* lemmas = app.add_subcommand("lemmas", "Run the lemma checks");
  lemmas->add_option("suite", le.suite, "ipr | dn | perp | condprob | all")
      ->required()
      ->check(CLI::IsMember({"ipr", "dn", "perp", "condprob", "all"}));
  lemmas->add_option("--trials", le.trials, "Accepted instances per randomized lemma")->capture_default_str();
  lemmas->add_option("--dmax", le.dmax, "Largest d for perp and condprob tables");
  lemmas->add_option("--rng-seed", le.rng_seed, "Random seed")->capture_default_str();

  PruneArgs pr;
  auto* prune_cmd = app.add_subcommand("prune", "Prune near-collinear classes to a witness");
  prune_cmd->add_option("input", pr.input, "Point-set JSON file with classes")->required();
  prune_cmd->add_option("--eps", pr.eps, "Line-angle bound, below pi/3")->required();
  prune_cmd->add_option("--witness-out", pr.witness_out, "Write the witness JSON");

  std::vector<std::uint64_t> bound_d{100, 1000, 10000, 100000, 1000000};
  auto* bound = app.add_subcommand("bound", "Tabulate the lower bound d - n - 1");
  bound->add_option("--d", bound_d, "Dimensions to tabulate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  json report;
  std::string echo;
  for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);
  report["command"] = echo;
  const auto t0 = std::chrono::steady_clock::now();
  int rc = kOk;
  bool violated = false;
  try {
    if (*analyze) {
      report["result"] = run_analyze(an);
    } else if (*construct) {
      report["result"] = run_construct(co, *construct);
    } else if (*lemmas) {
      report["result"] = run_lemmas(le, violated);
    } else if (*prune_cmd) {
      report["result"] = run_prune(pr, violated);
    } else if (*bound) {
      report["result"] = run_bound(bound_d);
    }
    if (violated) rc = kViolation;
  } catch (const Violation& v) {
    rc = kViolation;
    report["error"] = v.what;
  } catch (const std::exception& e) {
    rc = exit_code_for(e);
    report["error"] = e.what();
  }
  report["status"] = rc == kOk ? "ok" : "failed";
  report["exit_code"] = rc;
  report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << report.dump(2) << "\n";
  if (report.contains("error")) std::cerr << "dnormal: " << report["error"].get<std::string>() << "\n";
  return rc;
}
