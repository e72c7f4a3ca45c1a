#include "sea/cli/commands.hpp"

#include "sea/cli/document.hpp"
#include "sea/cli/report_writer.hpp"
#include "sea/error.hpp"
#include "sea/search.hpp"
#include "sea/sequential.hpp"
#include "sea/structure.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <optional>
#include <sstream>

namespace sea::cli {

namespace {

struct CommonOptions {
  std::string path;
  std::size_t budget = SeaCheckConfig{}.sample_budget;
  std::uint64_t seed = kDefaultSeed;
  bool timing = false;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("model", o.path, "Model document (JSON)")->required();
  sub->add_option("--budget", o.budget, "Sample size for parametric carriers")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "Seed of the deterministic sampler");
  sub->add_flag("--timing", o.timing, "Print elapsed time to stderr");
}

SeaCheckConfig config_of(const CommonOptions& o) {
  SeaCheckConfig cfg;
  cfg.sample_budget = o.budget;
  cfg.seed = o.seed;
  validate(cfg);
  return cfg;
}

std::string join(const std::vector<Elem>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
  return s + ")";
}

std::string join(const std::vector<Index>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", #" : "#") + std::to_string(xs[i]);
  return s + ")";
}

template <class W>
void write_report(ReportWriter& w, const std::string& key, const ValidationReport<W>& r) {
  w.begin(key);
  w.field("status", r.ok() ? "pass" : "fail");
  w.field("instances", r.instances_checked());
  if (!r.violations().empty()) {
    w.begin("violations");
    for (const auto& v : r.violations()) {
      std::string line = v.axiom + " at " + join(v.witness);
      if (!v.detail.empty()) line += ": " + v.detail;
      w.item(line);
    }
    w.end();
  }
  if (!r.notes().empty()) {
    w.begin("notes");
    for (const auto& n : r.notes()) w.item(n);
    w.end();
  }
  w.end();
}

void write_members(ReportWriter& w, const SubalgebraClosure& c) {
  w.field("description", c.description);
  w.field("enumerated", c.enumerated);
  w.begin(c.enumerated ? "members" : "representatives");
  for (const auto& e : c.members) w.item(to_string(e));
  w.end();
  w.begin("closed_under");
  w.field("sum", c.closed_under.sum);
  w.field("complement", c.closed_under.complement);
  w.field("product", c.closed_under.product);
  w.end();
  w.field("sampled", c.sampled);
}

std::string table_text(const ProductTable& t) {
  std::string s = "[";
  for (Index a = 0; a < t.size; ++a) {
    s += a ? ", [" : "[";
    for (Index b = 0; b < t.size; ++b) s += (b ? "," : "") + std::to_string(t(a, b));
    s += "]";
  }
  return s + "]";
}

std::string ms_since(std::chrono::steady_clock::time_point start) {
  auto d = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return std::to_string(d.count());
}

// check

struct CheckOptions : CommonOptions {
  bool require_monoid = false;
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
  const ModelExpr m = load_document(o.path).model;
  const SeaCheckConfig cfg = config_of(o);
  ReportWriter w(out);
  w.field("command", "check");
  w.field("model", to_string(m));
  w.field("seed", o.seed);

  bool pass = true;
  if (m.kind() == ModelExpr::Kind::Finite) {
    w.field("elements", std::to_string(m.table().size()) + " (exhaustive)");
    EaReport ea = check_ea_axioms(m.table());
    write_report(w, "effect_algebra", ea);
    pass = pass && ea.ok();
  } else {
    ElementSample sample = elements_for(m, cfg);
    w.field("elements", std::to_string(sample.elems.size()) + (sample.exhaustive ? " (exhaustive)" : " (sampled)"));
    ModelReport ea = check_model_ea_axioms(m, sample.elems, sample.exhaustive);
    write_report(w, "effect_algebra", ea);
    pass = pass && ea.ok();
  }

  if (!has_product(m)) {
    w.field("sequential_product", "absent");
    w.field("effect_monoid", "absent");
  } else if (!pass) {
    w.field("sequential_product", "skipped (effect algebra invalid)");
    w.field("effect_monoid", "skipped (effect algebra invalid)");
  } else {
    ModelReport sea = check_sea_axioms(m, cfg);
    write_report(w, "sequential_product", sea);
    pass = pass && sea.ok();

    EffectMonoidReport mon = check_effect_monoid(m, cfg);
    write_report(w, "effect_monoid", mon.report);
    w.begin("effect_monoid_facts");
    w.field("required", o.require_monoid);
    w.field("commutative", mon.commutative);
    if (!mon.commutativity_witness.empty()) w.field("commutativity_witness", join(mon.commutativity_witness));
    w.field("zero_symmetric", mon.zero_symmetric);
    w.field("zero_divisor_free", mon.zero_divisor_free);
    if (!mon.zero_divisor_witness.empty()) w.field("zero_divisor_witness", join(mon.zero_divisor_witness));
    w.end();
    if (o.require_monoid) pass = pass && mon.ok();
  }
  w.field("status", pass ? "pass" : "fail");
  return pass ? kExitPass : kExitPropertyFailure;
}

// search

struct SearchOptions : CommonOptions {
  std::string axioms = "sea";
  std::optional<std::size_t> max;
  bool canonical = false;
  std::size_t bound = kDefaultSearchBound;
};

int cmd_search(const SearchOptions& o, std::ostream& out) {
  const ModelExpr m = load_document(o.path).model;
  if (!carrier_size(m)) throw Unsupported("search requires finite model");
  if (*carrier_size(m) > o.bound) {
    throw InputError("search is limited to tables with at most " + std::to_string(o.bound) + " elements; got " +
                     std::to_string(*carrier_size(m)));
  }
  const FiniteCarrier carrier = to_finite_carrier(m, o.bound);

  SearchProblem p{.ea = carrier.table};
  p.axiom_set = o.axioms == "monoid"      ? AxiomSet::EffectMonoid
                : o.axioms == "monoid-s3" ? AxiomSet::EffectMonoidWithS3
                                          : AxiomSet::SeaS1S5;
  p.max_solutions = o.max;
  p.canonicalize = o.canonical;
  p.size_bound = o.bound;
  const SearchResult r = search_products(p);

  ReportWriter w(out);
  w.field("command", "search");
  w.field("model", to_string(m));
  w.field("axioms", to_string(p.axiom_set));
  w.field("size", carrier.table.size());

  const auto meet = meet_table(carrier.table);
  const bool all_meet = !r.solutions.empty() && meet &&
                        std::all_of(r.solutions.begin(), r.solutions.end(), [&](const ProductTable& t) { return t == *meet; });
  w.field("solutions", std::to_string(r.solutions.size()) + (all_meet ? " (meet)" : ""));
  w.field("truncated", r.truncated);
  w.field("boolean_verdict", r.boolean_verdict.boolean() ? std::string("true")
                                                         : "false (" + r.boolean_verdict.reason + ")");
  w.field("nodes", r.node_count);
  w.field("pruned", r.pruned_count);
  if (carrier.labels.size() == carrier.table.size() && m.kind() != ModelExpr::Kind::Finite) {
    w.begin("labels");
    for (Index i = 0; i < carrier.labels.size(); ++i) w.item("#" + std::to_string(i) + " = " + to_string(carrier.labels[i]));
    w.end();
  }
  if (!r.solutions.empty()) {
    w.begin("tables");
    for (std::size_t i = 0; i < r.solutions.size(); ++i) {
      std::string line = table_text(r.solutions[i]);
      if (i < r.zero_symmetric.size()) line += r.zero_symmetric[i] ? " zero-symmetric" : " not zero-symmetric";
      w.item(line);
    }
    w.end();
  }

  // A SEA on a finite table exists only on Boolean algebras, and then it is the meet.
  bool consistent = true;
  if (p.axiom_set == AxiomSet::SeaS1S5 && !r.truncated) {
    consistent = r.solutions.empty() ? !r.boolean_verdict.boolean() : (r.boolean_verdict.boolean() && all_meet);
  }
  w.field("status", consistent ? "pass" : "fail");
  return consistent ? kExitPass : kExitPropertyFailure;
}

// decompose

int cmd_decompose(const CommonOptions& o, std::ostream& out) {
  const ModelExpr m = load_document(o.path).model;
  const DecompositionReport d = decompose(m, config_of(o));
  ReportWriter w(out);
  w.field("command", "decompose");
  w.field("model", to_string(m));
  w.field("seed", o.seed);
  w.begin("leaves");
  for (const auto& [name, cls] : d.leaves) w.item(name + ": " + to_string(cls));
  w.end();
  w.begin("blocks");
  w.field("boolean", to_string(d.boolean_block));
  w.field("convex", to_string(d.convex_block));
  w.field("purely_aconvex", to_string(d.aconvex_block));
  w.end();
  w.begin("witnesses");
  w.field("boolean", to_string(d.p_bool));
  w.field("convex", to_string(d.p_conv));
  w.field("purely_aconvex", to_string(d.p_ac));
  w.end();
  if (d.boolean_verdict) {
    w.begin("boolean_algebra");
    w.field("lattice", d.boolean_verdict->lattice);
    w.field("distributive", d.boolean_verdict->distributive);
    w.field("complemented", d.boolean_verdict->complemented);
    w.end();
  }
  w.begin("evidence");
  for (const auto& e : d.evidence) {
    w.item(std::string(e.passed ? "pass" : "fail") + ": " + e.name + (e.detail.empty() ? "" : " (" + e.detail + ")"));
  }
  w.end();
  w.field("status", d.ok() ? "pass" : "fail");
  return d.ok() ? kExitPass : kExitPropertyFailure;
}

// analyze

struct AnalyzeOptions : CommonOptions {
  std::vector<std::string> elements;
  std::string op;
  std::size_t n = 2;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  const ModelExpr m = load_document(o.path).model;
  const SeaCheckConfig cfg = config_of(o);
  std::vector<Elem> elems;
  for (const auto& text : o.elements) {
    Elem e = canonical(m, parse_element_text(text));
    if (!membership(m, e)) throw InputError("element " + to_string(e) + " is not a member of " + to_string(m));
    elems.push_back(std::move(e));
  }
  auto single = [&]() -> const Elem& {
    if (elems.size() != 1) throw InputError("--op " + o.op + " takes exactly one --element");
    return elems.front();
  };

  ReportWriter w(out);
  w.field("command", "analyze");
  w.field("model", to_string(m));
  w.field("op", o.op);
  if (!elems.empty()) {
    w.begin("elements");
    for (const auto& e : elems) w.item(to_string(e));
    w.end();
  }

  int status = kExitPass;
  if (o.op == "floor") {
    w.field("result", to_string(floor(m, single())));
  } else if (o.op == "divide") {
    w.field("n", o.n);
    w.field("result", to_string(divide_by_n(m, single(), o.n)));
  } else if (o.op == "sqrt") {
    const SqrtResult r = sqrt(m, single());
    w.field("result", to_string(r.root));
    w.field("approximate", r.approximate);
    if (r.approximate) w.field("tolerance", to_string(r.tolerance));
  } else if (o.op == "halves") {
    const auto hs = halves_of(m, single());
    w.field("count", hs.size());
    w.begin("halves");
    for (const auto& h : hs) w.item(to_string(h));
    w.end();
  } else if (o.op == "commutant") {
    write_members(w, commutant(m, elems, cfg));
  } else if (o.op == "bicommutant") {
    write_members(w, bicommutant(m, elems, cfg));
  } else if (o.op == "center") {
    write_members(w, center(m, cfg));
  } else if (o.op == "classify") {
    const ConvexityVerdict v = classify_convexity(m, cfg);
    w.field("class", to_string(v.kind));
    w.begin("halves_of_one");
    for (const auto& h : v.halves) w.item(to_string(h));
    w.end();
    if (v.center) {
      w.begin("center");
      write_members(w, *v.center);
      w.end();
    }
    w.field("contradiction", v.contradiction);
    w.begin("evidence");
    for (const auto& e : v.evidence) w.item(e);
    w.end();
    if (v.contradiction) status = kExitPropertyFailure;
  } else if (o.op == "associativity") {
    const AssociativityReport r = analyze_associativity(m, cfg);
    w.field("associative", r.associative);
    if (!r.associativity_witness.empty()) w.field("associativity_witness", join(r.associativity_witness));
    w.field("commutative", r.commutative);
    if (!r.commutativity_witness.empty()) w.field("commutativity_witness", join(r.commutativity_witness));
    w.field("idempotents_central", r.idempotents_central);
    if (!r.centrality_witness.empty()) w.field("centrality_witness", join(r.centrality_witness));
    w.begin("idempotents");
    for (const auto& e : r.idempotents) w.item(to_string(e));
    w.end();
    w.field("factor", r.factor_classification.empty() ? std::string("none") : r.factor_classification);
    w.field("exhaustive", r.exhaustive);
  } else if (o.op == "commuting-halves") {
    const CommutingHalvesReport r = check_commuting_halves(m, cfg);
    w.field("holds", r.holds);
    if (!r.witness.empty()) w.field("witness", join(r.witness));
    w.field("class", to_string(r.classification));
    w.field("agrees_with_class", r.agrees_with_classification);
    w.field("exhaustive", r.exhaustive);
    if (!r.agrees_with_classification) status = kExitPropertyFailure;
  } else if (o.op == "spectral") {
    const SpectralReport r = bicommutant_representation(m, single());
    w.field("description", r.description);
    w.field("interval_part", to_string(r.interval_part));
    w.field("boolean_part", to_string(r.boolean_part));
    w.field("splitting_idempotent", to_string(r.splitting_idempotent));
    w.begin("boolean_members");
    for (const auto& e : r.boolean_members) w.item(to_string(e));
    w.end();
  }
  w.field("status", status == kExitPass ? "pass" : "fail");
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential effect algebra toolkit", "seatool"};
  app.require_subcommand(1);

  CheckOptions check_o;
  auto* check = app.add_subcommand("check", "Check effect-algebra, sequential-product and effect-monoid axioms");
  add_common(check, check_o);
  check->add_flag("--require-monoid", check_o.require_monoid, "Fail unless the product is an effect monoid");

  SearchOptions search_o;
  auto* search = app.add_subcommand("search", "Enumerate products on a finite effect algebra");
  add_common(search, search_o);
  search->add_option("--axioms", search_o.axioms, "Axiom set")->check(CLI::IsMember({"sea", "monoid", "monoid-s3"}));
  search->add_option("--max", search_o.max, "Stop after this many solutions")->check(CLI::PositiveNumber);
  search->add_flag("--canonical", search_o.canonical, "Identify solutions related by an automorphism");
  search->add_option("--bound", search_o.bound, "Largest table size accepted")->check(CLI::PositiveNumber);

  CommonOptions decompose_o;
  auto* decomp = app.add_subcommand("decompose", "Split into Boolean, convex and purely a-convex blocks");
  add_common(decomp, decompose_o);

  AnalyzeOptions analyze_o;
  auto* analyze = app.add_subcommand("analyze", "Run one operation on the model");
  add_common(analyze, analyze_o);
  analyze->add_option("--element", analyze_o.elements, "Element as JSON, or zero/one");
  analyze->add_option("--op", analyze_o.op, "Operation")
      ->required()
      ->check(CLI::IsMember({"floor", "divide", "sqrt", "halves", "commutant", "center", "bicommutant", "classify",
                             "associativity", "commuting-halves", "spectral"}));
  analyze->add_option("--n", analyze_o.n, "Divisor for --op divide")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"seatool"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  // Reports are buffered so a failing command leaves no partial report on `out`.
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream buffer;
  int status = kExitUsage;
  const CommonOptions* common = nullptr;
  try {
    if (check->parsed()) {
      common = &check_o;
      status = cmd_check(check_o, buffer);
    } else if (search->parsed()) {
      common = &search_o;
      status = cmd_search(search_o, buffer);
    } else if (decomp->parsed()) {
      common = &decompose_o;
      status = cmd_decompose(decompose_o, buffer);
    } else {
      common = &analyze_o;
      status = cmd_analyze(analyze_o, buffer);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << buffer.str();
  if (common && common->timing) err << "timing_ms: " << ms_since(start) << "\n";
  return status;
}

}  // namespace sea::cli
