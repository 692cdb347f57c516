#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "treeprop/amalgamation.hpp"
#include "treeprop/axioms.hpp"
#include "treeprop/errors.hpp"
#include "treeprop/generic_builder.hpp"
#include "treeprop/json_io.hpp"
#include "treeprop/patterns.hpp"
#include "treeprop/types_consistency.hpp"

#ifndef TREEPROP_VERSION
#define TREEPROP_VERSION "dev"
#endif

namespace treeprop::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Outcome {
  int code = 0;
  json report;
};

std::string join(const std::vector<int>& xs, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

FinStructure load_structure(const std::string& path) { return structure_from_json(read_json_file(path)); }

int max_level(const Signature& sig) { return sig.levels().back(); }

// The coloring from `path`, or for languages that never consult it a
// constant-1 stand-in covering the levels.
Coloring coloring_for(const std::string& path, const Signature& sig) {
  if (path.empty()) {
    if (sig.variant() == Variant::Tree && sig.levels().size() > 1) {
      throw UsageError("--coloring is required for tree structures with two or more levels");
    }
    return Coloring(max_level(sig) + 1, 2, 1);
  }
  Coloring f = coloring_from_json(read_json_file(path));
  if (f.n() <= max_level(sig)) {
    throw PreconditionError("coloring has n = " + std::to_string(f.n()) + " but levels reach " +
                            std::to_string(max_level(sig)));
  }
  return f;
}

ElementMap parse_map(const std::vector<std::string>& items) {
  ElementMap out;
  for (const auto& it : items) {
    const auto colon = it.find(':');
    if (colon == std::string::npos) throw UsageError("map entries look like x:y, got '" + it + "'");
    try {
      out[std::stoi(it.substr(0, colon))] = std::stoi(it.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("bad map entry '" + it + "'");
    }
  }
  return out;
}

json map_to_json(const ElementMap& m) {
  json out = json::array();
  for (const auto& [x, y] : m) out.push_back({x, y});
  return out;
}

json axiom_report_json(const AxiomReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations) {
    vs.push_back({{"axiom", v.axiom}, {"witnesses", v.witnesses}, {"reason", v.reason}});
  }
  return {{"ok", r.ok}, {"violations", vs}};
}

void write_structure(const std::string& out, const FinStructure& m) {
  if (!out.empty()) write_json_file(out, structure_to_json(m));
}

// ---- options -----------------------------------------------------------

struct Opts {
  std::string json_out;
  int jobs = 1;
  std::uint64_t seed = 0;

  std::string structure, coloring, out;
  std::vector<std::string> inputs;

  // amalgam
  std::vector<std::string> pi;
  int gamma = -1;
  std::vector<int> d, e;

  // generic
  std::string variant = "tree";
  std::vector<int> levels;
  int cap = 2;
  int domain_cap = 200;

  // classify-type
  int elem = -1;
  std::vector<int> params, root;

  // build-*
  int height = 0, branch = 0, rows = 0, cols = 0;
  std::string kind = "cdt";
  std::string pattern_out;
  bool no_objects = false;
  std::uint64_t object_cap = 1'000'000;

  // verify, delta, extract
  std::string mode = "exhaustive";
  int m = 3;
  bool ordered = false;

  // coloring
  std::string gen_kind;
  int n = 0, theta = 2;
  int mu = 2, chi = 2;
  std::uint64_t budget = 50'000'000;
};

// ---- commands ----------------------------------------------------------

Outcome cmd_check_axioms(const Opts& o) {
  const FinStructure m = load_structure(o.structure);
  check_well_formed(m);
  const auto r = check_axioms(m, coloring_for(o.coloring, m.signature()));
  if (r.ok) {
    std::cout << "ok: " << m.size() << " elements satisfy the axioms\n";
  } else {
    std::cout << "violations: " << r.violations.size() << "\n";
    for (const auto& v : r.violations) std::cout << "  axiom " << v.axiom << ": " << v.reason << "\n";
  }
  json rep = axiom_report_json(r);
  rep["size"] = m.size();
  return {r.ok ? 0 : 1, rep};
}

Outcome cmd_amalgam_free(const Opts& o) {
  if (o.inputs.size() != 3) throw UsageError("amalgam free takes A B C");
  const auto a = load_structure(o.inputs[0]);
  const auto b = load_structure(o.inputs[1]);
  const auto c = load_structure(o.inputs[2]);
  const auto d = free_amalgam(a, b, c);
  write_structure(o.out, d);
  std::cout << "free amalgam: " << d.size() << " elements\n";
  return {0, {{"size", d.size()}, {"structure", structure_to_json(d)}}};
}

Outcome cmd_amalgam_reduct(const Opts& o) {
  if (o.inputs.size() != 3) throw UsageError("amalgam reduct takes A B C");
  const auto a = load_structure(o.inputs[0]);
  const auto b = load_structure(o.inputs[1]);
  const auto c = load_structure(o.inputs[2]);
  const auto r = extend_reduct(a, b, parse_map(o.pi), c, o.gamma);
  write_structure(o.out, r.d);
  std::cout << "reduct extension: " << r.d.size() << " elements, C -> D:";
  for (const auto& [x, y] : r.pi_tilde) std::cout << " " << x << ":" << y;
  std::cout << "\n";
  return {0, {{"size", r.d.size()}, {"structure", structure_to_json(r.d)}, {"pi_tilde", map_to_json(r.pi_tilde)}}};
}

Outcome cmd_amalgam_two_type(const Opts& o) {
  if (o.inputs.size() != 3) throw UsageError("amalgam two-type takes A B C");
  const auto a = load_structure(o.inputs[0]);
  const auto b = load_structure(o.inputs[1]);
  const auto c = load_structure(o.inputs[2]);
  const auto r = two_type_amalgam(a, b, o.d, c, o.e, coloring_for(o.coloring, a.signature()));
  write_structure(o.out, r.d);
  std::cout << "two-type amalgam: " << r.d.size() << " elements, g = (" << join(r.g) << ")\n";
  return {0, {{"size", r.d.size()}, {"structure", structure_to_json(r.d)}, {"g", r.g}}};
}

Outcome cmd_generic(const Opts& o, int jobs) {
  if (o.levels.empty()) throw UsageError("--levels is required");
  const Signature sig(variant_from_string(o.variant), o.levels);
  const auto res = build_generic(sig, coloring_for(o.coloring, sig), o.cap, o.domain_cap, jobs);
  write_structure(o.out, res.m);
  const auto& r = res.report;
  std::cout << (r.complete ? "complete" : "incomplete (domain cap reached)") << ": " << res.m.size()
            << " elements, " << r.problem_types << " problem types, " << r.passes << " passes, "
            << r.extensions_added << " extensions\n";
  json rep = {{"complete", r.complete},          {"size", res.m.size()},
              {"problem_types", r.problem_types}, {"passes", r.passes},
              {"extensions_added", r.extensions_added}, {"realized_problems", r.realized_problems}};
  return {r.complete ? 0 : 3, rep};
}

Outcome cmd_classify(const Opts& o) {
  const auto m = load_structure(o.structure);
  std::optional<std::vector<int>> lv, rt;
  if (!o.levels.empty()) lv = o.levels;
  if (!o.root.empty()) rt = o.root;
  const auto t = classify_type(m, o.elem, o.params, lv, rt);
  if (!o.out.empty()) write_json_file(o.out, type_instance_to_json(t));
  std::cout << "type of " << o.elem << " over (" << join(o.params) << "):\n";
  for (const auto& l : t.literals) std::cout << "  " << describe(l) << "\n";
  return {0, {{"instance", type_instance_to_json(t)}}};
}

Outcome cmd_consistent(const Opts& o) {
  if (o.inputs.empty()) throw UsageError("consistent takes at least one instance file");
  std::vector<TypeInstance> xs;
  for (const auto& p : o.inputs) xs.push_back(type_instance_from_json(read_json_file(p)));
  const auto base = common_base(xs);
  const Coloring f = coloring_for(o.coloring, base.signature());
  const auto w = find_witness(xs, f);
  json rep = {{"consistent", w.has_value()}};
  if (w) {
    std::cout << "consistent: witness x = " << w->x << " in " << w->e.size() << " elements\n";
    rep["witness"] = {{"x", w->x}, {"structure", structure_to_json(w->e)}};
    write_structure(o.out, w->e);
    return {0, rep};
  }
  const auto why = explain_inconsistency(xs, f);
  std::cout << "inconsistent: " << why << "\n";
  rep["reason"] = why;
  return {1, rep};
}

// Writes the model to -o and the pattern next to it, pointing back at the model.
void write_model_and_pattern(const Opts& o, const ModelAndPattern& mp, const json& coloring) {
  if (o.out.empty()) return;
  write_json_file(o.out, structure_to_json(mp.m));
  const fs::path out(o.out);
  const fs::path pat = o.pattern_out.empty() ? out.parent_path() / "pattern.json" : fs::path(o.pattern_out);
  json j = pattern_to_json(mp.pattern, fs::relative(fs::absolute(out), fs::absolute(pat).parent_path()).string());
  if (!coloring.is_null()) j["coloring"] = coloring;
  write_json_file(pat, j);
}

Outcome cmd_build_tree(const Opts& o) {
  const auto sig = Signature(Variant::Tree, [&] {
    std::vector<int> ls;
    for (int l = 0; l <= std::max(o.height, 0); ++l) ls.push_back(l);
    return ls;
  }());
  const Coloring f = coloring_for(o.coloring, sig);
  const auto mp = build_canonical_tree_model(o.height, o.branch, f, pattern_kind_from_string(o.kind));
  write_model_and_pattern(o, mp, coloring_to_json(f));
  std::cout << "canonical tree model: " << mp.m.size() << " elements, " << mp.pattern.params.size()
            << " addresses\n";
  return {0, {{"size", mp.m.size()}, {"addresses", mp.pattern.params.size()}}};
}

Outcome cmd_build_plain_inp(const Opts& o) {
  const auto mp = build_plain_inp_model(o.rows, o.cols, !o.no_objects, o.object_cap);
  write_model_and_pattern(o, mp, json());
  std::cout << "plain inp model: " << mp.m.size() << " elements, " << mp.pattern.params.size()
            << " addresses\n";
  return {0, {{"size", mp.m.size()}, {"addresses", mp.pattern.params.size()}}};
}

Coloring pattern_coloring(const Opts& o, const PatternFile& pf) {
  if (!o.coloring.empty() || !pf.coloring) return coloring_for(o.coloring, pf.m.signature());
  if (pf.coloring->n() <= max_level(pf.m.signature())) throw PreconditionError("pattern coloring too small");
  return *pf.coloring;
}

Outcome cmd_verify(const Opts& o, int jobs, std::uint64_t seed) {
  const auto pf = load_pattern_file(o.structure);
  const auto r = verify_pattern(pf.pattern, pf.m, pattern_coloring(o, pf), verify_mode_from_string(o.mode), seed, jobs);
  json checks = json::array();
  std::map<std::string, std::pair<int, int>> tally;
  for (const auto& c : r.checks) {
    json addrs = json::array();
    for (const auto& a : c.addresses) addrs.push_back(address_to_string(pf.pattern, a));
    checks.push_back({{"what", c.what}, {"addresses", addrs}, {"ok", c.ok}});
    auto& t = tally[c.what];
    ++t.first;
    if (c.ok) ++t.second;
  }
  std::cout << (r.ok ? "pattern ok" : "pattern fails") << " (" << to_string(pf.pattern.kind) << ", " << r.mode
            << ")\n";
  for (const auto& [what, t] : tally) std::cout << "  " << what << ": " << t.second << "/" << t.first << " ok\n";
  for (const auto& c : r.checks) {
    if (c.ok) continue;
    std::cout << "  failed " << c.what << ":";
    for (const auto& a : c.addresses) std::cout << " [" << address_to_string(pf.pattern, a) << "]";
    std::cout << "\n";
  }
  return {r.ok ? 0 : 1, {{"ok", r.ok}, {"mode", r.mode}, {"failed", r.failed}, {"checks", checks}}};
}

Outcome cmd_delta(const Opts& o) {
  const auto fam = sets_from_json(read_json_file(o.structure));
  const auto ds = find_delta_system(fam, o.m, o.ordered);
  if (!ds) {
    std::cout << "no " << (o.ordered ? "ordered " : "") << "delta-system of size " << o.m << "\n";
    return {1, {{"found", false}}};
  }
  std::cout << "root {" << join(ds->root) << "}, sets " << join(ds->indices) << "\n";
  return {0, {{"found", true}, {"root", ds->root}, {"indices", ds->indices}, {"petals", ds->petals}}};
}

Outcome cmd_extract(const Opts& o) {
  const auto pf = load_pattern_file(o.structure);
  const auto r = extract_homogeneous_from_inp(pf.pattern, pf.m, pattern_coloring(o, pf));
  json rep = {{"homogeneous", r.homogeneous}, {"case", r.row_case}, {"rows_used", r.rows_used}};
  if (r.homogeneous) {
    std::cout << "homogeneous: color " << r.color << " on H = {" << join(r.levels) << "} (case " << r.row_case
              << ")\n";
    rep["color"] = r.color;
    rep["levels"] = r.levels;
    return {0, rep};
  }
  const auto& cx = *r.counterexample;
  std::cout << "not homogeneous: f({" << cx.level_a << "," << cx.level_b << "}) = 0 on rows " << cx.row_a << ", "
            << cx.row_b << "\n";
  if (cx.inconsistent) std::cout << "  columns " << cx.col_a << ", " << cx.col_b << " are inconsistent\n";
  std::cout << "  " << cx.reason << "\n";
  rep["counterexample"] = {{"rows", {cx.row_a, cx.row_b}}, {"levels", {cx.level_a, cx.level_b}},
                           {"columns", {cx.col_a, cx.col_b}}, {"inconsistent", cx.inconsistent},
                           {"reason", cx.reason}};
  return {1, rep};
}

ColoringKind parse_kind(const std::string& s, std::uint64_t seed) {
  if (s == "random") return ColoringKind::random(seed);
  if (s.rfind("constant:", 0) == 0) return ColoringKind::constant(std::stoi(s.substr(9)));
  if (s.rfind("order:", 0) == 0) {
    std::vector<int> perm;
    std::stringstream in(s.substr(6));
    std::string part;
    while (std::getline(in, part, ',')) perm.push_back(std::stoi(part));
    return ColoringKind::order_disagreement(perm);
  }
  throw UsageError("--kind is constant:<c>, random or order:<p0,p1,...>");
}

Outcome cmd_coloring_gen(const Opts& o, std::uint64_t seed) {
  ColoringKind k;
  try {
    k = parse_kind(o.gen_kind, seed);
  } catch (const std::invalid_argument&) {
    throw UsageError("bad --kind '" + o.gen_kind + "'");
  }
  const Coloring c = generate(k, o.n, o.theta);
  if (!o.out.empty()) write_json_file(o.out, coloring_to_json(c));
  std::cout << "coloring of [" << c.n() << "]^2 with " << c.theta() << " colors\n";
  return {0, {{"coloring", coloring_to_json(c)}}};
}

Outcome cmd_coloring_homog(const Opts& o) {
  const Coloring c = coloring_from_json(read_json_file(o.structure));
  const auto h = find_homogeneous(c, o.m);
  if (!h) {
    std::cout << "no homogeneous set of size " << o.m << "\n";
    return {1, {{"found", false}}};
  }
  const int color = h->size() >= 2 ? c.at((*h)[0], (*h)[1]) : 0;
  std::cout << "homogeneous {" << join(*h) << "} in color " << color << "\n";
  return {0, {{"found", true}, {"set", *h}, {"color", color}}};
}

Outcome cmd_coloring_pr1(const Opts& o) {
  const Coloring c = coloring_from_json(read_json_file(o.structure));
  const auto r = check_pr1_finite(c, o.mu, o.chi, o.budget);
  json rep = {{"holds", r.holds}, {"families_checked", r.families_checked}};
  if (r.holds) {
    std::cout << "Pr1 holds (" << r.families_checked << " families)\n";
    return {0, rep};
  }
  std::cout << "Pr1 fails: color " << r.failure->color << " missed by";
  for (const auto& s : r.failure->family) std::cout << " {" << join(s) << "}";
  std::cout << "\n";
  rep["failure"] = {{"family", r.failure->family}, {"color", r.failure->color}};
  return {1, rep};
}

Outcome cmd_coloring_restrict(const Opts& o) {
  const Coloring c = coloring_from_json(read_json_file(o.structure));
  const Coloring r = restrict_colors(c, o.theta);
  if (!o.out.empty()) write_json_file(o.out, coloring_to_json(r));
  std::cout << "restricted to " << r.theta() << " colors\n";
  return {0, {{"coloring", coloring_to_json(r)}}};
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Finite experiments with parameter-tree theories, amalgams, patterns and colorings"};
  app.set_version_flag("--version", std::string("treeprop ") + TREEPROP_VERSION);
  app.require_subcommand(1);
  Opts o;
  app.add_option("--json", o.json_out, "Write a machine-readable report to this file");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for every random choice");

  const auto coloring_opt = [&](CLI::App* s) { s->add_option("--coloring", o.coloring, "Coloring file"); };
  const auto out_opt = [&](CLI::App* s) { s->add_option("-o,--output", o.out, "Output file"); };

  auto* ax = app.add_subcommand("check-axioms", "Check a structure against the axioms");
  ax->add_option("structure", o.structure)->required();
  coloring_opt(ax);

  auto* am = app.add_subcommand("amalgam", "Amalgamation constructions");
  am->require_subcommand(1);
  auto* am_free = am->add_subcommand("free", "Free amalgam of B and C over A");
  auto* am_red = am->add_subcommand("reduct", "Extend an L_w embedding by one level");
  auto* am_two = am->add_subcommand("two-type", "Amalgam of a d-extension and an e-extension");
  for (auto* s : {am_free, am_red, am_two}) {
    s->add_option("inputs", o.inputs, "A B C")->required()->expected(3);
    out_opt(s);
  }
  am_red->add_option("--pi", o.pi, "Embedding A -> B as x:y entries")->delimiter(',');
  am_red->add_option("--gamma", o.gamma, "The new level")->required();
  am_two->add_option("--d", o.d, "Tuple in B")->delimiter(',');
  am_two->add_option("--e", o.e, "Tuple in C")->delimiter(',');
  coloring_opt(am_two);

  auto* gen = app.add_subcommand("generic", "Budgeted generic structure");
  gen->add_option("--variant", o.variant)->check(CLI::IsMember({"tree", "plain"}));
  gen->add_option("--levels", o.levels)->delimiter(',')->required();
  gen->add_option("--cap", o.cap, "Largest extension problem");
  gen->add_option("--domain-cap", o.domain_cap);
  coloring_opt(gen);
  out_opt(gen);

  auto* cls = app.add_subcommand("classify-type", "Quantifier-free type of an element over a tuple");
  cls->add_option("structure", o.structure)->required();
  cls->add_option("--elem", o.elem)->required();
  cls->add_option("--params", o.params)->delimiter(',');
  cls->add_option("--levels", o.levels)->delimiter(',');
  cls->add_option("--root", o.root)->delimiter(',');
  out_opt(cls);

  auto* con = app.add_subcommand("consistent", "Decide whether type instances have a common realization");
  con->add_option("instances", o.inputs)->required();
  coloring_opt(con);
  out_opt(con);

  auto* bt = app.add_subcommand("build-tree", "Canonical tree model and its pattern");
  bt->add_option("--height", o.height)->required();
  bt->add_option("--branch", o.branch)->required();
  bt->add_option("--kind", o.kind)->check(CLI::IsMember({"cdt", "sct"}));
  bt->add_option("--pattern-out", o.pattern_out, "Pattern file (default: pattern.json next to -o)");
  coloring_opt(bt);
  out_opt(bt);

  auto* bp = app.add_subcommand("build-plain-inp", "Plain inp model and its pattern");
  bp->add_option("--rows", o.rows)->required();
  bp->add_option("--cols", o.cols)->required();
  bp->add_flag("--no-objects", o.no_objects, "Skip the path objects");
  bp->add_option("--object-cap", o.object_cap);
  bp->add_option("--pattern-out", o.pattern_out, "Pattern file (default: pattern.json next to -o)");
  out_opt(bp);

  auto* ver = app.add_subcommand("verify", "Check the pattern conditions");
  ver->add_option("pattern", o.structure)->required();
  ver->add_option("--mode", o.mode, "exhaustive, auto or sample:<k>");
  coloring_opt(ver);

  auto* del = app.add_subcommand("delta-system", "Find a delta-system in a family of sets");
  del->add_option("sets", o.structure)->required();
  del->add_option("-m", o.m, "Size of the subfamily");
  del->add_flag("--ordered", o.ordered);

  auto* ext = app.add_subcommand("extract-homogeneous", "Homogeneous level set from an inp pattern");
  ext->add_option("pattern", o.structure)->required();
  coloring_opt(ext);

  auto* col = app.add_subcommand("coloring", "Pair colorings");
  col->require_subcommand(1);
  auto* cg = col->add_subcommand("gen", "Generate a coloring");
  cg->add_option("--kind", o.gen_kind, "constant:<c>, random or order:<permutation>")->required();
  cg->add_option("--n", o.n)->required();
  cg->add_option("--theta", o.theta);
  out_opt(cg);
  auto* ch = col->add_subcommand("homog", "Find a homogeneous set");
  ch->add_option("coloring", o.structure)->required();
  ch->add_option("-m", o.m)->required();
  auto* cp = col->add_subcommand("pr1", "Finite Pr1 check");
  cp->add_option("coloring", o.structure)->required();
  cp->add_option("--mu", o.mu);
  cp->add_option("--chi", o.chi);
  cp->add_option("--budget", o.budget);
  auto* cr = col->add_subcommand("restrict", "Merge colors >= theta into 0");
  cr->add_option("coloring", o.structure)->required();
  cr->add_option("--theta", o.theta)->required();
  out_opt(cr);

  for (auto* s : {ax, am, gen, cls, con, bt, bp, ver, del, ext, col}) s->fallthrough();
  for (auto* s : {am_free, am_red, am_two, cg, ch, cp, cr}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string name;
  Outcome res;
  try {
    if (*ax) {
      name = "check-axioms";
      res = cmd_check_axioms(o);
    } else if (*am_free) {
      name = "amalgam free";
      res = cmd_amalgam_free(o);
    } else if (*am_red) {
      name = "amalgam reduct";
      res = cmd_amalgam_reduct(o);
    } else if (*am_two) {
      name = "amalgam two-type";
      res = cmd_amalgam_two_type(o);
    } else if (*gen) {
      name = "generic";
      res = cmd_generic(o, o.jobs);
    } else if (*cls) {
      name = "classify-type";
      res = cmd_classify(o);
    } else if (*con) {
      name = "consistent";
      res = cmd_consistent(o);
    } else if (*bt) {
      name = "build-tree";
      res = cmd_build_tree(o);
    } else if (*bp) {
      name = "build-plain-inp";
      res = cmd_build_plain_inp(o);
    } else if (*ver) {
      name = "verify";
      res = cmd_verify(o, o.jobs, o.seed);
    } else if (*del) {
      name = "delta-system";
      res = cmd_delta(o);
    } else if (*ext) {
      name = "extract-homogeneous";
      res = cmd_extract(o);
    } else if (*cg) {
      name = "coloring gen";
      res = cmd_coloring_gen(o, o.seed);
    } else if (*ch) {
      name = "coloring homog";
      res = cmd_coloring_homog(o);
    } else if (*cp) {
      name = "coloring pr1";
      res = cmd_coloring_pr1(o);
    } else if (*cr) {
      name = "coloring restrict";
      res = cmd_coloring_restrict(o);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    res = {3, {{"error", e.what()}, {"explored", e.explored()}}};
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n" << app.help();
    res = {2, {{"error", e.what()}}};
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    res = {2, {{"error", e.what()}}};
  }

  if (!o.json_out.empty()) {
    json rep = res.report.is_null() ? json::object() : res.report;
    rep["command"] = name;
    rep["exit"] = res.code;
    try {
      write_json_file(o.json_out, rep);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return res.code;
}

}  // namespace treeprop::cli
