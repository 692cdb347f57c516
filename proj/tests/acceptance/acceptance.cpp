// One line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <algorithm>
#include <set>
#include <iostream>
#include <sstream>
#include <string>

#include "gen.hpp"
#include "treeprop/amalgamation.hpp"
#include "treeprop/axioms.hpp"
#include "treeprop/embedding.hpp"
#include "treeprop/errors.hpp"
#include "treeprop/generic_builder.hpp"
#include "treeprop/json_io.hpp"
#include "treeprop/patterns.hpp"
#include "treeprop/types_consistency.hpp"

using namespace treeprop;
using namespace testsupport;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

int pair_count(int n) { return n * (n - 1) / 2; }

// ---- 1 -------------------------------------------------------------------

Verdict canonical_axioms() {
  int models = 0;
  for (int h = 1; h <= 3; ++h) {
    for (int b = 2; b <= 3; ++b) {
      for (std::uint64_t mask = 0; mask < (1u << pair_count(h + 1)); ++mask) {
        const Coloring f = coloring_from_mask(h + 1, mask);
        const auto mp = build_canonical_tree_model(h, b, f);
        ++models;
        int nodes = 0, leaves = 1;
        for (int l = 0; l <= h; ++l) {
          nodes += leaves;
          if (l < h) leaves *= b;
        }
        if (static_cast<int>(mp.m.size()) != nodes + leaves) {
          return {false, "wrong size at h=" + std::to_string(h) + " b=" + std::to_string(b)};
        }
        if (!check_axioms(mp.m, f).ok) {
          return {false, "axioms fail at h=" + std::to_string(h) + " b=" + std::to_string(b) + " mask=" +
                             std::to_string(mask)};
        }
      }
    }
  }
  return {true, std::to_string(models) + " models"};
}

// ---- 2 -------------------------------------------------------------------

Verdict cdt_h3_b2() {
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    const Coloring f = coloring_from_mask(4, mask);
    const auto mp = build_canonical_tree_model(3, 2, f);
    const auto rep = verify_pattern(mp.pattern, mp.m, f);
    int paths = 0, sibs = 0;
    for (const auto& c : rep.checks) {
      if (!c.ok) return {false, "check " + c.what + " fails for mask " + std::to_string(mask)};
      if (c.what == "path") ++paths;
      if (c.what == "siblings") ++sibs;
    }
    if (!rep.ok || paths != 8 || sibs != 7) return {false, "unexpected report for mask " + std::to_string(mask)};
    // direct: every leaf path consistent, every sibling pair inconsistent
    const auto inst = [&](const std::vector<int>& a) { return row_instance(mp.pattern, mp.m, a); };
    for (int leaf = 0; leaf < 8; ++leaf) {
      std::vector<TypeInstance> xs;
      std::vector<int> eta;
      xs.push_back(inst(eta));
      for (int i = 2; i >= 0; --i) {
        eta.push_back((leaf >> i) & 1);
        xs.push_back(inst(eta));
      }
      if (!is_consistent(xs, f)) return {false, "path " + std::to_string(leaf) + " inconsistent"};
    }
    for (const auto& [addr, tuple] : mp.pattern.params) {
      if (addr.size() == 3) continue;
      auto a0 = addr, a1 = addr;
      a0.push_back(0);
      a1.push_back(1);
      if (is_consistent({inst(a0), inst(a1)}, f)) return {false, "sibling pair consistent"};
    }
  }
  return {true, "64 colorings, 8 paths and 7 sibling pairs each"};
}

// ---- 3 -------------------------------------------------------------------

std::vector<int> random_level_subset(Xorshift64Star& rng, const std::vector<int>& from) {
  std::vector<int> out;
  while (out.empty()) {
    for (int l : from) {
      if (rng.below(2)) out.push_back(l);
    }
  }
  return out;
}

// A random instance of an element of N over a closed tuple; some literals dropped.
std::optional<TypeInstance> random_instance(const FinStructure& n, const ElemSet& params, Xorshift64Star& rng) {
  // objects most of the time, so that pairs share a kind and need real search
  const bool want_object = rng.below(4) != 0;
  std::vector<Elem> cands;
  for (Elem x : n.domain()) {
    if (!params.count(x) && !n.sort_of(x).is_none() && n.sort_of(x).is_object() == want_object) cands.push_back(x);
  }
  if (cands.empty()) return std::nullopt;
  const Elem b = cands[rng.below(static_cast<std::uint32_t>(cands.size()))];
  auto w = random_level_subset(rng, n.signature().levels());
  if (n.sort_of(b).is_param()) w = level_union(w, {n.sort_of(b).level});
  std::vector<Elem> tuple(params.begin(), params.end());
  auto t = classify_type(n, b, tuple, w);
  if (rng.below(2)) {
    std::vector<Literal> kept;
    for (const auto& l : t.literals) {
      if (l.shape == LitShape::Eq || rng.below(2)) kept.push_back(l);
    }
    t.literals = kept;
  }
  return t;
}

Verdict consistency_oracle() {
  Xorshift64Star rng(20240601);
  int agree = 0, yes = 0, hard_no = 0;
  std::uint64_t candidates = 0;
  while (agree < 200) {
    const auto levels = random_level_subset(rng, {0, 1, 2, 3});
    if (levels.size() > 3) continue;
    const Variant var = rng.below(5) == 0 ? Variant::Plain : Variant::Tree;
    const Signature sig(var, levels);
    Coloring f(4, 2, 0);
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) f.set(i, j, static_cast<int>(rng.below(2)));
    }
    const FinStructure n = random_model(sig, f, rng, 3, 4);
    const ElemSet s1 = random_closed_subset(n, rng, 1, 3);
    // half the pairs share their parameters, which makes clashes likely
    const ElemSet s2 = rng.below(2) ? s1 : random_closed_subset(n, rng, 1, 3);
    ElemSet both = s1;
    both.insert(s2.begin(), s2.end());
    if (both.size() > 4 || s1.empty()) continue;
    std::optional<TypeInstance> i1, i2;
    try {
      i1 = random_instance(n, s1, rng);
      i2 = random_instance(n, s2, rng);
    } catch (const UnsupportedCase&) {
      continue;
    }
    if (!i1 || !i2 || !(i1->kind == i2->kind)) continue;
    const std::vector<TypeInstance> xs{*i1, *i2};
    const bool lib = is_consistent(xs, f);
    const auto orc = oracle_consistent(xs, f);
    candidates += orc.candidates;
    if (!lib) ++hard_no;
    if (lib != orc.consistent) {
      return {false, "disagreement on pair " + std::to_string(agree + 1) + ": library " + (lib ? "yes" : "no") +
                         ", oracle " + (orc.consistent ? "yes" : "no")};
    }
    if (lib) {
      const auto wit = find_witness(xs, f);
      if (!wit || !check_axioms(wit->e, f).ok) return {false, "witness missing or invalid"};
      for (const auto& t : xs) {
        for (const auto& l : t.literals) {
          if (!oracle_eval(wit->e, wit->x, t.params, l)) return {false, "witness violates a literal"};
        }
      }
    }
    ++agree;
    yes += lib ? 1 : 0;
  }
  return {true, "200/200 agree (" + std::to_string(yes) + " consistent, " + std::to_string(hard_no) +
                    " inconsistent, kinds always equal; " + std::to_string(candidates) + " oracle candidates)"};
}

// ---- 4 -------------------------------------------------------------------

TypeInstance p_instance(const FinStructure& m, int level, Elem c) {
  TypeInstance t;
  t.kind = TypeKind::obj();
  t.levels = {level};
  t.params = {c};
  t.literals = {{LitShape::PEq, {level, 0}, true}};
  t.ambient = generated_substructure(m, {c});
  return t;
}

Verdict axiom4_forcing() {
  long long zero_pairs = 0, one_pairs = 0;
  for (int h = 1; h <= 2; ++h) {
    for (int br = 2; br <= 3; ++br) {
    for (std::uint64_t mask = 0; mask < (1u << pair_count(h + 1)); ++mask) {
      const Coloring f = coloring_from_mask(h + 1, mask);
      const auto mp = build_canonical_tree_model(h, br, f);
      const auto& m = mp.m;
      for (int al = 0; al <= h; ++al) {
        for (int be = al + 1; be <= h; ++be) {
          for (Elem c : m.of_sort(Sort::param(al))) {
            for (Elem c2 : m.of_sort(Sort::param(be))) {
              if (m.ancestor(al, be, c2) == c) continue;
              const std::vector<TypeInstance> xs{p_instance(m, al, c), p_instance(m, be, c2)};
              const bool cons = is_consistent(xs, f);
              if (f.at(al, be) == 0) {
                ++zero_pairs;
                if (cons) return {false, "unrelated pair consistent under f = 0"};
                continue;
              }
              ++one_pairs;
              if (!cons) return {false, "pair inconsistent under f = 1"};
              // the same pair as a two-type amalgam over L_{al} and L_{be}
              const Signature su(Variant::Tree, {al, be});
              const FinStructure a = generated_substructure(m.reduct(su), {c, c2});
              FinStructure b = a.reduct(Signature(Variant::Tree, {al}));
              FinStructure cc = a.reduct(Signature(Variant::Tree, {be}));
              const Elem d = a.next_id();
              b.add(d, Sort::object());
              b.set(FunSym::p(al), d, c);
              cc.add(d, Sort::object());
              cc.set(FunSym::p(be), d, c2);
              const auto r = two_type_amalgam(a, b, {d}, cc, {d}, f);
              const Elem g = r.g.at(0);
              if (!check_axioms(r.d, f).ok || r.d.apply(FunSym::p(al), g) != c ||
                  r.d.apply(FunSym::p(be), g) != c2) {
                return {false, "two-type amalgam does not realize the pair"};
              }
            }
          }
        }
      }
    }
    }
  }
  return {true, std::to_string(zero_pairs) + " forced-inconsistent pairs, " + std::to_string(one_pairs) +
                    " amalgamated pairs"};
}

// ---- 5 -------------------------------------------------------------------

ElementMap identity_on(const FinStructure& s) {
  ElementMap h;
  for (Elem x : s.domain()) h[x] = x;
  return h;
}

Verdict amalgam_soundness() {
  Xorshift64Star rng(777);
  int free_done = 0, reduct_done = 0;
  while (free_done < 500) {
    const auto levels = random_level_subset(rng, {0, 1, 2});
    const Variant var = rng.below(4) == 0 ? Variant::Plain : Variant::Tree;
    const Coloring f = coloring_from_mask(3, rng.below(8));
    const FinStructure n = random_model(Signature(var, levels), f, rng, 2, 3);
    const ElemSet bs = random_closed_subset(n, rng, 1, 2);
    const ElemSet cs = random_closed_subset(n, rng, 1, 2);
    if (bs.size() > 8 || cs.size() > 8) continue;
    ElemSet as;
    for (Elem x : bs) {
      if (cs.count(x)) as.insert(x);
    }
    ElementMap ren;
    Elem fresh = n.next_id();
    for (Elem x : cs) ren[x] = as.count(x) ? x : fresh++;
    const FinStructure a = n.induced(as), b = n.induced(bs), c = n.induced(cs).relabel(ren);
    const FinStructure d = free_amalgam(a, b, c);
    if (!check_axioms(d, f).ok) return {false, "free amalgam fails the axioms"};
    if (!find_embedding(b, d, identity_on(b)) || !find_embedding(c, d, identity_on(c))) {
      return {false, "free amalgam misses an embedding"};
    }
    ++free_done;
  }
  while (reduct_done < 500) {
    auto v = random_level_subset(rng, {0, 1, 2});
    if (v.size() < 2) continue;
    const int gamma = v[rng.below(static_cast<std::uint32_t>(v.size()))];
    const auto w = level_difference(v, {gamma});
    const Variant var = rng.below(4) == 0 ? Variant::Plain : Variant::Tree;
    const Coloring f = coloring_from_mask(3, rng.below(8));
    const Signature sv(var, v), sw(var, w);
    const FinStructure n = random_model(sv, f, rng, 2, 2);
    const ElemSet s = random_closed_subset(n, rng, 2, 3);
    const FinStructure c = n.induced(s);
    if (c.size() > 8 || n.size() > 8) continue;
    ElemSet as;
    for (Elem x : s) {
      if (!c.sort_of(x).is_param(gamma) || rng.below(3) == 0) as.insert(x);
    }
    const ElemSet reach = closure(c, as);
    for (Elem x : s) {
      if (!reach.count(x)) as.insert(x);
    }
    const FinStructure a = c.reduct(sw).induced(as);
    // B is the whole L_w reduct of N under a random renaming
    std::vector<Elem> ids = n.domain();
    for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng.below(static_cast<std::uint32_t>(i))]);
    ElementMap sigma;
    const auto dom = n.domain();
    for (std::size_t i = 0; i < dom.size(); ++i) sigma[dom[i]] = ids[i] + static_cast<Elem>(rng.below(2)) * 3;
    std::set<Elem> img;
    for (const auto& [x, y] : sigma) img.insert(y);
    if (img.size() != sigma.size()) continue;
    const FinStructure b = n.reduct(sw).relabel(sigma);
    ElementMap pi;
    for (Elem x : as) pi[x] = sigma.at(x);
    const auto r = extend_reduct(a, b, pi, c, gamma);
    if (!check_axioms(r.d, f).ok) return {false, "reduct extension fails the axioms"};
    if (!find_embedding(b, r.d.reduct(sw), identity_on(b))) return {false, "B does not embed in D"};
    if (!find_embedding(c, r.d, r.pi_tilde)) return {false, "C does not embed in D along pi~"};
    for (const auto& [x, y] : pi) {
      if (r.pi_tilde.at(x) != y) return {false, "pi~ does not extend pi"};
    }
    ++reduct_done;
  }
  return {true, "500 free amalgams, 500 reduct extensions"};
}

// ---- 6 -------------------------------------------------------------------

Verdict two_type_exhaustive() {
  Xorshift64Star rng(4242);
  long long runs = 0, colorings = 0;
  for (int k = 2; k <= 5; ++k) {
    const auto u = iota_levels(k);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        // v = [0, i), w \ v = [i, j), w' \ v = [j, k)
        std::vector<int> w, wp;
        for (int l = 0; l < k; ++l) {
          if (l < j) w.push_back(l);
          if (l < i || l >= j) wp.push_back(l);
        }
        for (std::uint64_t mask = 0; mask < (1u << pair_count(k)); ++mask) {
          const Coloring f = coloring_from_mask(k, mask);
          bool hyp = true;
          for (int be = i; be < j; ++be) {
            for (int ga = j; ga < k; ++ga) hyp = hyp && f.at(be, ga) == 1;
          }
          if (hyp != two_type_hypothesis(w, wp, f)) return {false, "hypothesis check disagrees"};
          if (!hyp) continue;
          ++colorings;
          for (int seed = 0; seed < 2; ++seed) {
            FinStructure n;
            ElemSet as;
            do {
              n = random_model(Signature(Variant::Tree, u), f, rng, 1, 2, false);
              as = random_closed_subset(n, rng, 1, 3);
            } while (as.size() > 6);
            const auto dom = n.domain();
            if (dom.empty()) continue;
            std::vector<Elem> d{dom[rng.below(static_cast<std::uint32_t>(dom.size()))]};
            if (as.count(d[0])) continue;
            ElemSet seeds = as;
            seeds.insert(d[0]);
            const FinStructure a = n.induced(as);
            const Signature sw(Variant::Tree, w), swp(Variant::Tree, wp);
            const FinStructure b = generated_substructure(n.reduct(sw), seeds);
            const FinStructure c0 = generated_substructure(n.reduct(swp), seeds);
            ElementMap psi;
            Elem fresh = n.next_id() + 5;
            for (Elem x : c0.domain()) psi[x] = as.count(x) ? x : fresh++;
            const FinStructure c = c0.relabel(psi);
            const std::vector<Elem> e{psi.at(d[0])};
            const auto r = two_type_amalgam(a, b, d, c, e, f);
            ++runs;
            if (!check_axioms(r.d, f).ok) return {false, "two-type amalgam fails the axioms"};
            ElemSet gen = as;
            gen.insert(r.g.begin(), r.g.end());
            const auto dw = generated_substructure(r.d.reduct(sw), gen);
            const auto dwp = generated_substructure(r.d.reduct(swp), gen);
            ElementMap hb = identity_on(a), hc = identity_on(a);
            hb[d[0]] = r.g[0];
            hc[e[0]] = r.g[0];
            if (!find_isomorphism(b, dw, hb)) return {false, "L_w restriction is not B"};
            if (!find_isomorphism(c, dwp, hc)) return {false, "L_w' restriction is not C"};
          }
        }
      }
    }
  }
  return {true, std::to_string(colorings) + " admissible (split, coloring) cases, " + std::to_string(runs) +
                    " amalgams"};
}

// ---- 7 -------------------------------------------------------------------

Verdict generic_certification() {
  const Signature sig(Variant::Tree, {0, 1});
  long long problems = 0;
  for (int col = 0; col <= 1; ++col) {
    const Coloring f(2, 2, col);
    const auto res = build_generic(sig, f, 2, 500, 1);
    if (!res.report.complete) return {false, "builder reports incomplete"};
    for (const auto& c : brute_models(sig, f, 2)) {
      const auto dom = c.domain();
      for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << dom.size()); ++mask) {
        ElemSet bs;
        for (std::size_t i = 0; i < dom.size(); ++i) {
          if (mask >> i & 1) bs.insert(dom[i]);
        }
        bool closed = true;
        for (Elem x : bs) {
          for (const auto& g : sig.function_symbols()) closed = closed && bs.count(c.apply(g, x));
        }
        if (!closed) continue;
        const FinStructure b = c.induced(bs);
        for (const auto& anchor : brute_embeddings(b, res.m)) {
          ++problems;
          if (brute_embeddings(c, res.m, anchor, true).empty()) return {false, "unrealized extension problem"};
        }
      }
    }
  }
  return {true, std::to_string(problems) + " (problem, anchor) pairs realized over both colorings"};
}

// ---- 8 -------------------------------------------------------------------

bool brute_has_mono_triple(const Coloring& c) {
  for (int a = 0; a < c.n(); ++a) {
    for (int b = a + 1; b < c.n(); ++b) {
      for (int d = b + 1; d < c.n(); ++d) {
        if (c.at(a, b) == c.at(a, d) && c.at(a, b) == c.at(b, d)) return true;
      }
    }
  }
  return false;
}

Verdict ramsey_sanity() {
  for (std::uint64_t mask = 0; mask < (1u << 15); ++mask) {
    const Coloring c = coloring_from_mask(6, mask);
    const auto h = find_homogeneous(c, 3);
    if (!h || h->size() != 3) return {false, "no triple for mask " + std::to_string(mask)};
    const int col = c.at((*h)[0], (*h)[1]);
    if (c.at((*h)[0], (*h)[2]) != col || c.at((*h)[1], (*h)[2]) != col) return {false, "returned set not homogeneous"};
  }
  Coloring pent(5, 2, 0);
  for (int i = 0; i < 5; ++i) pent.set(i, (i + 1) % 5, 1);
  if (brute_has_mono_triple(pent)) return {false, "pentagon oracle finds a triple"};
  if (find_homogeneous(pent, 3)) return {false, "pentagon yields a homogeneous triple"};
  return {true, "32768 colorings of [6]^2, pentagon has none"};
}

// ---- 9 -------------------------------------------------------------------

std::optional<std::vector<int>> brute_delta(const std::vector<std::vector<int>>& fam, bool ordered) {
  const auto meet = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (int x : a) {
      if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
    }
    return out;
  };
  const int n = static_cast<int>(fam.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const auto r = meet(fam[i], fam[j]);
        if (meet(fam[i], fam[k]) != r || meet(fam[j], fam[k]) != r) continue;
        if (ordered) {
          std::vector<std::vector<int>> petals;
          for (int t : {i, j, k}) {
            std::vector<int> p;
            for (int x : fam[t]) {
              if (std::find(r.begin(), r.end(), x) == r.end()) p.push_back(x);
            }
            petals.push_back(p);
          }
          bool ok = true;
          for (const auto& p : petals) {
            for (int x : p) {
              for (int y : r) ok = ok && y < x;
            }
          }
          for (int s = 0; s < 3; ++s) {
            for (int t = s + 1; t < 3; ++t) {
              for (int x : petals[s]) {
                for (int y : petals[t]) ok = ok && x < y;
              }
            }
          }
          if (!ok) continue;
        }
        return std::vector<int>{i, j, k};
      }
    }
  }
  return std::nullopt;
}

Verdict delta_exactness() {
  Xorshift64Star rng(99);
  int found = 0;
  for (int t = 0; t < 1000; ++t) {
    const int count = 1 + static_cast<int>(rng.below(12));
    std::vector<std::vector<int>> fam;
    for (int i = 0; i < count; ++i) {
      std::set<int> s;
      const int size = static_cast<int>(rng.below(4));
      while (static_cast<int>(s.size()) < size) s.insert(static_cast<int>(rng.below(10)));
      fam.emplace_back(s.begin(), s.end());
    }
    for (bool ordered : {false, true}) {
      const auto lib = find_delta_system(fam, 3, ordered);
      const auto orc = brute_delta(fam, ordered);
      if (lib.has_value() != orc.has_value()) return {false, "existence differs on family " + std::to_string(t)};
      if (lib && lib->indices != *orc) return {false, "different first subfamily on family " + std::to_string(t)};
      found += lib ? 1 : 0;
    }
  }
  return {true, "1000 families x {plain, ordered}, " + std::to_string(found) + " found"};
}

// ---- 10 ------------------------------------------------------------------

Verdict monotonicity() {
  long long implications = 0;
  for (int code = 0; code < 729; ++code) {
    Coloring c(4, 3, 0);
    int v = code;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        c.set(i, j, v % 3);
        v /= 3;
      }
    }
    // holds[theta'][mu][chi]
    bool holds[4][5][5] = {};
    for (int tp = 1; tp <= 3; ++tp) {
      const Coloring r = restrict_colors(c, tp);
      for (int mu = 1; mu <= 4; ++mu) {
        for (int chi = 2; chi <= 4; ++chi) holds[tp][mu][chi] = check_pr1_finite(r, mu, chi).holds;
      }
    }
    for (int mu = 1; mu <= 4; ++mu) {
      for (int chi = 2; chi <= 4; ++chi) {
        if (!holds[3][mu][chi]) continue;
        for (int tp = 1; tp <= 3; ++tp) {
          for (int mu2 = mu; mu2 <= 4; ++mu2) {
            for (int chi2 = 2; chi2 <= chi; ++chi2) {
              ++implications;
              if (!holds[tp][mu2][chi2]) {
                return {false, "monotonicity fails for coloring " + std::to_string(code)};
              }
            }
          }
        }
      }
    }
  }
  return {true, "729 colorings, " + std::to_string(implications) + " implications"};
}

// ---- 11 ------------------------------------------------------------------

Verdict homogeneity_extraction() {
  int cases = 0;
  for (int rows = 2; rows <= 4; ++rows) {
    for (int cols = 2; cols <= 3; ++cols) {
      const auto mp = build_plain_inp_model(rows, cols);
      for (std::uint64_t mask = 0; mask < (1u << pair_count(rows)); ++mask) {
        const Coloring f = coloring_from_mask(rows, mask);
        if (!verify_pattern(mp.pattern, mp.m, f).ok) return {false, "planted pattern does not verify"};
        const auto r = extract_homogeneous_from_inp(mp.pattern, mp.m, f);
        ++cases;
        std::optional<std::pair<int, int>> zero;
        for (int a = 0; a < rows && !zero; ++a) {
          for (int b = a + 1; b < rows; ++b) {
            if (f.at(a, b) == 0) {
              zero = {a, b};
              break;
            }
          }
        }
        if (!zero) {
          if (!r.homogeneous || r.color != 1 || r.levels != iota_levels(rows)) return {false, "H is not all levels"};
          continue;
        }
        if (r.homogeneous || !r.counterexample) return {false, "0 pair not reported"};
        const auto& cx = *r.counterexample;
        if (cx.level_a != zero->first || cx.level_b != zero->second || !cx.inconsistent) {
          return {false, "wrong counterexample pair"};
        }
        // the reported instances, lifted to the tree language, are rejected
        auto ia = row_instance(mp.pattern, mp.m, {cx.row_a, cx.col_a});
        auto ib = row_instance(mp.pattern, mp.m, {cx.row_b, cx.col_b});
        ElemSet keep{ia.params[0], ib.params[0]};
        const auto lifted = lift_plain_to_tree(mp.m, keep);
        ia.ambient = generated_substructure(lifted, {ia.params[0]});
        ib.ambient = generated_substructure(lifted, {ib.params[0]});
        if (is_consistent({ia, ib}, f) || oracle_consistent({ia, ib}, f).consistent) {
          return {false, "counterexample instances are consistent"};
        }
      }
    }
  }
  return {true, std::to_string(cases) + " (shape, coloring) cases"};
}

// ---- 12 ------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "treeprop_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = TREEPROP_CLI;
  const auto sh = [&](const std::string& args) {
    const std::string cmd = "cd '" + dir.string() + "' && '" + cli + "' " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  // fixtures
  sh("coloring gen --kind constant:1 --n 4 -o one.json");
  sh("coloring gen --kind constant:0 --n 4 -o zero.json");
  sh("coloring gen --kind random --n 6 --theta 2 --seed 5 -o rnd.json");
  sh("build-tree --height 3 --branch 2 --coloring one.json -o tree.json --pattern-out tree_pattern.json");
  sh("build-tree --height 2 --branch 3 --kind sct --coloring zero.json -o sct.json --pattern-out sct_pattern.json");
  sh("build-plain-inp --rows 3 --cols 3 -o inp.json --pattern-out inp_pattern.json");
  sh("build-plain-inp --rows 8 --cols 8 --no-objects -o big.json --pattern-out big_pattern.json");
  sh("classify-type tree.json --elem 15 --params 0,1,3 -o i1.json");
  sh("classify-type tree.json --elem 16 --params 0,1,3 -o i2.json");
  std::ofstream(dir / "sets.json") << "[[1,2],[1,3],[1,4],[5,6],[7],[1,8,9]]\n";
  const std::vector<std::string> suite = {
      "check-axioms tree.json --coloring one.json",
      "verify tree_pattern.json --mode exhaustive",
      "verify sct_pattern.json --mode exhaustive",
      "verify inp_pattern.json --mode exhaustive",
      "verify inp_pattern.json --mode sample:5",
      "extract-homogeneous inp_pattern.json",
      "extract-homogeneous inp_pattern.json --coloring zero.json",
      "consistent i1.json i2.json --coloring one.json",
      "consistent i1.json --coloring one.json",
      "generic --variant tree --levels 0,1 --cap 2 --coloring one.json",
      "generic --variant plain --levels 0,1 --cap 2",
      "delta-system sets.json -m 3",
      "delta-system sets.json -m 3 --ordered",
      "coloring homog rnd.json -m 3",
      "coloring pr1 rnd.json --mu 2 --chi 2",
      "coloring restrict rnd.json --theta 1",
  };
  int same = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const std::string a = "r" + std::to_string(i) + "_j1.json", b = "r" + std::to_string(i) + "_j4.json";
    const int ea = sh(suite[i] + " --jobs 1 --json " + a);
    const int eb = sh(suite[i] + " --jobs 4 --json " + b);
    const std::string ja = slurp(dir / a), jb = slurp(dir / b);
    if (ja.empty()) return {false, "no report from: " + suite[i]};
    if (ea != eb || ja != jb) return {false, "reports differ for: " + suite[i]};
    ++same;
  }
  return {true, std::to_string(same) + " invocations byte-identical under --jobs 1 and 4"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> all = {
      {1, "canonical models satisfy the axioms", 10, canonical_axioms},
      {2, "cdt pattern at h=3, b=2", 30, cdt_h3_b2},
      {3, "consistency agrees with brute-force model search", 60, consistency_oracle},
      {4, "path axiom forces inconsistency; f = 1 amalgamates", 30, axiom4_forcing},
      {5, "free amalgam and reduct extension soundness", 60, amalgam_soundness},
      {6, "two-type amalgam restrictions", 60, two_type_exhaustive},
      {7, "generic structure realizes every small extension problem", 30, generic_certification},
      {8, "homogeneous triples in [6]^2, none in the pentagon", 60, ramsey_sanity},
      {9, "delta-system search is exact", 30, delta_exactness},
      {10, "Pr1 monotonicity under restrict_colors", 60, monotonicity},
      {11, "homogeneity extraction on planted inp patterns", 30, homogeneity_extraction},
      {12, "CLI reports independent of --jobs", 120, cli_determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (v.ok && secs > c.limit) {
      v.ok = false;
      v.detail += "; over the time limit";
    }
    char line[512];
    std::snprintf(line, sizeof line, "criterion %2d: %s  %s (%s; %.2fs of %.0fs)", c.id, v.ok ? "PASS" : "FAIL", c.name,
                  v.detail.c_str(), secs, c.limit);
    std::cout << line << std::endl;
    failed += v.ok ? 0 : 1;
  }
  return failed;
}
