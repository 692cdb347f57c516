#include <doctest.h>

#include <algorithm>

#include "gen.hpp"
#include "treeprop/axioms.hpp"
#include "treeprop/errors.hpp"
#include "treeprop/patterns.hpp"
#include "treeprop/types_consistency.hpp"

using namespace treeprop;
using namespace testsupport;

namespace {

bool has_literal(const TypeInstance& t, LitShape s, std::vector<int> idx, bool pos) {
  return std::find(t.literals.begin(), t.literals.end(), Literal{s, std::move(idx), pos}) != t.literals.end();
}

// o: object; 1 in P0; 2 in P1 under 1; 3 in P0 unrelated to 2
FinStructure small() {
  FinStructure m(Signature(Variant::Tree, {0, 1}));
  m.add(0, Sort::object());
  m.add(1, Sort::param(0));
  m.add(2, Sort::param(1));
  m.add(3, Sort::param(0));
  m.add(4, Sort::object());
  m.add(5, Sort::none());
  m.set(FunSym::f(0, 1), 2, 1);
  m.set(FunSym::p(0), 4, 3);
  return m;
}

TypeInstance peq(const FinStructure& m, int level, Elem c) {
  TypeInstance t;
  t.kind = TypeKind::obj();
  t.levels = {level};
  t.params = {c};
  t.literals = {{LitShape::PEq, {level, 0}, true}};
  t.ambient = generated_substructure(m, {c});
  return t;
}

}  // namespace

TEST_CASE("classify_type examples") {
  const auto m = small();
  SUBCASE("unconnected object over nothing") {
    const auto t = classify_type(m, 0, {});
    CHECK(t.kind == TypeKind::obj());
    CHECK(has_literal(t, LitShape::PFixed, {0}, true));
    CHECK(has_literal(t, LitShape::PFixed, {1}, true));
    for (const auto& l : t.literals) CHECK((l.shape == LitShape::PFixed || l.shape == LitShape::FPIdent));
  }
  SUBCASE("connection to a parameter") {
    const auto t = classify_type(m, 4, {3});
    CHECK(has_literal(t, LitShape::PEq, {0, 0}, true));
    CHECK(has_literal(t, LitShape::PFixed, {0}, false));
    CHECK(has_literal(t, LitShape::Eq, {0}, false));
  }
  SUBCASE("bottom-level parameter has only inequalities") {
    const auto t = classify_type(m, 3, {1, 2});
    CHECK(t.kind == TypeKind::param(0));
    CHECK(t.literals.size() == 2);
    for (const auto& l : t.literals) {
      CHECK(l.shape == LitShape::Eq);
      CHECK_FALSE(l.positive);
    }
  }
  SUBCASE("level-1 node sees its parent") {
    const auto t = classify_type(m, 2, {1});
    CHECK(t.kind == TypeKind::param(1));
    CHECK(has_literal(t, LitShape::FEq, {0, 1, 0}, true));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(classify_type(m, 5, {}), UnsupportedCase);
    CHECK_THROWS_AS(classify_type(m, 1, {1}), UnsupportedCase);
    CHECK_THROWS_AS(classify_type(m, 0, {2}), PreconditionError);  // 2 without its parent
    CHECK_THROWS_AS(classify_type(m, 2, {}, std::nullopt, std::vector<int>{0}), UnsupportedCase);
  }
}

TEST_CASE("classified literals hold where they came from") {
  Xorshift64Star rng(41);
  int n = 0;
  while (n < 400) {
    const Signature sig(rng.below(4) == 0 ? Variant::Plain : Variant::Tree, iota_levels(1 + static_cast<int>(rng.below(3))));
    const Coloring f = coloring_from_mask(3, rng.below(8));
    const auto m = random_model(sig, f, rng, 2, 3, false);
    const auto s = random_closed_subset(m, rng, 1, 3);
    const std::vector<Elem> a(s.begin(), s.end());
    for (Elem b : m.domain()) {
      if (s.count(b)) continue;
      const auto t = classify_type(m, b, a);
      for (const auto& l : t.literals) {
        CHECK(eval_literal(m, b, a, l));
        CHECK(oracle_eval(m, b, a, l));
      }
      ++n;
    }
  }
}

TEST_CASE("is_consistent examples") {
  const Signature sig(Variant::Tree, {0, 1});
  FinStructure m(sig);
  m.add(0, Sort::param(0));
  m.add(1, Sort::param(0));
  m.add(2, Sort::param(1));
  m.set(FunSym::f(0, 1), 2, 1);
  const auto a = peq(m, 0, 0), b = peq(m, 1, 2);
  CHECK(is_consistent({a, a}, Coloring(2, 2, 0)));
  CHECK_FALSE(is_consistent({a, b}, Coloring(2, 2, 0)));
  CHECK(explain_inconsistency({a, b}, Coloring(2, 2, 0)).find("f_0_1") != std::string::npos);
  CHECK(is_consistent({a, b}, Coloring(2, 2, 1)));
  CHECK(is_consistent({peq(m, 0, 1), b}, Coloring(2, 2, 0)));

  const auto w = find_witness({a, b}, Coloring(2, 2, 1));
  REQUIRE(w);
  CHECK(check_axioms(w->e, Coloring(2, 2, 1)).ok);
  CHECK(w->e.apply(FunSym::p(0), w->x) == 0);
  CHECK(w->e.apply(FunSym::p(1), w->x) == 2);

  FinStructure bad = m;
  bad.set(FunSym::f(0, 1), 2, 2);
  auto t = peq(m, 1, 2);
  t.levels = {0, 1};
  t.ambient = bad.induced({2});
  CHECK_THROWS_AS(is_consistent({t}, Coloring(2, 2, 0)), PreconditionError);
}

TEST_CASE("complete types over the same tuple are consistent iff equal") {
  Xorshift64Star rng(43);
  int pairs = 0, differ = 0;
  while (pairs < 300) {
    const Signature sig(Variant::Tree, iota_levels(1 + static_cast<int>(rng.below(3))));
    const Coloring f = coloring_from_mask(3, rng.below(8));
    const auto m = random_model(sig, f, rng, 2, 3, false);
    const auto s = random_closed_subset(m, rng, 1, 3);
    if (s.size() > 4) continue;
    const std::vector<Elem> a(s.begin(), s.end());
    std::vector<TypeInstance> types;
    for (Elem b : m.domain()) {
      if (!s.count(b)) types.push_back(classify_type(m, b, a));
    }
    for (std::size_t i = 0; i < types.size(); ++i) {
      for (std::size_t j = i + 1; j < types.size() && j < i + 3; ++j) {
        const bool same = types[i].kind == types[j].kind && types[i].literals == types[j].literals;
        CHECK(is_consistent({types[i], types[j]}, f) == same);
        CHECK(is_consistent({types[j], types[i]}, f) == same);
        differ += same ? 0 : 1;
        ++pairs;
      }
    }
  }
  CHECK(differ > 50);
}

TEST_CASE("consistency is monotone and agrees with the oracle on sub-lists") {
  Xorshift64Star rng(47);
  int done = 0;
  while (done < 150) {
    const Signature sig(Variant::Tree, iota_levels(2 + static_cast<int>(rng.below(2))));
    const Coloring f = coloring_from_mask(3, rng.below(8));
    const auto m = random_model(sig, f, rng, 2, 3, false);
    std::vector<TypeInstance> xs;
    for (int k = 0; k < 3; ++k) {
      const auto ps = m.of_sort(Sort::param(static_cast<int>(rng.below(static_cast<std::uint32_t>(sig.levels().size())))));
      if (ps.empty()) continue;
      const Elem c = ps[rng.below(static_cast<std::uint32_t>(ps.size()))];
      xs.push_back(peq(m, m.sort_of(c).level, c));
    }
    if (xs.size() < 2) continue;
    const bool all = is_consistent(xs, f);
    CHECK(all == oracle_consistent(xs, f).consistent);
    if (all) {
      for (std::size_t drop = 0; drop < xs.size(); ++drop) {
        auto sub = xs;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        CHECK(is_consistent(sub, f));
      }
    }
    auto rev = xs;
    std::reverse(rev.begin(), rev.end());
    CHECK(is_consistent(rev, f) == all);
    ++done;
  }
}

TEST_CASE("sibling instances in the canonical tree are pairwise inconsistent") {
  for (int h = 1; h <= 2; ++h) {
    const auto mp = build_canonical_tree_model(h, 3, Coloring(h + 1, 2, 1));
    for (int l = 1; l <= h; ++l) {
      const auto nodes = mp.m.of_sort(Sort::param(l));
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
          CHECK_FALSE(is_consistent({peq(mp.m, l, nodes[i]), peq(mp.m, l, nodes[j])}, Coloring(h + 1, 2, 1)));
        }
      }
    }
  }
}
