#include "treeprop/generic_builder.hpp"

#include <algorithm>
#include <set>

#include "treeprop/amalgamation.hpp"
#include "treeprop/axioms.hpp"
#include "treeprop/embedding.hpp"
#include "treeprop/errors.hpp"
#include "treeprop/parallel.hpp"

namespace treeprop {

FinStructure resolve_extension(const FinStructure& m, const ExtensionProblem& prob, const Coloring& f) {
  if (!(m.signature() == prob.b.signature()) || !(m.signature() == prob.c.signature())) {
    throw SignatureMismatch("resolve_extension: signatures differ");
  }
  if (!is_substructure(prob.b, prob.c)) throw PreconditionError("resolve_extension: B is not a substructure of C");
  if (!is_embedding(prob.b, m, prob.anchor)) throw PreconditionError("resolve_extension: anchor is not an embedding");
  if (!check_axioms(prob.c, f).ok) throw PreconditionError("resolve_extension: C fails the axioms");

  if (find_embedding(prob.c, m, prob.anchor)) return m;

  ElementMap rename;
  ElemSet image;
  Elem fresh = m.next_id();
  for (Elem x : prob.c.domain()) {
    if (prob.b.contains(x)) {
      rename[x] = prob.anchor.at(x);
      image.insert(rename[x]);
    } else {
      rename[x] = fresh++;
    }
  }
  return free_amalgam(m.induced(image), m, prob.c.relabel(rename));
}

namespace {

class ModelEnumerator {
 public:
  ModelEnumerator(const Signature& sig, const Coloring& f) : sig_(sig), f_(f) {
    sorts_.push_back(Sort::none());
    sorts_.push_back(Sort::object());
    for (int l : sig.levels()) sorts_.push_back(Sort::param(l));
  }

  void run(int size, std::set<std::vector<int>>& seen, std::vector<FinStructure>& out) {
    seen_ = &seen;
    out_ = &out;
    std::vector<int> pick;
    choose_sorts(size, 0, pick);
  }

 private:
  struct Slot {
    Elem x;
    int level;  // p level for objects; own level for parameters
    bool object;
    std::vector<Elem> options;
  };

  void choose_sorts(int size, int from, std::vector<int>& pick) {
    if (static_cast<int>(pick.size()) == size) {
      build_slots(pick);
      return;
    }
    for (int s = from; s < static_cast<int>(sorts_.size()); ++s) {
      pick.push_back(s);
      choose_sorts(size, s, pick);
      pick.pop_back();
    }
  }

  void build_slots(const std::vector<int>& pick) {
    FinStructure base(sig_);
    for (std::size_t i = 0; i < pick.size(); ++i) base.add(static_cast<Elem>(i), sorts_[pick[i]]);
    const bool tree = sig_.variant() == Variant::Tree;
    std::vector<Slot> slots;
    for (const auto& [x, s] : base.sorts()) {
      if (s.is_object()) {
        for (int l : sig_.levels()) {
          Slot slot{x, l, true, {}};
          if (tree) slot.options.push_back(x);
          for (Elem y : base.of_sort(Sort::param(l))) slot.options.push_back(y);
          slots.push_back(std::move(slot));
        }
      } else if (s.is_param() && tree) {
        const int pred = sig_.predecessor(s.level);
        if (pred < 0) continue;
        slots.push_back({x, s.level, false, base.of_sort(Sort::param(pred))});
      }
    }
    for (const auto& slot : slots) {
      if (slot.options.empty()) return;
    }
    std::vector<Elem> choice(slots.size());
    fill(base, slots, choice, 0);
  }

  void fill(const FinStructure& base, const std::vector<Slot>& slots, std::vector<Elem>& choice,
            std::size_t i) {
    if (i == slots.size()) {
      emit(base, slots, choice);
      return;
    }
    for (Elem y : slots[i].options) {
      choice[i] = y;
      fill(base, slots, choice, i + 1);
    }
  }

  void emit(FinStructure m, const std::vector<Slot>& slots, const std::vector<Elem>& choice) {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].object) m.set(FunSym::p(slots[i].level), slots[i].x, choice[i]);
    }
    // parents level by level, so lower ancestors are known when composing
    for (int l : sig_.levels()) {
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].object || slots[i].level != l) continue;
        const int pred = sig_.predecessor(l);
        const Elem parent = choice[i];
        m.set(FunSym::f(pred, l), slots[i].x, parent);
        for (int a : sig_.levels()) {
          if (a < pred) m.set(FunSym::f(a, l), slots[i].x, m.ancestor(a, pred, parent));
        }
      }
    }
    if (!check_axioms(m, f_).ok) return;
    auto code = canonical_code(m);
    if (seen_->insert(code).second) out_->push_back(std::move(m));
  }

  const Signature& sig_;
  const Coloring& f_;
  std::vector<Sort> sorts_;
  std::set<std::vector<int>>* seen_ = nullptr;
  std::vector<FinStructure>* out_ = nullptr;
};

}  // namespace

std::vector<FinStructure> enumerate_models(const Signature& sig, const Coloring& f, int max_size) {
  std::vector<FinStructure> out;
  for (int k = 0; k <= max_size; ++k) {
    std::set<std::vector<int>> seen;
    std::vector<FinStructure> level;
    ModelEnumerator(sig, f).run(k, seen, level);
    std::vector<std::pair<std::vector<int>, FinStructure>> keyed;
    for (auto& m : level) keyed.emplace_back(canonical_code(m), std::move(m));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [code, m] : keyed) out.push_back(std::move(m));
  }
  return out;
}

std::vector<ProblemType> enumerate_problem_types(const Signature& sig, const Coloring& f, int cap) {
  std::vector<ProblemType> out;
  for (const auto& c : enumerate_models(sig, f, cap)) {
    const auto dom = c.domain();
    const std::size_t k = dom.size();
    std::vector<std::pair<std::vector<int>, ElemSet>> subs;
    std::set<std::vector<int>> seen;
    for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << k); ++mask) {
      ElemSet s;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) s.insert(dom[i]);
      }
      if (closure(c, s) != s) continue;
      std::map<Elem, int> marks;
      for (Elem x : dom) marks[x] = s.count(x) ? 1 : 0;
      auto code = canonical_code(c, marks);
      if (seen.insert(code).second) subs.emplace_back(std::move(code), std::move(s));
    }
    std::sort(subs.begin(), subs.end());
    for (auto& [code, s] : subs) out.push_back({c.induced(s), c});
  }
  return out;
}

GenericResult build_generic(const Signature& sig, const Coloring& f, int problem_size_cap,
                            int domain_cap, int jobs) {
  if (problem_size_cap < 0) throw PreconditionError("build_generic: negative problem size cap");
  GenericResult res{FinStructure(sig), {}};
  const auto types = enumerate_problem_types(sig, f, problem_size_cap);
  res.report.problem_types = static_cast<int>(types.size());
  FinStructure& m = res.m;
  for (;;) {
    ++res.report.passes;
    bool changed = false;
    long long realized = 0;
    for (const auto& t : types) {
      const auto anchors = all_embeddings(t.b, m);
      std::vector<char> ok(anchors.size(), 0);
      parallel_for(anchors.size(), jobs, [&](std::size_t i) {
        ok[i] = find_embedding(t.c, m, anchors[i]).has_value() ? 1 : 0;
      });
      for (std::size_t i = 0; i < anchors.size(); ++i) {
        if (ok[i] || find_embedding(t.c, m, anchors[i])) {
          ++realized;
          continue;
        }
        const auto grow = static_cast<int>(t.c.size() - t.b.size());
        if (static_cast<int>(m.size()) + grow > domain_cap) {
          res.report.complete = false;
          return res;
        }
        m = resolve_extension(m, {t.b, t.c, anchors[i]}, f);
        ++res.report.extensions_added;
        changed = true;
      }
    }
    if (!changed) {
      res.report.realized_problems = realized;
      res.report.complete = true;
      return res;
    }
  }
}

}  // namespace treeprop
