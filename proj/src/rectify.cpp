#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "treeprop/errors.hpp"
#include "treeprop/patterns.hpp"

namespace treeprop {

namespace {

using Set = std::vector<int>;

Set normalize(Set s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Set meet(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Set minus(const Set& a, const Set& b) {
  Set out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class DeltaSearch {
 public:
  DeltaSearch(const std::vector<Set>& fam, int m, bool ordered) : fam_(fam), m_(m), ordered_(ordered) {}

  // Can set i join the chosen sets given root r?
  bool fits(std::size_t i, const Set& r) const {
    const Set& s = fam_[i];
    if (!std::includes(s.begin(), s.end(), r.begin(), r.end())) return false;
    for (std::size_t j : chosen_) {
      if (meet(fam_[j], s) != r) return false;
    }
    if (!ordered_) return true;
    const Set petal = minus(s, r);
    if (petal.empty()) return true;
    if (!r.empty() && r.back() >= petal.front()) return false;
    for (std::size_t j : chosen_) {
      const Set pj = minus(fam_[j], r);
      if (!pj.empty() && pj.back() >= petal.front()) return false;
    }
    return true;
  }

  bool exact(std::size_t from) {
    if (static_cast<int>(chosen_.size()) == m_) return true;
    const std::size_t need = static_cast<std::size_t>(m_) - chosen_.size();
    for (std::size_t i = from; i + need <= fam_.size(); ++i) {
      if (chosen_.size() == 1) {
        root_ = meet(fam_[chosen_[0]], fam_[i]);
        // the first set must also respect the ordering against this root
        if (ordered_) {
          const Set p0 = minus(fam_[chosen_[0]], root_);
          if (!p0.empty() && !root_.empty() && root_.back() >= p0.front()) continue;
        }
      }
      if (chosen_.size() >= 1 && !fits(i, root_)) continue;
      chosen_.push_back(i);
      if (exact(i + 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  bool greedy_with(const Set& r) {
    chosen_.clear();
    root_ = r;
    for (std::size_t i = 0; i < fam_.size() && static_cast<int>(chosen_.size()) < m_; ++i) {
      if (fits(i, r)) chosen_.push_back(i);
    }
    return static_cast<int>(chosen_.size()) == m_;
  }

  DeltaSystem result() const {
    DeltaSystem d;
    d.root = root_;
    for (std::size_t i : chosen_) {
      d.indices.push_back(static_cast<int>(i));
      d.petals.push_back(minus(fam_[i], root_));
    }
    return d;
  }

 private:
  const std::vector<Set>& fam_;
  int m_;
  bool ordered_;
  std::vector<std::size_t> chosen_;
  Set root_;
};

}  // namespace

std::optional<DeltaSystem> find_delta_system(const std::vector<std::vector<int>>& family, int m,
                                             bool ordered) {
  if (m < 2) throw PreconditionError("find_delta_system: m must be at least 2");
  std::vector<Set> fam;
  for (const auto& s : family) fam.push_back(normalize(s));
  if (static_cast<int>(fam.size()) < m) return std::nullopt;
  DeltaSearch search(fam, m, ordered);
  if (fam.size() <= 20) {
    if (search.exact(0)) return search.result();
    return std::nullopt;
  }
  std::map<Set, long long> freq;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.size(); ++j) ++freq[meet(fam[i], fam[j])];
  }
  std::vector<std::pair<long long, Set>> roots;
  for (auto& [r, c] : freq) roots.emplace_back(-c, r);
  std::sort(roots.begin(), roots.end());
  for (const auto& [c, r] : roots) {
    if (search.greedy_with(r)) return search.result();
  }
  return std::nullopt;
}

bool check_linked_family(const Coloring& f, const std::vector<std::vector<int>>& family) {
  std::set<int> seen;
  for (const auto& s : family) {
    for (int x : normalize(s)) {
      if (x < 0 || x >= f.n()) throw RangeError("check_linked_family: element outside the coloring");
      if (!seen.insert(x).second) throw PreconditionError("check_linked_family: sets overlap");
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      bool linked = false;
      for (int xi : family[i]) {
        for (int ze : family[j]) {
          if (f.at(xi, ze) == 0) linked = true;
        }
      }
      if (!linked) return false;
    }
  }
  return true;
}

FinStructure lift_plain_to_tree(const FinStructure& m, const ElemSet& keep) {
  const Signature& sig = m.signature();
  if (sig.variant() != Variant::Plain) throw PreconditionError("lift_plain_to_tree: structure is not plain");
  FinStructure out(Signature(Variant::Tree, sig.levels()));
  for (Elem x : keep) {
    if (!m.contains(x)) throw PreconditionError("lift_plain_to_tree: element outside the structure");
    out.add(x, m.sort_of(x));
  }
  for (Elem x : keep) {
    for (int l : sig.levels()) {
      const Elem y = m.apply(FunSym::p(l), x);
      if (!keep.count(y)) throw PreconditionError("lift_plain_to_tree: kept set is not closed");
      out.set(FunSym::p(l), x, y);
    }
  }
  Elem fresh = m.next_id();
  for (Elem x : keep) {
    const Sort s = m.sort_of(x);
    if (!s.is_param()) continue;
    std::map<int, Elem> chain;
    for (int l : sig.levels()) {
      if (l >= s.level) break;
      chain[l] = fresh;
      out.add(fresh++, Sort::param(l));
      out.set(FunSym::f(l, s.level), x, chain[l]);
    }
    for (const auto& [hi, node] : chain) {
      for (const auto& [lo, below] : chain) {
        if (lo < hi) out.set(FunSym::f(lo, hi), node, below);
      }
    }
  }
  return out;
}

namespace {

struct RowCase {
  int kase = 0;
  int key = -1;  // root level of a case 3 row
  int designated = 0;
};

RowCase classify_row(const PatternRow& row, const Set& root) {
  const auto in_root = [&](int l) { return std::binary_search(root.begin(), root.end(), l); };
  const auto in_petal = [&](int l) {
    return std::binary_search(row.levels.begin(), row.levels.end(), l) && !in_root(l);
  };
  if (row.shape == RowShape::P && in_petal(row.level)) return {1, -1, row.level};
  if (row.shape == RowShape::FP && in_petal(row.level)) {
    if (in_petal(row.lo)) return {2, -1, row.level};
    if (in_root(row.lo)) return {3, row.lo, row.level};
  }
  throw UnsupportedCase("extract_homogeneous_from_inp: row shape outside the three cases");
}

}  // namespace

HomogeneityResult extract_homogeneous_from_inp(const Pattern& p, const FinStructure& m, const Coloring& f) {
  if (p.kind != PatternKind::Inp) throw PreconditionError("extract_homogeneous_from_inp: not an inp pattern");
  if (p.rows.size() != static_cast<std::size_t>(p.height) || p.rows.empty()) {
    throw MalformedPattern("extract_homogeneous_from_inp: row count does not match the height");
  }
  std::vector<Set> fam;
  for (const auto& r : p.rows) fam.push_back(normalize(r.levels));
  Set root;
  if (fam.size() >= 2) {
    auto ds = find_delta_system(fam, static_cast<int>(fam.size()), true);
    if (!ds) throw PreconditionError("extract_homogeneous_from_inp: row languages are not an ordered Delta-system");
    root = ds->root;
  }

  std::vector<RowCase> cases;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    PatternRow row = p.rows[i];
    row.levels = fam[i];
    cases.push_back(classify_row(row, root));
  }

  // majority case, ties to the smaller case number; then majority key
  std::map<std::pair<int, int>, std::vector<int>> buckets;
  std::map<int, int> per_case;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    ++per_case[cases[i].kase];
    buckets[{cases[i].kase, cases[i].key}].push_back(static_cast<int>(i));
  }
  int best_case = 0;
  for (const auto& [k, c] : per_case) {
    if (best_case == 0 || c > per_case[best_case]) best_case = k;
  }
  const std::vector<int>* used = nullptr;
  for (const auto& [ck, rows] : buckets) {
    if (ck.first != best_case) continue;
    if (!used || rows.size() > used->size()) used = &rows;
  }

  HomogeneityResult res;
  res.row_case = best_case;
  res.color = 1;
  res.rows_used = *used;
  for (int i : res.rows_used) res.levels.push_back(cases[static_cast<std::size_t>(i)].designated);

  std::optional<std::pair<int, int>> bad;
  for (std::size_t a = 0; a < res.rows_used.size() && !bad; ++a) {
    for (std::size_t b = a + 1; b < res.rows_used.size(); ++b) {
      if (f.at(res.levels[a], res.levels[b]) == 0) {
        bad = {static_cast<int>(a), static_cast<int>(b)};
        break;
      }
    }
  }
  if (!bad) {
    std::sort(res.levels.begin(), res.levels.end());
    res.homogeneous = true;
    return res;
  }

  HomogeneityCounterexample cx;
  cx.row_a = res.rows_used[static_cast<std::size_t>(bad->first)];
  cx.row_b = res.rows_used[static_cast<std::size_t>(bad->second)];
  cx.level_a = res.levels[static_cast<std::size_t>(bad->first)];
  cx.level_b = res.levels[static_cast<std::size_t>(bad->second)];
  const bool plain = m.signature().variant() == Variant::Plain;
  for (int ka = 0; ka < p.branching && !cx.inconsistent; ++ka) {
    for (int kb = 0; kb < p.branching; ++kb) {
      auto ia = row_instance(p, m, {cx.row_a, ka});
      auto ib = row_instance(p, m, {cx.row_b, kb});
      if (plain) {
        ElemSet keep = closure(m, to_set(ia.params));
        const ElemSet more = closure(m, to_set(ib.params));
        keep.insert(more.begin(), more.end());
        const FinStructure lifted = lift_plain_to_tree(m, keep);
        ia.ambient = generated_substructure(lifted, to_set(ia.params));
        ib.ambient = generated_substructure(lifted, to_set(ib.params));
      }
      if (!is_consistent({ia, ib}, f)) {
        cx.col_a = ka;
        cx.col_b = kb;
        cx.inconsistent = true;
        cx.reason = explain_inconsistency({ia, ib}, f);
        break;
      }
    }
  }
  if (!cx.inconsistent) {
    cx.reason = "f({" + std::to_string(cx.level_a) + "," + std::to_string(cx.level_b) +
                "}) = 0 but every column pair is consistent";
  }
  res.levels.clear();
  res.counterexample = std::move(cx);
  return res;
}

}  // namespace treeprop
