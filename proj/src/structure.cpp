#include "treeprop/structure.hpp"

#include <deque>
#include <string>

#include "treeprop/errors.hpp"

namespace treeprop {

namespace {

const std::map<Elem, Elem>& empty_table() {
  static const std::map<Elem, Elem> kEmpty;
  return kEmpty;
}

void check_sort_level(const Signature& sig, const Sort& s) {
  if (s.is_param() && !sig.has_level(s.level)) {
    throw MalformedStructure("sort P" + std::to_string(s.level) + " is not in the signature");
  }
}

}  // namespace

void FinStructure::add(Elem x, Sort sort) {
  if (x < 0) throw PreconditionError("element identifiers must be non-negative");
  check_sort_level(sig_, sort);
  if (!sorts_.emplace(x, sort).second) {
    throw PreconditionError("element " + std::to_string(x) + " already present");
  }
}

void FinStructure::set_sort(Elem x, Sort sort) {
  check_sort_level(sig_, sort);
  auto it = sorts_.find(x);
  if (it == sorts_.end()) throw PreconditionError("no element " + std::to_string(x));
  it->second = sort;
}

void FinStructure::set(const FunSym& g, Elem x, Elem y) {
  if (!sig_.has_symbol(g)) {
    throw MalformedStructure("symbol " + to_string(g) + " is not in the signature");
  }
  if (x == y) {
    auto it = funs_.find(g);
    if (it != funs_.end()) {
      it->second.erase(x);
      if (it->second.empty()) funs_.erase(it);
    }
    return;
  }
  funs_[g][x] = y;
}

Sort FinStructure::sort_of(Elem x) const {
  auto it = sorts_.find(x);
  return it == sorts_.end() ? Sort::none() : it->second;
}

Elem FinStructure::apply(const FunSym& g, Elem x) const {
  auto t = funs_.find(g);
  if (t == funs_.end()) return x;
  auto it = t->second.find(x);
  return it == t->second.end() ? x : it->second;
}

Elem FinStructure::ancestor(int lo, int hi, Elem x) const {
  if (lo == hi) return x;
  return apply(FunSym::f(lo, hi), x);
}

std::vector<Elem> FinStructure::domain() const {
  std::vector<Elem> out;
  out.reserve(sorts_.size());
  for (const auto& [x, s] : sorts_) out.push_back(x);
  return out;
}

std::vector<Elem> FinStructure::of_sort(const Sort& s) const {
  std::vector<Elem> out;
  for (const auto& [x, sx] : sorts_) {
    if (sx == s) out.push_back(x);
  }
  return out;
}

const std::map<Elem, Elem>& FinStructure::table(const FunSym& g) const {
  auto t = funs_.find(g);
  return t == funs_.end() ? empty_table() : t->second;
}

Elem FinStructure::next_id() const { return sorts_.empty() ? 0 : sorts_.rbegin()->first + 1; }

FinStructure FinStructure::induced(const ElemSet& keep) const {
  FinStructure out(sig_);
  for (Elem x : keep) {
    auto it = sorts_.find(x);
    if (it != sorts_.end()) out.sorts_.emplace(x, it->second);
  }
  for (const auto& [g, tab] : funs_) {
    for (const auto& [x, y] : tab) {
      if (keep.count(x) && keep.count(y) && out.contains(x)) out.funs_[g][x] = y;
    }
  }
  return out;
}

FinStructure FinStructure::reduct(const Signature& sub) const {
  FinStructure out(sub);
  for (const auto& [x, s] : sorts_) {
    out.sorts_.emplace(x, (s.is_param() && !sub.has_level(s.level)) ? Sort::none() : s);
  }
  for (const auto& [g, tab] : funs_) {
    if (sub.has_symbol(g)) out.funs_[g] = tab;
  }
  return out;
}

FinStructure FinStructure::relabel(const ElementMap& rename) const {
  auto image = [&](Elem x) {
    auto it = rename.find(x);
    if (it == rename.end()) throw PreconditionError("relabel map is not total");
    return it->second;
  };
  FinStructure out(sig_);
  for (const auto& [x, s] : sorts_) out.add(image(x), s);
  for (const auto& [g, tab] : funs_) {
    for (const auto& [x, y] : tab) out.funs_[g][image(x)] = image(y);
  }
  return out;
}

ElemSet closure(const FinStructure& m, const ElemSet& seeds) {
  const auto symbols = m.signature().function_symbols();
  ElemSet seen;
  std::deque<Elem> todo;
  for (Elem x : seeds) {
    if (m.contains(x) && seen.insert(x).second) todo.push_back(x);
  }
  while (!todo.empty()) {
    const Elem x = todo.front();
    todo.pop_front();
    for (const auto& g : symbols) {
      const Elem y = m.apply(g, x);
      if (m.contains(y) && seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

FinStructure generated_substructure(const FinStructure& m, const ElemSet& seeds) {
  return m.induced(closure(m, seeds));
}

bool is_substructure(const FinStructure& sub, const FinStructure& m) {
  if (!(sub.signature() == m.signature())) return false;
  for (const auto& [x, s] : sub.sorts()) {
    if (!m.contains(x) || m.sort_of(x) != s) return false;
  }
  for (const auto& g : m.signature().function_symbols()) {
    for (const auto& [x, s] : sub.sorts()) {
      const Elem y = m.apply(g, x);
      if (!sub.contains(y) || sub.apply(g, x) != y) return false;
    }
  }
  return true;
}

FinStructure merge(const FinStructure& a, const FinStructure& b) {
  if (!(a.signature() == b.signature())) throw SignatureMismatch("cannot merge: signatures differ");
  FinStructure out = a;
  for (const auto& [x, s] : b.sorts()) {
    if (out.contains(x)) {
      if (out.sort_of(x) != s) {
        throw PreconditionError("element " + std::to_string(x) + " has conflicting sorts");
      }
    } else {
      out.add(x, s);
    }
  }
  for (const auto& g : a.signature().function_symbols()) {
    for (const auto& [x, s] : b.sorts()) {
      const Elem yb = b.apply(g, x);
      if (a.contains(x)) {
        if (a.apply(g, x) != yb) {
          throw PreconditionError("element " + std::to_string(x) + " has conflicting " +
                                  to_string(g) + " values");
        }
      } else {
        out.set(g, x, yb);
      }
    }
  }
  return out;
}

ElemSet to_set(std::span<const Elem> xs) { return ElemSet(xs.begin(), xs.end()); }

}  // namespace treeprop
