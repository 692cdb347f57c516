#include "treeprop/amalgamation.hpp"

#include <algorithm>

#include "treeprop/embedding.hpp"
#include "treeprop/errors.hpp"

namespace treeprop {

FinStructure free_amalgam(const FinStructure& a, const FinStructure& b, const FinStructure& c) {
  if (!(a.signature() == b.signature()) || !(a.signature() == c.signature())) {
    throw SignatureMismatch("free_amalgam: signatures differ");
  }
  if (!is_substructure(a, b) || !is_substructure(a, c)) {
    throw PreconditionError("free_amalgam: A is not a common substructure of B and C");
  }
  for (const auto& [x, s] : c.sorts()) {
    if (b.contains(x) && !a.contains(x)) {
      throw OverlapError("free_amalgam: element " + std::to_string(x) + " lies in B and C but not in A");
    }
  }
  return merge(b, c);
}

ReductExtension extend_reduct(const FinStructure& a, const FinStructure& b, const ElementMap& pi,
                              const FinStructure& c, int gamma) {
  const Signature& sw = a.signature();
  if (!(sw == b.signature())) throw SignatureMismatch("extend_reduct: A and B differ in signature");
  if (sw.has_level(gamma)) throw PreconditionError("extend_reduct: gamma already in w");
  if (gamma < 0) throw PreconditionError("extend_reduct: negative level");
  auto vlevels = sw.levels();
  vlevels.push_back(gamma);
  const Signature sv(sw.variant(), vlevels);
  if (!(c.signature() == sv)) throw SignatureMismatch("extend_reduct: C is not over w u {gamma}");
  if (!is_embedding(a, b, pi)) throw PreconditionError("extend_reduct: pi is not an embedding A -> B");
  if (!is_substructure(a, c.reduct(sw))) {
    throw PreconditionError("extend_reduct: C restricted to L_w does not extend A");
  }
  for (const auto& [x, s] : c.sorts()) {
    if (!a.contains(x) && !s.is_param(gamma)) {
      throw PreconditionError("extend_reduct: new element " + std::to_string(x) + " of C is outside P_gamma");
    }
  }
  if (closure(c, to_set(a.domain())).size() != c.size()) {
    throw PreconditionError("extend_reduct: C is not generated by A");
  }

  const bool tree = sw.variant() == Variant::Tree;
  const auto pg = Sort::param(gamma);
  ReductExtension out{FinStructure(sv), {}};
  FinStructure& d = out.d;
  ElementMap& pt = out.pi_tilde;

  for (const auto& [x, s] : b.sorts()) d.add(x, s);
  for (const auto& [g, tab] : b.tables()) {
    for (const auto& [x, y] : tab) d.set(g, x, y);
  }

  Elem fresh = std::max(b.next_id(), c.next_id());
  for (const auto& [x, s] : c.sorts()) {
    if (a.contains(x)) {
      pt[x] = pi.at(x);
      if (s == pg) d.set_sort(pt[x], pg);
    } else {
      pt[x] = b.contains(x) ? fresh++ : x;
      d.add(pt[x], pg);
    }
  }

  std::vector<int> below;
  for (int l : sw.levels()) {
    if (l < gamma) below.push_back(l);
  }
  if (tree) {
    for (Elem x : c.of_sort(pg)) {
      for (int l : below) d.set(FunSym::f(l, gamma), pt[x], pt.at(c.ancestor(l, gamma, x)));
    }
  }

  const int astar = sw.successor(gamma);
  if (tree && astar >= 0) {
    ElementMap back;
    for (Elem x : a.of_sort(Sort::param(astar))) back[pi.at(x)] = x;
    const auto up = FunSym::f(gamma, astar);
    for (Elem x : b.of_sort(Sort::param(astar))) {
      if (auto it = back.find(x); it != back.end()) {
        d.set(up, x, pt.at(c.apply(up, it->second)));
      } else {
        const Elem star = fresh++;
        d.add(star, pg);
        d.set(up, x, star);
        for (int l : below) d.set(FunSym::f(l, gamma), star, b.ancestor(l, astar, x));
      }
    }
    for (int l : sw.levels()) {
      if (l <= astar) continue;
      for (Elem x : b.of_sort(Sort::param(l))) {
        d.set(FunSym::f(gamma, l), x, d.apply(up, b.ancestor(astar, l, x)));
      }
    }
  }

  const auto p = FunSym::p(gamma);
  ElementMap object_back;
  for (Elem x : a.of_sort(Sort::object())) object_back[pi.at(x)] = x;
  for (Elem x : b.of_sort(Sort::object())) {
    if (auto it = object_back.find(x); it != object_back.end()) {
      d.set(p, x, pt.at(c.apply(p, it->second)));
    } else if (!tree) {
      const Elem star = fresh++;
      d.add(star, pg);
      d.set(p, x, star);
    }
  }
  return out;
}

bool two_type_hypothesis(const std::vector<int>& w, const std::vector<int>& w_prime,
                         const Coloring& f) {
  const auto v = level_intersection(w, w_prime);
  const auto lo = level_difference(w, v);
  const auto hi = level_difference(w_prime, v);
  for (int al : v) {
    for (int be : lo) {
      for (int ga : hi) {
        if (!(al < be && be < ga)) return false;
        if (f.at(be, ga) != 1) return false;
      }
    }
  }
  if (v.empty()) {
    for (int be : lo) {
      for (int ga : hi) {
        if (!(be < ga) || f.at(be, ga) != 1) return false;
      }
    }
  }
  return true;
}

namespace {

// Builds the L_v-isomorphism over A induced by d -> e.
class LvIso {
 public:
  LvIso(const FinStructure& b, const FinStructure& c, const std::vector<int>& v)
      : b_(b), c_(c), v_(v) {
    for (int l : v) symbols_.push_back(FunSym::p(l));
    if (b.signature().variant() == Variant::Tree) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) symbols_.push_back(FunSym::f(v[i], v[j]));
      }
    }
  }

  void push(Elem x, Elem y) {
    if (auto it = fwd.find(x); it != fwd.end()) {
      if (it->second != y) throw TypeMismatch("d -> e is not a function on the generated L_v parts");
      return;
    }
    if (auto it = inv.find(y); it != inv.end() && it->second != x) {
      throw TypeMismatch("d -> e is not injective on the generated L_v parts");
    }
    if (lv_sort(b_.sort_of(x)) != lv_sort(c_.sort_of(y))) {
      throw TypeMismatch("elements " + std::to_string(x) + " and " + std::to_string(y) +
                         " differ in L_v sort");
    }
    fwd[x] = y;
    inv[y] = x;
    for (const auto& g : symbols_) push(b_.apply(g, x), c_.apply(g, y));
  }

  ElementMap fwd;
  ElementMap inv;

 private:
  Sort lv_sort(const Sort& s) const {
    if (s.is_object()) return s;
    if (s.is_param() && std::binary_search(v_.begin(), v_.end(), s.level)) return s;
    return Sort::none();
  }

  const FinStructure& b_;
  const FinStructure& c_;
  std::vector<int> v_;
  std::vector<FunSym> symbols_;
};

}  // namespace

TwoTypeAmalgam two_type_amalgam(const FinStructure& a, const FinStructure& b,
                                const std::vector<Elem>& d, const FinStructure& c,
                                const std::vector<Elem>& e, const Coloring& f) {
  const Variant var = a.signature().variant();
  if (b.signature().variant() != var || c.signature().variant() != var) {
    throw SignatureMismatch("two_type_amalgam: variants differ");
  }
  const auto& w = b.signature().levels();
  const auto& wp = c.signature().levels();
  if (a.signature().levels() != level_union(w, wp)) {
    throw SignatureMismatch("two_type_amalgam: A must live over w u w'");
  }
  if (d.size() != e.size()) throw PreconditionError("two_type_amalgam: |d| != |e|");
  const bool tree = var == Variant::Tree;
  if (tree && !two_type_hypothesis(w, wp, f)) {
    throw HypothesisError("two_type_amalgam: coloring hypothesis fails (need v < w\\v < w'\\v and f = 1 across)");
  }
  if (!is_substructure(a.reduct(b.signature()), b)) {
    throw PreconditionError("two_type_amalgam: B does not extend A over L_w");
  }
  if (!is_substructure(a.reduct(c.signature()), c)) {
    throw PreconditionError("two_type_amalgam: C does not extend A over L_w'");
  }
  ElemSet bseed = to_set(a.domain());
  ElemSet cseed = bseed;
  for (Elem x : d) {
    if (!b.contains(x)) throw PreconditionError("two_type_amalgam: d not in B");
    bseed.insert(x);
  }
  for (Elem x : e) {
    if (!c.contains(x)) throw PreconditionError("two_type_amalgam: e not in C");
    cseed.insert(x);
  }
  if (closure(b, bseed).size() != b.size() || closure(c, cseed).size() != c.size()) {
    throw PreconditionError("two_type_amalgam: B or C is not generated by the tuple and A");
  }

  const auto v = level_intersection(w, wp);
  LvIso iso(b, c, v);
  for (Elem x : a.domain()) iso.push(x, x);
  for (std::size_t i = 0; i < d.size(); ++i) iso.push(d[i], e[i]);

  TwoTypeAmalgam out{FinStructure(a.signature()), d};
  FinStructure& m = out.d;

  for (const auto& [x, s] : b.sorts()) {
    Sort sort = s;
    if (a.contains(x)) {
      sort = a.sort_of(x);
    } else if (auto it = iso.fwd.find(x); it != iso.fwd.end()) {
      const Sort other = c.sort_of(it->second);
      if (!s.is_none() && !other.is_none() && s != other) {
        throw TypeMismatch("element " + std::to_string(x) + " gets two sorts");
      }
      if (sort.is_none()) sort = other;
    }
    m.add(x, sort);
  }
  Elem fresh = std::max(b.next_id(), c.next_id());
  ElementMap psi;
  for (const auto& [y, s] : c.sorts()) {
    if (auto it = iso.inv.find(y); it != iso.inv.end()) {
      psi[y] = it->second;
    } else {
      psi[y] = m.contains(y) ? fresh++ : y;
      m.add(psi[y], s);
    }
  }

  for (const auto& [g, tab] : a.tables()) {
    for (const auto& [x, y] : tab) m.set(g, x, y);
  }
  for (const auto& g : b.signature().function_symbols()) {
    for (const auto& [x, y] : b.table(g)) m.set(g, x, y);
  }
  for (const auto& g : c.signature().function_symbols()) {
    for (const auto& [x, y] : c.table(g)) m.set(g, psi.at(x), psi.at(y));
  }

  const auto lo = level_difference(w, v);
  const auto hi = level_difference(wp, v);
  if (tree && !lo.empty() && !hi.empty()) {
    const int g0 = hi.front();
    for (Elem cnew : m.of_sort(Sort::param(g0))) {
      if (a.contains(cnew)) continue;
      std::map<int, Elem> stars;
      for (int al : lo) {
        stars[al] = fresh++;
        m.add(stars[al], Sort::param(al));
        m.set(FunSym::f(al, g0), cnew, stars[al]);
      }
      for (int al : lo) {
        for (int xi : v) m.set(FunSym::f(xi, al), stars[al], m.ancestor(xi, g0, cnew));
        for (int al2 : lo) {
          if (al2 < al) m.set(FunSym::f(al2, al), stars[al], stars[al2]);
        }
      }
    }
    for (int be : hi) {
      if (be == g0) continue;
      for (Elem x : m.of_sort(Sort::param(be))) {
        if (a.contains(x)) continue;
        const Elem y = m.ancestor(g0, be, x);
        for (int al : lo) m.set(FunSym::f(al, be), x, m.ancestor(al, g0, y));
      }
    }
  }
  return out;
}

}  // namespace treeprop
