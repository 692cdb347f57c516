#include "treeprop/axioms.hpp"

#include "treeprop/errors.hpp"

namespace treeprop {

namespace {

std::string show(Elem x) { return std::to_string(x); }

void violation(AxiomReport& r, int axiom, std::vector<Elem> w, std::string why) {
  r.ok = false;
  r.violations.push_back({axiom, std::move(w), std::move(why)});
}

void check_plain(const FinStructure& m, AxiomReport& r) {
  for (int a : m.signature().levels()) {
    const auto pa = FunSym::p(a);
    for (const auto& [x, s] : m.sorts()) {
      const Elem y = m.apply(pa, x);
      if (s.is_object()) {
        if (!m.sort_of(y).is_param(a)) {
          violation(r, 3, {x, y}, "p_" + std::to_string(a) + "(" + show(x) + ") = " + show(y) +
                                      " is not in P" + std::to_string(a));
        }
      } else if (y != x) {
        violation(r, 3, {x, y}, "p_" + std::to_string(a) + " moves non-object " + show(x));
      }
    }
  }
}

void check_tree(const FinStructure& m, const Coloring& f, AxiomReport& r) {
  const auto& levels = m.signature().levels();

  // Axiom 2: targets of f_{ab}.
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      const int a = levels[i];
      const int b = levels[j];
      const auto g = FunSym::f(a, b);
      for (const auto& [x, s] : m.sorts()) {
        const Elem y = m.apply(g, x);
        if (s.is_param(b)) {
          if (!m.sort_of(y).is_param(a)) {
            violation(r, 2, {x, y}, to_string(g) + "(" + show(x) + ") = " + show(y) +
                                        " is not in P" + std::to_string(a));
          }
        } else if (y != x) {
          violation(r, 2, {x, y}, to_string(g) + " moves " + show(x) + " outside P" +
                                      std::to_string(b));
        }
      }
    }
  }

  for (int a : levels) {
    const auto g = FunSym::f(a, a);
    for (const auto& [x, y] : m.table(g)) {
      violation(r, 2, {x, y}, to_string(g) + " is not the identity at " + show(x));
    }
  }

  // Axiom 2: functoriality over every triple a < b < c.
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      for (std::size_t k = j + 1; k < levels.size(); ++k) {
        const int a = levels[i];
        const int b = levels[j];
        const int c = levels[k];
        for (Elem x : m.of_sort(Sort::param(c))) {
          const Elem direct = m.ancestor(a, c, x);
          const Elem composed = m.ancestor(a, b, m.ancestor(b, c, x));
          if (direct != composed) {
            violation(r, 2, {x, direct, composed},
                      "f_" + std::to_string(a) + "_" + std::to_string(c) + "(" + show(x) +
                          ") != f_" + std::to_string(a) + "_" + std::to_string(b) + "(f_" +
                          std::to_string(b) + "_" + std::to_string(c) + "(" + show(x) + "))");
          }
        }
      }
    }
  }

  // Axiom 3.
  for (int a : levels) {
    const auto pa = FunSym::p(a);
    for (const auto& [x, s] : m.sorts()) {
      const Elem y = m.apply(pa, x);
      if (y == x) continue;
      if (!s.is_object()) {
        violation(r, 3, {x, y}, "p_" + std::to_string(a) + " moves non-object " + show(x));
      } else if (!m.sort_of(y).is_param(a)) {
        violation(r, 3, {x, y}, "p_" + std::to_string(a) + "(" + show(x) + ") = " + show(y) +
                                    " is not in P" + std::to_string(a));
      }
    }
  }

  // Axiom 4.
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      const int a = levels[i];
      const int b = levels[j];
      if (f.at(a, b) != 0) continue;
      for (Elem z : m.of_sort(Sort::object())) {
        const Elem x = m.apply(FunSym::p(a), z);
        const Elem y = m.apply(FunSym::p(b), z);
        if (!m.sort_of(x).is_param(a) || !m.sort_of(y).is_param(b)) continue;
        const Elem down = m.ancestor(a, b, y);
        if (down != x) {
          violation(r, 4, {z, x, y},
                    "f({" + std::to_string(a) + "," + std::to_string(b) + "}) = 0 forces f_" +
                        std::to_string(a) + "_" + std::to_string(b) + "(" + show(y) + ") = " +
                        show(x) + ", found " + show(down));
        }
      }
    }
  }
}

}  // namespace

void check_well_formed(const FinStructure& m) {
  const auto& sig = m.signature();
  for (const auto& [x, s] : m.sorts()) {
    if (s.is_param() && !sig.has_level(s.level)) {
      throw MalformedStructure("element " + show(x) + " has sort outside the signature");
    }
  }
  for (const auto& [g, tab] : m.tables()) {
    if (!sig.has_symbol(g)) throw MalformedStructure("symbol " + to_string(g) + " not in signature");
    for (const auto& [x, y] : tab) {
      if (!m.contains(x) || !m.contains(y)) {
        throw MalformedStructure("table " + to_string(g) + " maps " + show(x) + " -> " + show(y) +
                                 " outside the domain");
      }
    }
  }
}

AxiomReport check_axioms(const FinStructure& m, const Coloring& f) {
  check_well_formed(m);
  AxiomReport r;
  if (m.signature().variant() == Variant::Plain) {
    check_plain(m, r);
    return r;
  }
  const auto& levels = m.signature().levels();
  if (levels.size() >= 2 && levels.back() >= f.n()) {
    throw PreconditionError("coloring does not cover level " + std::to_string(levels.back()));
  }
  check_tree(m, f, r);
  return r;
}

AxiomReport check_axioms(const FinStructure& m) {
  const auto& sig = m.signature();
  if (sig.variant() == Variant::Tree && sig.levels().size() > 1) {
    throw PreconditionError("tree structures with two or more levels need a coloring");
  }
  return check_axioms(m, Coloring(0, 1));
}

}  // namespace treeprop
