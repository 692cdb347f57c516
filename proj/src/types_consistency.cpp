#include "treeprop/types_consistency.hpp"

#include <algorithm>
#include <functional>

#include "treeprop/axioms.hpp"
#include "treeprop/errors.hpp"

namespace treeprop {

std::string to_string(LitShape s) {
  switch (s) {
    case LitShape::Eq:
      return "eq";
    case LitShape::PFixed:
      return "p_fixed";
    case LitShape::PEq:
      return "p_eq";
    case LitShape::FPEq:
      return "fp_eq";
    case LitShape::FPIdent:
      return "fp_ident";
    case LitShape::FEq:
      return "f_eq";
  }
  return "eq";
}

LitShape lit_shape_from_string(const std::string& s) {
  for (auto shape : {LitShape::Eq, LitShape::PFixed, LitShape::PEq, LitShape::FPEq, LitShape::FPIdent,
                     LitShape::FEq}) {
    if (to_string(shape) == s) return shape;
  }
  throw MalformedStructure("unknown literal shape '" + s + "'");
}

namespace {

std::size_t arity(LitShape s) {
  switch (s) {
    case LitShape::Eq:
    case LitShape::PFixed:
      return 1;
    case LitShape::PEq:
      return 2;
    default:
      return 3;
  }
}

std::string lv(int l) { return std::to_string(l); }

}  // namespace

std::string describe(const Literal& lit) {
  const auto& i = lit.idx;
  if (i.size() != arity(lit.shape)) return "<bad literal>";
  std::string body;
  switch (lit.shape) {
    case LitShape::Eq:
      body = "x = a_" + lv(i[0]);
      break;
    case LitShape::PFixed:
      body = "p_" + lv(i[0]) + "(x) = x";
      break;
    case LitShape::PEq:
      body = "p_" + lv(i[0]) + "(x) = a_" + lv(i[1]);
      break;
    case LitShape::FPEq:
      body = "f_" + lv(i[0]) + "_" + lv(i[1]) + "(p_" + lv(i[1]) + "(x)) = a_" + lv(i[2]);
      break;
    case LitShape::FPIdent:
      body = "f_" + lv(i[0]) + "_" + lv(i[1]) + "(p_" + lv(i[1]) + "(x)) = f_" + lv(i[0]) + "_" +
             lv(i[2]) + "(p_" + lv(i[2]) + "(x))";
      break;
    case LitShape::FEq:
      body = "f_" + lv(i[0]) + "_" + lv(i[1]) + "(x) = a_" + lv(i[2]);
      break;
  }
  return lit.positive ? body : "not " + body;
}

bool eval_literal(const FinStructure& e, Elem x, const std::vector<Elem>& params, const Literal& lit) {
  const auto& i = lit.idx;
  if (i.size() != arity(lit.shape)) throw MalformedStructure("literal has the wrong number of indices");
  auto par = [&](int l) {
    if (l < 0 || l >= static_cast<int>(params.size())) throw MalformedStructure("literal index out of range");
    return params[l];
  };
  auto p = [&](int g) { return e.apply(FunSym::p(g), x); };
  bool holds = false;
  switch (lit.shape) {
    case LitShape::Eq:
      holds = x == par(i[0]);
      break;
    case LitShape::PFixed:
      holds = p(i[0]) == x;
      break;
    case LitShape::PEq:
      holds = p(i[0]) == par(i[1]);
      break;
    case LitShape::FPEq:
      holds = e.ancestor(i[0], i[1], p(i[1])) == par(i[2]);
      break;
    case LitShape::FPIdent:
      holds = e.ancestor(i[0], i[1], p(i[1])) == e.ancestor(i[0], i[2], p(i[2]));
      break;
    case LitShape::FEq:
      holds = e.ancestor(i[0], i[1], x) == par(i[2]);
      break;
  }
  return holds == lit.positive;
}

TypeInstance classify_type(const FinStructure& m, Elem b, const std::vector<Elem>& a,
                           const std::optional<std::vector<int>>& levels,
                           const std::optional<std::vector<int>>& root) {
  const Signature& sig = m.signature();
  std::vector<int> w = levels ? *levels : sig.levels();
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  for (int l : w) {
    if (!sig.has_level(l)) throw PreconditionError("classify_type: level " + lv(l) + " not in the structure");
  }
  if (!m.contains(b)) throw PreconditionError("classify_type: element not in the structure");
  const FinStructure mw = m.reduct(Signature(sig.variant(), w));
  const Sort sb = mw.sort_of(b);
  if (sb.is_none()) throw UnsupportedCase("classify_type: element is not named by a predicate of L_w");
  if (sb.is_param() && root && std::find(root->begin(), root->end(), sb.level) == root->end()) {
    throw UnsupportedCase("classify_type: element lies at a level outside the root");
  }
  if (std::find(a.begin(), a.end(), b) != a.end()) {
    throw UnsupportedCase("classify_type: element is among the parameters (algebraic type)");
  }
  for (Elem y : a) {
    if (!m.contains(y)) throw PreconditionError("classify_type: parameter not in the structure");
  }
  const ElemSet aset = to_set(a);
  if (closure(mw, aset) != aset) throw PreconditionError("classify_type: parameters are not closed in L_w");

  TypeInstance t;
  t.kind = sb.is_object() ? TypeKind::obj() : TypeKind::param(sb.level);
  t.levels = w;
  t.params = a;
  t.ambient = generated_substructure(m, aset);
  const bool tree = sig.variant() == Variant::Tree;
  const int n = static_cast<int>(a.size());
  auto sorted_at = [&](int l, int g) { return mw.sort_of(a[l]).is_param(g); };
  auto add = [&](LitShape s, std::vector<int> idx) {
    Literal lit{s, std::move(idx), true};
    lit.positive = eval_literal(m, b, a, lit);
    t.literals.push_back(std::move(lit));
  };

  for (int l = 0; l < n; ++l) add(LitShape::Eq, {l});
  if (t.kind.object) {
    for (int g : w) {
      if (tree) add(LitShape::PFixed, {g});
      for (int l = 0; l < n; ++l) {
        if (sorted_at(l, g)) add(LitShape::PEq, {g, l});
      }
    }
    if (tree) {
      for (int g : w) {
        for (int d : w) {
          if (g >= d) continue;
          for (int l = 0; l < n; ++l) {
            if (sorted_at(l, g)) add(LitShape::FPEq, {g, d, l});
          }
        }
      }
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i; j < w.size(); ++j) {
          for (std::size_t k = j + 1; k < w.size(); ++k) add(LitShape::FPIdent, {w[i], w[j], w[k]});
        }
      }
    }
  } else if (tree) {
    for (int g : w) {
      if (g >= sb.level) continue;
      for (int l = 0; l < n; ++l) {
        if (sorted_at(l, g)) add(LitShape::FEq, {g, sb.level, l});
      }
    }
  }
  return t;
}

FinStructure common_base(const std::vector<TypeInstance>& instances) {
  if (instances.empty()) throw PreconditionError("no type instances");
  FinStructure merged = instances.front().ambient;
  for (std::size_t i = 1; i < instances.size(); ++i) merged = merge(merged, instances[i].ambient);
  std::vector<int> w;
  ElemSet seeds;
  for (const auto& t : instances) {
    w = level_union(w, t.levels);
    for (Elem y : t.params) {
      if (!merged.contains(y)) throw PreconditionError("parameter missing from its ambient structure");
      seeds.insert(y);
    }
  }
  if (w.empty()) throw PreconditionError("type instances without levels");
  for (int l : w) {
    if (!merged.signature().has_level(l)) throw PreconditionError("instance level outside the ambient signature");
  }
  const FinStructure reduced = merged.reduct(merged.signature().restrict_to(w));
  return generated_substructure(reduced, seeds);
}

namespace {

struct BoundLiteral {
  const Literal* lit;
  const std::vector<Elem>* params;
  int trigger;  // level after which the literal's terms are fixed; -1 = start
};

class WitnessSearch {
 public:
  WitnessSearch(const FinStructure& a0, const Coloring& f, TypeKind kind, std::vector<BoundLiteral> lits)
      : a0_(a0), f_(f), kind_(kind), lits_(std::move(lits)), w_(a0.signature().levels()),
        tree_(a0.signature().variant() == Variant::Tree), e_(a0) {
    x_ = a0.next_id();
    next_ = x_ + 1;
  }

  std::optional<Witness> run() {
    if (kind_.object) {
      e_.add(x_, Sort::object());
      if (!check_trigger(-1)) return std::nullopt;
      desc_.assign(w_.rbegin(), w_.rend());
      if (dfs(0)) return result_;
    } else {
      e_.add(x_, Sort::param(kind_.level));
      if (!check_trigger(-1)) return std::nullopt;
      auto done = [this] { return finish(); };
      if (!tree_) {
        if (finish()) return result_;
      } else if (chain(x_, kind_.level, done)) {
        return result_;
      }
    }
    return std::nullopt;
  }

 private:
  struct State {
    FinStructure e;
    std::map<int, std::vector<Elem>> fresh;
    Elem next;
  };

  State save() const { return {e_, fresh_, next_}; }
  void restore(State s) {
    e_ = std::move(s.e);
    fresh_ = std::move(s.fresh);
    next_ = s.next;
  }

  Elem new_node(int level) {
    const Elem n = next_++;
    e_.add(n, Sort::param(level));
    fresh_[level].push_back(n);
    return n;
  }

  int pred(int level) const {
    auto it = std::lower_bound(w_.begin(), w_.end(), level);
    return it == w_.begin() ? -1 : *std::prev(it);
  }

  void link(Elem n, int level, Elem parent) {
    const int pl = pred(level);
    e_.set(FunSym::f(pl, level), n, parent);
    for (int d : w_) {
      if (d < pl) e_.set(FunSym::f(d, level), n, e_.ancestor(d, pl, parent));
    }
  }

  // Chooses the ancestor chain of the new node n at `level`, then runs k.
  bool chain(Elem n, int level, const std::function<bool()>& k) {
    const int pl = pred(level);
    if (pl < 0) return k();
    std::vector<Elem> opts = a0_.of_sort(Sort::param(pl));
    for (Elem y : fresh_[pl]) opts.push_back(y);
    for (Elem y : opts) {
      State s = save();
      link(n, level, y);
      if (k()) return true;
      restore(std::move(s));
    }
    State s = save();
    const Elem m = new_node(pl);
    if (chain(m, pl, [&] {
          link(n, level, m);
          return k();
        })) {
      return true;
    }
    restore(std::move(s));
    return false;
  }

  bool dfs(std::size_t i) {
    if (i == desc_.size()) return finish();
    const int g = desc_[i];
    const auto pg = FunSym::p(g);
    std::vector<Elem> opts;
    if (tree_) opts.push_back(x_);
    for (Elem y : a0_.of_sort(Sort::param(g))) opts.push_back(y);
    for (Elem y : fresh_[g]) opts.push_back(y);
    auto next = [&] { return check_trigger(g) && path_ok(g) && dfs(i + 1); };
    for (Elem y : opts) {
      State s = save();
      e_.set(pg, x_, y);
      if (next()) return true;
      restore(std::move(s));
    }
    State s = save();
    const Elem n = new_node(g);
    e_.set(pg, x_, n);
    const bool ok = tree_ ? chain(n, g, next) : next();
    if (ok) return true;
    restore(std::move(s));
    return false;
  }

  bool check_trigger(int level) const {
    for (const auto& b : lits_) {
      if (b.trigger == level && !eval_literal(e_, x_, *b.params, *b.lit)) return false;
    }
    return true;
  }

  // Axiom (4) between g and every level above it.
  bool path_ok(int g) const {
    if (!tree_) return true;
    const Elem pg = e_.apply(FunSym::p(g), x_);
    if (!e_.sort_of(pg).is_param(g)) return true;
    for (int b : w_) {
      if (b <= g || f_.at(g, b) != 0) continue;
      const Elem pb = e_.apply(FunSym::p(b), x_);
      if (e_.sort_of(pb).is_param(b) && e_.ancestor(g, b, pb) != pg) return false;
    }
    return true;
  }

  bool finish() {
    for (const auto& b : lits_) {
      if (!eval_literal(e_, x_, *b.params, *b.lit)) return false;
    }
    if (!check_axioms(e_, f_).ok) return false;
    result_ = Witness{e_, x_};
    return true;
  }

  const FinStructure& a0_;
  const Coloring& f_;
  TypeKind kind_;
  std::vector<BoundLiteral> lits_;
  std::vector<int> w_;
  bool tree_;
  FinStructure e_;
  Elem x_ = 0;
  Elem next_ = 0;
  std::map<int, std::vector<Elem>> fresh_;
  std::vector<int> desc_;
  std::optional<Witness> result_;
};

int trigger_of(const Literal& lit, bool object) {
  if (!object) return lit.shape == LitShape::Eq ? -1 : -2;
  switch (lit.shape) {
    case LitShape::Eq:
      return -1;
    case LitShape::PFixed:
    case LitShape::PEq:
      return lit.idx.at(0);
    case LitShape::FPIdent:
    case LitShape::FPEq:
      return lit.idx.at(1);
    case LitShape::FEq:
      return -2;
  }
  return -2;
}

}  // namespace

std::optional<Witness> find_witness(const std::vector<TypeInstance>& instances, const Coloring& f) {
  const FinStructure a0 = common_base(instances);
  if (!check_axioms(a0, f).ok) throw PreconditionError("the common base fails the axioms");
  const TypeKind kind = instances.front().kind;
  for (const auto& t : instances) {
    if (!(t.kind == kind)) return std::nullopt;
  }
  if (!kind.object && !a0.signature().has_level(kind.level)) {
    throw PreconditionError("parameter type at a level outside its level set");
  }
  std::vector<BoundLiteral> lits;
  for (const auto& t : instances) {
    for (const auto& lit : t.literals) {
      if (lit.idx.size() != arity(lit.shape)) throw MalformedStructure("literal has the wrong number of indices");
      int trig = trigger_of(lit, kind.object);
      if (trig >= 0 && !a0.signature().has_level(trig)) trig = -2;
      lits.push_back({&lit, &t.params, trig});
    }
  }
  return WitnessSearch(a0, f, kind, std::move(lits)).run();
}

bool is_consistent(const std::vector<TypeInstance>& instances, const Coloring& f) {
  return find_witness(instances, f).has_value();
}

std::string explain_inconsistency(const std::vector<TypeInstance>& instances, const Coloring& f) {
  const TypeKind kind = instances.front().kind;
  for (const auto& t : instances) {
    if (!(t.kind == kind)) return "the instances put x in different sorts";
  }
  const FinStructure a0 = common_base(instances);
  std::vector<std::pair<int, Elem>> links;
  for (const auto& t : instances) {
    for (const auto& lit : t.literals) {
      if (lit.shape == LitShape::PEq && lit.positive) links.emplace_back(lit.idx[0], t.params.at(lit.idx[1]));
    }
  }
  std::sort(links.begin(), links.end());
  const bool tree = a0.signature().variant() == Variant::Tree;
  for (std::size_t i = 0; i < links.size(); ++i) {
    for (std::size_t j = i + 1; j < links.size(); ++j) {
      const auto [ga, ea] = links[i];
      const auto [gb, eb] = links[j];
      if (ga == gb && ea != eb) {
        return "p_" + lv(ga) + "(x) cannot equal both " + std::to_string(ea) + " and " + std::to_string(eb);
      }
      if (tree && ga < gb && f.at(ga, gb) == 0 && a0.ancestor(ga, gb, eb) != ea) {
        return "f({" + lv(ga) + "," + lv(gb) + "}) = 0 forces f_" + lv(ga) + "_" + lv(gb) + "(" +
               std::to_string(eb) + ") = " + std::to_string(ea) + ", but f_" + lv(ga) + "_" + lv(gb) +
               "(" + std::to_string(eb) + ") = " + std::to_string(a0.ancestor(ga, gb, eb));
      }
    }
  }
  return "no extension of the common base realizes every instance";
}

}  // namespace treeprop
