#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treeprop/coloring.hpp"
#include "treeprop/structure.hpp"

namespace treeprop {

/// Atomic shapes of the 1-type normal form. `idx` holds, in order:
///   Eq      {l}            x = a_l
///   PFixed  {g}            p_g(x) = x
///   PEq     {g, l}         p_g(x) = a_l
///   FPEq    {g, d, l}      f_{gd}(p_d(x)) = a_l,             g < d
///   FPIdent {d, g, g2}     f_{dg}(p_g(x)) = f_{dg2}(p_g2(x)), d <= g < g2
///   FEq     {g, a, l}      f_{ga}(x) = a_l,                   g < a
enum class LitShape { Eq, PFixed, PEq, FPEq, FPIdent, FEq };

struct Literal {
  LitShape shape = LitShape::Eq;
  std::vector<int> idx;
  bool positive = true;

  bool operator==(const Literal&) const = default;
  auto operator<=>(const Literal&) const = default;
};

std::string to_string(LitShape s);
LitShape lit_shape_from_string(const std::string& s);
/// Human-readable form, e.g. "p_0(x) = a_1" or "not f_0_1(p_1(x)) = a_0".
std::string describe(const Literal& lit);

struct TypeKind {
  bool object = true;
  int level = -1;  // for parameter types

  static TypeKind obj() { return {true, -1}; }
  static TypeKind param(int l) { return {false, l}; }
  bool operator==(const TypeKind&) const = default;
};

/// A quantifier-free 1-type over a closed parameter tuple. The ambient
/// structure holds the parameters (and their closure) with their full
/// signature, so instances from one model can be combined.
struct TypeInstance {
  TypeKind kind;
  std::vector<int> levels;
  std::vector<Elem> params;
  std::vector<Literal> literals;
  FinStructure ambient;

  bool operator==(const TypeInstance&) const = default;
};

/// Evaluates a literal at x in E with parameter tuple `params`.
bool eval_literal(const FinStructure& e, Elem x, const std::vector<Elem>& params, const Literal& lit);

/// The complete normal-form description of b over a.
///
/// `levels` defaults to M's levels and must be a subset of them. When `root`
/// is given, a parameter-sorted b must sit at a root level. Throws
/// UnsupportedCase when b is sortless in L_levels, outside the root, or among
/// the parameters, and PreconditionError when a is not closed in L_levels.
///
/// Literals are listed for every menu entry whose parameter index has a
/// compatible sort (p_g(x) and f_{gd}(...) can only equal a P_g parameter),
/// each with its truth value. FPIdent is listed for every triple.
TypeInstance classify_type(const FinStructure& m, Elem b, const std::vector<Elem>& a,
                           const std::optional<std::vector<int>>& levels = std::nullopt,
                           const std::optional<std::vector<int>>& root = std::nullopt);

struct Witness {
  FinStructure e;
  Elem x = 0;
};

/// The common base A0: the merged ambients reduced to the union W of the
/// instance level sets, cut down to the closure of all parameters.
/// Throws SignatureMismatch when ambients differ in signature and
/// PreconditionError when they disagree on shared elements.
FinStructure common_base(const std::vector<TypeInstance>& instances);

/// Searches for E extending A0 with one new element x realizing every
/// instance, E a model under f. Only extensions generated by A0 and x are
/// explored, which loses nothing because the axioms are universal; such an
/// extension adds x and at most |W|(|W|+1)/2 new parameter nodes.
///
/// Candidate values of p_g(x) are tried level by level from the top:
/// x itself, a P_g element of A0, an earlier new node, or a new node whose
/// ancestor chain is then chosen the same way. Literals are checked as soon
/// as their terms are fixed, and the path axiom is checked incrementally.
/// Throws PreconditionError when A0 fails the axioms.
std::optional<Witness> find_witness(const std::vector<TypeInstance>& instances, const Coloring& f);

bool is_consistent(const std::vector<TypeInstance>& instances, const Coloring& f);

/// For an inconsistent set: a short reason. Names the forced equation when
/// two positive connections at levels a < b with f({a,b}) = 0 point at
/// parameters that are not f_ab-related.
std::string explain_inconsistency(const std::vector<TypeInstance>& instances, const Coloring& f);

}  // namespace treeprop
