#pragma once

#include <compare>
#include <string>
#include <vector>

namespace treeprop {

/// Which language a structure lives in: the parameter-tree language with the
/// projection maps f_{ab}, or the plain language with only O, P_a and p_a.
enum class Variant { Tree, Plain };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// The unary predicate an element lies in. Sorts are single-valued, so the
/// predicates are pairwise disjoint by construction.
struct Sort {
  enum class Kind { None, Object, Param };

  Kind kind = Kind::None;
  int level = -1;  // meaningful for Param only

  static Sort none() { return {}; }
  static Sort object() { return {Kind::Object, -1}; }
  static Sort param(int level) { return {Kind::Param, level}; }

  bool is_none() const { return kind == Kind::None; }
  bool is_object() const { return kind == Kind::Object; }
  bool is_param() const { return kind == Kind::Param; }
  bool is_param(int lvl) const { return kind == Kind::Param && level == lvl; }

  auto operator<=>(const Sort&) const = default;
};

std::string to_string(const Sort& s);
/// Parses "O", "none" or "P<level>".
Sort sort_from_string(const std::string& s);

/// A unary function symbol: p_a, or f_{ab} with a < b.
struct FunSym {
  enum class Kind { F, P };

  Kind kind = Kind::P;
  int lo = 0;  // a in f_{ab}; the level of p_a
  int hi = 0;  // b in f_{ab}; equal to lo for p_a

  static FunSym p(int level) { return {Kind::P, level, level}; }
  static FunSym f(int lo, int hi) { return {Kind::F, lo, hi}; }

  bool is_p() const { return kind == Kind::P; }
  bool is_f() const { return kind == Kind::F; }

  auto operator<=>(const FunSym&) const = default;
};

std::string to_string(const FunSym& s);
/// Parses "p_<a>" or "f_<a>_<b>".
FunSym funsym_from_string(const std::string& s);

/// A finite level set w together with the variant that selects its symbols.
class Signature {
 public:
  Signature() = default;
  /// Sorts the levels; throws PreconditionError on duplicates, negatives or
  /// an empty level set.
  Signature(Variant variant, std::vector<int> levels);

  Variant variant() const { return variant_; }
  const std::vector<int>& levels() const { return levels_; }
  bool has_level(int level) const;

  /// The largest level strictly below `level`, or -1.
  int predecessor(int level) const;
  /// The smallest level strictly above `level`, or -1.
  int successor(int level) const;

  /// p_a for every level, then (Tree only) f_{ab} for every a < b, in
  /// lexicographic order.
  std::vector<FunSym> function_symbols() const;
  /// True for every symbol of the language, including the diagonal f_{aa}
  /// (which the axioms force to be the identity).
  bool has_symbol(const FunSym& s) const;

  /// Same variant, restricted to `sub` (which must be a nonempty subset).
  Signature restrict_to(const std::vector<int>& sub) const;

  bool operator==(const Signature&) const = default;

 private:
  Variant variant_ = Variant::Tree;
  std::vector<int> levels_{0};
};

/// Sorted union of two level sets.
std::vector<int> level_union(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> level_intersection(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> level_difference(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace treeprop
