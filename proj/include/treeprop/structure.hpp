#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "treeprop/signature.hpp"

namespace treeprop {

/// Elements are stable small non-negative integers.
using Elem = int;
using ElementMap = std::map<Elem, Elem>;
using ElemSet = std::set<Elem>;

/// A finite structure over a Signature.
///
/// Function tables are sparse: only values different from the argument are
/// stored, and every unstored value is the identity. The axioms make every
/// symbol the identity off its home sort, so only the interesting values are
/// data.
///
/// Mutators do not check that table entries stay inside the domain; that is
/// the job of check_axioms, which reports malformed data as an error. This
/// lets files with dangling references be loaded and diagnosed.
class FinStructure {
 public:
  FinStructure() = default;
  explicit FinStructure(Signature sig) : sig_(std::move(sig)) {}

  const Signature& signature() const { return sig_; }

  /// Adds a fresh element. Throws PreconditionError if `x` is present and
  /// MalformedStructure if the sort names a level outside the signature.
  void add(Elem x, Sort sort);
  /// Re-sorts an existing element.
  void set_sort(Elem x, Sort sort);
  /// Sets g(x) = y. Storing y == x erases the entry.
  void set(const FunSym& g, Elem x, Elem y);

  bool contains(Elem x) const { return sorts_.count(x) != 0; }
  std::size_t size() const { return sorts_.size(); }
  bool empty() const { return sorts_.empty(); }

  Sort sort_of(Elem x) const;
  Elem apply(const FunSym& g, Elem x) const;

  /// f_{ab}(x) with the convention f_{aa} = id.
  Elem ancestor(int lo, int hi, Elem x) const;

  std::vector<Elem> domain() const;
  std::vector<Elem> of_sort(const Sort& s) const;
  const std::map<Elem, Sort>& sorts() const { return sorts_; }
  /// Non-identity entries of g, possibly empty.
  const std::map<Elem, Elem>& table(const FunSym& g) const;
  const std::map<FunSym, std::map<Elem, Elem>>& tables() const { return funs_; }

  /// One more than the largest element, or 0 for the empty structure.
  Elem next_id() const;

  /// Induced structure on `keep`. Table entries whose value leaves `keep`
  /// are dropped, so callers pass closed sets.
  FinStructure induced(const ElemSet& keep) const;

  /// The same elements seen in a smaller language: sorts outside `sub`
  /// become None and symbols outside `sub` are dropped.
  FinStructure reduct(const Signature& sub) const;

  /// Copy with every element renamed through `rename`, which must be total on
  /// the domain and injective.
  FinStructure relabel(const ElementMap& rename) const;

  bool operator==(const FinStructure&) const = default;

 private:
  Signature sig_;
  std::map<Elem, Sort> sorts_;
  std::map<FunSym, std::map<Elem, Elem>> funs_;
};

/// Closure of `seeds` under every function symbol of M's signature, as an
/// induced structure. Seeds outside the domain are ignored.
FinStructure generated_substructure(const FinStructure& m, const ElemSet& seeds);
/// Closure as a bare element set.
ElemSet closure(const FinStructure& m, const ElemSet& seeds);

/// True iff `sub` has the same signature as `m`, its elements lie in `m` with
/// the same sorts, and every function of `m` restricted to sub's domain agrees
/// with `sub` and stays inside it.
bool is_substructure(const FinStructure& sub, const FinStructure& m);

/// Union of two structures with the same signature that agree on their common
/// elements. Throws PreconditionError on disagreement.
FinStructure merge(const FinStructure& a, const FinStructure& b);

ElemSet to_set(std::span<const Elem> xs);

}  // namespace treeprop
