#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treeprop/coloring.hpp"
#include "treeprop/structure.hpp"
#include "treeprop/types_consistency.hpp"

namespace treeprop {

enum class PatternKind { Cdt, Inp, Sct };

std::string to_string(PatternKind k);
PatternKind pattern_kind_from_string(const std::string& s);

/// Formula of one row, in the parameter variable y = a_0 of the address tuple.
///   P:       p_level(x) = y
///   FP:      f_{lo level}(p_level(x)) = y
///   General: the literal list with kind, over the whole tuple
enum class RowShape { P, FP, General };

std::string to_string(RowShape s);
RowShape row_shape_from_string(const std::string& s);

struct PatternRow {
  RowShape shape = RowShape::P;
  int level = 0;
  int lo = -1;              // FP only
  std::vector<int> levels;  // w_alpha, the language of the row
  int bound = 2;            // n_alpha
  TypeKind kind = TypeKind::obj();  // General only
  std::vector<Literal> literals;    // General only

  bool operator==(const PatternRow&) const = default;
};

/// Tree patterns (cdt, sct) have rows 0..height and addresses eta of length
/// 0..height over {0..branching-1}; row |eta| is instantiated at eta. inp
/// patterns have `height` rows and `branching` columns; address {row, col}.
struct Pattern {
  PatternKind kind = PatternKind::Cdt;
  int height = 0;
  int branching = 2;
  std::vector<PatternRow> rows;
  std::map<std::vector<int>, std::vector<Elem>> params;

  bool operator==(const Pattern&) const = default;
};

/// Every address the pattern needs, in lexicographic order within each row.
std::vector<std::vector<int>> pattern_addresses(const Pattern& p);

/// "0.1.1" for tree addresses ("" for the root), "2,1" for array addresses.
std::string address_to_string(const Pattern& p, const std::vector<int>& addr);
std::vector<int> address_from_string(const Pattern& p, const std::string& s);

/// The formula of the row for `addr` instantiated at its parameters.
TypeInstance row_instance(const Pattern& p, const FinStructure& m, const std::vector<int>& addr);

struct ModelAndPattern {
  FinStructure m;
  Pattern pattern;
};

/// Nodes eta of length <= h over b letters, node of length a in P_a with
/// f_{a,|eta|}(eta) = eta|a; one object per leaf with p_a(o) = eta|a. Node
/// identifiers run breadth first, then the objects in leaf order. The pattern
/// has rows p_a(x) = y, a = 0..h, bound 2. f must cover {0..h}.
ModelAndPattern build_canonical_tree_model(int h, int b, const Coloring& f,
                                           PatternKind kind = PatternKind::Cdt);

/// Plain structure with parameters a_{r,i} = r * cols + i in P_r, and when
/// `materialize` is set one object per g: rows -> cols realizing
/// p_r(x) = a_{r,g(r)}. Rows p_r(x) = y, bound 2. BudgetExceeded when
/// cols^rows exceeds `object_cap` with materialization on.
ModelAndPattern build_plain_inp_model(int rows, int cols, bool materialize = true,
                                      std::uint64_t object_cap = 1'000'000);

struct VerifyMode {
  enum class Tag { Exhaustive, Sample, Auto };
  Tag tag = Tag::Exhaustive;
  int samples = 0;

  static VerifyMode exhaustive() { return {Tag::Exhaustive, 0}; }
  static VerifyMode sample(int k) { return {Tag::Sample, k}; }
  static VerifyMode automatic() { return {Tag::Auto, 0}; }
};

/// Parses "exhaustive", "auto" or "sample:<k>".
VerifyMode verify_mode_from_string(const std::string& s);

struct PatternCheck {
  std::string what;  // "path", "siblings", "row", "incomparable"
  std::vector<std::vector<int>> addresses;
  bool ok = true;
};

struct PatternReport {
  bool ok = true;
  std::string mode;  // mode actually used
  std::vector<PatternCheck> checks;
  int failed = 0;
};

/// cdt: every leaf path consistent and every sibling family n-inconsistent.
/// inp: every (or sampled) column choice consistent and every row
/// n-inconsistent. sct: every leaf path consistent and every incomparable
/// pair inconsistent. Auto samples 256 paths when rows * log2(cols) > 20.
/// Checks run on `jobs` threads; the report does not depend on `jobs`.
PatternReport verify_pattern(const Pattern& p, const FinStructure& m, const Coloring& f,
                             VerifyMode mode = VerifyMode::exhaustive(), std::uint64_t seed = 0,
                             int jobs = 1);

struct DeltaSystem {
  std::vector<int> root;
  std::vector<int> indices;
  std::vector<std::vector<int>> petals;
};

/// A subfamily of size m whose pairwise intersections all equal one root. With
/// `ordered`, also max root < min petal and, for picked i < j, max petal_i <
/// min petal_j (empty petals make these vacuous). Exact lexicographically
/// first search over index subsets when |family| <= 20; otherwise greedy over
/// candidate roots by frequency, which may miss solutions.
std::optional<DeltaSystem> find_delta_system(const std::vector<std::vector<int>>& family, int m,
                                             bool ordered);

struct HomogeneityCounterexample {
  int row_a = 0;
  int row_b = 0;
  int level_a = 0;
  int level_b = 0;
  int col_a = -1;
  int col_b = -1;
  bool inconsistent = false;  // the two instances are jointly inconsistent
  std::string reason;
};

struct HomogeneityResult {
  bool homogeneous = false;
  int color = 1;
  std::vector<int> levels;     // H
  std::vector<int> rows_used;  // rows surviving the pigeonhole steps
  int row_case = 0;            // 1, 2 or 3
  std::optional<HomogeneityCounterexample> counterexample;
};

/// Case analysis on the rows of an inp pattern whose row languages form an
/// ordered Delta-system. p_b(x) = y with b in a petal is case 1; f_{gb} o p_b
/// with both in the petal is case 2; with g in the root, case 3. Other shapes
/// raise UnsupportedCase. The most common case wins (ties to 1, then 2), the
/// designated level of each surviving row is b, and f = 1 is then checked on
/// [H]^2. On failure the first offending pair is returned together with the
/// first column pair whose instances are inconsistent, if any.
///
/// Plain ambients have no f_{ab} and no path axiom; the parameters are lifted
/// to the tree language with fresh, pairwise unrelated ancestor chains
/// before consistency is checked.
HomogeneityResult extract_homogeneous_from_inp(const Pattern& p, const FinStructure& m, const Coloring& f);

/// True iff for every i < j some xi in set i and zeta in set j have
/// f({xi, zeta}) = 0. The sets must be pairwise disjoint (PreconditionError).
bool check_linked_family(const Coloring& f, const std::vector<std::vector<int>>& family);

/// The tree-language copy of a plain structure's elements in `keep`, where
/// each parameter node gets its own chain of fresh ancestors.
FinStructure lift_plain_to_tree(const FinStructure& m, const ElemSet& keep);

}  // namespace treeprop
