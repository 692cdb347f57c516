#pragma once

#include <optional>
#include <vector>

#include "treeprop/structure.hpp"

namespace treeprop {

/// Checks that h is total on A, injective, sort preserving, lands in B and
/// commutes with every function symbol.
bool is_embedding(const FinStructure& a, const FinStructure& b, const ElementMap& h);

/// First embedding A -> B extending `partial`, or nullopt.
///
/// Backtracking over A's elements in ascending order, candidates in ascending
/// order, with forced values propagated through the function tables. Throws
/// SignatureMismatch when the signatures differ.
std::optional<ElementMap> find_embedding(const FinStructure& a, const FinStructure& b,
                                         const ElementMap& partial = {});

/// Every embedding extending `partial`, in the same order find_embedding
/// would meet them. `limit` = 0 means no limit.
std::vector<ElementMap> all_embeddings(const FinStructure& a, const FinStructure& b,
                                       const ElementMap& partial = {}, std::size_t limit = 0);

/// Same size and an embedding extending `partial`.
std::optional<ElementMap> find_isomorphism(const FinStructure& a, const FinStructure& b,
                                           const ElementMap& partial = {});

/// Isomorphism-invariant code. Two structures with the same signature get the
/// same code iff they are isomorphic by a map respecting `marks` (an optional
/// per-element label; unmarked elements count as label -1).
///
/// Elements are first split by iterated refinement of (mark, sort, images,
/// preimage counts); the code is the lexicographically least encoding over
/// all orderings that respect the refined classes. Meant for small structures.
std::vector<int> canonical_code(const FinStructure& m, const std::map<Elem, int>& marks = {});

}  // namespace treeprop
