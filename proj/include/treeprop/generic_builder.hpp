#pragma once

#include <vector>

#include "treeprop/coloring.hpp"
#include "treeprop/structure.hpp"

namespace treeprop {

/// B is a substructure of C; anchor embeds B into the current approximation.
struct ExtensionProblem {
  FinStructure b;
  FinStructure c;
  ElementMap anchor;
};

/// Returns M unchanged when some embedding C -> M extends the anchor;
/// otherwise glues a fresh copy of C to M over the anchor's image.
FinStructure resolve_extension(const FinStructure& m, const ExtensionProblem& prob, const Coloring& f);

/// One representative (elements 0..k-1) of every isomorphism type of model of
/// size k <= max_size, ordered by size and then canonical code.
std::vector<FinStructure> enumerate_models(const Signature& sig, const Coloring& f, int max_size);

/// An extension problem type: C with a closed proper subset B.
struct ProblemType {
  FinStructure b;
  FinStructure c;
};

/// Every (B, C) with |C| <= cap and B a proper closed subset of C, up to
/// isomorphism of the pair. Order: |C|, code of C, code of the marked pair.
std::vector<ProblemType> enumerate_problem_types(const Signature& sig, const Coloring& f, int cap);

struct GenericReport {
  int passes = 0;
  int problem_types = 0;
  long long realized_problems = 0;  // (type, anchor) pairs confirmed in the last pass
  int extensions_added = 0;
  bool complete = false;
};

struct GenericResult {
  FinStructure m;
  GenericReport report;
};

/// Budgeted fixpoint of the finite extension property. Each pass walks the
/// problem types and, for each, every anchor into the current structure in
/// lexicographic order, resolving unrealized ones. Stops after a pass with no
/// change (complete = true) or when a resolution would push the domain past
/// domain_cap (complete = false). Anchor checks run on `jobs` threads; the
/// result does not depend on `jobs`.
GenericResult build_generic(const Signature& sig, const Coloring& f, int problem_size_cap,
                            int domain_cap, int jobs = 1);

}  // namespace treeprop
