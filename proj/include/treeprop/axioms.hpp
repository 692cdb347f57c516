#pragma once

#include <string>
#include <vector>

#include "treeprop/coloring.hpp"
#include "treeprop/structure.hpp"

namespace treeprop {

struct AxiomViolation {
  int axiom = 0;  // 1..4, numbered as in the tree theory; the plain p-axiom reports as 3
  std::vector<Elem> witnesses;
  std::string reason;
};

struct AxiomReport {
  bool ok = true;
  std::vector<AxiomViolation> violations;
};

/// Throws MalformedStructure if a table mentions an element outside the
/// domain or a sort names a level outside the signature.
void check_well_formed(const FinStructure& m);

/// Checks the universal axioms of the theory selected by m's variant.
///
/// Tree: f_{ab} sends P_b into P_a and is the identity elsewhere; f_{ac} =
/// f_{ab} o f_{bc} on P_c for every a < b < c; p_a is the identity off O and
/// lands in P_a when it moves; and for every a < b with f({a,b}) = 0, any
/// object z with p_a(z) in P_a and p_b(z) in P_b has f_{ab}(p_b(z)) = p_a(z).
///
/// Plain: p_a sends O into P_a and is the identity elsewhere.
///
/// `f` must cover every level of the signature (Tree variant with at least
/// two levels); it is ignored for Plain.
AxiomReport check_axioms(const FinStructure& m, const Coloring& f);

/// For structures where no coloring is needed: Plain, or Tree with one level.
/// Throws PreconditionError otherwise.
AxiomReport check_axioms(const FinStructure& m);

}  // namespace treeprop
