#pragma once

#include <vector>

#include "treeprop/coloring.hpp"
#include "treeprop/structure.hpp"

namespace treeprop {

/// B u C with union interpretations. A must be a substructure of both and
/// B, C must meet exactly in A's elements (OverlapError otherwise).
FinStructure free_amalgam(const FinStructure& a, const FinStructure& b, const FinStructure& c);

struct ReductExtension {
  FinStructure d;
  ElementMap pi_tilde;  // C -> D
};

/// One-level extension of a reduct embedding.
///
/// A, B live over L_w, C over L_v with v = w u {gamma}; C restricted to L_w
/// extends A and everything in C outside A lies in P_gamma. pi: A -> B is an
/// L_w-embedding. Returns D over L_v generated by B and an embedding C -> D
/// extending pi.
///
/// Tree: with a* the least level of w above gamma, every d in P_{a*}(B) that
/// is not the image of a P_{a*} element of C gets a new element *_d in P_gamma
/// with f_{gamma a*}(d) = *_d. The other maps through gamma are forced by
/// composition.
///
/// Plain: p_gamma has to be total on objects, so every object e of B outside
/// pi(O(C)) gets a new element *_e in P_gamma with p_gamma(e) = *_e.
///
/// Elements of P_gamma(C) outside A keep their identifiers when these are
/// free in B, otherwise they and all * elements get fresh identifiers above
/// everything in B.
ReductExtension extend_reduct(const FinStructure& a, const FinStructure& b, const ElementMap& pi,
                              const FinStructure& c, int gamma);

struct TwoTypeAmalgam {
  FinStructure d;
  std::vector<Elem> g;
};

/// Amalgam of a d-extension B of A over L_w and an e-extension C of A over
/// L_w', glued along the L_v-isomorphism induced by d -> e (v = w n w').
///
/// Requires alpha < beta < gamma and f({beta, gamma}) = 1 for every alpha in
/// v, beta in w \ v, gamma in w' \ v; otherwise HypothesisError. A failing
/// L_v-isomorphism over A raises TypeMismatch.
///
/// With gamma0 = min(w' \ v), each new c in P_{gamma0} and each alpha in
/// w \ v gets a padding element *_{alpha,c} in P_alpha with
/// f_{alpha gamma0}(c) = *_{alpha,c}. Padding elements get fresh identifiers
/// in order of c, then alpha.
TwoTypeAmalgam two_type_amalgam(const FinStructure& a, const FinStructure& b,
                                const std::vector<Elem>& d, const FinStructure& c,
                                const std::vector<Elem>& e, const Coloring& f);

/// Checks the coloring hypothesis of two_type_amalgam without building
/// anything. Empty level differences make it vacuous.
bool two_type_hypothesis(const std::vector<int>& w, const std::vector<int>& w_prime,
                         const Coloring& f);

}  // namespace treeprop
