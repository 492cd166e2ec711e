// Modules of covariants over the invariant ring: for a character chi of G, the
// module M(V_chi) = (V_chi ⊗ R)^G is spanned, over R^G, by the monomials of
// weight -chi (v ⊗ m is invariant iff wt(m) + chi = 0). Hom-spaces between two
// such modules are again monomial spans, and composition is just polynomial
// multiplication. This tiny layer fixes those conventions once; everything
// downstream (quiver, resolutions, tilting) trusts it.
#pragma once

#include "gsc/monomials.hpp"

#include <vector>

namespace gsc {

struct CovariantModule {
  CombinedWeight character;
  std::vector<WeightSpace> bases; // index = degree, 0..D; monomials of weight -character
};

// Bases populated for all degrees <= D.
CovariantModule covariant_module(const GroupSpec& g, const CombinedWeight& chi, int D);

struct HomSpace {
  CombinedWeight source;      // character a
  CombinedWeight target;      // character b
  int degree = 0;
  std::vector<Monomial> basis; // monomials of degree d and weight a-b, largest first
};

// Hom(M(V_a), M(V_b)) in internal degree d: monomials of weight a-b.
HomSpace hom_basis(const GroupSpec& g, const CombinedWeight& a, const CombinedWeight& b, int d);

// Composition of hom-space monomials f in Hom(b,c), g in Hom(a,b): the product
// monomial in Hom(a,c). Throws ValidationError when the characters of the two
// spaces do not chain.
Monomial compose(const GroupSpec& g, const HomSpace& fs, const Monomial& f, const HomSpace& gs,
                 const Monomial& gm);

} // namespace gsc
