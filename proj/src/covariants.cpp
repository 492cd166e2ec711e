#include "gsc/covariants.hpp"

#include "gsc/errors.hpp"

#include <cassert>

namespace gsc {

CovariantModule covariant_module(const GroupSpec& g, const CombinedWeight& chi, int D) {
  CovariantModule m;
  m.character = chi;
  const CombinedWeight zero = trivial_weight(g);
  const CombinedWeight minus_chi = sub(g, zero, chi);
  m.bases.reserve(D + 1);
  for (int d = 0; d <= D; ++d) m.bases.push_back(enumerate_monomials(g, d, minus_chi));
  return m;
}

HomSpace hom_basis(const GroupSpec& g, const CombinedWeight& a, const CombinedWeight& b, int d) {
  HomSpace h;
  h.source = a;
  h.target = b;
  h.degree = d;
  h.basis = enumerate_monomials(g, d, sub(g, a, b)).basis;
  return h;
}

Monomial compose(const GroupSpec& g, const HomSpace& fs, const Monomial& f, const HomSpace& gs,
                 const Monomial& gm) {
  if (fs.source != gs.target)
    throw ValidationError("compose: characters do not chain (source of outer != target of inner)");
  assert(static_cast<int>(f.exponents.size()) == g.n &&
         static_cast<int>(gm.exponents.size()) == g.n);
  Monomial out;
  out.exponents.resize(g.n);
  for (int i = 0; i < g.n; ++i) out.exponents[i] = f.exponents[i] + gm.exponents[i];
  return out;
}

} // namespace gsc
