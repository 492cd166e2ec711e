#pragma once

/// Chain maps between complexes of graded projectives, modulo homotopy.
///
/// A degree-zero map between shifted vertex projectives is left
/// multiplication by a monomial of the right weight and degree, so a chain
/// map is a finite vector of scalars, one per (position, source term, target
/// term, monomial) quadruple.  Both the chain-map condition and the homotopy
/// subspace decompose over the ambient multidegree shift
///     delta = mu - gamma_source + gamma_target,
/// which is constant along compositions with the differentials: within a
/// fixed delta the composite exponents are determined by the source and
/// target terms alone, so each block is a small scalar linear system.  The
/// homomorphism space in the homotopy category is assembled block by block as
/// cycles modulo boundaries, with an explicit representative basis.
///
/// The same data drives the degree-zero endomorphism algebra of a complex:
/// representatives compose by adding exponents, and the composite is reduced
/// against the representative basis plus the boundary space of its block.

#include <vector>

#include "gsc/algebra.hpp"
#include "gsc/complexes.hpp"
#include "gsc/linalg.hpp"

namespace gsc {

/// One scalar component of a chain map: at cohomological position `pos`, the
/// generator of source term `col` maps to `coef * x^exponent` times the
/// generator of target term `row` (in the slot at position pos + r).
struct MapPart {
  int pos = 0;
  int row = 0;
  int col = 0;
  std::vector<int> exponent;
  Rat coef;
};

/// A chain map given by its scalar components.
struct ChainMap {
  std::vector<MapPart> parts;
};

/// Basis of chain maps modulo homotopy.
struct HomComputation {
  Int dimension = 0;
  std::vector<ChainMap> basis;
};

/// Chain maps X -> Y(internal_twist)[r] of internal degree zero, modulo
/// homotopy. Positions follow the convention that Y[r] places the slot of Y
/// at position q at position q - r, i.e. a component at position p maps the
/// slot X^p to the slot of Y at position p + r.
HomComputation hom_complexes(const NCCRAlgebra& alg, const ProjComplex& x, const ProjComplex& y,
                             int r, int internal_twist);

/// Independent dense check of the same dimension: realizes the generator
/// images as explicit vectors per internal degree, imposes the chain
/// condition through realized differential and translation matrices, and
/// quotients by realized homotopies. No multidegree blocking is used.
Int hom_complexes_dense(const NCCRAlgebra& alg, const ProjComplex& x, const ProjComplex& y,
                        int r, int internal_twist);

/// The degree-zero endomorphism algebra of a complex in the homotopy
/// category: a representative basis, the multiplication table, and the
/// coordinates of the identity. table[i][j] holds the coordinates of
/// basis[i] composed after basis[j].
struct EndAlgebra {
  std::vector<ChainMap> basis;
  std::vector<std::vector<Vec>> table;
  Vec identity;
};

EndAlgebra end_algebra(const NCCRAlgebra& alg, const ProjComplex& x);

/// Multiplies two coordinate vectors in an EndAlgebra.
Vec end_multiply(const EndAlgebra& e, const Vec& a, const Vec& b);

} // namespace gsc
