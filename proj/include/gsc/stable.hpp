#pragma once

/// Graded Hom spaces of corner modules and their stable quotients.
///
/// A corner module is presented by generators and relations whose terms all
/// sit at the distinguished vertex, so its realized pieces are honest graded
/// pieces over the corner ring (column vertex = distinguished throughout).
/// A degree-zero homomorphism is determined by its generator images, subject
/// to linear constraints from the source relations taken modulo the image of
/// the target relations.  Everything decomposes over the ambient multidegree
/// shift delta = (target generator multidegree + monomial exponent) - (source
/// generator multidegree): within a fixed delta the monomial factor between a
/// generator pair is pinned, so each block is a small scalar linear system
/// over the generator-pair incidence alone.
///
/// The stable quotient kills the maps that factor through free corner
/// modules.  A composite through a single free summand e(s) is (an invariant
/// "functional" on the source) followed by (multiplication into an element of
/// the target); finitely many shifts s can contribute because both modules
/// are bounded below, and sums of such composites span the whole factoring
/// subspace.  Shifted stable Homs replace an argument by an iterated corner
/// kernel: source kernels for positive shifts, target kernels for negative
/// ones, matching the syzygy-shift duality of the stable module category over
/// a Gorenstein corner ring.

#include "gsc/complexes.hpp"
#include "gsc/resolution.hpp"

#include <tuple>
#include <vector>

namespace gsc {

/// One homogeneous homomorphism between corner modules: generator k of the
/// source maps to sum of coef * x^(delta + gamma_k - gamma_t) * (generator t
/// of the target) over the support triples. All supports of one map share
/// the multidegree shift delta.
struct CornerMap {
  std::vector<int> delta;
  std::vector<std::tuple<int, int, Rat>> coords; // (source gen, target gen, coef)
};

/// Basis of the degree-zero homomorphisms, grouped by multidegree shift.
struct CornerHom {
  Int dimension = 0;
  std::vector<CornerMap> basis;
};

/// Hom of corner modules in internal degree zero. Requires all terms of both
/// presentations to sit at the distinguished vertex.
CornerHom hom_corner(const NCCRAlgebra& alg, const PresentedModule& x, const PresentedModule& y);

/// The same space modulo maps factoring through free corner modules.
CornerHom stable_hom_corner(const NCCRAlgebra& alg, const PresentedModule& x,
                            const PresentedModule& y);

/// Dimension of the stable Hom at cohomological shift r between the modules
/// underlying two corner resolutions: the r-th source kernel against the
/// module for r > 0, the module against the |r|-th target kernel for r < 0.
/// Both resolutions must have been swept at least max(r, 0) + 1 resp.
/// max(-r, 0) + 1 levels deep.
Int stable_ext_dim(const NCCRAlgebra& alg, const CornerResolution& x, const CornerResolution& y,
                   int r);

/// A basis element of the stable endomorphism algebra of a module list,
/// tagged by its source and target component.
struct StableMap {
  int src = 0;
  int dst = 0;
  CornerMap map;
};

/// The degree-zero stable endomorphism algebra of a list of corner modules:
/// block dimensions per ordered component pair, a basis of stable classes
/// with explicit representatives, the multiplication table over that basis,
/// and the identity's coordinates. table[i][j] holds the coordinates of
/// basis[i] composed after basis[j].
struct StableEnd {
  std::vector<StableMap> basis;
  std::vector<std::vector<Int>> block_dims; // [source][target]
  std::vector<std::vector<Vec>> table;
  Vec identity;
};

StableEnd stable_end(const NCCRAlgebra& alg, const std::vector<PresentedModule>& comps);

} // namespace gsc
