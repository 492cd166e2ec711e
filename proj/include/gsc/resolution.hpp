// Minimal graded projective resolutions over the endomorphism algebra.
//
// The engine exploits the fine multigrading: a realized differential is
// block-diagonal over the ambient multidegree beta in N^n, and on a connected
// component of a presentation the active rows and columns at beta are exactly
// the generators with gamma <= beta (vertex-activity is a single test for the
// whole component). Kernels of the tiny per-multidegree blocks are memoized by
// their (row, column) activity masks. New syzygy generators at beta are the
// kernel vectors not reached from earlier multidegrees; it suffices to compare
// against the kernels at beta - delta for delta in a finite set of minimal
// monomials, because multiplying a kernel element by a monomial factors
// through the minimal monomial of the same weight that it dominates.
//
// Resolutions are certified rather than trusted: the caller can demand exact
// d^2 = 0, minimality (all entries in the radical), exactness of every
// realized piece, and termination (vanishing kernel after the last slot)
// throughout the truncation window.
#pragma once

#include "gsc/complexes.hpp"

#include <vector>

namespace gsc {

struct Resolution {
  // Slots at cohomological positions 1-length .. 0; slot 0 carries the
  // generators of the resolved module.
  ProjComplex complex;
  int length = 0;           // number of differentials
  bool terminated = false;  // kernel of the deepest differential vanishes in the window
};

// Minimal presentation generators of the degree-zero part of the resolved
// module; position 0 terms of the resolution in canonical order.
struct ResolutionOptions {
  int max_length = 0; // hard cap on the number of syzygy steps (0 = #vertices + n)
};

// Minimal resolution of a direct sum of vertex simples. Truncation-exhaustion
// inside the window throws InstabilityError; exceeding max_length throws
// InstabilityError as well, since the algebra is expected to have finite
// global dimension.
Resolution resolve_vertex_simples(const NCCRAlgebra& alg, const std::vector<int>& vertices,
                                  ResolutionOptions opt = {});

// Resolution of (1 - e)Lambda_0, the simples away from the distinguished
// vertex: the input for the syzygy battery.
Resolution resolve_complement_simples(const NCCRAlgebra& alg, ResolutionOptions opt = {});

// Cancels unit (degree-zero) entries of a presentation by Gaussian
// elimination; the result presents the same module and its generator list is
// a projective cover of the module.
PresentedModule minimize_presentation(const PresentedModule& m);

// Terms of the projective cover of a presented module: the minimal
// homogeneous generating set, one summand per surviving generator.
std::vector<Term> projective_cover(const NCCRAlgebra& alg, const PresentedModule& m);

// Minimal resolution of an explicitly presented module (the presentation is
// minimalized first; its generators become slot 0).
Resolution minimal_resolution(const NCCRAlgebra& alg, const PresentedModule& m,
                              ResolutionOptions opt = {});

// The i-th syzygy module read off a resolution, twisted by (i): generators are
// the slot -i terms, relations the slot -i-1 terms. Requires 0 <= i <= length.
PresentedModule syzygy_module(const Resolution& res, int i);

// --- corner resolutions -----------------------------------------------------
//
// The distinguished-corner restriction Xe of a presented module is a graded
// module over the corner ring e Lambda e. Stable Hom and shifted-Hom
// computations run through minimal covers of Xe by free corner summands and
// the iterated kernels of those covers; the corner ring is singular, so the
// kernels never terminate and only `length` levels are swept.

struct CornerResolution {
  // covers[0] is a minimal generating system of the corner restriction by
  // free corner summands e(s); covers[r+1] generates the kernel of the map
  // from covers[r]. maps[r] gives covers[r+1] coordinates over
  // free(covers[r]) (rows index covers[r], columns covers[r+1]).
  std::vector<std::vector<Term>> covers;
  std::vector<std::vector<Entry>> maps;
};

// Sweeps `length` kernel levels (covers 0..length). Every reachability step
// is an invariant monomial and every emitted generator sits at the
// distinguished vertex, so the construction never leaves the corner. A
// kernel generator appearing within two degrees of the truncation bound
// throws InstabilityError, as in the projective resolutions.
CornerResolution corner_resolution(const NCCRAlgebra& alg, const PresentedModule& m, int length);

// The r-th corner kernel as a presented module over the corner: generators
// covers[r], relations covers[r+1]. Requires 0 <= r <= length - 1.
PresentedModule corner_syzygy(const CornerResolution& cr, int r);

// Exactness certificate: for every interior slot and every ambient
// multidegree in the window, rank(in) + rank(out) equals the realized
// dimension. The slot-0 check is against the module itself and is skipped;
// the deepest slot check is injectivity, i.e. termination.
bool verify_exactness(const NCCRAlgebra& alg, const Resolution& res);

// Shifts appearing in each slot, for the expected-shape report: slot -i of the
// complement resolution should use only internal shifts -i and -i-1.
std::vector<bool> shift_shape_flags(const Resolution& res);

} // namespace gsc
