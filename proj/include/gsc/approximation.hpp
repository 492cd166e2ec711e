#pragma once

/// Minimal left approximations by free modules over the distinguished corner.
///
/// Given a finitely presented graded module M over the quiverized invariant
/// algebra, the graded dual-side data Hom(M, eA) (maps into the column space
/// of the distinguished idempotent e) is itself a module over the corner
/// algebra eAe.  A minimal homogeneous generating set of that Hom module
/// determines a map  f : M -> F  with F a finite direct sum of shifted copies
/// of the corner column space, and f is the minimal left approximation of M
/// by such sums: every map from M into a shifted corner column space factors
/// through f, and no proper summand of F retains that property.
///
/// The computation again exploits the multigraded normal form.  A homogeneous
/// element of Hom(M, eA) of multidegree tau sends the j-th generator (with
/// exponent offset gamma_j) to a scalar multiple of x^(gamma_j + tau); it is
/// therefore a vector of scalars, one per generator with gamma_j + tau >= 0
/// and matching character, subject to one linear constraint per active
/// relation.  Sweeping tau over a bounded window and quotienting by the
/// submodule generated in lower degrees (multiplication by the degree-zero
/// invariant Hilbert basis) yields the minimal generators together with two
/// independently re-verified certificates: every homogeneous element in the
/// window factors through the collected generators, and no collected
/// generator is redundant.

#include <vector>

#include "gsc/algebra.hpp"
#include "gsc/complexes.hpp"

namespace gsc {

/// One minimal generator of the graded module Hom(M, eA): a homogeneous map
/// of multidegree `tau` sending generator j of M to `values[j] * x^(gamma_j + tau)`
/// (zero for generators not listed).  `degree` is the amount by which the map
/// raises internal degree, so the generator contributes a summand eAe(degree)
/// twisted so that its unit sits in internal degree -degree.
struct HomGenerator {
  std::vector<int> tau;
  int degree = 0;
  std::vector<std::pair<int, Rat>> values;
};

/// Result of the minimal left approximation of a presented module M.
///
/// `f_terms` lists the summands of F in generator order; `cone` is the
/// two-term mapping cone [M -> F] recorded at the presentation level: the
/// relations of M sit in position -2, its generators in position -1, and F in
/// position 0, with the approximation map as the final differential.  The two
/// booleans record the independently checked factorization and minimality
/// certificates; `window_degree` is the largest internal degree swept.
struct LeftApproximation {
  PresentedModule module;
  std::vector<HomGenerator> generators;
  std::vector<Term> f_terms;
  ProjComplex cone;
  bool factors_through = false;
  bool generators_minimal = false;
  int window_degree = 0;
};

/// Computes the minimal left approximation of `m` by sums of shifted corner
/// column spaces.  Generator degrees are swept over the symmetric window
/// [-2n, 2n]; if a minimal generator appears within two degrees of the upper
/// boundary the window cannot certify completeness and an InstabilityError is
/// thrown.  Tie-breaking is deterministic: generators are ordered by internal
/// degree, then by the descending lexicographic sweep order of their
/// multidegree.
LeftApproximation minimal_left_approximation(const NCCRAlgebra& alg,
                                             const PresentedModule& m);

/// Removes split-acyclic pieces from a complex by Gaussian elimination: any
/// differential entry that is a unit (exponent zero) is cancelled, deleting
/// its row and column and correcting the neighbouring differentials.  The
/// result is chain-homotopy equivalent to the input and has all differentials
/// valued in positive-degree monomials.
ProjComplex normalize_complex(const NCCRAlgebra& alg, ProjComplex cx);

}  // namespace gsc
