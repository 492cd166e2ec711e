// Bounded complexes of graded projective right Lambda-modules, kept in a
// multigraded normal form.
//
// Every projective summand ("term") is e_v Lambda(s) together with an ambient
// multidegree gamma in Z^n for its generator. A realized basis element of the
// term is x^(beta - gamma) * gen for beta >= gamma, living at ambient
// multidegree beta, internal degree |beta - gamma| - s, with column vertex
// v + wt(beta - gamma). Differential entries between terms are
// coef * x^(gamma_source - gamma_target), so a sparse rational coefficient
// triple determines the whole map; exponents are implied by the gammas.
//
// Two consequences drive the performance of everything downstream:
//   * realized differentials are block-diagonal over the ambient multidegree,
//     so kernels and ranks decompose into tiny exact problems, and
//   * on each connected component both kappa := v - chi*gamma and
//     offset := |gamma| + s are constant, so vertex-activity at beta is a
//     single test per component.
#pragma once

#include "gsc/algebra.hpp"
#include "gsc/linalg.hpp"

#include <optional>
#include <vector>

namespace gsc {

struct Term {
  int vertex = 0;         // vertex id in the ambient algebra
  int shift = 0;          // s: the summand is e_v Lambda(s); generator degree -s
  std::vector<int> gamma; // ambient multidegree of the generator (may be negative)
};

// Generator internal degree: |gamma| can disagree with -shift in twisted
// complexes; the pair is always consistent within a connected component.
int term_generator_degree(const Term& t);

struct Entry {
  int row = 0; // index in the target slot
  int col = 0; // index in the source slot
  Rat coef;
};

// exponent of the entry monomial: gamma[col] - gamma[row], componentwise >= 0.
std::vector<int> entry_exponent(const Term& source, const Term& target);

struct ProjComplex {
  int lo = 0;                            // cohomological degree of slots[0]
  std::vector<std::vector<Term>> slots;  // positions lo .. lo + size - 1
  std::vector<std::vector<Entry>> diffs; // diffs[i]: slots[i] -> slots[i+1]

  int hi() const { return lo + static_cast<int>(slots.size()) - 1; }
  int slot_index(int position) const { return position - lo; }
  bool has_slot(int position) const {
    return position >= lo && position <= hi() && !slots[slot_index(position)].empty();
  }
};

// A module presented as coker(F1 -> F0) in the same normal form.
struct PresentedModule {
  std::vector<Term> gens;    // F0
  std::vector<Term> rels;    // F1
  std::vector<Entry> entries; // map F1 -> F0: row indexes gens, col indexes rels
};

// Structural validation: entry exponents non-negative, weights consistent
// (kappa matches across every entry), vertices exist. Throws InternalError.
void validate_complex(const NCCRAlgebra& alg, const ProjComplex& cx);
void validate_presentation(const NCCRAlgebra& alg, const PresentedModule& m);

// d composed with d vanishes as exact matrix identities over Lambda.
bool verify_d_squared(const ProjComplex& cx);

// Every differential entry has internal degree >= 1.
bool verify_minimality(const ProjComplex& cx);

// Internal-degree twist M -> M(j): shifts every term, positions unchanged.
ProjComplex twist(const ProjComplex& cx, int j);
PresentedModule twist(const PresentedModule& m, int j);

// Direct sum aligned by cohomological position.
ProjComplex direct_sum(const ProjComplex& a, const ProjComplex& b);

// Betti data: multiset of (vertex, shift) per slot, positions lo..hi.
std::vector<std::vector<std::pair<int, int>>> betti_table(const ProjComplex& cx);

// ---------------------------------------------------------------------------
// Realization: explicit bases and matrices per internal degree, used by the
// certificates, the idempotent cut, and the dense chain-map oracle.

struct RealizedBasisElement {
  int term = 0;            // index within the slot
  std::vector<int> alpha;  // exponent of the monomial factor (>= 0)
};

// Basis of one slot at one internal degree, in canonical order: terms in slot
// order, monomials largest-first within a term.
std::vector<RealizedBasisElement> realize_slot(const NCCRAlgebra& alg,
                                               const std::vector<Term>& slot, int degree);

// Same, restricted to column vertex = the distinguished idempotent.
std::vector<RealizedBasisElement> realize_slot_cut(const NCCRAlgebra& alg,
                                                   const std::vector<Term>& slot, int degree);

// Matrix of the differential between realized bases (rows = target basis).
Matrix realize_map(const NCCRAlgebra& alg, const std::vector<Term>& source,
                   const std::vector<Term>& target, const std::vector<Entry>& entries,
                   const std::vector<RealizedBasisElement>& source_basis,
                   const std::vector<RealizedBasisElement>& target_basis);

// Graded dimension table of the idempotent cut Xe (column vertex = e) for
// each slot, internal degrees in [d_min, d_max]: the corner functor (-)e
// applied to a complex of projectives.
struct CutDims {
  int lo = 0;                               // cohomological degree of rows[0]
  int d_min = 0;                            // first internal degree of each row
  std::vector<std::vector<Int>> dims;       // dims[slot][d - d_min]
};
CutDims apply_idempotent(const NCCRAlgebra& alg, const ProjComplex& cx, int d_min, int d_max);

// Realized dimensions of coker(F1 -> F0) restricted to column vertex e,
// per internal degree in [d_min, d_max].
std::vector<Int> apply_idempotent(const NCCRAlgebra& alg, const PresentedModule& m, int d_min,
                                  int d_max);

// Realized dimension of coker(F1 -> F0) (no cut) at one internal degree.
Int module_dim(const NCCRAlgebra& alg, const PresentedModule& m, int degree);

} // namespace gsc
