// The endomorphism algebra Lambda = End_{R^G}(⊕_{chi in window} M(V_chi)) as a
// degree-truncated graded algebra in its monomial model: one vertex per window
// character (times a character of the finite group when present), and
// piece(a, b, d) spanned by the monomials of degree d and weight a-b.
// Multiplication is polynomial multiplication, so the algebra is determined by
// the weight data; what this module adds is the vertex bookkeeping, the
// distinguished idempotent, the quiver presentation, and the Lambda/(e)
// finite-dimensionality diagnostic.
#pragma once

#include "gsc/covariants.hpp"
#include "gsc/linalg.hpp"
#include "gsc/monomials.hpp"
#include "gsc/weights.hpp"

#include <map>
#include <vector>

namespace gsc {

struct NCCRAlgebra {
  GroupSpec group;
  int truncation = 0;                    // pieces are trusted for degrees <= truncation
  std::vector<CombinedWeight> vertices;  // ascending; index is the vertex id
  int distinguished = 0;                 // vertex of the minimal window character
                                         // (paired with the trivial finite character)
  WeightTable table;                     // dimension table through truncation
  bool validated = false;                // true iff built through the gated entry point

  int vertex_index(const CombinedWeight& c) const; // -1 when c is not a vertex
  bool is_vertex(const CombinedWeight& c) const { return vertex_index(c) >= 0; }

  Int piece_dim(int a, int b, int d) const;
  HomSpace piece_basis(int a, int b, int d) const;

  // dim Lambda_d = sum over vertex pairs of the piece dimensions.
  Int graded_dim(int d) const;
};

// The monomial model with no hypothesis checks beyond sum(chi) = 0 (needed for
// the window to exist). Used by diagnostics that deliberately probe inputs
// failing the resolution hypotheses.
NCCRAlgebra monomial_model(const GroupSpec& g, int D,
                           WindowConvention conv = WindowConvention::OpenLowClosedHigh);

// Gated constructor: requires is_unimodular, is_quasi_symmetric and is_generic,
// and names every failed hypothesis in the ValidationError message.
NCCRAlgebra build_nccr(const GroupSpec& g, int D,
                       WindowConvention conv = WindowConvention::OpenLowClosedHigh);

// Extends a pure-torus algebra by a finite abelian group: vertex set becomes
// window x dual(H), pieces match combined weights, and the distinguished
// idempotent is (minimal window character, trivial character). Group elements
// act in degree 0. With no finite factors this returns the input unchanged.
NCCRAlgebra tensor_with_group_algebra(const NCCRAlgebra& lambda, const std::vector<int>& orders,
                                      const std::vector<std::vector<int>>& finite_weights);

struct Arrow {
  int source = 0;
  int target = 0;
  int degree = 0;
  Monomial label;
};

// A relation is a rational combination of parallel paths evaluating to zero in
// the algebra. Words list arrow indices in application order (first factor
// applied first).
struct Relation {
  int source = 0;
  int target = 0;
  int degree = 0;
  std::vector<std::pair<Rat, std::vector<int>>> terms;
};

struct QuiverPresentation {
  std::vector<Arrow> arrows;            // basis of rad/rad^2, canonical order
  std::vector<Relation> relations;      // kernel of path evaluation per slot
  std::map<int, int> relation_dims;     // degree -> total kernel dimension
};

// Arrows: piece monomials with no proper submonomial landing on a vertex
// (i.e. a basis of rad/rad^2). Relations: per (source, target, degree <= bound)
// a canonical kernel basis of the evaluation map from parallel path words.
QuiverPresentation extract_presentation(const NCCRAlgebra& lambda, int degree_bound);

// Evaluates a path word (arrow indices, application order) to its product
// monomial; checks composability. Exposed for tests and reports.
Monomial evaluate_word(const NCCRAlgebra& lambda, const QuiverPresentation& pres,
                       const std::vector<int>& word);

// dim (Lambda / Lambda e Lambda)_d for d = 0..D-2, e the distinguished
// idempotent: counts piece monomials with no submonomial of weight
// (source vertex) - (e vertex). The effectiveness dichotomy predicts eventual
// vanishing exactly for effective weights.
std::vector<Int> quotient_dims_by_idempotent(const NCCRAlgebra& lambda, int D);

// Exhaustively checks associativity and piece-compatibility of monomial
// multiplication on basis triples up to the given total degree.
bool verify_associativity(const NCCRAlgebra& lambda, int total_degree_bound);

} // namespace gsc
