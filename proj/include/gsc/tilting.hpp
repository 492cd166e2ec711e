#pragma once

/// Assembly of the tilting object and its certificates.
///
/// For quasi-symmetric weights that are effective, unimodular, and generic,
/// the singularity category of the invariant ring is generated by an explicit
/// tilting object with one summand per character in the weight window: the
/// non-distinguished projectives themselves, plus, for each syzygy index i,
/// the cone of the minimal left approximation of the i-th twisted syzygy of
/// the complement simples by free corner modules.  This module realizes those
/// cones as complexes of projectives (the syzygy's resolution tail in
/// negative positions, the approximation target in position zero) and keeps
/// the plain module underneath each cone.
///
/// Hom spaces in the singularity category are computed at module level: the
/// category is equivalent to the stable category of maximal Cohen-Macaulay
/// modules over the corner ring, so the official Ext table and endomorphism
/// algebra are stable corner homs of the battery modules, with positive and
/// negative cohomological shifts realized by corner syzygies on either
/// argument.  The homotopy-category hom tables of the lifted complexes are
/// kept alongside as certificates; a lifted cone presents its module only up
/// to summands built from free corner modules, which is exactly the ambiguity
/// the stable quotient kills.
///
/// The first cone is special: at the corner cut it agrees on the nose with
/// the twisted complement projective module, which is why the vanishing
/// battery may list the plain twisted projectives in its place.  This
/// identification is certified degreewise rather than assumed.

#include <vector>

#include "gsc/approximation.hpp"
#include "gsc/homspaces.hpp"
#include "gsc/resolution.hpp"
#include "gsc/stable.hpp"

namespace gsc {

/// One summand: index 0 is the sum of non-distinguished vertex projectives in
/// position 0; index i >= 1 is the lifted approximation cone of the i-th
/// twisted syzygy, occupying positions i - n .. 0.
struct TiltingComponent {
  int index = 0;
  PresentedModule module_rep;   // the summand as a plain module: the twisted
                                // syzygy for index >= 1, the complement
                                // projectives for index 0
  ProjComplex lambda_level;
  ProjComplex normalized;       // split-acyclic pieces cancelled
  LeftApproximation approx;     // populated for index >= 1
};

/// Degreewise identification of the first syzygy (twisted by one) with the
/// complement projectives: corner cuts agree exactly in the window, and the
/// full quotient is concentrated in internal degree -1 with dimension
/// (#vertices - 1).
struct TailIdentification {
  bool cut_equal = false;
  bool cokernel_concentrated = false;
  Int cokernel_dim = 0;
  int window_lo = 0;
  int window_hi = 0;
};

struct TiltingObject {
  Resolution resolution;                     // of the complement simples
  std::vector<TiltingComponent> components;  // size n: index 0, then cones 1..n-1
  TailIdentification tail;
  std::vector<bool> shift_shape;             // per-slot two-shift flags of the resolution
};

/// Builds the full tilting data. Requires effective, unimodular, generic
/// weights (ValidationError otherwise); truncation instabilities inside the
/// resolution or approximation sweeps propagate as InstabilityError.
TiltingObject build_tilting_object(const NCCRAlgebra& alg);

/// Same construction on an algebra whose group carries finite factors; the
/// distinguished vertex is the (minimal window character, trivial residue)
/// pair, so for a trivial finite part this coincides with
/// build_tilting_object.
TiltingObject build_group_tilting(const NCCRAlgebra& alg);

/// The vanishing battery: cones for i = 2..n-1, the complement projectives,
/// and their twist by one, summed as complexes.
ProjComplex ext_battery(const NCCRAlgebra& alg, const TiltingObject& t);

/// The same battery at module level, in the same order: the twisted syzygies
/// for i = 2..n-1, the complement projectives, and their twist by one.  These
/// present the same objects of the stable category as the summands of
/// `ext_battery`.
std::vector<PresentedModule> battery_modules(const NCCRAlgebra& alg, const TiltingObject& t);

/// Dimensions of the degree-zero stable Ext between the battery and itself at
/// cohomological shifts r = r_lo..r_hi; all entries off r = 0 must vanish for
/// a tilting object.  Entries at r != 0 are computed on the lifted complexes,
/// where the shifted homs agree with the stable ones (the discrepancy between
/// the two categories is concentrated in degree zero); the r = 0 entry is the
/// stable hom of the corner presentations.
std::vector<Int> verify_ext_vanishing(const NCCRAlgebra& alg, const TiltingObject& t, int r_lo,
                                      int r_hi);

/// Certificate variant: dimensions of Hom(battery, battery[r]) in the
/// homotopy category of the lifted complexes.  The r = 0 entry may exceed the
/// stable dimension by maps factoring through free corner summands; entries
/// at twist-gaps larger than the window length vanish identically.
std::vector<Int> verify_ext_vanishing_complexes(const NCCRAlgebra& alg, const TiltingObject& t,
                                                int r_lo, int r_hi);

/// Degree-zero stable endomorphism algebra of the module battery with block
/// dimensions per ordered component pair, associativity/unitality checks, and
/// the number of indecomposable summands found by exact idempotent splitting
/// (-1 when the rational search is inconclusive).  The homotopy-category
/// endomorphisms of the lifted complexes ride along as a certificate.
struct EndReport {
  Int dimension = 0;                            // stable dimension
  std::vector<std::vector<Int>> component_dims; // stable blocks, source-major
  bool associative = false;
  bool unital = false;
  int summands = -1;           // total count, -1 when undecided
  int summand_lower_bound = 0; // orthogonal idempotents actually exhibited
  StableEnd stable;            // basis, structure constants, identity
  Int complex_dimension = 0;   // endomorphisms of the lifted complex battery
  std::vector<std::vector<Int>> complex_component_dims;
};

EndReport endomorphism_algebra(const NCCRAlgebra& alg, const TiltingObject& t);

/// Splits the identity of an associative unital algebra, given by structure
/// constants and the identity's coordinate vector, into orthogonal
/// idempotents by exact rational eigen-analysis. `count` is the number of
/// indecomposable summands, or -1 when some corner resists the rational
/// search; in either case `lower_bound` idempotents were explicitly
/// exhibited, so the summand count is at least that.
struct SummandSplit {
  int count = -1;
  int lower_bound = 0;
};

SummandSplit split_summands(const std::vector<std::vector<Vec>>& table, const Vec& identity);

SummandSplit split_summands(const EndAlgebra& e);

int count_indecomposable_summands(const EndAlgebra& e);

} // namespace gsc
