// Monomials of R = k[x_1..x_n] graded by total degree and by the character
// group X(G) = Z x prod_j Z/m_j: exact enumeration, dynamic-programming
// counts, the Hilbert basis of the invariant monoid, and the Hilbert-series
// symmetry check for the Gorenstein parameter.
//
// Canonical monomial order everywhere: graded lexicographic with
// x_1 > x_2 > ... > x_n; bases are listed largest-first. Every matrix built
// downstream indexes its rows and columns by these lists, which is what makes
// reports reproducible byte-for-byte.
#pragma once

#include "gsc/rational.hpp"
#include "gsc/weights.hpp"

#include <compare>
#include <functional>
#include <vector>

namespace gsc {

// A character of G = T x H: torus part plus one residue per finite factor.
struct CombinedWeight {
  int torus = 0;
  std::vector<int> finite; // residues, finite[j] in [0, m_j)

  friend auto operator<=>(const CombinedWeight&, const CombinedWeight&) = default;
};

CombinedWeight add(const GroupSpec& g, const CombinedWeight& a, const CombinedWeight& b);
CombinedWeight sub(const GroupSpec& g, const CombinedWeight& a, const CombinedWeight& b);
CombinedWeight trivial_weight(const GroupSpec& g);

struct Monomial {
  std::vector<int> exponents;

  int degree() const {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// The combined weight of x^a under the action data.
CombinedWeight weight_of(const GroupSpec& g, const std::vector<int>& exponents);

// Strict "greater in graded lex with x_1 > ... > x_n".
bool monomial_greater(const Monomial& a, const Monomial& b);

struct WeightSpace {
  int degree = 0;
  CombinedWeight weight;
  std::vector<Monomial> basis; // descending in the canonical order, no duplicates
};

// All monomials of the given total degree and combined weight, largest first.
WeightSpace enumerate_monomials(const GroupSpec& g, int degree, const CombinedWeight& weight);
WeightSpace enumerate_monomials(const GroupSpec& g, int degree, int torus_weight);

// Full table of weight-space dimensions through a fixed truncation, built once
// by convolution over the variables. Immutable after construction, so shared
// freely across threads.
class WeightTable {
public:
  WeightTable(GroupSpec g, int D);

  // 0 whenever the degree or weight falls outside the table.
  Int dim(int degree, const CombinedWeight& w) const;
  Int dim(int degree, int torus_weight) const;

  const GroupSpec& group() const { return group_; }
  int truncation() const { return truncation_; }

private:
  GroupSpec group_;
  int truncation_ = 0;
  int lo_ = 0;         // smallest representable torus weight
  int torus_span_ = 0; // number of representable torus weights
  int fin_span_ = 0;   // product of the finite orders
  std::vector<Int> counts_;
};

// |enumerate_monomials(g, degree, weight)| without materializing the basis;
// counts escalate to arbitrary precision on 64-bit overflow.
Int weight_space_dim(const GroupSpec& g, int degree, const CombinedWeight& weight);
Int weight_space_dim(const GroupSpec& g, int degree, int torus_weight);

struct TruncatedSeries {
  std::vector<Int> coefficients; // index = degree, 0..D
};

// Hilbert series of the invariant ring: coefficients[d] = dim (R^G)_d, d <= D.
TruncatedSeries invariant_series(const GroupSpec& g, int D);

// Minimal generating set of the monoid { a in N^n : weight(a) = 0 }, i.e. the
// weight-0 monomials with no proper weight-0 divisor. Enumerated up to the
// classical single-equation bound n*max|chi_i| (times lcm(m_j) when a finite
// part is present); a re-check two degrees higher certifies completeness and
// throws InstabilityError on mismatch.
std::vector<Monomial> invariant_hilbert_basis(const GroupSpec& g);

// Divisibility-minimal elements of { a in N^n \ 0 : weight(a) = v }: exactly
// the weight-v monomials of degree <= bound divisible by no invariant Hilbert
// basis element. `basis` must be invariant_hilbert_basis(g).
std::vector<Monomial> minimal_weight_monomials(const GroupSpec& g, const CombinedWeight& v,
                                               const std::vector<Monomial>& basis, int bound);

struct GorensteinReport {
  bool conclusive = false;      // window long enough to decide
  bool terminates = false;      // numerator vanishes beyond its expected degree
  bool palindromic = false;     // rev(N) = sign * N about the expected center
  int numerator_degree = 0;     // sum(d_i) - n, the expected top degree of N
  int sign = 0;                 // (-1)^(n-1+s), s = number of generators
  int parameter = 0;            // the certified Gorenstein parameter (= n on pass)
  bool pass = false;            // conclusive && terminates && palindromic
  std::vector<Int> numerator;   // N(t) = H(t) * prod_i (1 - t^{d_i}), truncated
};

// Checks the functional equation H(1/t) = (-1)^(n-1) t^n H(t) through the
// numerator N(t) = H(t) * prod (1 - t^{d_i}). A window shorter than
// sum(d_i) + n yields conclusive = false, never a throw.
GorensteinReport gorenstein_symmetry_check(const TruncatedSeries& series,
                                           const std::vector<int>& generator_degrees, int n);

// All residue tuples of prod_j Z/m_j in lexicographic order, (0,..,0) first.
std::vector<std::vector<int>> all_residue_tuples(const std::vector<int>& orders);

} // namespace gsc
