// Weight data for a one-dimensional torus T = k^*, optionally extended by a
// finite abelian group H = prod_j Z/m_j, acting diagonally on a polynomial ring
// k[x_1..x_n]. Variable x_i has torus weight chi_i and finite weights c_{ij}.
//
// The hypotheses checked here gate everything downstream:
//   * quasi-symmetric: the weights on each line through the origin sum to zero;
//     for a rank-1 torus this is simply sum(chi) = 0.
//   * effective (torus case): at least two positive and two negative weights,
//     sum zero, and gcd(chi_i, chi_j) = 1 for every mixed-sign pair.
//   * unimodular: sum(chi) = 0 and, for each finite factor, the column sums of
//     the finite weights vanish mod m_j.
//   * generic: at least two weights of each sign, and every mixed-sign pair of
//     characters generates the full character lattice X(G) = Z x prod Z/m_j
//     (a sufficient, criterion-based condition; it reduces to the two-sided +
//     pairwise-gcd test when H is trivial).
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gsc {

struct GroupSpec {
  int n = 0;                                    // number of variables
  std::vector<int> torus_weights;               // chi_1..chi_n
  std::vector<int> finite_orders;               // m_1..m_r, each >= 2; empty = pure torus
  std::vector<std::vector<int>> finite_weights; // r rows of n residues, c_{ij} mod m_j

  bool has_finite_part() const { return !finite_orders.empty(); }
};

// Throws ValidationError when sizes disagree, an order is < 2, or a residue is
// out of range. Every public entry point validates its input through this.
void validate(const GroupSpec& g);

struct EffectivenessReport {
  bool two_sided = false;   // >= 2 strictly positive and >= 2 strictly negative weights
  bool sum_zero = false;
  bool pairwise_gcd = false; // gcd(chi_i, chi_j) = 1 for all mixed-sign pairs
  std::vector<std::pair<int, int>> gcd_failures; // offending pairs, 0-based indices

  bool effective() const { return two_sided && sum_zero && pairwise_gcd; }
};

bool is_quasi_symmetric(const GroupSpec& g);

EffectivenessReport check_effectiveness(const GroupSpec& g);

bool is_unimodular(const GroupSpec& g);

// True when there are two weights of each sign and every mixed-sign pair
// (chi_i, c_i), (chi_j, c_j) generates X(G).
bool is_generic(const GroupSpec& g);

// Sum of the positive torus weights; the width of the character window.
int positive_weight_sum(const GroupSpec& g);

// Which endpoint of the symmetric interval of width P is kept.
enum class WindowConvention {
  OpenLowClosedHigh, // (-P/2, P/2], the default everywhere
  ClosedLowOpenHigh, // [-P/2, P/2), exposed for experimentation only
};

// The integer characters in the chosen half-open interval, ascending.
// Requires sum(chi) = 0 and P >= 1; always has size P and contains 0.
std::vector<int> character_window(const GroupSpec& g,
                                  WindowConvention conv = WindowConvention::OpenLowClosedHigh);

// True when the columns of an integer matrix generate Z^rows (all elementary
// divisors 1). Exposed for tests; is_generic builds on it.
bool columns_span_lattice(std::vector<std::vector<long long>> columns, int rows);

} // namespace gsc
