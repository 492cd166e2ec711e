#include "gsc/weights.hpp"

#include "gsc/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace gsc {

void validate(const GroupSpec& g) {
  if (g.n <= 0) throw ValidationError("weight data: n must be positive");
  if (static_cast<int>(g.torus_weights.size()) != g.n)
    throw ValidationError("weight data: expected " + std::to_string(g.n) + " torus weights, got " +
                          std::to_string(g.torus_weights.size()));
  if (g.finite_weights.size() != g.finite_orders.size())
    throw ValidationError("weight data: finite weight rows do not match the number of orders");
  for (size_t j = 0; j < g.finite_orders.size(); ++j) {
    const int m = g.finite_orders[j];
    if (m < 2)
      throw ValidationError("weight data: finite factor order " + std::to_string(m) +
                            " must be at least 2");
    if (static_cast<int>(g.finite_weights[j].size()) != g.n)
      throw ValidationError("weight data: finite weight row " + std::to_string(j + 1) +
                            " must have " + std::to_string(g.n) + " entries");
    for (int c : g.finite_weights[j])
      if (c < 0 || c >= m)
        throw ValidationError("weight data: finite weight " + std::to_string(c) +
                              " out of range for Z/" + std::to_string(m));
  }
}

bool is_quasi_symmetric(const GroupSpec& g) {
  validate(g);
  // Rank one: the only line through the origin meeting the weights is the axis
  // itself, so the condition degenerates to the total sum vanishing.
  long long s = 0;
  for (int w : g.torus_weights) s += w;
  return s == 0;
}

EffectivenessReport check_effectiveness(const GroupSpec& g) {
  validate(g);
  EffectivenessReport rep;
  int pos = 0, neg = 0;
  long long sum = 0;
  for (int w : g.torus_weights) {
    if (w > 0) ++pos;
    if (w < 0) ++neg;
    sum += w;
  }
  rep.two_sided = pos >= 2 && neg >= 2;
  rep.sum_zero = sum == 0;
  rep.pairwise_gcd = true;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      if (g.torus_weights[i] <= 0 || g.torus_weights[j] >= 0) continue;
      if (std::gcd(g.torus_weights[i], -g.torus_weights[j]) != 1) {
        rep.pairwise_gcd = false;
        rep.gcd_failures.emplace_back(i, j);
      }
    }
  return rep;
}

bool is_unimodular(const GroupSpec& g) {
  validate(g);
  long long s = 0;
  for (int w : g.torus_weights) s += w;
  if (s != 0) return false;
  for (size_t j = 0; j < g.finite_orders.size(); ++j) {
    long long cs = 0;
    for (int c : g.finite_weights[j]) cs += c;
    if (cs % g.finite_orders[j] != 0) return false;
  }
  return true;
}

bool columns_span_lattice(std::vector<std::vector<long long>> columns, int rows) {
  // Integer column-style Smith reduction: the columns generate Z^rows iff the
  // elimination clears a unit pivot in every row.
  for (int r = 0; r < rows; ++r) {
    // Euclid across columns on row r until at most one nonzero remains.
    for (;;) {
      int best = -1;
      for (size_t c = 0; c < columns.size(); ++c)
        if (columns[c][r] != 0 && (best < 0 || std::llabs(columns[c][r]) <
                                                   std::llabs(columns[best][r])))
          best = static_cast<int>(c);
      if (best < 0) return false; // row unreachable
      bool others = false;
      for (size_t c = 0; c < columns.size(); ++c) {
        if (static_cast<int>(c) == best || columns[c][r] == 0) continue;
        const long long q = columns[c][r] / columns[best][r];
        for (int k = 0; k < rows; ++k) columns[c][k] -= q * columns[best][k];
        if (columns[c][r] != 0) others = true;
      }
      if (!others) {
        if (std::llabs(columns[best][r]) != 1) return false;
        // Clear the pivot's other rows is unnecessary: remove the pivot column
        // and this row from further consideration by zeroing the row in all
        // remaining columns via the pivot.
        for (size_t c = 0; c < columns.size(); ++c) {
          if (static_cast<int>(c) == best) continue;
          const long long q = columns[c][r] / columns[best][r];
          if (q != 0)
            for (int k = 0; k < rows; ++k) columns[c][k] -= q * columns[best][k];
        }
        columns.erase(columns.begin() + best);
        break;
      }
    }
  }
  return true;
}

bool is_generic(const GroupSpec& g) {
  validate(g);
  int pos = 0, neg = 0;
  for (int w : g.torus_weights) {
    if (w > 0) ++pos;
    if (w < 0) ++neg;
  }
  if (pos < 2 || neg < 2) return false;
  const int r = static_cast<int>(g.finite_orders.size());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      if (g.torus_weights[i] <= 0 || g.torus_weights[j] >= 0) continue;
      if (r == 0) {
        if (std::gcd(g.torus_weights[i], -g.torus_weights[j]) != 1) return false;
        continue;
      }
      // Columns: the two characters plus the lattice relations (0, m_j e_j).
      std::vector<std::vector<long long>> cols;
      std::vector<long long> ci(1 + r), cj(1 + r);
      ci[0] = g.torus_weights[i];
      cj[0] = g.torus_weights[j];
      for (int k = 0; k < r; ++k) {
        ci[1 + k] = g.finite_weights[k][i];
        cj[1 + k] = g.finite_weights[k][j];
      }
      cols.push_back(ci);
      cols.push_back(cj);
      for (int k = 0; k < r; ++k) {
        std::vector<long long> rel(1 + r, 0);
        rel[1 + k] = g.finite_orders[k];
        cols.push_back(rel);
      }
      if (!columns_span_lattice(std::move(cols), 1 + r)) return false;
    }
  return true;
}

int positive_weight_sum(const GroupSpec& g) {
  int p = 0;
  for (int w : g.torus_weights)
    if (w > 0) p += w;
  return p;
}

std::vector<int> character_window(const GroupSpec& g, WindowConvention conv) {
  validate(g);
  long long s = 0;
  for (int w : g.torus_weights) s += w;
  if (s != 0)
    throw ValidationError("character window: torus weights must sum to zero");
  const int P = positive_weight_sum(g);
  if (P < 1)
    throw ValidationError("character window: the torus acts trivially (no positive weight)");

  // Integers in (-P/2, P/2] resp. [-P/2, P/2). Both contain 0 and have size P.
  int lo, hi;
  if (conv == WindowConvention::OpenLowClosedHigh) {
    hi = P / 2;          // floor(P/2)
    lo = hi - (P - 1);
  } else {
    lo = -(P / 2);       // ceil(-P/2)
    hi = lo + (P - 1);
  }
  std::vector<int> window;
  window.reserve(P);
  for (int v = lo; v <= hi; ++v) window.push_back(v);
  return window;
}

} // namespace gsc
