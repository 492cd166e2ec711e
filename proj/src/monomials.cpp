#include "gsc/monomials.hpp"

#include "gsc/errors.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace gsc {

CombinedWeight trivial_weight(const GroupSpec& g) {
  CombinedWeight w;
  w.finite.assign(g.finite_orders.size(), 0);
  return w;
}

CombinedWeight add(const GroupSpec& g, const CombinedWeight& a, const CombinedWeight& b) {
  CombinedWeight w;
  w.torus = a.torus + b.torus;
  w.finite.resize(g.finite_orders.size());
  for (size_t j = 0; j < g.finite_orders.size(); ++j)
    w.finite[j] = (a.finite[j] + b.finite[j]) % g.finite_orders[j];
  return w;
}

CombinedWeight sub(const GroupSpec& g, const CombinedWeight& a, const CombinedWeight& b) {
  CombinedWeight w;
  w.torus = a.torus - b.torus;
  w.finite.resize(g.finite_orders.size());
  for (size_t j = 0; j < g.finite_orders.size(); ++j) {
    const int m = g.finite_orders[j];
    w.finite[j] = ((a.finite[j] - b.finite[j]) % m + m) % m;
  }
  return w;
}

CombinedWeight weight_of(const GroupSpec& g, const std::vector<int>& exponents) {
  assert(static_cast<int>(exponents.size()) == g.n);
  CombinedWeight w = trivial_weight(g);
  for (int i = 0; i < g.n; ++i) w.torus += g.torus_weights[i] * exponents[i];
  for (size_t j = 0; j < g.finite_orders.size(); ++j) {
    long long s = 0;
    for (int i = 0; i < g.n; ++i) s += static_cast<long long>(g.finite_weights[j][i]) * exponents[i];
    const long long m = g.finite_orders[j];
    w.finite[j] = static_cast<int>(((s % m) + m) % m);
  }
  return w;
}

bool monomial_greater(const Monomial& a, const Monomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exponents > b.exponents; // lex with x_1 dominant
}

namespace {

// Suffix bounds for pruning: the torus weight a tail of `r` letters drawn from
// variables i..n-1 can contribute lies in [r*min_chi[i], r*max_chi[i]].
struct SuffixBounds {
  std::vector<int> min_chi, max_chi;
  explicit SuffixBounds(const GroupSpec& g) {
    const int n = g.n;
    min_chi.assign(n + 1, 0);
    max_chi.assign(n + 1, 0);
    min_chi[n] = 1 << 28;
    max_chi[n] = -(1 << 28);
    for (int i = n - 1; i >= 0; --i) {
      min_chi[i] = std::min(min_chi[i + 1], g.torus_weights[i]);
      max_chi[i] = std::max(max_chi[i + 1], g.torus_weights[i]);
    }
  }
  bool reachable(int i, int rem_deg, int rem_torus) const {
    if (rem_deg == 0) return rem_torus == 0;
    if (i >= static_cast<int>(min_chi.size()) - 1) return false;
    return static_cast<long long>(rem_deg) * min_chi[i] <= rem_torus &&
           rem_torus <= static_cast<long long>(rem_deg) * max_chi[i];
  }
};

void enumerate_rec(const GroupSpec& g, const SuffixBounds& sb, int var, int rem_deg,
                   int rem_torus, std::vector<int>& expo, const CombinedWeight& target,
                   std::vector<Monomial>& out) {
  if (var == g.n) {
    if (rem_deg != 0 || rem_torus != 0) return;
    if (weight_of(g, expo).finite == target.finite) out.push_back(Monomial{expo});
    return;
  }
  if (!sb.reachable(var, rem_deg, rem_torus)) return;
  if (var == g.n - 1) {
    // Last variable is forced; avoids a deep tail of zero choices.
    const int e = rem_deg;
    if (static_cast<long long>(e) * g.torus_weights[var] == rem_torus) {
      expo[var] = e;
      enumerate_rec(g, sb, var + 1, 0, 0, expo, target, out);
      expo[var] = 0;
    }
    return;
  }
  for (int e = rem_deg; e >= 0; --e) { // descending => canonical largest-first order
    expo[var] = e;
    enumerate_rec(g, sb, var + 1, rem_deg - e, rem_torus - e * g.torus_weights[var], expo,
                  target, out);
  }
  expo[var] = 0;
}

} // namespace

WeightSpace enumerate_monomials(const GroupSpec& g, int degree, const CombinedWeight& weight) {
  validate(g);
  if (degree < 0) throw ValidationError("enumerate_monomials: negative degree");
  WeightSpace ws;
  ws.degree = degree;
  ws.weight = weight;
  SuffixBounds sb(g);
  std::vector<int> expo(g.n, 0);
  enumerate_rec(g, sb, 0, degree, weight.torus, expo, weight, ws.basis);
  return ws;
}

WeightSpace enumerate_monomials(const GroupSpec& g, int degree, int torus_weight) {
  CombinedWeight w = trivial_weight(g);
  w.torus = torus_weight;
  return enumerate_monomials(g, degree, w);
}

// ---------------------------------------------------------------------------
// Counting table

WeightTable::WeightTable(GroupSpec g, int D) : group_(std::move(g)), truncation_(D) {
  validate(group_);
  if (D < 0) throw ValidationError("weight table: negative truncation");
  const int n = group_.n;
  int min_chi = 0, max_chi = 0;
  for (int w : group_.torus_weights) {
    min_chi = std::min(min_chi, w);
    max_chi = std::max(max_chi, w);
  }
  lo_ = D * min_chi;
  torus_span_ = D * max_chi - lo_ + 1;
  fin_span_ = 1;
  for (int m : group_.finite_orders) fin_span_ *= m;

  // dp[d][torus][res] over variables, one convolution per variable. Counts are
  // kept in 64-bit and the whole table is escalated to big integers if any
  // addition overflows.
  const size_t cells = static_cast<size_t>(D + 1) * torus_span_ * fin_span_;
  std::vector<unsigned long long> dp(cells, 0);
  std::vector<int> strides(group_.finite_orders.size());
  {
    int s = 1;
    for (size_t j = group_.finite_orders.size(); j-- > 0;) {
      strides[j] = s;
      s *= group_.finite_orders[j];
    }
  }
  auto idx = [&](int d, int torus, int fin) {
    return (static_cast<size_t>(d) * torus_span_ + (torus - lo_)) * fin_span_ + fin;
  };
  dp[idx(0, 0, 0)] = 1;
  bool overflow = false;
  for (int i = 0; i < n && !overflow; ++i) {
    const int chi = group_.torus_weights[i];
    // Unbounded-knapsack style update in increasing degree: after this loop,
    // dp counts monomials in variables 0..i.
    for (int d = 1; d <= D && !overflow; ++d)
      for (int t = lo_; t < lo_ + torus_span_; ++t) {
        const int pt = t - chi;
        if (pt < lo_ || pt >= lo_ + torus_span_) continue;
        for (int f = 0; f < fin_span_; ++f) {
          // residue tuple index arithmetic: adding variable i shifts each
          // residue; recover the predecessor tuple index explicitly.
          int pf = 0;
          {
            int rem = f;
            for (size_t j = 0; j < strides.size(); ++j) {
              const int m = group_.finite_orders[j];
              const int rj = rem / strides[j];
              rem %= strides[j];
              const int prev = ((rj - group_.finite_weights[j][i]) % m + m) % m;
              pf += prev * strides[j];
            }
          }
          const unsigned long long addend = dp[idx(d - 1, pt, pf)];
          if (addend == 0) continue;
          unsigned long long& cell = dp[idx(d, t, f)];
          if (__builtin_add_overflow(cell, addend, &cell)) {
            overflow = true;
            break;
          }
        }
      }
  }
  if (!overflow) {
    counts_.reserve(cells);
    for (unsigned long long v : dp) counts_.emplace_back(v);
    return;
  }
  // Escalated path: same recurrence with arbitrary-precision cells.
  counts_.assign(cells, Int(0));
  counts_[idx(0, 0, 0)] = 1;
  for (int i = 0; i < n; ++i) {
    const int chi = group_.torus_weights[i];
    for (int d = 1; d <= D; ++d)
      for (int t = lo_; t < lo_ + torus_span_; ++t) {
        const int pt = t - chi;
        if (pt < lo_ || pt >= lo_ + torus_span_) continue;
        for (int f = 0; f < fin_span_; ++f) {
          int pf = 0, rem = f;
          for (size_t j = 0; j < strides.size(); ++j) {
            const int m = group_.finite_orders[j];
            const int rj = rem / strides[j];
            rem %= strides[j];
            pf += (((rj - group_.finite_weights[j][i]) % m + m) % m) * strides[j];
          }
          counts_[idx(d, t, f)] += counts_[idx(d - 1, pt, pf)];
        }
      }
  }
}

Int WeightTable::dim(int degree, const CombinedWeight& w) const {
  if (degree < 0 || degree > truncation_) return 0;
  if (w.torus < lo_ || w.torus >= lo_ + torus_span_) return 0;
  int fin = 0;
  {
    int s = fin_span_;
    for (size_t j = 0; j < group_.finite_orders.size(); ++j) {
      s /= group_.finite_orders[j];
      fin += w.finite[j] * s;
    }
  }
  return counts_[(static_cast<size_t>(degree) * torus_span_ + (w.torus - lo_)) * fin_span_ + fin];
}

Int WeightTable::dim(int degree, int torus_weight) const {
  CombinedWeight w = trivial_weight(group_);
  w.torus = torus_weight;
  return dim(degree, w);
}

Int weight_space_dim(const GroupSpec& g, int degree, const CombinedWeight& weight) {
  if (degree < 0) return 0;
  return WeightTable(g, degree).dim(degree, weight);
}

Int weight_space_dim(const GroupSpec& g, int degree, int torus_weight) {
  CombinedWeight w = trivial_weight(g);
  w.torus = torus_weight;
  return weight_space_dim(g, degree, w);
}

TruncatedSeries invariant_series(const GroupSpec& g, int D) {
  WeightTable table(g, D);
  TruncatedSeries s;
  s.coefficients.reserve(D + 1);
  const CombinedWeight zero = trivial_weight(g);
  for (int d = 0; d <= D; ++d) s.coefficients.push_back(table.dim(d, zero));
  return s;
}

namespace {

bool divides(const Monomial& d, const Monomial& m) {
  for (size_t i = 0; i < d.exponents.size(); ++i)
    if (d.exponents[i] > m.exponents[i]) return false;
  return true;
}

} // namespace

std::vector<Monomial> invariant_hilbert_basis(const GroupSpec& g) {
  validate(g);
  int max_abs = 0;
  for (int w : g.torus_weights) max_abs = std::max(max_abs, std::abs(w));
  long long lcm_orders = 1;
  for (int m : g.finite_orders) lcm_orders = std::lcm(lcm_orders, static_cast<long long>(m));
  const int bound = static_cast<int>(g.n * std::max(max_abs, 1) * lcm_orders);

  std::vector<Monomial> basis;
  const CombinedWeight zero = trivial_weight(g);
  for (int d = 1; d <= bound + 2; ++d) {
    const WeightSpace ws = enumerate_monomials(g, d, zero);
    for (const Monomial& m : ws.basis) {
      bool minimal = true;
      for (const Monomial& b : basis)
        if (divides(b, m)) {
          minimal = false;
          break;
        }
      if (!minimal) continue;
      if (d > bound)
        throw InstabilityError(
            "invariant Hilbert basis: new minimal generator of degree " + std::to_string(d) +
            " beyond the certified bound " + std::to_string(bound));
      basis.push_back(m);
    }
  }
  return basis;
}

std::vector<Monomial> minimal_weight_monomials(const GroupSpec& g, const CombinedWeight& v,
                                               const std::vector<Monomial>& basis, int bound) {
  std::vector<Monomial> out;
  for (int d = 1; d <= bound; ++d) {
    const WeightSpace ws = enumerate_monomials(g, d, v);
    for (const Monomial& m : ws.basis) {
      bool minimal = true;
      for (const Monomial& b : basis)
        if (divides(b, m)) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(m);
    }
  }
  return out;
}

GorensteinReport gorenstein_symmetry_check(const TruncatedSeries& series,
                                           const std::vector<int>& generator_degrees, int n) {
  GorensteinReport rep;
  const int D = static_cast<int>(series.coefficients.size()) - 1;
  int deg_sum = 0;
  for (int d : generator_degrees) deg_sum += d;
  const int s = static_cast<int>(generator_degrees.size());
  rep.numerator_degree = deg_sum - n;
  rep.sign = ((n - 1 + s) % 2 == 0) ? 1 : -1;
  rep.conclusive = D >= deg_sum + n && rep.numerator_degree >= 0;
  if (!rep.conclusive) return rep;

  // N(t) = H(t) * prod_i (1 - t^{d_i}), truncated at D.
  std::vector<Int> N = series.coefficients;
  for (int d : generator_degrees) {
    std::vector<Int> next(N.size(), Int(0));
    for (size_t k = 0; k < N.size(); ++k) {
      next[k] += N[k];
      if (k + d < N.size()) next[k + d] -= N[k];
    }
    N = std::move(next);
  }

  rep.terminates = true;
  for (size_t k = rep.numerator_degree + 1; k < N.size(); ++k)
    if (N[k] != 0) rep.terminates = false;

  rep.palindromic = true;
  for (int k = 0; k <= rep.numerator_degree; ++k)
    if (N[k] != rep.sign * N[rep.numerator_degree - k]) rep.palindromic = false;

  rep.numerator.assign(N.begin(), N.begin() + rep.numerator_degree + 1);
  rep.pass = rep.terminates && rep.palindromic;
  rep.parameter = rep.pass ? deg_sum - rep.numerator_degree : 0;
  return rep;
}

std::vector<std::vector<int>> all_residue_tuples(const std::vector<int>& orders) {
  std::vector<std::vector<int>> out{{}};
  for (int m : orders) {
    std::vector<std::vector<int>> next;
    next.reserve(out.size() * m);
    for (const auto& t : out)
      for (int r = 0; r < m; ++r) {
        auto u = t;
        u.push_back(r);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

} // namespace gsc
