#include "gsc/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gsc {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix mul(const Matrix& x, const Matrix& y) {
  assert(x.cols == y.rows);
  Matrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        const Rat& ykj = y.at(k, j);
        if (ykj != 0) z.at(i, j) += xik * ykj;
      }
    }
  return z;
}

Vec apply(const Matrix& m, const Vec& v) {
  assert(static_cast<int>(v.size()) == m.cols);
  Vec out(m.rows, Rat(0));
  for (int r = 0; r < m.rows; ++r) {
    Rat s = 0;
    for (int c = 0; c < m.cols; ++c)
      if (m.at(r, c) != 0 && v[c] != 0) s += m.at(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

std::vector<int> rref_in_place(Matrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int p = -1;
    for (int r = row; r < m.rows; ++r)
      if (m.at(r, col) != 0) { p = r; break; }
    if (p < 0) continue;
    if (p != row)
      for (int c = col; c < m.cols; ++c) std::swap(m.at(p, c), m.at(row, c));
    const Rat inv = Rat(1) / m.at(row, col);
    for (int c = col; c < m.cols; ++c) m.at(row, c) *= inv;
    for (int r = 0; r < m.rows; ++r) {
      if (r == row) continue;
      const Rat f = m.at(r, col);
      if (f == 0) continue;
      for (int c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(Matrix m) { return static_cast<int>(rref_in_place(m).size()); }

std::vector<Vec> kernel_basis(const Matrix& m_in) {
  Matrix m = m_in;
  const std::vector<int> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<Vec> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols, Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(Matrix m, Vec b) {
  assert(static_cast<int>(b.size()) == m.rows);
  Matrix aug(m.rows, m.cols + 1);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols) = b[r];
  }
  const std::vector<int> pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt; // row 0 = 1
  Vec x(m.cols, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), m.cols);
  return x;
}

bool RowSpace::insert(Vec v) {
  Vec r = reduce(std::move(v));
  if (r.empty()) return false;
  int pc = 0;
  while (r[pc] == 0) ++pc;
  const Rat inv = Rat(1) / r[pc];
  for (auto& x : r) x *= inv;
  // Back-substitute into existing rows so the basis stays fully reduced.
  for (auto& row : rows_) {
    const Rat f = row[pc];
    if (f == 0) continue;
    for (int c = pc; c < width_; ++c) row[c] -= f * r[c];
  }
  const auto it = std::upper_bound(pivot_cols_.begin(), pivot_cols_.end(), pc);
  const size_t pos = static_cast<size_t>(it - pivot_cols_.begin());
  pivot_cols_.insert(it, pc);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

Vec RowSpace::reduce(Vec v) const {
  assert(static_cast<int>(v.size()) == width_);
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Rat f = v[pivot_cols_[i]];
    if (f == 0) continue;
    for (int c = pivot_cols_[i]; c < width_; ++c) v[c] -= f * rows_[i][c];
  }
  for (const auto& x : v)
    if (x != 0) return v;
  return {};
}

namespace {

// Polynomials as coefficient vectors, low degree first, trailing zeros trimmed.

void poly_trim(std::vector<Rat>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<Rat> poly_mul(const std::vector<Rat>& p, const std::vector<Rat>& q) {
  if (p.empty() || q.empty()) return {};
  std::vector<Rat> r(p.size() + q.size() - 1, Rat(0));
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

// p = q*d + r with deg r < deg d; returns {q, r}.
std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> p,
                                                          const std::vector<Rat>& d) {
  assert(!d.empty());
  std::vector<Rat> q;
  if (p.size() >= d.size()) q.assign(p.size() - d.size() + 1, Rat(0));
  while (p.size() >= d.size()) {
    const Rat f = p.back() / d.back();
    q[p.size() - d.size()] = f;
    for (size_t i = 0; i < d.size(); ++i) p[p.size() - d.size() + i] -= f * d[i];
    p.pop_back(); // leading term cancelled exactly
    poly_trim(p);
  }
  return {q, p};
}

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    auto r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

} // namespace

std::vector<Rat> min_poly(const Matrix& m) {
  assert(m.rows == m.cols);
  const int n = m.rows;
  std::vector<Rat> result{Rat(1)};
  RowSpace handled(n);

  for (int seed = 0; seed < n && static_cast<int>(result.size()) <= n; ++seed) {
    Vec v(n, Rat(0));
    v[seed] = 1;
    if (handled.contains(v)) continue;

    // Krylov chain v, Mv, M^2 v, ... up to the first linear dependence.
    std::vector<Vec> chain{v};
    RowSpace krylov(n);
    krylov.insert(v);
    for (;;) {
      Vec w = (apply)(m, chain.back());
      const bool grew = krylov.insert(w);
      chain.push_back(std::move(w));
      if (!grew) break;
    }
    const int deg = static_cast<int>(chain.size()) - 1;

    // chain[deg] + sum_{i<deg} c_i chain[i] = 0 gives the local annihilator.
    Matrix sys(n, deg);
    for (int j = 0; j < deg; ++j)
      for (int r = 0; r < n; ++r) sys.at(r, j) = chain[j][r];
    Vec rhs(n);
    for (int r = 0; r < n; ++r) rhs[r] = -chain[deg][r];
    const auto coeffs = solve(sys, rhs);
    assert(coeffs.has_value());
    std::vector<Rat> local = *coeffs;
    local.push_back(Rat(1));

    // result <- lcm(result, local)
    const std::vector<Rat> g = poly_gcd(result, local);
    result = poly_divmod(poly_mul(result, local), g).first;

    for (int i = 0; i < deg; ++i) handled.insert(chain[i]);
  }
  const Rat lead = result.back();
  for (auto& c : result) c /= lead;
  return result;
}

Rat poly_eval(const std::vector<Rat>& poly, const Rat& x) {
  Rat acc = 0;
  for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

std::vector<Rat> rational_roots(const std::vector<Rat>& poly_in) {
  std::vector<Rat> poly = poly_in;
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  if (poly.size() <= 1) return {};

  Int denom_lcm = 1;
  for (const auto& c : poly)
    denom_lcm = boost::multiprecision::lcm(denom_lcm, boost::multiprecision::denominator(c));
  std::vector<Int> z;
  z.reserve(poly.size());
  for (const auto& c : poly)
    z.push_back(boost::multiprecision::numerator(c * Rat(denom_lcm)));

  std::vector<Rat> roots;
  size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) roots.push_back(Rat(0));
  if (low + 1 >= z.size()) return roots;

  // Candidates p/q with p | constant term, q | leading term (both after
  // stripping the power of x), checked exactly.
  const Int a0 = boost::multiprecision::abs(z[low]);
  const Int an = boost::multiprecision::abs(z.back());
  auto divisors = [](const Int& v) {
    std::vector<Int> ds;
    for (Int d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        if (d != v / d) ds.push_back(v / d);
      }
    return ds;
  };
  for (const Int& p : divisors(a0))
    for (const Int& q : divisors(an))
      for (int sign = 0; sign < 2; ++sign) {
        const Rat cand = sign ? -Rat(p) / Rat(q) : Rat(p) / Rat(q);
        if (poly_eval(poly_in, cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

} // namespace gsc
