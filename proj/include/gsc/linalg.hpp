// Dense exact linear algebra over Q: reduced row echelon form, rank, kernels,
// incremental row-space bookkeeping, linear solves, and minimal polynomials.
//
// Determinism matters here: every basis this project reports is derived from RREF
// with leftmost-pivot/topmost-row selection, so identical inputs give identical
// output bases on every platform.
#pragma once

#include "gsc/rational.hpp"

#include <optional>
#include <vector>

namespace gsc {

using Vec = std::vector<Rat>;

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a; // row-major, rows*cols entries

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Rat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Matrix identity(int n);
  Matrix transposed() const;
};

Matrix mul(const Matrix& x, const Matrix& y);
Vec apply(const Matrix& m, const Vec& v);

// In-place Gauss-Jordan. Returns pivot columns in increasing order.
std::vector<int> rref_in_place(Matrix& m);

int rank(Matrix m);

// Canonical basis of { v : m v = 0 }: one vector per free column, the free
// coordinate set to 1 and pivot coordinates filled from the RREF.
std::vector<Vec> kernel_basis(const Matrix& m);

// One solution of m x = b if the system is consistent.
std::optional<Vec> solve(Matrix m, Vec b);

// Row space maintained in reduced echelon form; supports O(rows) membership
// tests and incremental insertion. Used for span sums, quotient-basis
// completion, and boundary reduction.
class RowSpace {
public:
  explicit RowSpace(int width) : width_(width) {}

  int dim() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }

  // Reduces v against the stored rows; inserts the remainder if nonzero.
  // Returns true when the dimension grew.
  bool insert(Vec v);

  bool contains(Vec v) const { return reduce(std::move(v)).empty() ? true : false; }

  // Residue of v after reduction: empty vector iff v lies in the span.
  Vec reduce(Vec v) const;

  const std::vector<Vec>& rows() const { return rows_; }

private:
  int width_;
  std::vector<Vec> rows_;       // reduced, sorted by pivot column
  std::vector<int> pivot_cols_; // parallel to rows_
};

// Monic minimal polynomial of a square matrix, low-degree coefficients first.
std::vector<Rat> min_poly(const Matrix& m);

// All rational roots of a polynomial with rational coefficients (low degree
// first), each listed once, in increasing order.
std::vector<Rat> rational_roots(const std::vector<Rat>& poly);

// Evaluates a polynomial at a rational point (Horner).
Rat poly_eval(const std::vector<Rat>& poly, const Rat& x);

} // namespace gsc
