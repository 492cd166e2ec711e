#include "gsc/complexes.hpp"

#include "gsc/errors.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace gsc {

int term_generator_degree(const Term& t) { return -t.shift; }

std::vector<int> entry_exponent(const Term& source, const Term& target) {
  std::vector<int> e(source.gamma.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = source.gamma[i] - target.gamma[i];
  return e;
}

namespace {

int total(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

// Shared entry validation for complexes and presentations: exponents are
// non-negative, internal degrees line up, and the monomial has the weight of a
// piece between the two endpoint vertices.
void validate_entry(const NCCRAlgebra& alg, const Term& source, const Term& target,
                    const char* what) {
  const auto expo = entry_exponent(source, target);
  for (int x : expo)
    if (x < 0) throw InternalError(std::string(what) + ": entry exponent has a negative part");
  const int off_src = total(source.gamma) + source.shift;
  const int off_tgt = total(target.gamma) + target.shift;
  if (off_src != off_tgt)
    throw InternalError(std::string(what) + ": entry does not preserve internal degree");
  const auto expected =
      add(alg.group, alg.vertices[target.vertex], weight_of(alg.group, expo));
  if (!(expected == alg.vertices[source.vertex]))
    throw InternalError(std::string(what) + ": entry weight mismatch between endpoint vertices");
}

void validate_terms(const NCCRAlgebra& alg, const std::vector<Term>& terms, const char* what) {
  for (const auto& t : terms) {
    if (t.vertex < 0 || t.vertex >= static_cast<int>(alg.vertices.size()))
      throw InternalError(std::string(what) + ": term vertex out of range");
    if (static_cast<int>(t.gamma.size()) != alg.group.n)
      throw InternalError(std::string(what) + ": term multidegree has wrong length");
  }
}

// All monomials of this degree whose column vertex lands in the vertex set,
// largest-first in the monomial order; optionally only those landing on the
// distinguished vertex.
std::vector<RealizedBasisElement> realize_term(const NCCRAlgebra& alg, int term_index,
                                               const Term& t, int degree, bool cut) {
  std::vector<RealizedBasisElement> out;
  const int mdeg = degree + t.shift;
  if (mdeg < 0) return out;
  std::vector<Monomial> pool;
  for (std::size_t a = 0; a < alg.vertices.size(); ++a) {
    if (cut && static_cast<int>(a) != alg.distinguished) continue;
    const auto w = sub(alg.group, alg.vertices[a], alg.vertices[t.vertex]);
    auto part = enumerate_monomials(alg.group, mdeg, w);
    pool.insert(pool.end(), part.basis.begin(), part.basis.end());
  }
  std::sort(pool.begin(), pool.end(),
            [](const Monomial& x, const Monomial& y) { return monomial_greater(x, y); });
  out.reserve(pool.size());
  for (auto& m : pool) out.push_back({term_index, std::move(m.exponents)});
  return out;
}

std::vector<RealizedBasisElement> realize(const NCCRAlgebra& alg, const std::vector<Term>& slot,
                                          int degree, bool cut) {
  std::vector<RealizedBasisElement> out;
  for (std::size_t i = 0; i < slot.size(); ++i) {
    auto part = realize_term(alg, static_cast<int>(i), slot[i], degree, cut);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

} // namespace

void validate_complex(const NCCRAlgebra& alg, const ProjComplex& cx) {
  if (cx.diffs.size() + 1 != cx.slots.size() && !(cx.slots.size() <= 1 && cx.diffs.empty()))
    throw InternalError("complex: differential count does not match slot count");
  for (const auto& slot : cx.slots) validate_terms(alg, slot, "complex");
  for (std::size_t p = 0; p < cx.diffs.size(); ++p) {
    for (const auto& e : cx.diffs[p]) {
      if (e.col < 0 || e.col >= static_cast<int>(cx.slots[p].size()) || e.row < 0 ||
          e.row >= static_cast<int>(cx.slots[p + 1].size()))
        throw InternalError("complex: entry index out of range");
      validate_entry(alg, cx.slots[p][e.col], cx.slots[p + 1][e.row], "complex");
    }
  }
}

void validate_presentation(const NCCRAlgebra& alg, const PresentedModule& m) {
  validate_terms(alg, m.gens, "presentation");
  validate_terms(alg, m.rels, "presentation");
  for (const auto& e : m.entries) {
    if (e.col < 0 || e.col >= static_cast<int>(m.rels.size()) || e.row < 0 ||
        e.row >= static_cast<int>(m.gens.size()))
      throw InternalError("presentation: entry index out of range");
    validate_entry(alg, m.rels[e.col], m.gens[e.row], "presentation");
  }
}

bool verify_d_squared(const ProjComplex& cx) {
  for (std::size_t p = 0; p + 1 < cx.diffs.size(); ++p) {
    // Group the outgoing entries of the middle slot by source index.
    std::map<int, std::vector<const Entry*>> by_col;
    for (const auto& e : cx.diffs[p + 1]) by_col[e.col].push_back(&e);
    std::map<std::pair<int, int>, Rat> acc;
    for (const auto& e1 : cx.diffs[p]) {
      auto it = by_col.find(e1.row);
      if (it == by_col.end()) continue;
      for (const Entry* e2 : it->second) acc[{e1.col, e2->row}] += e1.coef * e2->coef;
    }
    for (const auto& [key, sum] : acc)
      if (sum != 0) return false;
  }
  return true;
}

bool verify_minimality(const ProjComplex& cx) {
  for (std::size_t p = 0; p < cx.diffs.size(); ++p)
    for (const auto& e : cx.diffs[p])
      if (total(entry_exponent(cx.slots[p][e.col], cx.slots[p + 1][e.row])) < 1) return false;
  return true;
}

ProjComplex twist(const ProjComplex& cx, int j) {
  ProjComplex out = cx;
  for (auto& slot : out.slots)
    for (auto& t : slot) t.shift += j;
  return out;
}

PresentedModule twist(const PresentedModule& m, int j) {
  PresentedModule out = m;
  for (auto& t : out.gens) t.shift += j;
  for (auto& t : out.rels) t.shift += j;
  return out;
}

ProjComplex direct_sum(const ProjComplex& a, const ProjComplex& b) {
  if (a.slots.empty()) return b;
  if (b.slots.empty()) return a;
  ProjComplex out;
  out.lo = std::min(a.lo, b.lo);
  const int hi = std::max(a.hi(), b.hi());
  out.slots.resize(hi - out.lo + 1);
  if (out.slots.size() > 1) out.diffs.resize(out.slots.size() - 1);
  std::vector<int> offset_a(out.slots.size(), 0);
  for (const ProjComplex* part : {&a, &b}) {
    for (int p = part->lo; p <= part->hi(); ++p) {
      auto& slot = out.slots[p - out.lo];
      const auto& src = part->slots[p - part->lo];
      const int off = static_cast<int>(slot.size());
      if (part == &b) offset_a[p - out.lo] = off; // records where b's terms start
      slot.insert(slot.end(), src.begin(), src.end());
    }
  }
  for (const ProjComplex* part : {&a, &b}) {
    for (int p = part->lo; p < part->hi(); ++p) {
      const int col_off = part == &a ? 0 : offset_a[p - out.lo];
      const int row_off = part == &a ? 0 : offset_a[p + 1 - out.lo];
      for (const auto& e : part->diffs[p - part->lo])
        out.diffs[p - out.lo].push_back({e.row + row_off, e.col + col_off, e.coef});
    }
  }
  return out;
}

std::vector<std::vector<std::pair<int, int>>> betti_table(const ProjComplex& cx) {
  std::vector<std::vector<std::pair<int, int>>> out;
  out.reserve(cx.slots.size());
  for (const auto& slot : cx.slots) {
    std::vector<std::pair<int, int>> row;
    row.reserve(slot.size());
    for (const auto& t : slot) row.emplace_back(t.vertex, t.shift);
    std::sort(row.begin(), row.end());
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<RealizedBasisElement> realize_slot(const NCCRAlgebra& alg,
                                               const std::vector<Term>& slot, int degree) {
  return realize(alg, slot, degree, false);
}

std::vector<RealizedBasisElement> realize_slot_cut(const NCCRAlgebra& alg,
                                                   const std::vector<Term>& slot, int degree) {
  return realize(alg, slot, degree, true);
}

Matrix realize_map(const NCCRAlgebra& alg, const std::vector<Term>& source,
                   const std::vector<Term>& target, const std::vector<Entry>& entries,
                   const std::vector<RealizedBasisElement>& source_basis,
                   const std::vector<RealizedBasisElement>& target_basis) {
  (void)alg;
  std::map<std::pair<int, std::vector<int>>, int> row_of;
  for (std::size_t r = 0; r < target_basis.size(); ++r)
    row_of[{target_basis[r].term, target_basis[r].alpha}] = static_cast<int>(r);
  std::map<int, std::vector<const Entry*>> by_col;
  for (const auto& e : entries) by_col[e.col].push_back(&e);
  Matrix m(static_cast<int>(target_basis.size()), static_cast<int>(source_basis.size()));
  for (std::size_t c = 0; c < source_basis.size(); ++c) {
    const auto& elt = source_basis[c];
    auto it = by_col.find(elt.term);
    if (it == by_col.end()) continue;
    for (const Entry* e : it->second) {
      auto expo = entry_exponent(source[e->col], target[e->row]);
      std::vector<int> alpha(elt.alpha);
      for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] += expo[i];
      auto hit = row_of.find({e->row, alpha});
      if (hit == row_of.end())
        throw InternalError("realize_map: image element missing from target basis");
      m.at(hit->second, static_cast<int>(c)) += e->coef;
    }
  }
  return m;
}

CutDims apply_idempotent(const NCCRAlgebra& alg, const ProjComplex& cx, int d_min, int d_max) {
  CutDims out;
  out.lo = cx.lo;
  out.d_min = d_min;
  out.dims.resize(cx.slots.size());
  for (std::size_t p = 0; p < cx.slots.size(); ++p) {
    out.dims[p].reserve(d_max - d_min + 1);
    for (int d = d_min; d <= d_max; ++d)
      out.dims[p].push_back(Int(realize_slot_cut(alg, cx.slots[p], d).size()));
  }
  return out;
}

namespace {

Int presented_dim(const NCCRAlgebra& alg, const PresentedModule& m, int degree, bool cut) {
  const auto f0 = realize(alg, m.gens, degree, cut);
  if (f0.empty()) return 0;
  const auto f1 = realize(alg, m.rels, degree, cut);
  if (f1.empty()) return Int(f0.size());
  Matrix rel = realize_map(alg, m.rels, m.gens, m.entries, f1, f0);
  return Int(static_cast<int>(f0.size()) - rank(rel));
}

} // namespace

std::vector<Int> apply_idempotent(const NCCRAlgebra& alg, const PresentedModule& m, int d_min,
                                  int d_max) {
  std::vector<Int> out;
  out.reserve(d_max - d_min + 1);
  for (int d = d_min; d <= d_max; ++d) out.push_back(presented_dim(alg, m, d, true));
  return out;
}

Int module_dim(const NCCRAlgebra& alg, const PresentedModule& m, int degree) {
  return presented_dim(alg, m, degree, false);
}

} // namespace gsc
