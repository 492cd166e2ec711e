#include "gsc/algebra.hpp"

#include "gsc/errors.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace gsc {

int NCCRAlgebra::vertex_index(const CombinedWeight& c) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), c);
  if (it == vertices.end() || *it != c) return -1;
  return static_cast<int>(it - vertices.begin());
}

Int NCCRAlgebra::piece_dim(int a, int b, int d) const {
  return table.dim(d, sub(group, vertices[a], vertices[b]));
}

HomSpace NCCRAlgebra::piece_basis(int a, int b, int d) const {
  if (d > truncation)
    throw ValidationError("piece basis requested beyond truncation " +
                          std::to_string(truncation));
  return hom_basis(group, vertices[a], vertices[b], d);
}

Int NCCRAlgebra::graded_dim(int d) const {
  Int total = 0;
  const int v = static_cast<int>(vertices.size());
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b) total += piece_dim(a, b, d);
  return total;
}

NCCRAlgebra monomial_model(const GroupSpec& g, int D, WindowConvention conv) {
  validate(g);
  const std::vector<int> window = character_window(g, conv); // throws unless sum(chi) = 0, P >= 1
  NCCRAlgebra lambda{g, D, {}, 0, WeightTable(g, D), false};
  const auto tuples = all_residue_tuples(g.finite_orders);
  for (int t : window)
    for (const auto& psi : tuples) lambda.vertices.push_back(CombinedWeight{t, psi});
  std::sort(lambda.vertices.begin(), lambda.vertices.end());
  CombinedWeight dist = trivial_weight(g);
  dist.torus = window.front();
  lambda.distinguished = lambda.vertex_index(dist);
  assert(lambda.distinguished == 0); // minimal character, trivial finite part sorts first
  return lambda;
}

NCCRAlgebra build_nccr(const GroupSpec& g, int D, WindowConvention conv) {
  validate(g);
  std::string failed;
  auto note = [&failed](const char* name) {
    if (!failed.empty()) failed += ", ";
    failed += name;
  };
  if (!is_unimodular(g)) note("unimodular");
  if (!is_quasi_symmetric(g)) note("quasi-symmetric");
  if (!is_generic(g)) note("generic");
  if (!failed.empty())
    throw ValidationError("endomorphism algebra hypotheses not met: " + failed);
  NCCRAlgebra lambda = monomial_model(g, D, conv);
  lambda.validated = true;
  return lambda;
}

NCCRAlgebra tensor_with_group_algebra(const NCCRAlgebra& lambda, const std::vector<int>& orders,
                                      const std::vector<std::vector<int>>& finite_weights) {
  if (orders.empty()) return lambda;
  if (lambda.group.has_finite_part())
    throw ValidationError("group tensor: base algebra already has a finite part");
  GroupSpec combined = lambda.group;
  combined.finite_orders = orders;
  combined.finite_weights = finite_weights;
  validate(combined);
  if (!is_unimodular(combined))
    throw ValidationError("group tensor: combined weight data is not unimodular");
  NCCRAlgebra out = monomial_model(combined, lambda.truncation);
  out.validated = lambda.validated && is_generic(combined);
  return out;
}

namespace {

// True iff some sub-exponent 0 <= beta <= alpha (beta = 0 and beta = alpha
// allowed) has the requested combined weight. Prunes on reachable torus sums.
bool has_submonomial_of_weight(const GroupSpec& g, const std::vector<int>& alpha,
                               const CombinedWeight& target) {
  const int n = g.n;
  // suffix_min/max[i] = extreme torus contributions of beta_i..beta_{n-1}.
  std::vector<long long> suffix_min(n + 1, 0), suffix_max(n + 1, 0);
  for (int i = n - 1; i >= 0; --i) {
    const long long c = static_cast<long long>(g.torus_weights[i]) * alpha[i];
    suffix_min[i] = suffix_min[i + 1] + std::min<long long>(0, c);
    suffix_max[i] = suffix_max[i + 1] + std::max<long long>(0, c);
  }
  std::vector<int> beta(n, 0);
  std::function<bool(int, long long)> rec = [&](int i, long long torus_left) -> bool {
    if (i == n) {
      if (torus_left != 0) return false;
      return weight_of(g, beta).finite == target.finite;
    }
    if (torus_left < suffix_min[i] || torus_left > suffix_max[i]) return false;
    for (int e = 0; e <= alpha[i]; ++e) {
      beta[i] = e;
      if (rec(i + 1, torus_left - static_cast<long long>(e) * g.torus_weights[i])) {
        beta[i] = 0;
        return true;
      }
    }
    beta[i] = 0;
    return false;
  };
  return rec(0, target.torus);
}

// True iff the piece monomial factors through some intermediate vertex: a
// proper, nonempty sub-exponent beta with (source) - weight(beta) a vertex.
bool factors_through_vertex(const NCCRAlgebra& lambda, int source, const Monomial& m) {
  const GroupSpec& g = lambda.group;
  const int n = g.n;
  std::vector<int> beta(n, 0);
  const int total = m.degree();
  std::function<bool(int, int)> rec = [&](int i, int used) -> bool {
    if (i == n) {
      if (used == 0 || used == total) return false; // proper and nonempty only
      const CombinedWeight mid = sub(g, lambda.vertices[source], weight_of(g, beta));
      return lambda.is_vertex(mid);
    }
    for (int e = 0; e <= m.exponents[i]; ++e) {
      beta[i] = e;
      if (rec(i + 1, used + e)) return true;
    }
    beta[i] = 0;
    return false;
  };
  return rec(0, 0);
}

} // namespace

QuiverPresentation extract_presentation(const NCCRAlgebra& lambda, int degree_bound) {
  if (lambda.truncation < degree_bound + 1)
    throw ValidationError("presentation: algebra truncation must exceed the degree bound");
  QuiverPresentation pres;
  const int v = static_cast<int>(lambda.vertices.size());

  // Arrows: piece monomials not factoring through any intermediate vertex.
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b)
      for (int d = 1; d <= degree_bound; ++d) {
        if (lambda.piece_dim(a, b, d) == 0) continue;
        const HomSpace piece = lambda.piece_basis(a, b, d);
        for (const Monomial& m : piece.basis)
          if (!factors_through_vertex(lambda, a, m)) pres.arrows.push_back(Arrow{a, b, d, m});
      }

  // arrows_from[a] lists global arrow indices with source a, in global order.
  std::vector<std::vector<int>> arrows_from(v);
  for (size_t i = 0; i < pres.arrows.size(); ++i)
    arrows_from[pres.arrows[i].source].push_back(static_cast<int>(i));

  // Relations per (source, target, degree): kernel of the evaluation map from
  // parallel path words to the piece.
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b)
      for (int d = 2; d <= degree_bound; ++d) {
        // Enumerate words a -> b of total degree d, depth-first in arrow order.
        std::vector<std::vector<int>> words;
        std::vector<int> word;
        std::function<void(int, int)> grow = [&](int at, int deg_left) {
          if (deg_left == 0) {
            if (at == b && !word.empty()) words.push_back(word);
            return;
          }
          for (int ai : arrows_from[at]) {
            const Arrow& arr = pres.arrows[ai];
            if (arr.degree > deg_left) continue;
            word.push_back(ai);
            grow(arr.target, deg_left - arr.degree);
            word.pop_back();
          }
        };
        grow(a, d);
        if (words.empty()) continue;

        const HomSpace piece = lambda.piece_basis(a, b, d);
        std::map<std::vector<int>, int> row_of;
        for (size_t r = 0; r < piece.basis.size(); ++r)
          row_of[piece.basis[r].exponents] = static_cast<int>(r);

        Matrix eval(static_cast<int>(piece.basis.size()), static_cast<int>(words.size()));
        for (size_t c = 0; c < words.size(); ++c) {
          std::vector<int> expo(lambda.group.n, 0);
          for (int ai : words[c])
            for (int i = 0; i < lambda.group.n; ++i)
              expo[i] += pres.arrows[ai].label.exponents[i];
          const auto it = row_of.find(expo);
          if (it == row_of.end())
            throw InternalError("presentation: path product escaped its piece");
          eval.at(it->second, static_cast<int>(c)) = 1;
        }
        for (const Vec& k : kernel_basis(eval)) {
          Relation rel;
          rel.source = a;
          rel.target = b;
          rel.degree = d;
          for (size_t c = 0; c < k.size(); ++c)
            if (k[c] != 0) rel.terms.emplace_back(k[c], words[c]);
          pres.relations.push_back(std::move(rel));
          pres.relation_dims[d] += 1;
        }
      }
  return pres;
}

Monomial evaluate_word(const NCCRAlgebra& lambda, const QuiverPresentation& pres,
                       const std::vector<int>& word) {
  if (word.empty()) throw ValidationError("evaluate_word: empty word");
  int at = pres.arrows[word.front()].source;
  std::vector<int> expo(lambda.group.n, 0);
  for (int ai : word) {
    const Arrow& a = pres.arrows[ai];
    if (a.source != at)
      throw ValidationError("evaluate_word: word is not composable");
    at = a.target;
    for (int i = 0; i < lambda.group.n; ++i) expo[i] += a.label.exponents[i];
  }
  return Monomial{expo};
}

std::vector<Int> quotient_dims_by_idempotent(const NCCRAlgebra& lambda, int D) {
  if (D > lambda.truncation)
    throw ValidationError("quotient dimensions: requested degree beyond truncation");
  const int v = static_cast<int>(lambda.vertices.size());
  const int e = lambda.distinguished;
  std::vector<Int> dims;
  for (int d = 0; d <= D - 2; ++d) {
    Int surviving = 0;
    for (int a = 0; a < v; ++a) {
      const CombinedWeight to_e = sub(lambda.group, lambda.vertices[a], lambda.vertices[e]);
      for (int b = 0; b < v; ++b) {
        if (lambda.piece_dim(a, b, d) == 0) continue;
        for (const Monomial& m : lambda.piece_basis(a, b, d).basis)
          if (!has_submonomial_of_weight(lambda.group, m.exponents, to_e)) ++surviving;
      }
    }
    dims.push_back(surviving);
  }
  return dims;
}

bool verify_associativity(const NCCRAlgebra& lambda, int total_degree_bound) {
  const int v = static_cast<int>(lambda.vertices.size());
  // Monomial products are exponent sums; the content of the check is that
  // composable products land in the right piece and bracketing is immaterial.
  for (int a = 0; a < v; ++a)
    for (int b = 0; b < v; ++b)
      for (int c = 0; c < v; ++c)
        for (int w = 0; w < v; ++w)
          for (int d1 = 0; d1 <= total_degree_bound; ++d1)
            for (int d2 = 0; d1 + d2 <= total_degree_bound; ++d2)
              for (int d3 = 0; d1 + d2 + d3 <= total_degree_bound; ++d3) {
                if (lambda.piece_dim(a, b, d1) == 0 || lambda.piece_dim(b, c, d2) == 0 ||
                    lambda.piece_dim(c, w, d3) == 0)
                  continue;
                const auto fs = lambda.piece_basis(a, b, d1);
                const auto gs = lambda.piece_basis(b, c, d2);
                const auto hs = lambda.piece_basis(c, w, d3);
                const auto target = lambda.piece_basis(a, w, d1 + d2 + d3);
                for (const auto& f : fs.basis)
                  for (const auto& g : gs.basis)
                    for (const auto& h : hs.basis) {
                      // h after g after f: (h.g).f vs h.(g.f)
                      const Monomial gf = compose(lambda.group, gs, g, fs, f);
                      const auto gf_space =
                          hom_basis(lambda.group, fs.source, gs.target, d1 + d2);
                      const Monomial hg = compose(lambda.group, hs, h, gs, g);
                      const auto hg_space =
                          hom_basis(lambda.group, gs.source, hs.target, d2 + d3);
                      const Monomial left = compose(lambda.group, hg_space, hg, fs, f);
                      const Monomial right = compose(lambda.group, hs, h, gf_space, gf);
                      if (!(left == right)) return false;
                      if (std::find(target.basis.begin(), target.basis.end(), left) ==
                          target.basis.end())
                        return false;
                    }
              }
  return true;
}

} // namespace gsc
