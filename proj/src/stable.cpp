#include "gsc/stable.hpp"

#include "gsc/errors.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace gsc {

namespace {

int total(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

// Invariant monomial exponents per degree, cached for one computation.
struct InvariantMonomials {
  const NCCRAlgebra& alg;
  std::map<int, std::vector<std::vector<int>>> cache;

  const std::vector<std::vector<int>>& of_degree(int q) {
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> out;
    if (q >= 0) {
      const auto space = enumerate_monomials(alg.group, q, trivial_weight(alg.group));
      out.reserve(space.basis.size());
      for (const auto& m : space.basis) out.push_back(m.exponents);
    }
    return cache.emplace(q, std::move(out)).first->second;
  }
};

void require_corner(const NCCRAlgebra& alg, const PresentedModule& m) {
  for (const auto* terms : {&m.gens, &m.rels})
    for (const auto& t : *terms)
      if (t.vertex != alg.distinguished)
        throw InternalError("corner hom requires presentations at the distinguished vertex");
}

// The monomial factor delta + gamma_src - gamma_tgt between two terms within
// the class delta, when it is a legal invariant monomial of the degree the
// shifts demand; empty optional otherwise.
std::optional<std::vector<int>> class_exponent(const NCCRAlgebra& alg, const Term& src,
                                               const Term& tgt, const std::vector<int>& delta) {
  std::vector<int> a(delta.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = delta[i] + src.gamma[i] - tgt.gamma[i];
    if (a[i] < 0) return std::nullopt;
  }
  if (total(a) != tgt.shift - src.shift) return std::nullopt;
  if (!(weight_of(alg.group, a) == trivial_weight(alg.group))) return std::nullopt;
  return a;
}

// One multidegree-shift block of Hom(x, y)_0.
struct HomClass {
  std::vector<std::pair<int, int>> unknowns;   // (source gen, target gen), lex order
  std::map<std::pair<int, int>, int> pos;      // reverse index
  std::vector<Vec> solutions;                  // canonical span of the legal lifts
  std::vector<Vec> zero_lifts;                 // lifts of the zero map (target relations)
};

struct HomData {
  std::map<std::vector<int>, HomClass> classes;
};

HomData build_hom_data(const NCCRAlgebra& alg, const PresentedModule& x,
                       const PresentedModule& y, InvariantMonomials& inv) {
  require_corner(alg, x);
  require_corner(alg, y);
  HomData data;

  // Bucket the generator pairs: for each pair the monomial factor runs over
  // the invariant monomials of the pinned degree, and each factor lands the
  // pair in exactly one class.
  for (std::size_t k = 0; k < x.gens.size(); ++k) {
    for (std::size_t t = 0; t < y.gens.size(); ++t) {
      const int q = y.gens[t].shift - x.gens[k].shift;
      if (q < 0) continue;
      for (const auto& a : inv.of_degree(q)) {
        std::vector<int> delta(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
          delta[i] = y.gens[t].gamma[i] + a[i] - x.gens[k].gamma[i];
        auto& cls = data.classes[delta];
        cls.pos.emplace(std::make_pair(static_cast<int>(k), static_cast<int>(t)),
                        static_cast<int>(cls.unknowns.size()));
        cls.unknowns.emplace_back(static_cast<int>(k), static_cast<int>(t));
      }
    }
  }

  std::vector<std::vector<std::pair<int, Rat>>> xrel_cols(x.rels.size());
  for (const auto& e : x.entries) xrel_cols[e.col].emplace_back(e.row, e.coef);
  std::vector<std::vector<std::pair<int, Rat>>> yrel_cols(y.rels.size());
  for (const auto& e : y.entries) yrel_cols[e.col].emplace_back(e.row, e.coef);

  for (auto& [delta, cls] : data.classes) {
    const int width = static_cast<int>(cls.unknowns.size());

    // Constraint rows: source relation against target generator; slack
    // columns absorb the image of the target relations.
    std::vector<std::pair<int, int>> rows;   // (source rel, target gen)
    std::map<std::pair<int, int>, int> row_of;
    for (std::size_t r = 0; r < x.rels.size(); ++r)
      for (std::size_t t = 0; t < y.gens.size(); ++t)
        if (class_exponent(alg, x.rels[r], y.gens[t], delta)) {
          row_of.emplace(std::make_pair(static_cast<int>(r), static_cast<int>(t)),
                         static_cast<int>(rows.size()));
          rows.emplace_back(static_cast<int>(r), static_cast<int>(t));
        }
    std::vector<std::pair<int, int>> slacks;  // (source rel, target rel)
    for (std::size_t r = 0; r < x.rels.size(); ++r)
      for (std::size_t s = 0; s < y.rels.size(); ++s)
        if (class_exponent(alg, x.rels[r], y.rels[s], delta))
          slacks.emplace_back(static_cast<int>(r), static_cast<int>(s));

    if (rows.empty()) {
      cls.solutions.reserve(static_cast<std::size_t>(width));
      for (int i = 0; i < width; ++i) {
        Vec v(width, Rat(0));
        v[static_cast<std::size_t>(i)] = 1;
        cls.solutions.push_back(std::move(v));
      }
    } else {
      Matrix m(static_cast<int>(rows.size()), width + static_cast<int>(slacks.size()));
      for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        const auto [r, t] = rows[ri];
        for (const auto& [k, coef] : xrel_cols[static_cast<std::size_t>(r)]) {
          auto it = cls.pos.find({k, t});
          if (it != cls.pos.end()) m.at(static_cast<int>(ri), it->second) += coef;
        }
      }
      for (std::size_t si = 0; si < slacks.size(); ++si) {
        const auto [r, s] = slacks[si];
        for (const auto& [t, coef] : yrel_cols[static_cast<std::size_t>(s)]) {
          auto it = row_of.find({r, t});
          if (it != row_of.end()) m.at(it->second, width + static_cast<int>(si)) += coef;
        }
      }
      RowSpace span(width);
      for (const auto& v : kernel_basis(m))
        span.insert(Vec(v.begin(), v.begin() + width));
      cls.solutions = span.rows();
    }

    // Lifts of the zero map: a target relation shifted into each source
    // generator's block.
    for (std::size_t k = 0; k < x.gens.size(); ++k)
      for (std::size_t s = 0; s < y.rels.size(); ++s) {
        if (!class_exponent(alg, x.gens[k], y.rels[s], delta)) continue;
        Vec v(width, Rat(0));
        bool nonzero = false;
        for (const auto& [t, coef] : yrel_cols[s]) {
          auto it = cls.pos.find({static_cast<int>(k), t});
          if (it == cls.pos.end())
            throw InternalError("target relation escaped the hom class");
          v[static_cast<std::size_t>(it->second)] += coef;
          nonzero = true;
        }
        if (nonzero) cls.zero_lifts.push_back(std::move(v));
      }
  }
  return data;
}

CornerMap class_map(const std::vector<int>& delta, const HomClass& cls, const Vec& v) {
  CornerMap out;
  out.delta = delta;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      out.coords.emplace_back(cls.unknowns[i].first, cls.unknowns[i].second, v[i]);
  return out;
}

// Composites through free corner summands, bucketed by class: the factoring
// subspace of Hom(x, y)_0 inside the class coordinates of `data`.
std::map<std::vector<int>, std::vector<Vec>> free_composites(const NCCRAlgebra& alg,
                                                             const PresentedModule& x,
                                                             const PresentedModule& y,
                                                             const HomData& data,
                                                             InvariantMonomials& inv) {
  std::map<std::vector<int>, std::vector<Vec>> out;
  if (x.gens.empty() || y.gens.empty()) return out;
  int s_lo = x.gens.front().shift, s_hi = y.gens.front().shift;
  for (const auto& t : x.gens) s_lo = std::min(s_lo, t.shift);
  for (const auto& t : y.gens) s_hi = std::max(s_hi, t.shift);

  const int n = alg.group.n;
  for (int s = s_lo; s <= s_hi; ++s) {
    PresentedModule free_mod;
    free_mod.gens.push_back(Term{alg.distinguished, s, std::vector<int>(static_cast<size_t>(n), 0)});
    const HomData fdata = build_hom_data(alg, x, free_mod, inv);
    if (fdata.classes.empty()) continue;
    for (std::size_t t = 0; t < y.gens.size(); ++t) {
      const int adeg = y.gens[t].shift - s;
      if (adeg < 0) continue;
      for (const auto& a : inv.of_degree(adeg)) {
        for (const auto& [dphi, fcls] : fdata.classes) {
          if (fcls.solutions.empty()) continue;
          std::vector<int> delta(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            delta[static_cast<std::size_t>(i)] =
                dphi[static_cast<std::size_t>(i)] + y.gens[t].gamma[static_cast<std::size_t>(i)] +
                a[static_cast<std::size_t>(i)];
          auto cit = data.classes.find(delta);
          if (cit == data.classes.end())
            throw InternalError("free composite escaped the hom classes");
          const HomClass& target = cit->second;
          for (const auto& phi : fcls.solutions) {
            Vec w(target.unknowns.size(), Rat(0));
            for (std::size_t u = 0; u < phi.size(); ++u) {
              if (phi[u] == 0) continue;
              const int k = fcls.unknowns[u].first;
              auto pit = target.pos.find({k, static_cast<int>(t)});
              if (pit == target.pos.end())
                throw InternalError("free composite escaped the hom class");
              w[static_cast<std::size_t>(pit->second)] += phi[u];
            }
            out[delta].push_back(std::move(w));
          }
        }
      }
    }
  }
  return out;
}

void collect_basis(const HomData& data,
                   const std::map<std::vector<int>, std::vector<Vec>>* extra, CornerHom& out) {
  for (const auto& [delta, cls] : data.classes) {
    RowSpace acc(static_cast<int>(cls.unknowns.size()));
    for (const auto& v : cls.zero_lifts) acc.insert(Vec(v));
    if (extra) {
      auto it = extra->find(delta);
      if (it != extra->end())
        for (const auto& v : it->second) acc.insert(Vec(v));
    }
    for (const auto& v : cls.solutions) {
      if (!acc.insert(Vec(v))) continue;
      out.basis.push_back(class_map(delta, cls, v));
      out.dimension += 1;
    }
  }
}

} // namespace

CornerHom hom_corner(const NCCRAlgebra& alg, const PresentedModule& x, const PresentedModule& y) {
  InvariantMonomials inv{alg, {}};
  const HomData data = build_hom_data(alg, x, y, inv);
  CornerHom out;
  collect_basis(data, nullptr, out);
  return out;
}

CornerHom stable_hom_corner(const NCCRAlgebra& alg, const PresentedModule& x,
                            const PresentedModule& y) {
  InvariantMonomials inv{alg, {}};
  const HomData data = build_hom_data(alg, x, y, inv);
  const auto frees = free_composites(alg, x, y, data, inv);
  CornerHom out;
  collect_basis(data, &frees, out);
  return out;
}

Int stable_ext_dim(const NCCRAlgebra& alg, const CornerResolution& x, const CornerResolution& y,
                   int r) {
  const int a = std::max(r, 0);
  const int b = std::max(-r, 0);
  return stable_hom_corner(alg, corner_syzygy(x, a), corner_syzygy(y, b)).dimension;
}

StableEnd stable_end(const NCCRAlgebra& alg, const std::vector<PresentedModule>& comps) {
  const int nc = static_cast<int>(comps.size());
  InvariantMonomials inv{alg, {}};

  // Per ordered pair: the class data, the subspace to kill (zero lifts plus
  // free composites) as row spaces, and the stable basis representatives.
  struct ClassQuotient {
    RowSpace killed;
    std::vector<int> members; // global basis indices of this class's stable maps
    explicit ClassQuotient(int width) : killed(width) {}
  };
  struct PairData {
    HomData data;
    std::map<std::vector<int>, ClassQuotient> quotients;
  };
  std::vector<std::vector<PairData>> pairs(static_cast<std::size_t>(nc));

  StableEnd out;
  out.block_dims.assign(static_cast<std::size_t>(nc), std::vector<Int>(static_cast<std::size_t>(nc), 0));

  for (int a = 0; a < nc; ++a) {
    pairs[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(nc));
    for (int b = 0; b < nc; ++b) {
      PairData& pd = pairs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      pd.data = build_hom_data(alg, comps[static_cast<std::size_t>(a)],
                               comps[static_cast<std::size_t>(b)], inv);
      const auto frees = free_composites(alg, comps[static_cast<std::size_t>(a)],
                                         comps[static_cast<std::size_t>(b)], pd.data, inv);
      for (const auto& [delta, cls] : pd.data.classes) {
        auto [qit, inserted] = pd.quotients.emplace(
            delta, ClassQuotient(static_cast<int>(cls.unknowns.size())));
        ClassQuotient& q = qit->second;
        (void)inserted;
        for (const auto& v : cls.zero_lifts) q.killed.insert(Vec(v));
        auto fit = frees.find(delta);
        if (fit != frees.end())
          for (const auto& v : fit->second) q.killed.insert(Vec(v));
        RowSpace acc = q.killed;
        for (const auto& v : cls.solutions) {
          if (!acc.insert(Vec(v))) continue;
          q.members.push_back(static_cast<int>(out.basis.size()));
          out.basis.push_back({a, b, class_map(delta, cls, v)});
          out.block_dims[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += 1;
        }
      }
    }
  }

  const std::size_t dim = out.basis.size();

  // Expresses a composite's class coordinates over a class's stable basis
  // modulo the killed subspace; the coordinates land at the members' global
  // positions.
  auto reduce = [&](int a, int b, const std::vector<int>& delta, const Vec& w, Vec& coords) {
    const PairData& pd = pairs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    auto cit = pd.data.classes.find(delta);
    auto qit = pd.quotients.find(delta);
    if (cit == pd.data.classes.end() || qit == pd.quotients.end())
      throw InternalError("stable composite escaped the hom classes");
    const ClassQuotient& q = qit->second;
    const int width = static_cast<int>(cit->second.unknowns.size());
    Matrix m(width, static_cast<int>(q.members.size()) + q.killed.dim());
    for (std::size_t c = 0; c < q.members.size(); ++c) {
      const CornerMap& bm = out.basis[static_cast<std::size_t>(q.members[c])].map;
      for (const auto& [k, t, coef] : bm.coords)
        m.at(cit->second.pos.at({k, t}), static_cast<int>(c)) = coef;
    }
    for (int c = 0; c < q.killed.dim(); ++c)
      for (int r2 = 0; r2 < width; ++r2)
        m.at(r2, static_cast<int>(q.members.size()) + c) =
            q.killed.rows()[static_cast<std::size_t>(c)][static_cast<std::size_t>(r2)];
    const auto sol = solve(m, w);
    if (!sol) throw InternalError("stable composite escaped the computed hom space");
    for (std::size_t c = 0; c < q.members.size(); ++c)
      coords[static_cast<std::size_t>(q.members[c])] = (*sol)[c];
  };

  // Identity: the sum of the per-component identity maps.
  out.identity.assign(dim, Rat(0));
  for (int a = 0; a < nc; ++a) {
    const auto& gens = comps[static_cast<std::size_t>(a)].gens;
    if (gens.empty()) continue;
    const std::vector<int> delta(gens.front().gamma.size(), 0);
    const PairData& pd = pairs[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
    auto cit = pd.data.classes.find(delta);
    if (cit == pd.data.classes.end())
      throw InternalError("identity class missing from the hom data");
    Vec w(cit->second.unknowns.size(), Rat(0));
    for (std::size_t k = 0; k < gens.size(); ++k)
      w[static_cast<std::size_t>(cit->second.pos.at(
          {static_cast<int>(k), static_cast<int>(k)}))] = 1;
    reduce(a, a, delta, w, out.identity);
  }

  // Structure constants: table[i][j] = basis[i] composed after basis[j].
  out.table.assign(dim, std::vector<Vec>(dim, Vec(dim, Rat(0))));
  for (std::size_t j = 0; j < dim; ++j) {
    const StableMap& f = out.basis[j];
    for (std::size_t i = 0; i < dim; ++i) {
      const StableMap& g = out.basis[i];
      if (g.src != f.dst) continue;
      std::vector<int> delta(f.map.delta.size());
      for (std::size_t c = 0; c < delta.size(); ++c)
        delta[c] = f.map.delta[c] + g.map.delta[c];
      std::map<std::pair<int, int>, Rat> comp;
      for (const auto& [k, t, cf] : f.map.coords)
        for (const auto& [t2, u, cg] : g.map.coords)
          if (t2 == t) comp[{k, u}] += cf * cg;
      bool nonzero = false;
      for (const auto& [ku, coef] : comp)
        if (coef != 0) nonzero = true;
      if (!nonzero) continue;
      const PairData& pd = pairs[static_cast<std::size_t>(f.src)][static_cast<std::size_t>(g.dst)];
      auto cit = pd.data.classes.find(delta);
      if (cit == pd.data.classes.end())
        throw InternalError("stable composite escaped the hom classes");
      Vec w(cit->second.unknowns.size(), Rat(0));
      for (const auto& [ku, coef] : comp) {
        if (coef == 0) continue;
        w[static_cast<std::size_t>(cit->second.pos.at(ku))] = coef;
      }
      reduce(f.src, g.dst, delta, w, out.table[i][j]);
    }
  }
  return out;
}

} // namespace gsc
