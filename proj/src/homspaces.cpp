#include "gsc/homspaces.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "gsc/errors.hpp"
#include "gsc/monomials.hpp"

namespace gsc {

namespace {

// (position, source term, target term, monomial exponent)
using VarKey = std::tuple<int, int, int, std::vector<int>>;

std::vector<int> vec_add(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::vector<int> vec_sub(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool vec_nonneg(const std::vector<int>& a) {
  for (int x : a)
    if (x < 0) return false;
  return true;
}

// All scalar components of degree-r maps between two complexes, grouped by
// the ambient multidegree shift delta = mu - gamma_source + gamma_target.
struct VarTable {
  std::vector<VarKey> keys;
  std::map<VarKey, int> index;
  std::map<std::vector<int>, std::vector<int>> blocks;

  int lookup(int pos, int col, int row, const std::vector<int>& mu) const {
    auto it = index.find(VarKey{pos, col, row, mu});
    return it == index.end() ? -1 : it->second;
  }
};

VarTable enumerate_vars(const NCCRAlgebra& alg, const ProjComplex& x, const ProjComplex& y,
                        int r) {
  VarTable vt;
  for (int p = x.lo; p <= x.hi(); ++p) {
    if (!y.has_slot(p + r)) continue;
    const auto& xs = x.slots[static_cast<std::size_t>(p - x.lo)];
    const auto& ys = y.slots[static_cast<std::size_t>(p + r - y.lo)];
    for (std::size_t j = 0; j < xs.size(); ++j)
      for (std::size_t k = 0; k < ys.size(); ++k) {
        const int deg = ys[k].shift - xs[j].shift;
        if (deg < 0) continue;
        const CombinedWeight w =
            sub(alg.group, alg.vertices[xs[j].vertex], alg.vertices[ys[k].vertex]);
        for (const Monomial& m : enumerate_monomials(alg.group, deg, w).basis) {
          VarKey key{p, static_cast<int>(j), static_cast<int>(k), m.exponents};
          const std::vector<int> delta = vec_add(vec_sub(m.exponents, xs[j].gamma), ys[k].gamma);
          vt.index.emplace(key, static_cast<int>(vt.keys.size()));
          vt.blocks[delta].push_back(static_cast<int>(vt.keys.size()));
          vt.keys.push_back(std::move(key));
        }
      }
  }
  return vt;
}

struct BlockInfo {
  std::vector<int> vars;         // global variable ids, in local order
  std::vector<Vec> reps;         // representative cycles, local coordinates
  std::vector<int> rep_ids;      // global basis index per representative
  std::vector<Vec> boundaries;   // reduced spanning set of the boundary space
};

// Shared computation: variables, per-block cycles and boundaries, and a
// representative basis. Retained whole for composition in the endomorphism
// algebra.
struct HomEngine {
  const NCCRAlgebra* alg = nullptr;
  ProjComplex x, y;  // y already internally twisted
  int r = 0;
  VarTable vt;
  std::map<std::vector<int>, BlockInfo> blocks;
  Int dimension = 0;
  std::vector<ChainMap> basis;

  void build();
  Vec reduce(const std::vector<MapPart>& parts) const;
};

// Chain-map equations restricted to one delta block: one scalar row per
// (position, source term, next-slot target term) triple.
std::vector<Vec> block_constraints(const ProjComplex& x, const ProjComplex& y, int r,
                                   const VarTable& vt,
                                   const std::vector<int>& delta,
                                   const std::map<int, int>& local_of) {
  std::vector<Vec> rows;
  const Rat sgn = (r % 2 == 0) ? Rat(1) : Rat(-1);
  for (int p = x.lo; p <= x.hi(); ++p) {
    if (!y.has_slot(p + r + 1)) continue;
    const auto& xs = x.slots[static_cast<std::size_t>(p - x.lo)];
    const auto& ytgt = y.slots[static_cast<std::size_t>(p + r + 1 - y.lo)];
    const bool has_dy = y.has_slot(p + r);
    const bool has_dx = x.has_slot(p + 1);
    for (std::size_t j = 0; j < xs.size(); ++j)
      for (std::size_t k2 = 0; k2 < ytgt.size(); ++k2) {
        Vec row(local_of.size(), Rat(0));
        bool nonzero = false;
        if (has_dy) {
          const auto& ysrc = y.slots[static_cast<std::size_t>(p + r - y.lo)];
          for (const Entry& en : y.diffs[static_cast<std::size_t>(p + r - y.lo)]) {
            if (en.row != static_cast<int>(k2)) continue;
            const std::vector<int> mu =
                vec_add(vec_sub(delta, ysrc[en.col].gamma), xs[j].gamma);
            if (!vec_nonneg(mu)) continue;
            const int id = vt.lookup(p, static_cast<int>(j), en.col, mu);
            if (id < 0) continue;
            auto it = local_of.find(id);
            row[it->second] += en.coef;
            nonzero = true;
          }
        }
        if (has_dx) {
          const auto& xnext = x.slots[static_cast<std::size_t>(p + 1 - x.lo)];
          for (const Entry& en : x.diffs[static_cast<std::size_t>(p - x.lo)]) {
            if (en.col != static_cast<int>(j)) continue;
            const std::vector<int> mu =
                vec_add(vec_sub(delta, ytgt[k2].gamma), xnext[en.row].gamma);
            if (!vec_nonneg(mu)) continue;
            const int id = vt.lookup(p + 1, en.row, static_cast<int>(k2), mu);
            if (id < 0) continue;
            auto it = local_of.find(id);
            row[it->second] -= sgn * en.coef;
            nonzero = true;
          }
        }
        if (nonzero) rows.push_back(std::move(row));
      }
  }
  return rows;
}

// Boundary D(h) of a single homotopy component, as sparse chain-map
// coordinates. h lowers the homological degree by one, so D(h) = d_Y h +
// (-1)^r h d_X lands among the degree-r variables, within the same block.
std::vector<std::pair<int, Rat>> boundary_of(const ProjComplex& x, const ProjComplex& y, int r,
                                             const VarTable& vt, const VarKey& hkey) {
  const auto& [p, j, k, mu_h] = hkey;
  std::vector<std::pair<int, Rat>> out;
  const Rat sgn = (r % 2 == 0) ? Rat(1) : Rat(-1);
  // d_Y h: postcompose with the differential leaving the slot at p + r - 1.
  if (y.has_slot(p + r)) {
    const auto& ysrc = y.slots[static_cast<std::size_t>(p + r - 1 - y.lo)];
    const auto& ydiff = y.diffs[static_cast<std::size_t>(p + r - 1 - y.lo)];
    for (const Entry& en : ydiff) {
      if (en.col != k) continue;
      const auto& ytgt = y.slots[static_cast<std::size_t>(p + r - y.lo)];
      const std::vector<int> mu =
          vec_add(mu_h, vec_sub(ysrc[k].gamma, ytgt[en.row].gamma));
      const int id = vt.lookup(p, j, en.row, mu);
      if (id < 0) throw InternalError("homotopy boundary missed a chain-map variable");
      out.emplace_back(id, en.coef);
    }
  }
  // (-1)^r h d_X: precompose with the differential arriving at the slot of j.
  if (p - 1 >= x.lo && x.has_slot(p - 1)) {
    const auto& xsrc = x.slots[static_cast<std::size_t>(p - 1 - x.lo)];
    const auto& xdiff = x.diffs[static_cast<std::size_t>(p - 1 - x.lo)];
    const auto& xhere = x.slots[static_cast<std::size_t>(p - x.lo)];
    for (const Entry& en : xdiff) {
      if (en.row != j) continue;
      const std::vector<int> mu =
          vec_add(mu_h, vec_sub(xsrc[en.col].gamma, xhere[j].gamma));
      const int id = vt.lookup(p - 1, en.col, k, mu);
      if (id < 0) throw InternalError("homotopy boundary missed a chain-map variable");
      out.emplace_back(id, sgn * en.coef);
    }
  }
  return out;
}

void HomEngine::build() {
  vt = enumerate_vars(*alg, x, y, r);
  const VarTable hvt = enumerate_vars(*alg, x, y, r - 1);

  // Boundaries, grouped by block.
  std::map<std::vector<int>, std::vector<std::vector<std::pair<int, Rat>>>> bnd;
  for (const VarKey& hk : hvt.keys) {
    auto img = boundary_of(x, y, r, vt, hk);
    if (img.empty()) continue;
    const auto& [hp, hj, hk2, hmu] = hk;
    const auto& xg = x.slots[static_cast<std::size_t>(hp - x.lo)][hj].gamma;
    const auto& yg = y.slots[static_cast<std::size_t>(hp + r - 1 - y.lo)][hk2].gamma;
    bnd[vec_add(vec_sub(hmu, xg), yg)].push_back(std::move(img));
  }

  for (const auto& [delta, ids] : vt.blocks) {
    BlockInfo info;
    info.vars = ids;
    std::map<int, int> local_of;
    for (std::size_t l = 0; l < ids.size(); ++l) local_of[ids[l]] = static_cast<int>(l);

    const auto rows = block_constraints(x, y, r, vt, delta, local_of);
    std::vector<Vec> cycles;
    if (rows.empty()) {
      for (std::size_t l = 0; l < ids.size(); ++l) {
        Vec v(ids.size(), Rat(0));
        v[l] = 1;
        cycles.push_back(std::move(v));
      }
    } else {
      Matrix c(static_cast<int>(rows.size()), static_cast<int>(ids.size()));
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t l = 0; l < ids.size(); ++l) c.at(static_cast<int>(i), static_cast<int>(l)) = rows[i][l];
      cycles = kernel_basis(c);
    }

    RowSpace bspace(static_cast<int>(ids.size()));
    auto bit = bnd.find(delta);
    if (bit != bnd.end())
      for (const auto& img : bit->second) {
        Vec v(ids.size(), Rat(0));
        for (const auto& [id, coef] : img) v[local_of.at(id)] += coef;
        bspace.insert(std::move(v));
      }
    info.boundaries = bspace.rows();

    RowSpace span = bspace;
    for (Vec& v : cycles) {
      Vec copy = v;
      if (!span.insert(std::move(copy))) continue;
      info.rep_ids.push_back(static_cast<int>(dimension));
      ++dimension;
      ChainMap cm;
      for (std::size_t l = 0; l < ids.size(); ++l) {
        if (v[l] == 0) continue;
        const auto& [vp, vj, vk, vmu] = vt.keys[static_cast<std::size_t>(ids[l])];
        cm.parts.push_back({vp, vk, vj, vmu, v[l]});
      }
      basis.push_back(std::move(cm));
      info.reps.push_back(std::move(v));
    }
    if (!info.reps.empty() || !info.boundaries.empty()) blocks.emplace(delta, std::move(info));
  }
}

Vec HomEngine::reduce(const std::vector<MapPart>& parts) const {
  // Accumulate the map in variable coordinates, split by block.
  std::map<int, Rat> coords;
  for (const MapPart& part : parts) {
    if (part.coef == 0) continue;
    const int id = vt.lookup(part.pos, part.col, part.row, part.exponent);
    if (id < 0) throw InternalError("map reduction hit an unindexed component");
    coords[id] += part.coef;
  }
  Vec out(static_cast<std::size_t>(dimension), Rat(0));
  std::map<std::vector<int>, std::map<int, Rat>> per_block;
  for (const auto& [id, coef] : coords) {
    if (coef == 0) continue;
    const auto& [p, j, k, mu] = vt.keys[static_cast<std::size_t>(id)];
    const auto& xg = x.slots[static_cast<std::size_t>(p - x.lo)][j].gamma;
    const auto& yg = y.slots[static_cast<std::size_t>(p + r - y.lo)][k].gamma;
    per_block[vec_add(vec_sub(mu, xg), yg)][id] = coef;
  }
  for (const auto& [delta, vals] : per_block) {
    auto it = blocks.find(delta);
    if (it == blocks.end()) throw InternalError("map reduction hit an empty block");
    const BlockInfo& info = it->second;
    std::map<int, int> local_of;
    for (std::size_t l = 0; l < info.vars.size(); ++l) local_of[info.vars[l]] = static_cast<int>(l);
    Vec w(info.vars.size(), Rat(0));
    for (const auto& [id, coef] : vals) w[local_of.at(id)] = coef;
    // Solve w = reps * a + boundaries * b; the representative part is the
    // coordinate vector of the class.
    const int nr = static_cast<int>(info.reps.size());
    const int nb = static_cast<int>(info.boundaries.size());
    Matrix a(static_cast<int>(info.vars.size()), nr + nb);
    for (int cidx = 0; cidx < nr; ++cidx)
      for (std::size_t l = 0; l < info.vars.size(); ++l)
        a.at(static_cast<int>(l), cidx) = info.reps[static_cast<std::size_t>(cidx)][l];
    for (int cidx = 0; cidx < nb; ++cidx)
      for (std::size_t l = 0; l < info.vars.size(); ++l)
        a.at(static_cast<int>(l), nr + cidx) = info.boundaries[static_cast<std::size_t>(cidx)][l];
    auto sol = solve(a, w);
    if (!sol) throw InternalError("composite chain map is not a cycle modulo boundaries");
    for (int cidx = 0; cidx < nr; ++cidx)
      out[static_cast<std::size_t>(info.rep_ids[static_cast<std::size_t>(cidx)])] += (*sol)[static_cast<std::size_t>(cidx)];
  }
  return out;
}

// Composition of degree-zero chain maps: apply `b` first, then `a`.
std::vector<MapPart> compose_parts(const ChainMap& a, const ChainMap& b) {
  std::map<std::tuple<int, int, int, std::vector<int>>, Rat> acc;
  for (const MapPart& pb : b.parts)
    for (const MapPart& pa : a.parts) {
      if (pa.pos != pb.pos || pa.col != pb.row) continue;
      acc[{pb.pos, pb.col, pa.row, vec_add(pa.exponent, pb.exponent)}] += pa.coef * pb.coef;
    }
  std::vector<MapPart> out;
  for (const auto& [key, coef] : acc) {
    if (coef == 0) continue;
    const auto& [pos, col, row, mu] = key;
    out.push_back({pos, row, col, mu, coef});
  }
  return out;
}

} // namespace

HomComputation hom_complexes(const NCCRAlgebra& alg, const ProjComplex& x, const ProjComplex& y,
                             int r, int internal_twist) {
  validate_complex(alg, x);
  validate_complex(alg, y);
  HomComputation out;
  if (x.slots.empty() || y.slots.empty()) return out;
  HomEngine eng;
  eng.alg = &alg;
  eng.x = x;
  eng.y = twist(y, internal_twist);
  eng.r = r;
  eng.build();
  out.dimension = eng.dimension;
  out.basis = std::move(eng.basis);
  return out;
}

EndAlgebra end_algebra(const NCCRAlgebra& alg, const ProjComplex& x) {
  validate_complex(alg, x);
  EndAlgebra out;
  if (x.slots.empty()) return out;
  HomEngine eng;
  eng.alg = &alg;
  eng.x = x;
  eng.y = x;
  eng.r = 0;
  eng.build();
  out.basis = eng.basis;

  std::vector<MapPart> id_parts;
  for (int p = x.lo; p <= x.hi(); ++p) {
    const auto& slot = x.slots[static_cast<std::size_t>(p - x.lo)];
    for (std::size_t t = 0; t < slot.size(); ++t)
      id_parts.push_back(
          {p, static_cast<int>(t), static_cast<int>(t), std::vector<int>(alg.group.n, 0), Rat(1)});
  }
  out.identity = eng.reduce(id_parts);

  const std::size_t d = out.basis.size();
  out.table.assign(d, std::vector<Vec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out.table[i][j] = eng.reduce(compose_parts(out.basis[i], out.basis[j]));
  return out;
}

Vec end_multiply(const EndAlgebra& e, const Vec& a, const Vec& b) {
  Vec out(e.basis.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      const Vec& t = e.table[i][j];
      for (std::size_t l = 0; l < out.size(); ++l) out[l] += a[i] * b[j] * t[l];
    }
  }
  return out;
}

namespace {

// Realized basis of one slot at one degree with an index for exponent lookup.
struct DenseBasis {
  std::vector<RealizedBasisElement> elems;
  std::vector<int> colvert;  // column vertex per element
  std::map<std::pair<int, std::vector<int>>, int> index;
};

DenseBasis dense_basis(const NCCRAlgebra& alg, const std::vector<Term>& slot, int degree) {
  DenseBasis out;
  out.elems = realize_slot(alg, slot, degree);
  for (std::size_t i = 0; i < out.elems.size(); ++i) {
    const auto& el = out.elems[i];
    const CombinedWeight cw =
        add(alg.group, alg.vertices[slot[static_cast<std::size_t>(el.term)].vertex],
            weight_of(alg.group, el.alpha));
    out.colvert.push_back(alg.vertex_index(cw));
    out.index.emplace(std::make_pair(el.term, el.alpha), static_cast<int>(i));
  }
  return out;
}

} // namespace

Int hom_complexes_dense(const NCCRAlgebra& alg, const ProjComplex& x, const ProjComplex& y,
                        int r, int internal_twist) {
  validate_complex(alg, x);
  validate_complex(alg, y);
  if (x.slots.empty() || y.slots.empty()) return 0;
  const ProjComplex y2 = twist(y, internal_twist);

  // Degreewise module maps are pinned by their values on the free generators,
  // one realized vector per X-term, supported on the matching column vertex.
  struct GVar {
    int pos = 0;
    int term = 0;
    int degree = 0;                // internal degree of the generator
    std::vector<int> coords;       // global coordinate id per supported element
    std::vector<int> support;      // element index in the target basis
  };
  // Realized target bases, cached per (target slot position, degree).
  std::map<std::pair<int, int>, DenseBasis> cache;
  auto basis_at = [&](int pos, int degree) -> const DenseBasis& {
    auto key = std::make_pair(pos, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, dense_basis(alg, y2.slots[static_cast<std::size_t>(pos - y2.lo)], degree))
        .first->second;
  };

  auto make_vars = [&](int shift) {
    // shift = r for chain maps, r - 1 for homotopies
    std::vector<GVar> vars;
    int next = 0;
    for (int p = x.lo; p <= x.hi(); ++p) {
      if (!y2.has_slot(p + shift)) continue;
      const auto& xs = x.slots[static_cast<std::size_t>(p - x.lo)];
      for (std::size_t j = 0; j < xs.size(); ++j) {
        GVar v;
        v.pos = p;
        v.term = static_cast<int>(j);
        v.degree = -xs[j].shift;
        const DenseBasis& tb = basis_at(p + shift, v.degree);
        for (std::size_t i = 0; i < tb.elems.size(); ++i)
          if (tb.colvert[i] == xs[j].vertex) {
            v.support.push_back(static_cast<int>(i));
            v.coords.push_back(next++);
          }
        vars.push_back(std::move(v));
      }
    }
    return std::make_pair(vars, next);
  };

  auto [fvars, nf] = make_vars(r);
  const Rat sgn = (r % 2 == 0) ? Rat(1) : Rat(-1);

  // var handles by (pos, term)
  auto var_lookup = [](const std::vector<GVar>& vars, int pos, int term) -> const GVar* {
    for (const GVar& v : vars)
      if (v.pos == pos && v.term == term) return &v;
    return nullptr;
  };

  // Chain-map equations: for every X generator, d_Y(F(gen)) must agree with
  // (-1)^r F(d_X gen), evaluated in the realized slot one position deeper.
  std::vector<Vec> rows;
  auto emit_chain_rows = [&](const std::vector<GVar>& vars, int shift, int nvars,
                             std::vector<Vec>& sink) {
    for (int p = x.lo; p <= x.hi(); ++p) {
      if (!y2.has_slot(p + shift + 1)) continue;
      const auto& xs = x.slots[static_cast<std::size_t>(p - x.lo)];
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const int deg = -xs[j].shift;
        const DenseBasis& tb = basis_at(p + shift + 1, deg);
        if (tb.elems.empty()) continue;
        std::vector<Vec> local(tb.elems.size(), Vec(static_cast<std::size_t>(nvars), Rat(0)));
        bool nonzero = false;
        const GVar* vj = var_lookup(vars, p, static_cast<int>(j));
        if (vj != nullptr && y2.has_slot(p + shift)) {
          const DenseBasis& sb = basis_at(p + shift, deg);
          const Matrix dy = realize_map(
              alg, y2.slots[static_cast<std::size_t>(p + shift - y2.lo)],
              y2.slots[static_cast<std::size_t>(p + shift + 1 - y2.lo)],
              y2.diffs[static_cast<std::size_t>(p + shift - y2.lo)], sb.elems, tb.elems);
          for (std::size_t l = 0; l < vj->support.size(); ++l)
            for (int it = 0; it < dy.rows; ++it) {
              const Rat& c = dy.at(it, vj->support[l]);
              if (c == 0) continue;
              local[static_cast<std::size_t>(it)][static_cast<std::size_t>(vj->coords[l])] += c;
              nonzero = true;
            }
        }
        if (x.has_slot(p + 1)) {
          const auto& xnext = x.slots[static_cast<std::size_t>(p + 1 - x.lo)];
          for (const Entry& en : x.diffs[static_cast<std::size_t>(p - x.lo)]) {
            if (en.col != static_cast<int>(j)) continue;
            const GVar* vr = var_lookup(vars, p + 1, en.row);
            if (vr == nullptr) continue;
            const std::vector<int> ex =
                entry_exponent(xs[j], xnext[static_cast<std::size_t>(en.row)]);
            const DenseBasis& src = basis_at(p + 1 + shift, vr->degree);
            for (std::size_t l = 0; l < vr->support.size(); ++l) {
              const auto& el = src.elems[static_cast<std::size_t>(vr->support[l])];
              auto itx = tb.index.find(std::make_pair(el.term, vec_add(el.alpha, ex)));
              if (itx == tb.index.end())
                throw InternalError("dense oracle: translated element left the realized basis");
              local[static_cast<std::size_t>(itx->second)]
                   [static_cast<std::size_t>(vr->coords[l])] -= sgn * en.coef;
              nonzero = true;
            }
          }
        }
        if (nonzero)
          for (Vec& rw : local) sink.push_back(std::move(rw));
      }
    }
  };
  emit_chain_rows(fvars, r, nf, rows);

  Int zdim = nf;
  if (!rows.empty()) {
    Matrix c(static_cast<int>(rows.size()), nf);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int l = 0; l < nf; ++l) c.at(static_cast<int>(i), l) = rows[i][static_cast<std::size_t>(l)];
    zdim = nf - rank(c);
  }

  // Boundaries: D(h) for every degreewise module map h of degree r - 1.
  auto [hvars, nh] = make_vars(r - 1);
  RowSpace bspace(nf);
  for (const GVar& hv : hvars) {
    const int p = hv.pos;
    const GVar* target = var_lookup(fvars, p, hv.term);
    // d_Y h part lands at (p, term); h d_X parts land at (p - 1, source term).
    for (std::size_t l = 0; l < hv.support.size(); ++l) {
      Vec img(static_cast<std::size_t>(nf), Rat(0));
      bool nonzero = false;
      if (target != nullptr && y2.has_slot(p + r)) {
        const DenseBasis& sb = basis_at(p + r - 1, hv.degree);
        const DenseBasis& tb = basis_at(p + r, hv.degree);
        const Matrix dy = realize_map(alg, y2.slots[static_cast<std::size_t>(p + r - 1 - y2.lo)],
                                      y2.slots[static_cast<std::size_t>(p + r - y2.lo)],
                                      y2.diffs[static_cast<std::size_t>(p + r - 1 - y2.lo)],
                                      sb.elems, tb.elems);
        std::map<int, int> coord_of;
        for (std::size_t q = 0; q < target->support.size(); ++q)
          coord_of[target->support[q]] = target->coords[q];
        for (int it = 0; it < dy.rows; ++it) {
          const Rat& c = dy.at(it, hv.support[l]);
          if (c == 0) continue;
          auto itc = coord_of.find(it);
          if (itc == coord_of.end())
            throw InternalError("dense oracle: differential image left the column vertex");
          img[static_cast<std::size_t>(itc->second)] += c;
          nonzero = true;
        }
      }
      if (p - 1 >= x.lo) {
        const auto& xsrc = x.slots[static_cast<std::size_t>(p - 1 - x.lo)];
        const auto& xhere = x.slots[static_cast<std::size_t>(p - x.lo)];
        for (const Entry& en : x.diffs[static_cast<std::size_t>(p - 1 - x.lo)]) {
          if (en.row != hv.term) continue;
          const GVar* tv = var_lookup(fvars, p - 1, en.col);
          if (tv == nullptr) continue;
          const std::vector<int> ex =
              entry_exponent(xsrc[static_cast<std::size_t>(en.col)], xhere[static_cast<std::size_t>(hv.term)]);
          const DenseBasis& sb = basis_at(p + r - 1, hv.degree);
          const DenseBasis& tb = basis_at(p + r - 1, tv->degree);
          const auto& el = sb.elems[static_cast<std::size_t>(hv.support[l])];
          auto itx = tb.index.find(std::make_pair(el.term, vec_add(el.alpha, ex)));
          if (itx == tb.index.end())
            throw InternalError("dense oracle: translated homotopy left the realized basis");
          std::map<int, int> coord_of;
          for (std::size_t q = 0; q < tv->support.size(); ++q)
            coord_of[tv->support[q]] = tv->coords[q];
          auto itc = coord_of.find(itx->second);
          if (itc == coord_of.end())
            throw InternalError("dense oracle: translated homotopy left the column vertex");
          img[static_cast<std::size_t>(itc->second)] += sgn * en.coef;
          nonzero = true;
        }
      }
      if (nonzero) bspace.insert(std::move(img));
    }
  }

  return zdim - bspace.dim();
}

} // namespace gsc
