#include "doctest.h"

#include "gsc/algebra.hpp"
#include "gsc/resolution.hpp"
#include "gsc/stable.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace gsc;

namespace {

GroupSpec conifold() {
  GroupSpec g;
  g.n = 4;
  g.torus_weights = {1, 1, -1, -1};
  return g;
}

// The nontrivial quiver vertex as a column module: its corner cut for
// (1,1,-1,-1) is the module of weight-minus-one covariants, generated by
// x3, x4 with two Koszul-type relations in degree three.
PresentedModule complement_column(const NCCRAlgebra& alg) {
  PresentedModule m;
  for (int v = 0; v < static_cast<int>(alg.vertices.size()); ++v)
    if (v != alg.distinguished) m.gens.push_back(Term{v, 0, std::vector<int>(4, 0)});
  return m;
}

std::multiset<std::vector<int>> gammas(const std::vector<Term>& terms) {
  std::multiset<std::vector<int>> out;
  for (const auto& t : terms) out.insert(t.gamma);
  return out;
}

// Consecutive corner maps compose to zero as scalar matrices: all monomial
// paths between a fixed generator pair carry the same pinned exponent.
bool scalar_composite_vanishes(const CornerResolution& cr, std::size_t level) {
  const auto& m0 = cr.maps[level];
  const auto& m1 = cr.maps[level + 1];
  const std::size_t a = cr.covers[level].size();
  const std::size_t c = cr.covers[level + 2].size();
  std::vector<std::vector<Rat>> prod(a, std::vector<Rat>(c, Rat(0)));
  for (const auto& e0 : m0)
    for (const auto& e1 : m1)
      if (e0.col == e1.row)
        prod[static_cast<std::size_t>(e0.row)][static_cast<std::size_t>(e1.col)] +=
            e0.coef * e1.coef;
  for (const auto& row : prod)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

} // namespace

TEST_CASE("corner resolution of the conifold column module") {
  const auto alg = build_nccr(conifold(), 12);
  const auto m = complement_column(alg);
  const auto cr = corner_resolution(alg, m, 4);

  REQUIRE(cr.covers.size() == 5);
  REQUIRE(cr.maps.size() == 4);

  CHECK(gammas(cr.covers[0]) ==
        std::multiset<std::vector<int>>{{0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(gammas(cr.covers[1]) ==
        std::multiset<std::vector<int>>{{1, 0, 1, 1}, {0, 1, 1, 1}});
  CHECK(gammas(cr.covers[2]) ==
        std::multiset<std::vector<int>>{{1, 1, 2, 1}, {1, 1, 1, 2}});

  // Minimal covers stay rank two forever (the module is a periodic
  // maximal Cohen-Macaulay module); generator degrees climb by two.
  for (std::size_t l = 0; l < cr.covers.size(); ++l) {
    CHECK(cr.covers[l].size() == 2);
    for (const auto& t : cr.covers[l]) {
      CHECK(t.vertex == alg.distinguished);
      CHECK(t.shift == -1 - 2 * static_cast<int>(l));
    }
  }
  for (std::size_t l = 0; l + 2 < cr.covers.size(); ++l)
    CHECK(scalar_composite_vanishes(cr, l));

  // The level-zero presentation realizes the same graded dimensions as the
  // idempotent cut of the input module.
  const auto cut = apply_idempotent(alg, m, 0, 8);
  const auto head_cut = apply_idempotent(alg, corner_syzygy(cr, 0), 0, 8);
  CHECK(head_cut == cut);
}

TEST_CASE("corner homs of the conifold column module") {
  const auto alg = build_nccr(conifold(), 12);
  const auto cr = corner_resolution(alg, complement_column(alg), 4);
  const auto m0 = corner_syzygy(cr, 0);

  SUBCASE("degree-zero endomorphisms are the scalars") {
    const auto h = hom_corner(alg, m0, m0);
    CHECK(h.dimension == 1);
    REQUIRE(h.basis.size() == 1);
    CHECK(h.basis[0].delta == std::vector<int>{0, 0, 0, 0});
    CHECK(h.basis[0].coords ==
          std::vector<std::tuple<int, int, Rat>>{{0, 0, Rat(1)}, {1, 1, Rat(1)}});
  }

  SUBCASE("homs out of a free column are all killed stably") {
    PresentedModule free1;
    free1.gens.push_back(Term{alg.distinguished, -1, {0, 0, 0, 0}});
    CHECK(hom_corner(alg, free1, m0).dimension == 2);
    CHECK(stable_hom_corner(alg, free1, m0).dimension == 0);

    PresentedModule free0;
    free0.gens.push_back(Term{alg.distinguished, 0, {0, 0, 0, 0}});
    CHECK(hom_corner(alg, free0, free0).dimension == 1);
    CHECK(stable_hom_corner(alg, free0, free0).dimension == 0);
    CHECK(hom_corner(alg, free0, m0).dimension == 0);
  }

  SUBCASE("twist-gap homs exist raw but vanish stably") {
    // Hom(M(-1), M(1))_0 is the full four-dimensional space of invariant
    // quadrics; every one of them factors through a free column.
    const auto x = twist(m0, -1);
    const auto y = twist(m0, 1);
    CHECK(hom_corner(alg, x, y).dimension == 4);
    CHECK(stable_hom_corner(alg, x, y).dimension == 0);
  }

  SUBCASE("syzygy-shifted homs vanish stably") {
    const auto s1 = corner_syzygy(cr, 1);
    CHECK(hom_corner(alg, s1, m0).dimension == 3);
    CHECK(stable_hom_corner(alg, s1, m0).dimension == 0);
    CHECK(stable_hom_corner(alg, m0, s1).dimension == 0);
  }
}

TEST_CASE("stable ext table of the conifold column module") {
  const auto alg = build_nccr(conifold(), 12);
  const auto cr = corner_resolution(alg, complement_column(alg), 4);
  for (int r = -3; r <= 3; ++r) {
    const Int expected = (r == 0) ? 1 : 0;
    CHECK(stable_ext_dim(alg, cr, cr, r) == expected);
  }
}

TEST_CASE("stable endomorphisms of a twisted pair") {
  const auto alg = build_nccr(conifold(), 12);
  const auto cr = corner_resolution(alg, complement_column(alg), 2);
  const auto m0 = corner_syzygy(cr, 0);
  const std::vector<PresentedModule> comps = {m0, twist(m0, 1)};

  const auto e = stable_end(alg, comps);
  REQUIRE(e.basis.size() == 2);
  CHECK(e.block_dims == std::vector<std::vector<Int>>{{1, 0}, {0, 1}});
  CHECK(e.identity == Vec{Rat(1), Rat(1)});

  // The two identity maps are orthogonal idempotents.
  CHECK(e.table[0][0] == Vec{Rat(1), Rat(0)});
  CHECK(e.table[1][1] == Vec{Rat(0), Rat(1)});
  CHECK(e.table[0][1] == Vec{Rat(0), Rat(0)});
  CHECK(e.table[1][0] == Vec{Rat(0), Rat(0)});
}
