#include <doctest.h>

#include "ainf/complex.hpp"
#include "ainf/homology.hpp"
#include "gen.hpp"

using namespace ainf;

TEST_CASE("one-dimensional complex has Betti 1") {
  auto sp = std::make_shared<GradedSpace>(
      "Q", std::vector<std::pair<std::string, int>>{{"e", 3}});
  Homology h(zero_complex(sp));
  CHECK(h.betti(3) == 1);
  CHECK(h.total_rank() == 1);
}

TEST_CASE("acyclic two-term complex") {
  auto sp = std::make_shared<GradedSpace>(
      "P", std::vector<std::pair<std::string, int>>{{"u", 1}, {"v", 0}});
  GradedMap d(sp, 1, sp, 1, -1, "d");
  d.add(word1(0), word1(1), 1);
  Homology h(ChainComplex{sp, d});
  CHECK(h.total_rank() == 0);
  CHECK(h.betti(0) == 0);
  CHECK(h.betti(1) == 0);
}

TEST_CASE("acyclic pair in degrees 1 and 2") {
  // d u = ubar with deg u = 2, deg ubar = 1: no homology in either degree.
  auto sp = std::make_shared<GradedSpace>(
      "U", std::vector<std::pair<std::string, int>>{{"ubar", 1}, {"u", 2}});
  GradedMap d(sp, 1, sp, 1, -1, "d");
  d.add(word1(1), word1(0), 1);
  Homology h(ChainComplex{sp, d});
  CHECK(h.betti(1) == 0);
  CHECK(h.betti(2) == 0);
}

TEST_CASE("rank-nullity across degrees on random complexes") {
  gen::Rng rng(101);
  for (int trial = 0; trial < 8; ++trial) {
    ChainComplex c = gen::random_complex(rng, 7, -1, 3);
    Homology h(c);
    // dim_k = betti_k + rank d_k + rank d_{k+1}
    std::map<int, int> dim, rank_out;
    const GradedSpace& sp = *c.space();
    for (int i = 0; i < sp.dim(); ++i) ++dim[sp.degree(i)];
    for (const auto& [deg, cnt] : dim) {
      std::vector<Element> cols;
      for (int i = 0; i < sp.dim(); ++i)
        if (sp.degree(i) == deg) cols.push_back(c.d().apply(word1(i)));
      // rank via independent-column count
      std::map<int, int> row_of;
      for (const auto& e : cols)
        for (const auto& [w, x] : e)
          row_of.emplace(w[0], static_cast<int>(row_of.size()));
      Matrix m(std::max<int>(1, static_cast<int>(row_of.size())),
               static_cast<int>(cols.size()));
      for (size_t cidx = 0; cidx < cols.size(); ++cidx)
        for (const auto& [w, x] : cols[cidx])
          m.at(row_of.at(w[0]), int(cidx)) = x;
      rank_out[deg] = rref(m).rank();
    }
    for (const auto& [deg, n] : dim) {
      int rin = rank_out.count(deg + 1) ? rank_out[deg + 1] : 0;
      CHECK(n == h.betti(deg) + rank_out[deg] + rin);
    }
  }
}

TEST_CASE("class_coords separates classes from boundaries") {
  // Circle-like complex: e in degree 1, two points p, q in degree 0,
  // d e = p - q.  H_0 has rank 1, p and q represent the same class.
  auto sp = std::make_shared<GradedSpace>(
      "S", std::vector<std::pair<std::string, int>>{
               {"p", 0}, {"q", 0}, {"e", 1}});
  GradedMap d(sp, 1, sp, 1, -1, "d");
  d.add(word1(2), word1(0), 1);
  d.add(word1(2), word1(1), -1);
  Homology h(ChainComplex{sp, d});
  CHECK(h.betti(0) == 1);
  CHECK(h.betti(1) == 0);
  auto cp = h.class_coords(Element{{word1(0), 1}});
  auto cq = h.class_coords(Element{{word1(1), 1}});
  REQUIRE(cp.has_value());
  REQUIRE(cq.has_value());
  CHECK(*cp == *cq);
  Element diff{{word1(0), 1}, {word1(1), Rational(-1)}};
  auto cd = h.class_coords(diff);
  REQUIRE(cd.has_value());
  CHECK((*cd)[0] == 0);
}

TEST_CASE("induced map on homology detects quasi-isomorphisms") {
  // A = <x> with zero differential; B = <x, u, ubar> with d u = ubar.
  auto a = std::make_shared<GradedSpace>(
      "A", std::vector<std::pair<std::string, int>>{{"x", 0}});
  auto b = std::make_shared<GradedSpace>(
      "B", std::vector<std::pair<std::string, int>>{
               {"x", 0}, {"ubar", 1}, {"u", 2}});
  GradedMap db(b, 1, b, 1, -1, "d");
  db.add(word1(2), word1(1), 1);
  ChainComplex ca = zero_complex(a);
  ChainComplex cb(b, db);
  GradedMap f(a, 1, b, 1, 0, "f");
  f.add(word1(0), word1(0), 1);
  Homology ha(ca), hb(cb);
  auto ind = induced_homology_map(f, ha, hb);
  REQUIRE(ind.has_value());
  CHECK(ind->isomorphism);

  GradedMap z(a, 1, b, 1, 0, "0");
  auto ind0 = induced_homology_map(z, ha, hb);
  REQUIRE(ind0.has_value());
  CHECK(!ind0->isomorphism);
}

TEST_CASE("hom_differential") {
  gen::Rng rng(211);

  SUBCASE("vanishes on chain maps of degree zero") {
    ChainComplex c = gen::random_complex(rng, 5, 0, 3);
    CHECK(hom_differential(identity_map(c.space()), c, c).is_zero_map());
  }

  SUBCASE("squares to zero") {
    for (int trial = 0; trial < 6; ++trial) {
      ChainComplex a = gen::random_complex(rng, 4, 0, 2, "A");
      ChainComplex b = gen::random_complex(rng, 4, 0, 2, "B");
      for (int n = 1; n <= 3; ++n) {
        GradedMap phi = gen::random_map(rng, a.space(), n, b.space(),
                                        (trial % 3) - 1, 0.5);
        GradedMap once = hom_differential(phi, a, b);
        CHECK(hom_differential(once, a, b).is_zero_map());
      }
    }
  }

  SUBCASE("side homotopy h satisfies del h = g1 f1 - id") {
    auto a = std::make_shared<GradedSpace>(
        "A", std::vector<std::pair<std::string, int>>{
                 {"x", 0}, {"v", 0}, {"u", 1}});
    auto b = std::make_shared<GradedSpace>(
        "B", std::vector<std::pair<std::string, int>>{{"x", 0}});
    GradedMap da(a, 1, a, 1, -1, "d");
    da.add(word1(2), word1(1), 1);  // d u = v
    ChainComplex ca(a, da), cb = zero_complex(b);
    GradedMap f1(a, 1, b, 1, 0, "f1");
    f1.add(word1(0), word1(0), 1);
    GradedMap g1(b, 1, a, 1, 0, "g1");
    g1.add(word1(0), word1(0), 1);
    GradedMap h(a, 1, a, 1, 1, "h");
    h.add(word1(1), word1(2), -1);  // h v = -u
    GradedMap l(b, 1, b, 1, 1, "l");
    HomotopyData hd(ca, cb, f1, g1, h, l);  // validates all identities

    GradedMap delh = hom_differential(h, ca, ca);
    GradedMap expect = compose(g1, f1);
    expect += [&] {
      GradedMap mid = identity_map(a);
      mid *= Rational(-1);
      return mid;
    }();
    CHECK(map_equal(delh, expect));
  }
}
