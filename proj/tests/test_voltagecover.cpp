#include <doctest.h>

#include <set>

#include "p2pg/voltagecover.hpp"

using namespace p2pg;

namespace {

Dip5Voltage basis_voltage(int64_t p) {
  return Dip5Voltage(p, 4,
                     {FpVec{0, 0, 0, 0}, FpVec{1, 0, 0, 0}, FpVec{0, 1, 0, 0},
                      FpVec{0, 0, 1, 0}, FpVec{0, 0, 0, 1}});
}

// symbolic coefficient vector over the four cotree voltages a, b, c, d
FpVec sym(int64_t p, int a, int b, int c, int d) {
  return {mod_reduce(a, p), mod_reduce(b, p), mod_reduce(c, p), mod_reduce(d, p)};
}

}  // namespace

TEST_SUITE("voltagecover") {

TEST_CASE("named dipole automorphisms have the right cycle structure") {
  DipAut a = dip_alpha();
  CHECK(a.pi == std::array<int, 5>{1, 2, 3, 4, 0});
  CHECK(!a.swap);
  DipAut b = dip_beta();
  CHECK(b.pi == std::array<int, 5>{1, 3, 0, 2, 4});
  DipAut g = dip_gamma();
  CHECK(g.swap);
  CHECK(g.pi == std::array<int, 5>{0, 1, 2, 3, 4});
  DipAut d = dip_delta();
  CHECK(d.pi == std::array<int, 5>{1, 2, 0, 3, 4});
  DipAut e = dip_epsilon();
  CHECK(e.pi == std::array<int, 5>{1, 4, 2, 0, 3});

  // composition law: swap bits add, arc parts compose left to right
  DipAut ag = a.then(g);
  CHECK(ag.swap);
  CHECK(ag.pi == a.pi);
  CHECK(a.then(a.inverse()) == DipAut::identity());
  CHECK(all_dip_auts().size() == 240);
}

TEST_CASE("fundamental cycle images reproduce the voltage table") {
  // 24 cells: six automorphisms by four cycles, on the symbolic basis
  // assignment; exact over two primes pins the integer coefficients
  for (int64_t p : {5, 7}) {
    Dip5Voltage z = basis_voltage(p);
    auto expect = [&](const DipAut& s, std::array<FpVec, 4> want) {
      auto got = walk_images(z, s);
      for (int i = 0; i < 4; ++i) {
        CAPTURE(i);
        CHECK(got[i] == want[i]);
      }
    };
    expect(dip_alpha(), {sym(p, -1, 1, 0, 0), sym(p, -1, 0, 1, 0),
                         sym(p, -1, 0, 0, 1), sym(p, -1, 0, 0, 0)});
    expect(dip_beta(), {sym(p, -1, 0, 1, 0), sym(p, -1, 0, 0, 0),
                        sym(p, -1, 1, 0, 0), sym(p, -1, 0, 0, 1)});
    expect(dip_beta().then(dip_beta()),
           {sym(p, 0, 1, -1, 0), sym(p, 1, 0, -1, 0), sym(p, 0, 0, -1, 0),
            sym(p, 0, 0, -1, 1)});
    expect(dip_gamma(), {sym(p, -1, 0, 0, 0), sym(p, 0, -1, 0, 0),
                         sym(p, 0, 0, -1, 0), sym(p, 0, 0, 0, -1)});
    expect(dip_delta(), {sym(p, -1, 1, 0, 0), sym(p, -1, 0, 0, 0),
                         sym(p, -1, 0, 1, 0), sym(p, -1, 0, 0, 1)});
    expect(dip_epsilon(), {sym(p, -1, 0, 0, 1), sym(p, -1, 1, 0, 0),
                           sym(p, -1, 0, 0, 0), sym(p, -1, 0, 1, 0)});
  }
}

TEST_CASE("voltage assignment validation") {
  CHECK_THROWS_AS(Dip5Voltage(5, 2,
                              {FpVec{1, 0}, FpVec{1, 0}, FpVec{0, 1},
                               FpVec{1, 1}, FpVec{2, 1}}),
                  std::invalid_argument);  // tree arc must vanish
  CHECK_THROWS_AS(Dip5Voltage(5, 2,
                              {FpVec{0, 0}, FpVec{1, 0}, FpVec{2, 0},
                               FpVec{3, 0}, FpVec{4, 0}}),
                  NotSpanning);
}

TEST_CASE("derived covers of the dipole") {
  Dip5Voltage z(2, 4,
                {FpVec{0, 0, 0, 0}, FpVec{1, 0, 0, 0}, FpVec{0, 1, 0, 0},
                 FpVec{0, 0, 1, 0}, FpVec{0, 0, 0, 1}});
  Graph g = derived(z);
  CHECK(g.vertex_count() == 32);
  CHECK(g.is_regular(5));
  CHECK(g.is_connected());
  auto parts = g.bipartition();
  REQUIRE(parts.has_value());
  CHECK(parts->first.size() == 16);

  Dip5Voltage z11 = family_voltage({Family::CGD2_P2, 11});
  Graph g11 = derived(z11);
  CHECK(g11.vertex_count() == 242);
  CHECK(g11.is_regular(5));
  CHECK(g11.is_connected());
}

TEST_CASE("lifting criterion") {
  // the end swap always lifts through negation
  for (auto id : {FamilyId{Family::CGD1_P2, 11}, FamilyId{Family::CGD2_P2, 11},
                  FamilyId{Family::CGD_P3, 11}, FamilyId{Family::CGD_P4, 3}}) {
    Dip5Voltage z = family_voltage(id);
    auto m = lifts(z, dip_gamma());
    REQUIRE(m.has_value());
    FpMatrix neg = FpMatrix::identity(z.p, z.n);
    for (int i = 0; i < z.n; ++i) neg.at(i, i) = z.p - 1;
    CHECK(*m == neg);
  }

  Dip5Voltage c1 = family_voltage({Family::CGD1_P2, 11});
  CHECK(lifts(c1, dip_alpha()).has_value());
  CHECK(!lifts(c1, dip_beta().then(dip_beta())).has_value());

  Dip5Voltage c2 = family_voltage({Family::CGD2_P2, 11});
  CHECK(lifts(c2, dip_alpha()).has_value());
  CHECK(lifts(c2, dip_beta().then(dip_beta())).has_value());
  CHECK(!lifts(c2, dip_beta()).has_value());
  CHECK(!lifts(c2, dip_delta()).has_value());

  Dip5Voltage c4 = basis_voltage(3);
  CHECK(lifts(c4, dip_alpha()).has_value());
  CHECK(lifts(c4, dip_beta()).has_value());
  CHECK(lifts(c4, dip_delta()).has_value());
}

TEST_CASE("lift matrices match the published extension maps") {
  auto m2 = [](int64_t p, int64_t a00, int64_t a01, int64_t a10, int64_t a11) {
    FpMatrix m(p, 2);
    m.at(0, 0) = a00; m.at(0, 1) = a01;
    m.at(1, 0) = a10; m.at(1, 1) = a11;
    return m;
  };
  // first rank-2 family at p = 5: the five-cycle extends through
  // a -> a^2 d, d -> a^{-1}; the four-cycle forces a -> c a^{-1} = d^3
  // and d -> d a^{-1} (unique on the spanning voltages)
  {
    Dip5Voltage z = family_voltage({Family::CGD1_P2, 5});
    CHECK(lifts(z, dip_alpha()) == m2(5, 2, 4, 1, 0));
    CHECK(lifts(z, dip_beta()) == m2(5, 0, 4, 3, 1));
  }
  // first rank-2 family at p = 11 (unit 3): a -> a^{l(l+1)^{-1}-1} d^{l^{-1}}
  {
    Dip5Voltage z = family_voltage({Family::CGD1_P2, 11});
    CHECK(lifts(z, dip_alpha()) == m2(11, 8, 10, 4, 0));
  }
  // second rank-2 family at p = 11 (root 4): the five-cycle extends through
  // a -> a^7 d, d -> a^{-1}; the squared four-cycle through
  // a -> a^7 d^4, d -> a^{-1} d^4
  {
    Dip5Voltage z = family_voltage({Family::CGD2_P2, 11});
    CHECK(lifts(z, dip_alpha()) == m2(11, 7, 10, 1, 0));
    CHECK(lifts(z, dip_beta().then(dip_beta())) == m2(11, 7, 10, 4, 4));
  }
  // rank-3 family: a -> a^{-1} b, b -> a^{-l^2 - 1} b^{-l} d^{-l^4},
  // d -> a^{-1}
  {
    Dip5Voltage z5 = family_voltage({Family::CGD_P3, 5});
    auto m = lifts(z5, dip_alpha());
    REQUIRE(m.has_value());
    CHECK(m->apply({1, 0, 0}) == FpVec{4, 1, 0});
    CHECK(m->apply({0, 1, 0}) == FpVec{3, 4, 4});
    CHECK(m->apply({0, 0, 1}) == FpVec{4, 0, 0});

    Dip5Voltage z11 = family_voltage({Family::CGD_P3, 11});
    auto m11 = lifts(z11, dip_alpha());
    REQUIRE(m11.has_value());
    CHECK(m11->apply({1, 0, 0}) == FpVec{10, 1, 0});
    CHECK(m11->apply({0, 1, 0}) == FpVec{1, 8, 7});
    CHECK(m11->apply({0, 0, 1}) == FpVec{10, 0, 0});
  }
}

TEST_CASE("explicit lifts act on the cover") {
  Dip5Voltage z = family_voltage({Family::CGD1_P2, 5});
  Graph g = derived(z);

  // the swap lift sends (u, x) to (v, -x)
  auto mg = lifts(z, dip_gamma());
  REQUIRE(mg.has_value());
  Perm lg = lift_to_cover(z, dip_gamma(), *mg);
  FpVec x{2, 3};
  FpVec minus_x{3, 2};
  CHECK(lg(static_cast<int>(derived_vertex(z, 0, x))) ==
        derived_vertex(z, 1, minus_x));

  for (const DipAut& s : {dip_alpha(), dip_gamma()}) {
    auto m = lifts(z, s);
    REQUIRE(m.has_value());
    Perm lift = lift_to_cover(z, s, *m);
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int u : g.neighbors(v)) CHECK(g.adjacent(lift(v), lift(u)));
  }

  FpMatrix wrong = FpMatrix::identity(z.p, z.n);
  CHECK_THROWS_AS(lift_to_cover(z, dip_alpha(), wrong), NotALift);
}

TEST_CASE("composed lifts project to the composed base map") {
  Dip5Voltage z = family_voltage({Family::CGD1_P2, 5});
  int64_t vol = 25;
  DipAut s = dip_alpha(), t = dip_gamma();
  Perm ls = lift_to_cover(z, s, *lifts(z, s));
  Perm lt = lift_to_cover(z, t, *lifts(z, t));
  Perm q = ls.then(lt);
  Perm r = lift_to_cover(z, s.then(t), *lifts(z, s.then(t)));
  // q and r differ by a covering translation: a constant side-preserving
  // shift on the second coordinate
  Perm diff = r.inverse().then(q);
  for (int v = 0; v < 2 * vol; ++v)
    CHECK((diff(v) < vol) == (v < vol));  // fixes both sides
  int64_t shift0 = mod_reduce(diff(0) - 0, vol);
  for (int side = 0; side < 2; ++side)
    for (int64_t x = 0; x < vol; ++x) {
      // coordinatewise constant difference mod p in every digit
      int64_t from = side * vol + x;
      int64_t to = diff(static_cast<int>(from)) - side * vol;
      int64_t want_hi = (x / 5 + shift0 / 5) % 5;
      int64_t want_lo = (x % 5 + shift0 % 5) % 5;
      CHECK(to == want_hi * 5 + want_lo);
    }
}

TEST_CASE("lifting groups across the families") {
  auto check_group = [](const Dip5Voltage& z, int64_t fixing, bool arc) {
    LiftingGroup lg = lifting_group(z);
    CHECK(lg.vertex_fixing_order() == fixing);
    CHECK(lg.order() == 2 * fixing);  // the swap doubles every case here
    CHECK(lg.arc_transitive == arc);
    // closure under composition and inverse
    for (const DipAut& a : lg.members) {
      bool has_inv = false;
      for (const DipAut& b : lg.members) has_inv = has_inv || a.then(b) == DipAut::identity();
      CHECK(has_inv);
      for (const DipAut& b : lg.members) {
        DipAut c = a.then(b);
        bool found = false;
        for (const DipAut& d : lg.members) found = found || d == c;
        CHECK(found);
      }
    }
  };
  check_group(family_voltage({Family::CGD2_P2, 11}), 10, true);
  check_group(family_voltage({Family::CGD1_P2, 11}), 5, true);
  check_group(family_voltage({Family::CGD1_P2, 5}), 20, true);
  check_group(family_voltage({Family::CGD_P3, 11}), 5, true);
  check_group(family_voltage({Family::CGD_P3, 5}), 120, true);
  check_group(basis_voltage(3), 120, true);
}

TEST_CASE("every member of the lifting group acts on the cover") {
  for (auto id : {FamilyId{Family::CGD1_P2, 11}, FamilyId{Family::CGD2_P2, 11},
                  FamilyId{Family::CGD_P3, 5}}) {
    Dip5Voltage z = family_voltage(id);
    Graph g = derived(z);
    LiftingGroup lg = lifting_group(z);
    for (const DipAut& s : lg.members) {
      auto m = lifts(z, s);
      REQUIRE(m.has_value());
      Perm lift = lift_to_cover(z, s, *m);
      for (int v = 0; v < g.vertex_count(); ++v)
        for (int u : g.neighbors(v))
          if (!g.adjacent(lift(v), lift(u))) {
            FAIL("lift breaks an edge");
          }
    }
  }
}

TEST_CASE("fibre-preserving group is arc-transitive on small covers") {
  // translations together with the lifts move every arc to every arc
  for (auto id : {FamilyId{Family::CGD1_P2, 5}, FamilyId{Family::CGD_P3, 5}}) {
    Dip5Voltage z = family_voltage(id);
    Graph g = derived(z);
    int64_t vol = 1;
    for (int i = 0; i < z.n; ++i) vol *= z.p;

    auto decode = [&](int64_t value) {
      FpVec x(z.n);
      for (int t = z.n; t-- > 0;) {
        x[t] = value % z.p;
        value /= z.p;
      }
      return x;
    };
    std::vector<Perm> gens;
    for (int i = 0; i < z.n; ++i) {
      std::vector<int> img(g.vertex_count());
      for (int side = 0; side < 2; ++side)
        for (int64_t xi = 0; xi < vol; ++xi) {
          FpVec y = decode(xi);
          y[i] = mod_reduce(y[i] + 1, z.p);
          img[side * vol + xi] = static_cast<int>(derived_vertex(z, side, y));
        }
      gens.emplace_back(std::move(img));
    }
    LiftingGroup lg = lifting_group(z);
    REQUIRE(lg.arc_transitive);
    for (const DipAut& s : lg.members)
      gens.push_back(lift_to_cover(z, s, *lifts(z, s)));

    PermGroup fibre(g.vertex_count(), gens);
    std::vector<std::vector<int>> arcs;
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int u : g.neighbors(v)) arcs.push_back({v, u});
    CHECK(fibre.tuple_orbit_transitive(arcs));
  }
}

TEST_CASE("cover isomorphism witnesses") {
  // both square roots of 5 give the same rank-2 cover
  {
    int64_t p = 11, lam = 4, lam2 = 7;
    auto iv = [&](int64_t l) {
      int64_t i = mod_reduce(unit_inverse(2, p) * (1 + l), p);
      return Dip5Voltage(p, 2,
                         {FpVec{0, 0}, FpVec{1, 0}, FpVec{i, 1}, FpVec{1, i},
                          FpVec{0, 1}});
    };
    Dip5Voltage z1 = iv(lam), z2 = iv(lam2);
    auto w = covers_isomorphic(z1, z2);
    REQUIRE(w.has_value());
    // the four-cycle on arcs 1,2,4,3 carries z1 onto z2 through the
    // linear map a -> d^4, d -> d a^{-1}
    auto eta = solve_extension(
        p, {FpVec{1, 0}, FpVec{8, 1}, FpVec{1, 8}, FpVec{0, 1}},
        [&] {
          auto t = walk_images(z2, dip_beta());
          return std::vector<FpVec>(t.begin(), t.end());
        }());
    REQUIRE(eta.has_value());
    CHECK(eta->apply({1, 0}) == FpVec{0, 4});
    CHECK(eta->apply({0, 1}) == FpVec{10, 1});
  }
  // two different order-5 units give the same first-family cover
  {
    int64_t p = 11;
    auto volt = [&](int64_t ell) {
      int64_t i1 = mod_reduce(ell * unit_inverse(ell + 1, p), p);
      int64_t i2 = unit_inverse(ell, p);
      int64_t i3 = unit_inverse(ell + 1, p);
      return Dip5Voltage(p, 2,
                         {FpVec{0, 0}, FpVec{1, 0}, FpVec{i1, i2},
                          FpVec{ell, i3}, FpVec{0, 1}});
    };
    Dip5Voltage z1 = volt(3), z2 = volt(9);  // 9 = 3^2
    auto w = covers_isomorphic(z1, z2);
    REQUIRE(w.has_value());
    // witnessed by the second four-cycle with a -> a^{-1} d,
    // d -> a^{l^2 - 1} d^{l^4 + l^3 + 1}
    auto eta = solve_extension(
        p,
        [&] {
          auto s = fundamental_voltages(z1);
          return std::vector<FpVec>(s.begin(), s.end());
        }(),
        [&] {
          auto t = walk_images(z2, dip_epsilon());
          return std::vector<FpVec>(t.begin(), t.end());
        }());
    REQUIRE(eta.has_value());
    CHECK(eta->apply({1, 0}) == FpVec{10, 1});
    CHECK(eta->apply({0, 1}) == FpVec{8, 10});
  }
  // the two rank-2 families are genuinely different
  {
    auto z1 = family_voltage({Family::CGD1_P2, 11});
    auto z2 = family_voltage({Family::CGD2_P2, 11});
    CHECK(!covers_isomorphic(z1, z2).has_value());
  }
}

TEST_CASE("canonical form pins the first independent voltages") {
  Dip5Voltage z = family_voltage({Family::CGD1_P2, 11});
  Dip5Voltage c = canonical_form(z);
  CHECK(c.zeta[1] == FpVec{1, 0});
  CHECK(c.zeta[2] == FpVec{0, 1});  // second arc is already independent
  CHECK(covers_isomorphic(z, c).has_value());
}

TEST_CASE("classification at sampled primes") {
  auto count = [](int64_t p, int n, ClassifyStrategy st) {
    return classify(p, n, st).size();
  };
  for (auto st : {ClassifyStrategy::Brute, ClassifyStrategy::Analytic}) {
    CHECK(count(5, 2, st) == 1);
    CHECK(count(7, 2, st) == 0);
    CHECK(count(11, 2, st) == 2);
    CHECK(count(5, 3, st) == 1);
    CHECK(count(7, 3, st) == 0);
    CHECK(count(2, 4, st) == 1);
    CHECK(count(3, 4, st) == 1);
  }
  // tiny characteristics admit no rank-2 or rank-3 symmetric covers
  for (auto st : {ClassifyStrategy::Brute, ClassifyStrategy::Analytic}) {
    CHECK(count(2, 2, st) == 0);
    CHECK(count(2, 3, st) == 0);
    CHECK(count(3, 2, st) == 0);
    CHECK(count(3, 3, st) == 0);
  }
  auto cls = classify(11, 2, ClassifyStrategy::Brute);
  std::set<std::string> names;
  for (const auto& c : cls) {
    REQUIRE(c.matched_family.has_value());
    names.insert(family_name(*c.matched_family));
    CHECK(c.arc_transitive);
  }
  CHECK(names == std::set<std::string>{"CGD1(11^2)", "CGD2(11^2)"});
}

TEST_CASE("classification enumeration is guarded") {
  CHECK_THROWS_AS(classify(53, 2, ClassifyStrategy::Brute), BudgetExceeded);
  CHECK_THROWS_AS(classify(29, 3, ClassifyStrategy::Brute), BudgetExceeded);
  CHECK_THROWS_AS(classify(11, 5, ClassifyStrategy::Brute),
                  std::invalid_argument);
}

TEST_CASE("family voltages") {
  Dip5Voltage z = family_voltage({Family::CGD1_P2, 5});
  CHECK(z.zeta[2] == FpVec{3, 1});
  CHECK(z.zeta[3] == FpVec{1, 3});
  Dip5Voltage z4 = family_voltage({Family::CGD_P4, 2});
  CHECK(z4.zeta[4] == FpVec{0, 0, 0, 1});
  CHECK_THROWS_AS(family_voltage({Family::CGD2_P2, 7}), NoSquareRootOf5);
  CHECK_THROWS_AS(family_voltage({Family::CD_P, 11}), UnsupportedParameter);
}

TEST_CASE("voltage json round trip") {
  Dip5Voltage z = family_voltage({Family::CGD2_P2, 11});
  std::string text = z.to_json();
  CHECK(text ==
        R"({"p":11,"n":2,"zeta":[[0,0],[1,0],[8,1],[1,8],[0,1]]})");
  CHECK(Dip5Voltage::from_json(text) == z);
}

}  // TEST_SUITE
