#include <doctest.h>

#include <numeric>
#include <set>

#include "p2pg/symmetry.hpp"
#include "p2pg/voltagecover.hpp"

using namespace p2pg;

namespace {

Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::build(n, e);
}

Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph::build(a + b, e);
}

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::build(n, e);
}

Graph cube(int dim) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < (1 << dim); ++v)
    for (int b = 0; b < dim; ++b)
      if (v < (v ^ (1 << b))) e.emplace_back(v, v ^ (1 << b));
  return Graph::build(1 << dim, e);
}

int64_t brute_aut_order(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int64_t count = 0;
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      for (int u : g.neighbors(v)) {
        if (!g.adjacent(perm[v], perm[u])) { ok = false; break; }
      }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

TEST_SUITE("symmetry") {

TEST_CASE("automorphism group order matches brute force up to 8 vertices") {
  std::vector<Graph> corpus;
  corpus.push_back(complete(4));
  corpus.push_back(cycle(5));
  corpus.push_back(cycle(8));
  corpus.push_back(cube(3));
  corpus.push_back(complete_bipartite(3, 3));
  corpus.push_back(Graph::build(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}));  // path
  corpus.push_back(Graph::build(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));  // star
  corpus.push_back(Graph::build(8, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5},
                                    {5, 6}, {6, 7}, {7, 3}}));  // C3 + C5? no: C3+C5 is 0..2, 3..7
  corpus.push_back(Graph::build(6, {}));                        // empty
  corpus.push_back(Graph::build(7, {{0, 1}, {2, 3}, {4, 5}}));  // matching
  for (const Graph& g : corpus) {
    CAPTURE(g.vertex_count());
    CHECK(aut_group(g).order() == brute_aut_order(g));
  }
}

TEST_CASE("random small graphs agree with brute force") {
  // deterministic linear congruential stream
  uint64_t state = 0x9d2c5680u;
  auto rnd = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (int trial = 0; trial < 60; ++trial) {
    int n = 5 + static_cast<int>(rnd() % 4);  // 5..8 vertices
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rnd() % 100 < 40) edges.emplace_back(i, j);
    Graph g = Graph::build(n, edges);
    CAPTURE(trial);
    CHECK(aut_group(g).order() == brute_aut_order(g));
  }
}

TEST_CASE("known automorphism group orders") {
  CHECK(aut_group(complete(6)).order() == 720);
  CHECK(aut_group(complete_bipartite(5, 5)).order() == 28800);
  Graph petersen = Graph::build(10, [] {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
      e.emplace_back(i, (i + 1) % 5);
      e.emplace_back(i, i + 5);
      e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return e;
  }());
  CHECK(aut_group(petersen).order() == 120);
  NamedGraph fq4 = family({Family::FQN, 4});
  CHECK(aut_group(fq4.graph).order() == 1920);
}

TEST_CASE("isomorphism witnesses and refusals") {
  NamedGraph cd5 = family({Family::CD_P, 5});
  auto w = isomorphic(cd5.graph, complete_bipartite(5, 5));
  REQUIRE(w.has_value());
  for (int v = 0; v < cd5.graph.vertex_count(); ++v)
    for (int u : cd5.graph.neighbors(v))
      CHECK(complete_bipartite(5, 5).adjacent((*w)[v], (*w)[u]));

  CHECK(!isomorphic(cycle(6), complete_bipartite(3, 3)).has_value());
  CHECK(!isomorphic(cycle(6), cycle(7)).has_value());

  // antipodal quotient of the five-cube is the folded four-cube
  NamedGraph q5 = family({Family::QN, 5});
  std::vector<std::vector<int>> cells;
  {
    // antipodes differ by the all-ones group element
    GroupSpec g = q5.group;
    GDElement ones = g.element({1, 1, 1, 1}, true);
    std::vector<char> used(32, 0);
    for (int v = 0; v < 32; ++v) {
      if (used[v]) continue;
      int w2 = static_cast<int>(element_index(g, compose(ones, q5.labels[v])));
      used[v] = used[w2] = 1;
      cells.push_back({std::min(v, w2), std::max(v, w2)});
    }
  }
  Graph quot = q5.graph.quotient(cells);
  NamedGraph fq4 = family({Family::FQN, 4});
  CHECK(isomorphic(quot, fq4.graph).has_value());
}

TEST_CASE("canonical form is invariant under relabeling") {
  uint64_t state = 0xfeedu;
  auto rnd = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  auto canonical_edges = [](const Graph& g) {
    std::vector<int> canon = canonical_labeling(g);
    std::vector<std::pair<int, int>> out;
    for (auto [u, v] : g.edges()) {
      int a = canon[u], b = canon[v];
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<Graph> corpus;
  corpus.push_back(Graph::build(10, [] {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
      e.emplace_back(i, (i + 1) % 5);
      e.emplace_back(i, i + 5);
      e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return e;
  }()));  // Petersen
  corpus.push_back(family({Family::CGD1_P2, 5}).graph);
  corpus.push_back(cube(4));

  for (const Graph& g : corpus) {
    auto base = canonical_edges(g);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> relabel(g.vertex_count());
      std::iota(relabel.begin(), relabel.end(), 0);
      for (int i = g.vertex_count() - 1; i > 0; --i)
        std::swap(relabel[i], relabel[rnd() % (i + 1)]);
      std::vector<std::pair<int, int>> edges;
      for (auto [u, v] : g.edges()) edges.emplace_back(relabel[u], relabel[v]);
      Graph h = Graph::build(g.vertex_count(), edges);
      CHECK(canonical_edges(h) == base);
    }
  }
}

TEST_CASE("transitivity levels against the stabilizer catalog") {
  {
    Graph k6 = complete(6);
    PermGroup aut = aut_group(k6);
    SClass sc = s_class(k6, aut);
    CHECK(sc.s == 2);
    CHECK(sc.stabilizer_order == 120);
    CHECK(sc.catalog_name == "S5");
  }
  {
    NamedGraph cd31 = family({Family::CD_P, 31});
    PermGroup aut = aut_group(cd31.graph);
    SClass sc = s_class(cd31.graph, aut);
    CHECK(sc.s == 1);
    CHECK(sc.stabilizer_order == 5);
    CHECK(sc.catalog_name == "Z5");
  }
  {
    NamedGraph k55 = family({Family::CD_P, 5});
    PermGroup aut = aut_group(k55.graph);
    SClass sc = s_class(k55.graph, aut);
    CHECK(sc.s == 3);
    CHECK(sc.stabilizer_order == 2880);
    CHECK(sc.catalog_name == "S4xS5");
  }
  CHECK_THROWS_AS(s_class(cycle(5), aut_group(cycle(5))), NotPentavalent);
}

TEST_CASE("catalog rows ascend and divide the stabilizer bound") {
  int64_t bound = 512 * 9 * 5;  // 2^9 * 3^2 * 5
  for (const auto& [s, row] : StabCatalog::rows()) {
    for (size_t i = 1; i < row.size(); ++i) CHECK(row[i - 1].order < row[i].order);
    for (const auto& e : row) CHECK(bound % e.order == 0);
  }
  CHECK(StabCatalog::lookup(2, 120) == "S5");
  CHECK(StabCatalog::lookup(1, 7) == std::nullopt);
}

TEST_CASE("basicness with exhaustive tier") {
  {
    Graph k6 = complete(6);
    BasicVerdict v = is_basic(k6, aut_group(k6), std::nullopt);
    CHECK(v.basic);
  }
  {
    NamedGraph g = family({Family::CGD1_P2, 5});
    PermGroup aut = aut_group(g.graph);
    BasicVerdict v = is_basic(g.graph, aut, translation_lattice(g));
    CHECK(!v.basic);
    CHECK(v.witness_order == 5);
    CHECK(v.witness_orbits.size() == 10);
    // witness must be a genuine normal subgroup: verified via quotient
    Graph q = g.graph.quotient(v.witness_orbits);
    CHECK(q.is_regular(5));
  }
  {
    NamedGraph g = family({Family::CGD_P4, 2});
    BasicVerdict v = is_basic(g.graph, aut_group(g.graph), translation_lattice(g));
    CHECK(!v.basic);
  }
}

TEST_CASE("quotient chains reach the expected basic graphs") {
  {
    NamedGraph g = family({Family::CGD1_P2, 5});
    auto chain = basic_quotient_chain(g.graph, aut_group(g.graph),
                                      translation_lattice(g));
    REQUIRE(!chain.empty());
    REQUIRE(chain.back().recognized.has_value());
    CHECK(family_name(*chain.back().recognized) == "CD(5)");
  }
  {
    NamedGraph g = family({Family::CGD_P4, 2});
    auto chain = basic_quotient_chain(g.graph, aut_group(g.graph),
                                      translation_lattice(g));
    REQUIRE(!chain.empty());
    REQUIRE(chain.back().recognized.has_value());
    CHECK(family_name(*chain.back().recognized) == "FQ4");
  }
}

TEST_CASE("generalized dihedral recognition") {
  // the diagonal five-rotation on both sides of K_{5,5}
  Graph k55 = complete_bipartite(5, 5);
  Perm rot = Perm::from_cycles(10, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  PermGroup h(10, {rot});
  GDRecognition rec = gd_recognize(k55, h);
  CHECK(rec.group.order() == 10);
  CHECK(rec.connection.size() == 5);

  // covering translations of a derived cover recover the family structure
  Dip5Voltage z = family_voltage({Family::CGD1_P2, 5});
  Graph cover = derived(z);
  std::vector<Perm> trans;
  for (int i = 0; i < 2; ++i) {
    std::vector<int> img(cover.vertex_count());
    for (int side = 0; side < 2; ++side)
      for (int64_t x = 0; x < 25; ++x) {
        FpVec v = {x / 5, x % 5};
        v[i] = mod_reduce(v[i] + 1, 5);
        img[side * 25 + x] =
            static_cast<int>(derived_vertex(z, side, v));
      }
    trans.emplace_back(std::move(img));
  }
  GDRecognition rec2 = gd_recognize(cover, PermGroup(cover.vertex_count(), trans));
  CHECK(rec2.group.order() == 50);
  Graph rebuilt = cayley(rec2.group, rec2.connection);
  CHECK(isomorphic(rebuilt, cover).has_value());

  CHECK_THROWS_AS(gd_recognize(cycle(7), PermGroup(7, {})), NotBipartite);

  // cyclic side group of prime-square order
  {
    NamedGraph cd121 = family({Family::CD_P2, 11});
    Perm rot = right_regular(cd121.group).generators()[0];
    GDRecognition rec3 = gd_recognize(cd121.graph, PermGroup(242, {rot}));
    CHECK(rec3.group.order() == 242);
    CHECK(rec3.group.spec->moduli == std::vector<int64_t>{121});
    Graph rebuilt = cayley(rec3.group, rec3.connection);
    CHECK(isomorphic(rebuilt, cd121.graph).has_value());
  }

  // side group with two invariant factors
  {
    GroupSpec mixed({9, 3});
    std::vector<GDElement> s = {
        mixed.element({0, 0}, true), mixed.element({1, 0}, true),
        mixed.element({0, 1}, true), mixed.element({1, 1}, true),
        mixed.element({3, 1}, true)};
    Graph g = cayley(mixed, s);
    REQUIRE(g.is_connected());
    PermGroup reg = right_regular(mixed);
    PermGroup side(g.vertex_count(),
                   {reg.generators()[0], reg.generators()[1]});
    GDRecognition rec4 = gd_recognize(g, side);
    CHECK(rec4.group.spec->moduli == std::vector<int64_t>{9, 3});
    Graph rebuilt = cayley(rec4.group, rec4.connection);
    CHECK(isomorphic(rebuilt, g).has_value());
  }
  // semiregular but transitive: its single orbit is not the two parts
  Perm full_rot = Perm::from_cycles(10, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
  CHECK_THROWS_AS(gd_recognize(cycle(10), PermGroup(10, {full_rot})),
                  OrbitsNotParts);
  // a group with fixed points is not semiregular
  Perm one_side = Perm::from_cycles(10, {{0, 1, 2, 3, 4}});
  CHECK_THROWS_AS(gd_recognize(k55, PermGroup(10, {one_side})), NotSemiregular);
}

TEST_CASE("census at a prime with no families") {
  CensusReport rep = census_2p2(7);
  CHECK(rep.graphs.empty());
  CHECK(rep.pairwise_nonisomorphic);
  CHECK_THROWS_AS(census_2p2(37), BudgetExceeded);
}

TEST_CASE("cube and folded cube groups across dimensions") {
  // |Aut(Q_n)| = 2^n n! and |Aut(FQ_n)| = 2^n (n+1)! from dimension 4 on
  CHECK(aut_group(family({Family::QN, 4}).graph).order() == 16 * 24);
  CHECK(aut_group(family({Family::QN, 5}).graph).order() == 32 * 120);
  CHECK(aut_group(family({Family::FQN, 4}).graph).order() == 16 * 120);
  CHECK(aut_group(family({Family::FQN, 5}).graph).order() == 32 * 720);
}

TEST_CASE("folded cube has one quadrangle through each neighbor pair") {
  NamedGraph fq4 = family({Family::FQN, 4});
  const Graph& g = fq4.graph;
  const auto& nb = g.neighbors(0);
  for (size_t i = 0; i < nb.size(); ++i)
    for (size_t j = i + 1; j < nb.size(); ++j)
      CHECK(g.cycles_through_path({nb[i], 0, nb[j]}, 4) == 1);
}

TEST_CASE("census at the guard boundary") {
  CensusReport rep = census_2p2(31);
  REQUIRE(rep.graphs.size() == 3);
  std::multiset<int64_t> orders;
  for (const auto& e : rep.graphs) orders.insert(e.aut_order);
  CHECK(orders == std::multiset<int64_t>{9610, 9610, 19220});
  CHECK(rep.pairwise_nonisomorphic);
}

TEST_CASE("census finds the three order-242 graphs") {
  CensusReport rep = census_2p2(11);
  REQUIRE(rep.graphs.size() == 3);
  std::multiset<int64_t> orders;
  for (const auto& e : rep.graphs) orders.insert(e.aut_order);
  CHECK(orders == std::multiset<int64_t>{1210, 1210, 2420});
  CHECK(rep.pairwise_nonisomorphic);
  for (const auto& e : rep.graphs) CHECK(e.s >= 1);

  CensusReport r19 = census_2p2(19);
  REQUIRE(r19.graphs.size() == 1);
  CHECK(r19.graphs[0].family == "CGD2(19^2)");
}

TEST_CASE("a lifted dihedral rotation lies in the full group") {
  NamedGraph cd31 = family({Family::CD_P, 31});
  PermGroup aut = aut_group(cd31.graph);
  // right translation by the rotation generator of the dihedral group
  Perm rot = right_regular(cd31.group).generators()[0];
  CHECK(aut.contains(rot));
  // and the 2-arc orbit is genuinely split at level one
  std::vector<std::vector<int>> two_arcs;
  for (int v = 0; v < cd31.graph.vertex_count(); ++v)
    for (int u : cd31.graph.neighbors(v))
      for (int w : cd31.graph.neighbors(u))
        if (w != v) two_arcs.push_back({v, u, w});
  CHECK(!aut.tuple_orbit_transitive(two_arcs));
}

TEST_CASE("the second rank-2 family admits no order-11 normal subgroup") {
  NamedGraph g = family({Family::CGD2_P2, 11});
  PermGroup aut = aut_group(g.graph);
  REQUIRE(aut.order() == 2420);
  for (const PermGroup& n : aut.normal_subgroups())
    CHECK(n.order() != 11);
}

TEST_CASE("analysis report for a family member") {
  NamedGraph g = family({Family::CGD1_P2, 5});
  SymmetryReport rep = analyze(g.graph, &g);
  CHECK(rep.family == "CGD1(5^2)");
  CHECK(rep.vertices == 50);
  CHECK(rep.aut_order == 4000);
  CHECK(rep.girth == 6);
  CHECK(rep.s == 3);  // stabilizer order 80 sits in the third catalog row
  CHECK(rep.stabilizer_order == 80);
  CHECK(rep.basic == false);
  CHECK(rep.quotient == "CD(5)");
}

}  // TEST_SUITE
