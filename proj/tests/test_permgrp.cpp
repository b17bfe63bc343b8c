#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "p2pg/permgrp.hpp"

using namespace p2pg;

namespace {

// oracle: all subgroups of a tiny group by closure of extended subsets
std::vector<std::set<std::vector<int>>> all_subgroups_brute(
    const std::vector<Perm>& elements) {
  auto close = [&](std::set<std::vector<int>> seed) {
    std::map<std::vector<int>, Perm> by_img;
    for (const Perm& e : elements) by_img.emplace(e.img, e);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<int>> items(seed.begin(), seed.end());
      for (const auto& a : items)
        for (const auto& b : items) {
          Perm prod = by_img.at(a).then(by_img.at(b));
          if (seed.insert(prod.img).second) grew = true;
        }
    }
    return seed;
  };

  std::set<std::set<std::vector<int>>> found;
  std::set<std::vector<int>> triv{Perm::identity(elements[0].degree()).img};
  found.insert(triv);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::set<std::vector<int>>> snapshot(found.begin(), found.end());
    for (const auto& current : snapshot) {
      for (const Perm& e : elements) {
        if (current.count(e.img)) continue;
        auto bigger = current;
        bigger.insert(e.img);
        auto closed = close(bigger);
        if (found.insert(closed).second) grew = true;
      }
    }
  }
  return {found.begin(), found.end()};
}

bool is_normal_in(const std::set<std::vector<int>>& sub,
                  const std::vector<Perm>& group_gens) {
  for (const auto& img : sub) {
    Perm h{std::vector<int>(img)};
    for (const Perm& g : group_gens)
      if (!sub.count(g.conjugated(h).img)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("permgrp") {

TEST_CASE("perm composition conventions") {
  Perm a = Perm::from_cycles(4, {{0, 1, 2}});
  Perm b = Perm::from_cycles(4, {{2, 3}});
  Perm c = a.then(b);
  CHECK(c(0) == 1);
  CHECK(c(1) == 3);  // 1 -> 2 -> 3
  CHECK(a.then(a.inverse()).is_identity());
  Perm conj = a.conjugated(b);  // a^{-1} b a
  CHECK(conj == a.inverse().then(b).then(a));
}

TEST_CASE("orbits") {
  PermGroup c5(5, {Perm::from_cycles(5, {{0, 1, 2, 3, 4}})});
  CHECK(c5.orbit(0) == std::vector<int>{0, 1, 2, 3, 4});
  PermGroup trivial(5, {});
  CHECK(trivial.orbit(3) == std::vector<int>{3});
  CHECK_THROWS_AS(trivial.orbit(9), PointOutOfRange);
}

TEST_CASE("order via stabilizer chain") {
  PermGroup s6(6, {Perm::from_cycles(6, {{0, 1}}),
                   Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}})});
  CHECK(s6.order() == 720);

  PermGroup a5(5, {Perm::from_cycles(5, {{0, 1, 2}}),
                   Perm::from_cycles(5, {{0, 1, 2, 3, 4}})});
  CHECK(a5.order() == 60);

  PermGroup trivial(4, {});
  CHECK(trivial.order() == 1);
}

TEST_CASE("membership by sifting") {
  PermGroup s6(6, {Perm::from_cycles(6, {{0, 1}}),
                   Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}})});
  CHECK(s6.contains(Perm::from_cycles(6, {{2, 5}})));
  PermGroup c5(5, {Perm::from_cycles(5, {{0, 1, 2, 3, 4}})});
  CHECK(!c5.contains(Perm::from_cycles(5, {{0, 1}})));
  CHECK_THROWS_AS(c5.contains(Perm::identity(4)), DegreeMismatch);
}

TEST_CASE("normal closure in S4") {
  PermGroup s4(4, {Perm::from_cycles(4, {{0, 1}}),
                   Perm::from_cycles(4, {{0, 1, 2, 3}})});
  PermGroup v = s4.normal_closure({Perm::from_cycles(4, {{0, 1}, {2, 3}})});
  CHECK(v.order() == 4);
  PermGroup none = s4.normal_closure({});
  CHECK(none.order() == 1);

  PermGroup a5(5, {Perm::from_cycles(5, {{0, 1, 2}}),
                   Perm::from_cycles(5, {{0, 1, 2, 3, 4}})});
  PermGroup cl = a5.normal_closure({Perm::from_cycles(5, {{0, 1, 2}})});
  CHECK(cl.order() == 60);  // simple group

  CHECK_THROWS_AS(a5.normal_closure({Perm::from_cycles(5, {{0, 1}})}),
                  SeedNotInGroup);
}

TEST_CASE("normal subgroup enumeration matches brute force") {
  struct Case {
    std::vector<Perm> gens;
    int degree;
  };
  std::vector<Case> cases;
  cases.push_back({{Perm::from_cycles(4, {{0, 1}}),
                    Perm::from_cycles(4, {{0, 1, 2, 3}})},
                   4});  // S4
  cases.push_back({{Perm::from_cycles(5, {{0, 1, 2, 3, 4}})}, 5});  // Z5
  cases.push_back({{Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}}),
                    Perm::from_cycles(6, {{1, 5}, {2, 4}})},
                   6});  // D6
  cases.push_back({{Perm::from_cycles(5, {{0, 1, 2}}),
                    Perm::from_cycles(5, {{0, 1, 2, 3, 4}})},
                   5});  // A5

  for (const auto& c : cases) {
    PermGroup g(c.degree, c.gens);
    auto subs = g.normal_subgroups();
    auto all = all_subgroups_brute(g.elements());
    std::multiset<int64_t> expected, got;
    for (const auto& sub : all)
      if (is_normal_in(sub, c.gens)) expected.insert((int64_t)sub.size());
    for (const auto& n : subs) got.insert(n.order());
    CHECK(got == expected);
    // every reported subgroup is closed under conjugation
    for (const auto& n : subs)
      for (const Perm& gg : c.gens)
        for (const Perm& nn : n.generators())
          CHECK(n.contains(gg.conjugated(nn)));
  }
}

TEST_CASE("normal subgroup orders of S4") {
  PermGroup s4(4, {Perm::from_cycles(4, {{0, 1}}),
                   Perm::from_cycles(4, {{0, 1, 2, 3}})});
  std::vector<int64_t> orders;
  for (const auto& n : s4.normal_subgroups()) orders.push_back(n.order());
  CHECK(orders == std::vector<int64_t>{1, 4, 12, 24});
}

TEST_CASE("tuple orbit transitivity") {
  PermGroup s6(6, {Perm::from_cycles(6, {{0, 1}}),
                   Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}})});
  std::vector<std::vector<int>> arcs;
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v)
      if (u != v) arcs.push_back({u, v});
  CHECK(s6.tuple_orbit_transitive(arcs));

  PermGroup c5(5, {Perm::from_cycles(5, {{0, 1, 2, 3, 4}})});
  std::vector<std::vector<int>> c5arcs;
  for (int v = 0; v < 5; ++v) {
    c5arcs.push_back({v, (v + 1) % 5});
    c5arcs.push_back({(v + 1) % 5, v});
  }
  CHECK(!c5.tuple_orbit_transitive(c5arcs));
}

TEST_CASE("orbit partition covers the point set") {
  PermGroup g(7, {Perm::from_cycles(7, {{0, 1, 2}}),
                  Perm::from_cycles(7, {{3, 4}})});
  auto orbs = g.orbits();
  size_t total = 0;
  for (const auto& o : orbs) total += o.size();
  CHECK(total == 7);
  CHECK(orbs.size() == 4);  // {0,1,2}, {3,4}, {5}, {6}
}

TEST_CASE("random generator sets certify the right order") {
  // compare the chain order against plain closure enumeration
  uint64_t state = 0x2545f491u;
  auto rnd = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (int trial = 0; trial < 40; ++trial) {
    int degree = 4 + static_cast<int>(rnd() % 4);  // 4..7 points
    std::vector<Perm> gens;
    int count = 1 + static_cast<int>(rnd() % 3);
    for (int gi = 0; gi < count; ++gi) {
      std::vector<int> img(degree);
      std::iota(img.begin(), img.end(), 0);
      for (int i = degree - 1; i > 0; --i)
        std::swap(img[i], img[rnd() % (i + 1)]);
      gens.emplace_back(std::move(img));
    }
    PermGroup g(degree, gens);
    // closure by multiplication
    std::set<std::vector<int>> closure{Perm::identity(degree).img};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<int>> snapshot(closure.begin(), closure.end());
      for (const auto& img : snapshot)
        for (const Perm& s : gens) {
          Perm prod = Perm{std::vector<int>(img)}.then(s);
          if (closure.insert(prod.img).second) grew = true;
        }
    }
    CAPTURE(trial);
    CHECK(g.order() == static_cast<int64_t>(closure.size()));
    // membership agrees with the closure on a few probes
    for (int probe = 0; probe < 5; ++probe) {
      std::vector<int> img(degree);
      std::iota(img.begin(), img.end(), 0);
      for (int i = degree - 1; i > 0; --i)
        std::swap(img[i], img[rnd() % (i + 1)]);
      Perm cand{img};
      CHECK(g.contains(cand) == (closure.count(cand.img) > 0));
    }
  }
}

TEST_CASE("budget guards") {
  PermGroup s6(6, {Perm::from_cycles(6, {{0, 1}}),
                   Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}})});
  CHECK_THROWS_AS(s6.normal_subgroups(100), BudgetExceeded);
  CHECK_THROWS_AS(s6.elements(100), BudgetExceeded);
}

TEST_CASE("element enumeration matches the order") {
  PermGroup d6(6, {Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}}),
                   Perm::from_cycles(6, {{1, 5}, {2, 4}})});
  auto elems = d6.elements();
  CHECK((int64_t)elems.size() == d6.order());
  std::set<std::vector<int>> uniq;
  for (const auto& e : elems) uniq.insert(e.img);
  CHECK(uniq.size() == elems.size());
}

}  // TEST_SUITE
