#include "p2pg/permgrp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace p2pg {

namespace {

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Deterministic pseudo-random words over the generators; used to fill the
// stabilizer chain quickly before the exact verification pass.
struct SplitMix {
  uint64_t s;
  explicit SplitMix(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace

Perm::Perm(std::vector<int> images) : img(std::move(images)) {
  std::vector<char> seen(img.size(), 0);
  for (int v : img) {
    if (v < 0 || v >= degree() || seen[v])
      throw std::invalid_argument("Perm: image table is not a bijection");
    seen[v] = 1;
  }
}

Perm Perm::identity(int degree) {
  std::vector<int> im(degree);
  for (int i = 0; i < degree; ++i) im[i] = i;
  Perm p;
  p.img = std::move(im);
  return p;
}

Perm Perm::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Perm p = identity(degree);
  for (const auto& c : cycles) {
    for (size_t i = 0; i < c.size(); ++i) {
      int from = c[i], to = c[(i + 1) % c.size()];
      if (from < 0 || from >= degree)
        throw PointOutOfRange("from_cycles: point out of range");
      p.img[from] = to;
    }
  }
  return Perm(p.img);  // revalidate
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img[i] != i) return false;
  return true;
}

Perm Perm::then(const Perm& next) const {
  Perm r;
  r.img.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i) r.img[i] = next.img[img[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i) r.img[img[i]] = static_cast<int>(i);
  return r;
}

Perm Perm::conjugated(const Perm& h) const {
  // inverse(*this) * h * (*this), read left to right as "apply"
  Perm r;
  r.img.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i) r.img[img[i]] = img[h.img[i]];
  return r;
}

// ---------------------------------------------------------------------------
// Stabilizer chain

struct PermGroup::Chain {
  struct Level {
    int base = -1;
    std::vector<Perm> gens;          // strong generators active at this level
    std::vector<Perm> gen_invs;
    std::vector<int> orbit;          // BFS discovery order
    std::vector<int> pos;            // point -> orbit index, -1 outside
    std::vector<Perm> trans_inv;     // trans_inv[i] maps orbit[i] -> base
  };

  int degree = 0;
  std::vector<Level> levels;

  explicit Chain(int deg) : degree(deg) {}

  void add_level(int base_point) {
    Level l;
    l.base = base_point;
    l.pos.assign(degree, -1);
    l.orbit.push_back(base_point);
    l.pos[base_point] = 0;
    l.trans_inv.push_back(Perm::identity(degree));
    levels.push_back(std::move(l));
  }

  // Extends the orbit/transversal of a level. Existing points are rescanned
  // with the new generators only; fresh points get the full generator set.
  void close_orbit(size_t li, size_t first_new_gen) {
    Level& l = levels[li];
    size_t old_size = l.orbit.size();
    std::deque<int> fresh;
    for (size_t i = 0; i < old_size; ++i) {
      int x = l.orbit[i];
      for (size_t gi = first_new_gen; gi < l.gens.size(); ++gi) {
        int y = l.gens[gi].img[x];
        if (l.pos[y] >= 0) continue;
        l.pos[y] = static_cast<int>(l.orbit.size());
        l.orbit.push_back(y);
        l.trans_inv.push_back(l.gen_invs[gi].then(l.trans_inv[i]));
        fresh.push_back(y);
      }
    }
    while (!fresh.empty()) {
      int x = fresh.front();
      fresh.pop_front();
      int ix = l.pos[x];
      for (size_t gi = 0; gi < l.gens.size(); ++gi) {
        int y = l.gens[gi].img[x];
        if (l.pos[y] >= 0) continue;
        l.pos[y] = static_cast<int>(l.orbit.size());
        l.orbit.push_back(y);
        l.trans_inv.push_back(l.gen_invs[gi].then(l.trans_inv[ix]));
        fresh.push_back(y);
      }
    }
  }

  // Sifts g through levels starting at `from`. Returns the residue and the
  // level index where sifting stopped (== levels.size() on full sift).
  std::pair<Perm, size_t> sift(Perm g, size_t from) const {
    for (size_t l = from; l < levels.size(); ++l) {
      int x = g.img[levels[l].base];
      int ix = levels[l].pos[x];
      if (ix < 0) return {std::move(g), l};
      g = g.then(levels[l].trans_inv[ix]);
    }
    return {std::move(g), levels.size()};
  }

  bool contains(const Perm& g) const {
    auto [res, l] = sift(g, 0);
    return l == levels.size() && res.is_identity();
  }

  // Installs a residue known to fix the bases of all levels < at.
  void install(Perm res, size_t at) {
    if (at == levels.size()) {
      int moved = -1;
      for (int i = 0; i < degree; ++i)
        if (res.img[i] != i) { moved = i; break; }
      if (moved < 0) return;  // identity
      add_level(moved);
    }
    Perm res_inv = res.inverse();
    for (size_t l = 0; l <= at && l < levels.size(); ++l) {
      // residues sticking at `at` fix every base above, so they are active
      // on all levels up to at
      levels[l].gens.push_back(res);
      levels[l].gen_invs.push_back(res_inv);
      close_orbit(l, levels[l].gens.size() - 1);
    }
  }

  // Adds an arbitrary group element; returns false if already present.
  bool add_element(const Perm& g) {
    auto [res, l] = sift(g, 0);
    if (l == levels.size() && res.is_identity()) return false;
    install(std::move(res), l);
    return true;
  }

  // Exact Schreier-generator verification, bottom levels first. Any failure
  // is installed and the scan restarts until everything sifts to identity.
  void verify() {
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t li = levels.size(); li-- > 0 && !dirty;) {
        Level& l = levels[li];
        for (size_t i = 0; i < l.orbit.size() && !dirty; ++i) {
          Perm u = l.trans_inv[i].inverse();  // base -> orbit[i]
          for (size_t gi = 0; gi < l.gens.size() && !dirty; ++gi) {
            int y = l.gens[gi].img[l.orbit[i]];
            Perm sch = u.then(l.gens[gi]).then(l.trans_inv[l.pos[y]]);
            auto [res, at] = sift(std::move(sch), li + 1);
            if (at < levels.size() || !res.is_identity()) {
              install(std::move(res), at);
              dirty = true;
            }
          }
        }
      }
    }
  }

  int64_t order() const {
    int64_t o = 1;
    for (const Level& l : levels) {
      int64_t s = static_cast<int64_t>(l.orbit.size());
      if (o > INT64_MAX / s)
        throw std::overflow_error("PermGroup order exceeds int64");
      o *= s;
    }
    return o;
  }
};

struct PermGroup::ChainHolder {
  std::once_flag once;
  std::shared_ptr<Chain> chain;
};

PermGroup::PermGroup(int degree, std::vector<Perm> generators)
    : degree_(degree),
      gens_(std::move(generators)),
      holder_(std::make_shared<ChainHolder>()) {
  for (const Perm& g : gens_)
    if (g.degree() != degree_)
      throw DegreeMismatch("PermGroup: generator degree mismatch");
}

const PermGroup::Chain& PermGroup::chain() const {
  std::call_once(holder_->once, [this] {
    auto c = std::make_shared<Chain>(degree_);
    for (const Perm& g : gens_)
      if (!g.is_identity()) c->add_element(g);

    // Seeded random fill before the exact pass; outputs do not depend on it.
    if (!c->levels.empty() && !gens_.empty()) {
      SplitMix rng(0x5eed5eed12345ull);
      std::vector<Perm> pool = gens_;
      while (pool.size() < 8) pool.push_back(gens_[pool.size() % gens_.size()]);
      int quiet = 0;
      int rounds = 0;
      while (quiet < 24 && rounds < 2048) {
        ++rounds;
        size_t i = rng.next() % pool.size();
        size_t j = rng.next() % pool.size();
        pool[i] = pool[i].then(pool[j]);
        if (c->add_element(pool[i]))
          quiet = 0;
        else
          ++quiet;
      }
    }
    c->verify();
    holder_->chain = std::move(c);
  });
  return *holder_->chain;
}

std::vector<int> PermGroup::orbit(int point) const {
  if (point < 0 || point >= degree_)
    throw PointOutOfRange("orbit: point out of range");
  std::vector<char> seen(degree_, 0);
  std::vector<int> out, queue{point};
  seen[point] = 1;
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    out.push_back(x);
    for (const Perm& g : gens_) {
      int y = g.img[x];
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<char> seen(degree_, 0);
  std::vector<std::vector<int>> out;
  for (int v = 0; v < degree_; ++v) {
    if (seen[v]) continue;
    auto orb = orbit(v);
    for (int x : orb) seen[x] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

bool PermGroup::is_transitive() const {
  return degree_ == 0 || static_cast<int>(orbit(0).size()) == degree_;
}

bool PermGroup::is_semiregular() const {
  for (const auto& orb : orbits()) {
    int64_t stab = order() / static_cast<int64_t>(orb.size());
    if (stab != 1) return false;
  }
  return true;
}

int64_t PermGroup::order() const { return chain().order(); }

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_)
    throw DegreeMismatch("contains: degree mismatch");
  return chain().contains(g);
}

PermGroup PermGroup::normal_closure(const std::vector<Perm>& seeds) const {
  for (const Perm& s : seeds)
    if (!contains(s)) throw SeedNotInGroup("normal_closure: seed not in group");

  Chain h(degree_);
  std::vector<Perm> hgens;
  std::deque<Perm> work;
  for (const Perm& s : seeds)
    if (h.add_element(s)) {
      hgens.push_back(s);
      work.push_back(s);
    }
  std::vector<Perm> conjugators = gens_;
  for (const Perm& g : gens_) conjugators.push_back(g.inverse());
  while (!work.empty()) {
    Perm x = std::move(work.front());
    work.pop_front();
    for (const Perm& g : conjugators) {
      Perm c = g.conjugated(x);
      if (h.add_element(c)) {
        hgens.push_back(c);
        work.push_back(std::move(c));
      }
    }
  }
  if (hgens.empty()) hgens.push_back(Perm::identity(degree_));
  return PermGroup(degree_, std::move(hgens));
}

std::vector<Perm> PermGroup::elements(int64_t budget) const {
  if (order() > budget)
    throw BudgetExceeded("elements: group order exceeds the element budget");
  const Chain& c = chain();
  std::vector<Perm> out{Perm::identity(degree_)};
  for (size_t li = c.levels.size(); li-- > 0;) {
    const auto& l = c.levels[li];
    std::vector<Perm> next;
    next.reserve(out.size() * l.orbit.size());
    for (size_t i = 0; i < l.orbit.size(); ++i) {
      Perm u = l.trans_inv[i].inverse();
      for (const Perm& h : out) next.push_back(h.then(u));
    }
    out = std::move(next);
  }
  return out;
}

std::vector<PermGroup> PermGroup::normal_subgroups(int64_t element_budget) const {
  int64_t ord = order();
  if (ord > element_budget)
    throw BudgetExceeded("normal_subgroups: order exceeds element budget");

  std::vector<Perm> elems = elements(element_budget);
  std::vector<Perm> conjugators = gens_;
  for (const Perm& g : gens_) conjugators.push_back(g.inverse());

  // conjugacy class representatives; the closure of an element depends only
  // on its class
  VecHash hasher;
  std::unordered_multimap<size_t, size_t> index;
  index.reserve(elems.size() * 2);
  for (size_t i = 0; i < elems.size(); ++i)
    index.emplace(hasher(elems[i].img), i);
  auto locate = [&](const std::vector<int>& img) -> size_t {
    auto [lo, hi] = index.equal_range(hasher(img));
    for (auto it = lo; it != hi; ++it)
      if (elems[it->second].img == img) return it->second;
    throw std::logic_error("normal_subgroups: conjugate escaped element list");
  };
  std::vector<char> visited(elems.size(), 0);
  std::vector<Perm> reps;
  for (size_t i = 0; i < elems.size(); ++i) {
    if (visited[i] || elems[i].is_identity()) continue;
    reps.push_back(elems[i]);
    std::deque<size_t> bfs{i};
    visited[i] = 1;
    while (!bfs.empty()) {
      size_t j = bfs.front();
      bfs.pop_front();
      for (const Perm& g : conjugators) {
        Perm c = g.conjugated(elems[j]);
        size_t k = locate(c.img);
        if (!visited[k]) {
          visited[k] = 1;
          bfs.push_back(k);
        }
      }
    }
  }

  std::vector<PermGroup> found;
  found.emplace_back(degree_, std::vector<Perm>{Perm::identity(degree_)});
  auto known = [&](const PermGroup& n) {
    for (const PermGroup& m : found) {
      if (m.order() != n.order()) continue;
      bool sub = true;
      for (const Perm& g : n.generators())
        if (!m.contains(g)) { sub = false; break; }
      if (sub) return true;
    }
    return false;
  };
  for (const Perm& r : reps) {
    PermGroup n = normal_closure({r});
    if (!known(n)) found.push_back(std::move(n));
  }
  // close under pairwise join
  for (size_t i = 0; i < found.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      std::vector<Perm> joint = found[i].generators();
      const auto& gj = found[j].generators();
      joint.insert(joint.end(), gj.begin(), gj.end());
      PermGroup join(degree_, std::move(joint));
      if (!known(join)) found.push_back(std::move(join));
    }
  std::stable_sort(found.begin(), found.end(),
                   [](const PermGroup& a, const PermGroup& b) {
                     return a.order() < b.order();
                   });
  return found;
}

bool PermGroup::tuple_orbit_transitive(
    const std::vector<std::vector<int>>& tuples) const {
  if (tuples.empty())
    throw std::invalid_argument("tuple_orbit_transitive: no tuples");
  std::unordered_set<std::vector<int>, VecHash> all(tuples.begin(), tuples.end());
  std::unordered_set<std::vector<int>, VecHash> seen;
  std::deque<std::vector<int>> queue{tuples[0]};
  seen.insert(tuples[0]);
  while (!queue.empty()) {
    std::vector<int> t = std::move(queue.front());
    queue.pop_front();
    for (const Perm& g : gens_) {
      std::vector<int> u(t.size());
      for (size_t i = 0; i < t.size(); ++i) u[i] = g.img[t[i]];
      if (seen.insert(u).second) {
        if (!all.count(u)) return false;  // escapes the given set
        queue.push_back(std::move(u));
      }
    }
  }
  return seen.size() == all.size();
}

}  // namespace p2pg
