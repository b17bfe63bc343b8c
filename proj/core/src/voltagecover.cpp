#include "p2pg/voltagecover.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace p2pg {

namespace {

int rank_of(int64_t p, const std::array<FpVec, 5>& zeta, int n) {
  std::vector<FpVec> rows(zeta.begin() + 1, zeta.end());
  int rank = 0;
  for (int col = 0; col < n && rank < 4; ++col) {
    int pivot = -1;
    for (int r = rank; r < 4; ++r)
      if (rows[r][col] != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    int64_t inv = unit_inverse(rows[rank][col], p);
    for (int j = 0; j < n; ++j) rows[rank][j] = rows[rank][j] * inv % p;
    for (int r = 0; r < 4; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      int64_t f = rows[r][col];
      for (int j = 0; j < n; ++j)
        rows[r][j] = mod_reduce(rows[r][j] - f * rows[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

FpVec sub_mod(const FpVec& a, const FpVec& b, int64_t p) {
  FpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod_reduce(a[i] - b[i], p);
  return r;
}

int64_t vec_radix(const FpVec& v, int64_t p) {
  int64_t acc = 0;
  for (int64_t c : v) acc = acc * p + c;
  return acc;
}

bool next_vec(FpVec& v, int64_t p) {
  for (size_t i = v.size(); i-- > 0;) {
    if (++v[i] < p) return true;
    v[i] = 0;
  }
  return false;
}

}  // namespace

Dip5Voltage::Dip5Voltage(int64_t p_, int n_, std::array<FpVec, 5> z)
    : p(p_), n(n_), zeta(std::move(z)) {
  if (n < 1 || n > 4 || !is_prime(p))
    throw std::invalid_argument("Dip5Voltage: need a prime and rank 1..4");
  for (auto& v : zeta) {
    if (static_cast<int>(v.size()) != n)
      throw std::invalid_argument("Dip5Voltage: component count mismatch");
    for (int64_t& c : v) c = mod_reduce(c, p);
  }
  for (int64_t c : zeta[0])
    if (c != 0)
      throw std::invalid_argument("Dip5Voltage: tree arc voltage must vanish");
  if (rank_of(p, zeta, n) != n)
    throw NotSpanning("Dip5Voltage: cotree voltages do not span");
}

std::string Dip5Voltage::to_json() const {
  nlohmann::ordered_json j;
  j["p"] = p;
  j["n"] = n;
  j["zeta"] = zeta;
  return j.dump();
}

Dip5Voltage Dip5Voltage::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::array<FpVec, 5> z;
  auto zj = j.at("zeta");
  if (zj.size() != 5)
    throw std::invalid_argument("Dip5Voltage: zeta must list five arcs");
  for (size_t i = 0; i < 5; ++i) z[i] = zj[i].get<FpVec>();
  return Dip5Voltage(j.at("p").get<int64_t>(), j.at("n").get<int>(), std::move(z));
}

DipAut DipAut::identity() {
  DipAut a;
  std::iota(a.pi.begin(), a.pi.end(), 0);
  a.swap = false;
  return a;
}

DipAut DipAut::from_cycle(std::initializer_list<int> cycle, bool swap) {
  DipAut a = identity();
  std::vector<int> c(cycle);
  for (size_t i = 0; i < c.size(); ++i) a.pi[c[i]] = c[(i + 1) % c.size()];
  a.swap = swap;
  return a;
}

DipAut DipAut::then(const DipAut& o) const {
  DipAut r;
  for (int i = 0; i < 5; ++i) r.pi[i] = o.pi[pi[i]];
  r.swap = swap != o.swap;
  return r;
}

DipAut DipAut::inverse() const {
  DipAut r;
  for (int i = 0; i < 5; ++i) r.pi[pi[i]] = i;
  r.swap = swap;
  return r;
}

bool DipAut::operator<(const DipAut& o) const {
  if (swap != o.swap) return swap < o.swap;
  return pi < o.pi;
}

DipAut dip_alpha() { return DipAut::from_cycle({0, 1, 2, 3, 4}, false); }
DipAut dip_beta() { return DipAut::from_cycle({0, 1, 3, 2}, false); }
DipAut dip_gamma() { return DipAut::from_cycle({}, true); }
DipAut dip_delta() { return DipAut::from_cycle({0, 1, 2}, false); }
DipAut dip_epsilon() { return DipAut::from_cycle({0, 1, 4, 3}, false); }

std::vector<DipAut> all_dip_auts() {
  std::vector<DipAut> out;
  out.reserve(240);
  for (int swap = 0; swap < 2; ++swap) {
    std::array<int, 5> pi;
    std::iota(pi.begin(), pi.end(), 0);
    do {
      DipAut a;
      a.pi = pi;
      a.swap = swap != 0;
      out.push_back(a);
    } while (std::next_permutation(pi.begin(), pi.end()));
  }
  return out;
}

int64_t derived_vertex(const Dip5Voltage& z, int side, const FpVec& x) {
  int64_t vol = 1;
  for (int i = 0; i < z.n; ++i) vol *= z.p;
  return side * vol + vec_radix(x, z.p);
}

Graph derived(const Dip5Voltage& z) {
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (z.zeta[i] == z.zeta[j])
        throw std::invalid_argument(
            "derived: repeated arc voltages give parallel edges");
  int64_t vol = 1;
  for (int i = 0; i < z.n; ++i) vol *= z.p;
  if (2 * vol > 1000000) throw TooLarge("derived: cover beyond the size limit");

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(5 * vol));
  FpVec x(z.n, 0);
  int64_t xi = 0;
  do {
    for (int arc = 0; arc < 5; ++arc) {
      FpVec y(z.n);
      for (int i = 0; i < z.n; ++i) y[i] = mod_reduce(x[i] + z.zeta[arc][i], z.p);
      edges.emplace_back(static_cast<int>(xi),
                         static_cast<int>(vol + vec_radix(y, z.p)));
    }
    ++xi;
  } while (next_vec(x, z.p));
  return Graph::build(static_cast<int>(2 * vol), edges);
}

std::array<FpVec, 4> fundamental_voltages(const Dip5Voltage& z) {
  return {z.zeta[1], z.zeta[2], z.zeta[3], z.zeta[4]};
}

std::array<FpVec, 4> walk_images(const Dip5Voltage& z, const DipAut& s) {
  std::array<FpVec, 4> out;
  for (int k = 0; k < 4; ++k) {
    const FpVec& head = z.zeta[s.pi[k + 1]];
    const FpVec& tail = z.zeta[s.pi[0]];
    out[k] = s.swap ? sub_mod(tail, head, z.p) : sub_mod(head, tail, z.p);
  }
  return out;
}

std::array<std::pair<FpVec, FpVec>, 4> induced_pairs(const Dip5Voltage& z,
                                                     const DipAut& s) {
  auto src = fundamental_voltages(z);
  auto tgt = walk_images(z, s);
  std::array<std::pair<FpVec, FpVec>, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = {src[k], tgt[k]};
  return out;
}

std::optional<FpMatrix> lifts(const Dip5Voltage& z, const DipAut& s) {
  auto src = fundamental_voltages(z);
  auto tgt = walk_images(z, s);
  return solve_extension(z.p, {src.begin(), src.end()}, {tgt.begin(), tgt.end()});
}

Perm lift_to_cover(const Dip5Voltage& z, const DipAut& s, const FpMatrix& m) {
  auto src = fundamental_voltages(z);
  auto tgt = walk_images(z, s);
  for (int k = 0; k < 4; ++k)
    if (m.apply(src[k]) != tgt[k])
      throw NotALift("lift_to_cover: matrix violates the lifting equations");

  int64_t vol = 1;
  for (int i = 0; i < z.n; ++i) vol *= z.p;
  const FpVec& shift = z.zeta[s.pi[0]];
  std::vector<int> img(static_cast<size_t>(2 * vol));
  FpVec x(z.n, 0);
  int64_t xi = 0;
  do {
    FpVec mx = m.apply(x);
    FpVec mx_shifted(z.n);
    for (int i = 0; i < z.n; ++i)
      mx_shifted[i] = mod_reduce(mx[i] + shift[i], z.p);
    int64_t a = vec_radix(mx, z.p);
    int64_t b = vec_radix(mx_shifted, z.p);
    if (!s.swap) {
      img[xi] = static_cast<int>(a);
      img[vol + xi] = static_cast<int>(vol + b);
    } else {
      img[xi] = static_cast<int>(vol + b);
      img[vol + xi] = static_cast<int>(a);
    }
    ++xi;
  } while (next_vec(x, z.p));
  return Perm(std::move(img));
}

int64_t LiftingGroup::vertex_fixing_order() const {
  return std::count_if(members.begin(), members.end(),
                       [](const DipAut& a) { return !a.swap; });
}

LiftingGroup lifting_group(const Dip5Voltage& z) {
  LiftingGroup lg;
  for (const DipAut& s : all_dip_auts())
    if (lifts(z, s)) lg.members.push_back(s);

  // arc transitivity on the base: the arc permutations act transitively and
  // some member exchanges the two endpoints
  std::array<char, 5> reach{};
  reach[0] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const DipAut& a : lg.members)
      for (int i = 0; i < 5; ++i)
        if (reach[i] && !reach[a.pi[i]]) {
          reach[a.pi[i]] = 1;
          grew = true;
        }
  }
  bool has_swap = std::any_of(lg.members.begin(), lg.members.end(),
                              [](const DipAut& a) { return a.swap; });
  lg.arc_transitive =
      has_swap && std::all_of(reach.begin(), reach.end(), [](char c) { return c; });
  return lg;
}

std::optional<std::pair<DipAut, FpMatrix>> covers_isomorphic(
    const Dip5Voltage& z1, const Dip5Voltage& z2) {
  if (z1.p != z2.p || z1.n != z2.n)
    throw std::invalid_argument("covers_isomorphic: mismatched voltage groups");
  auto src = fundamental_voltages(z1);
  std::vector<FpVec> sources(src.begin(), src.end());
  for (const DipAut& d : all_dip_auts()) {
    auto tgt = walk_images(z2, d);
    auto eta = solve_extension(z1.p, sources, {tgt.begin(), tgt.end()});
    if (eta) return std::make_pair(d, std::move(*eta));
  }
  return std::nullopt;
}

Dip5Voltage canonical_form(const Dip5Voltage& z) {
  // columns of the pivot matrix: the first n independent cotree voltages,
  // tracked with a mutually reduced echelon basis
  std::vector<FpVec> pivots;
  std::vector<FpVec> rref;
  std::vector<int> leads;
  for (int arc = 1; arc < 5 && static_cast<int>(pivots.size()) < z.n; ++arc) {
    FpVec v = z.zeta[arc];
    for (size_t r = 0; r < rref.size(); ++r) {
      int64_t f = v[leads[r]];
      if (f == 0) continue;
      for (int j = 0; j < z.n; ++j) v[j] = mod_reduce(v[j] - f * rref[r][j], z.p);
    }
    int lead = 0;
    while (lead < z.n && v[lead] == 0) ++lead;
    if (lead == z.n) continue;  // dependent on earlier arcs
    int64_t inv = unit_inverse(v[lead], z.p);
    for (int j = 0; j < z.n; ++j) v[j] = v[j] * inv % z.p;
    for (size_t r = 0; r < rref.size(); ++r) {
      int64_t f = rref[r][lead];
      if (f == 0) continue;
      for (int j = 0; j < z.n; ++j)
        rref[r][j] = mod_reduce(rref[r][j] - f * v[j], z.p);
    }
    rref.push_back(std::move(v));
    leads.push_back(lead);
    pivots.push_back(z.zeta[arc]);
  }
  FpMatrix basis(z.p, z.n);
  for (int c = 0; c < z.n; ++c)
    for (int r = 0; r < z.n; ++r) basis.at(r, c) = pivots[c][r];
  FpMatrix m = *basis.inverse();
  std::array<FpVec, 5> out;
  for (int arc = 0; arc < 5; ++arc) out[arc] = m.apply(z.zeta[arc]);
  return Dip5Voltage(z.p, z.n, std::move(out));
}

Dip5Voltage family_voltage(const FamilyId& id) {
  int64_t p = id.parameter;
  if (!is_prime(p))
    throw UnsupportedParameter("family_voltage: parameter must be a prime");
  auto order5 = [&](int64_t modulus) {
    if (p == 5) return static_cast<int64_t>(1);
    auto ell = element_of_order(5, modulus);
    if (!ell) throw NoOrder5Element("family_voltage: no order-5 unit");
    return *ell;
  };
  switch (id.family) {
    case Family::CGD1_P2: {
      int64_t ell = order5(p);
      int64_t inv_lp1 = unit_inverse(ell + 1, p);
      int64_t inv_l = unit_inverse(ell, p);
      return Dip5Voltage(p, 2,
                         {FpVec{0, 0}, FpVec{1, 0},
                          FpVec{mod_reduce(ell * inv_lp1, p), inv_l},
                          FpVec{ell, inv_lp1}, FpVec{0, 1}});
    }
    case Family::CGD2_P2: {
      if (p == 2) throw UnsupportedParameter("family_voltage: needs an odd prime");
      if (p == 5) throw NoSquareRootOf5("family_voltage: 5 is zero mod 5");
      auto lambda = sqrt_of_five(p);
      if (!lambda) throw NoSquareRootOf5("family_voltage: 5 has no root mod p");
      int64_t i = mod_reduce(unit_inverse(2, p) * (1 + *lambda), p);
      return Dip5Voltage(
          p, 2, {FpVec{0, 0}, FpVec{1, 0}, FpVec{i, 1}, FpVec{1, i}, FpVec{0, 1}});
    }
    case Family::CGD_P3: {
      int64_t ell = order5(p);
      return Dip5Voltage(p, 3,
                         {FpVec{0, 0, 0}, FpVec{1, 0, 0}, FpVec{0, 1, 0},
                          FpVec{mod_reduce(-ell * ell, p), mod_reduce(-ell, p),
                                mod_reduce(-pow_mod(ell, 4, p), p)},
                          FpVec{0, 0, 1}});
    }
    case Family::CGD_P4:
      return Dip5Voltage(p, 4,
                         {FpVec{0, 0, 0, 0}, FpVec{1, 0, 0, 0}, FpVec{0, 1, 0, 0},
                          FpVec{0, 0, 1, 0}, FpVec{0, 0, 0, 1}});
    default:
      throw UnsupportedParameter("family_voltage: not a dipole cover family");
  }
}

namespace {

// Candidate matched families for a classified cover.
std::vector<FamilyId> cover_family_candidates(int64_t p, int n) {
  std::vector<FamilyId> out;
  if (n == 2) {
    if (p == 5 || (element_of_order(5, p).has_value()))
      out.push_back({Family::CGD1_P2, p});
    if (p != 2 && p != 5 && sqrt_of_five(p).has_value())
      out.push_back({Family::CGD2_P2, p});
  } else if (n == 3) {
    if (p == 5 || element_of_order(5, p).has_value())
      out.push_back({Family::CGD_P3, p});
  } else if (n == 4) {
    out.push_back({Family::CGD_P4, p});
  }
  return out;
}

std::optional<FamilyId> match_cover_family(const Dip5Voltage& z) {
  for (const FamilyId& id : cover_family_candidates(z.p, z.n)) {
    Dip5Voltage fv = family_voltage(id);
    if (covers_isomorphic(z, fv)) return id;
  }
  return std::nullopt;
}

CoverClass make_class(const Dip5Voltage& rep) {
  CoverClass c;
  c.representative = canonical_form(rep);
  LiftingGroup lg = lifting_group(c.representative);
  c.lifting_group_order = lg.order();
  c.arc_transitive = lg.arc_transitive;
  c.matched_family = match_cover_family(c.representative);
  return c;
}

// All 24 five-cycles on the arc labels, swap = 0.
std::vector<std::array<int, 5>> five_cycles() {
  std::vector<std::array<int, 5>> out;
  std::array<int, 4> rest{1, 2, 3, 4};
  std::sort(rest.begin(), rest.end());
  do {
    std::array<int, 5> pi;
    // cycle 0 -> rest[0] -> rest[1] -> rest[2] -> rest[3] -> 0
    pi[0] = rest[0];
    pi[rest[0]] = rest[1];
    pi[rest[1]] = rest[2];
    pi[rest[2]] = rest[3];
    pi[rest[3]] = 0;
    out.push_back(pi);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

}  // namespace

std::vector<CoverClass> classify(int64_t p, int n, ClassifyStrategy strategy) {
  if (n < 2 || n > 4)
    throw std::invalid_argument("classify: rank must be 2, 3 or 4");
  if (!is_prime(p)) throw std::invalid_argument("classify: p must be a prime");

  if (strategy == ClassifyStrategy::Analytic) {
    std::vector<CoverClass> out;
    for (const FamilyId& id : cover_family_candidates(p, n)) {
      Dip5Voltage fv = family_voltage(id);
      bool dup = std::any_of(out.begin(), out.end(), [&](const CoverClass& c) {
        return covers_isomorphic(c.representative, fv).has_value();
      });
      if (!dup) out.push_back(make_class(fv));
    }
    return out;
  }

  // brute enumeration over pinned-pivot canonical assignments
  if ((n == 2 && p > 50) || (n == 3 && p > 23) || (n == 4 && p > 50))
    throw BudgetExceeded("classify: enumeration volume beyond the guard");

  auto cycles = five_cycles();
  std::vector<Dip5Voltage> reps;

  // pivot patterns: positions of the n pinned arcs among the four cotree arcs
  std::vector<std::vector<int>> patterns;
  std::vector<int> mask(4, 0);
  std::fill(mask.end() - n, mask.end(), 1);
  std::sort(mask.begin(), mask.end());
  do {
    std::vector<int> pat;
    for (int i = 0; i < 4; ++i)
      if (mask[i]) pat.push_back(i);
    patterns.push_back(pat);
  } while (std::next_permutation(mask.begin(), mask.end()));
  std::sort(patterns.begin(), patterns.end());

  for (const auto& pat : patterns) {
    std::vector<int> rank_before(4, 0);  // pivots strictly before each slot
    {
      int r = 0;
      for (int slot = 0; slot < 4; ++slot) {
        rank_before[slot] = r;
        if (std::find(pat.begin(), pat.end(), slot) != pat.end()) ++r;
      }
    }
    std::vector<int> free_slots;
    int free_dims = 0;
    for (int slot = 0; slot < 4; ++slot)
      if (std::find(pat.begin(), pat.end(), slot) == pat.end()) {
        free_slots.push_back(slot);
        free_dims += rank_before[slot];
      }

    std::vector<int64_t> counter(free_dims, 0);
    bool more = true;
    while (more) {
      // assemble the four cotree voltages
      int64_t w[4][4] = {};
      {
        int r = 0;
        for (int pslot : pat) w[pslot][r++] = 1;
        int c = 0;
        for (int fslot : free_slots)
          for (int d = 0; d < rank_before[fslot]; ++d) w[fslot][d] = counter[c++];
      }

      // distinctness filter: an arc-transitive assignment has five pairwise
      // distinct voltages (a lifted five-cycle propagates any equality to
      // all arcs, collapsing the span)
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i) {
        bool zero = true;
        for (int d = 0; d < n; ++d) zero = zero && w[i][d] == 0;
        ok = !zero;
        for (int j = i + 1; j < 4 && ok; ++j) {
          bool eq = true;
          for (int d = 0; d < n; ++d) eq = eq && w[i][d] == w[j][d];
          ok = !eq;
        }
      }

      // cheap necessary condition: some five-cycle on the arcs must lift
      if (ok) {
        bool some_cycle = false;
        for (const auto& pi : cycles) {
          // targets t_k = zeta[pi[k+1]] - zeta[pi[0]], with zeta[0] = 0
          int64_t t[4][4];
          for (int k = 0; k < 4; ++k)
            for (int d = 0; d < n; ++d) {
              int64_t head = pi[k + 1] == 0 ? 0 : w[pi[k + 1] - 1][d];
              int64_t tail = pi[0] == 0 ? 0 : w[pi[0] - 1][d];
              t[k][d] = mod_reduce(head - tail, p);
            }
          // on pinned slots the sources are unit vectors, so the matrix
          // columns are the corresponding targets
          int64_t m[4][4];
          for (size_t c = 0; c < pat.size(); ++c)
            for (int d = 0; d < n; ++d) m[d][c] = t[pat[c]][d];
          // verify the dependent slots
          bool fits = true;
          for (int fslot : free_slots) {
            for (int d = 0; d < n && fits; ++d) {
              int64_t acc = 0;
              for (int c = 0; c < n; ++c) acc += m[d][c] * w[fslot][c] % p;
              fits = mod_reduce(acc, p) == t[fslot][d];
            }
            if (!fits) break;
          }
          if (!fits) continue;
          // invertibility
          FpMatrix fm(p, n);
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) fm.at(r, c) = mod_reduce(m[r][c], p);
          if (fm.det() != 0) { some_cycle = true; break; }
        }
        ok = some_cycle;
      }

      if (ok) {
        std::array<FpVec, 5> zeta;
        zeta[0] = FpVec(n, 0);
        for (int i = 0; i < 4; ++i) {
          zeta[i + 1] = FpVec(n);
          for (int d = 0; d < n; ++d) zeta[i + 1][d] = w[i][d];
        }
        Dip5Voltage z(p, n, std::move(zeta));
        if (lifting_group(z).arc_transitive) {
          bool dup = std::any_of(reps.begin(), reps.end(), [&](const Dip5Voltage& r) {
            return covers_isomorphic(r, z).has_value();
          });
          if (!dup) reps.push_back(std::move(z));
        }
      }

      // advance the free-value counter
      more = false;
      for (size_t i = counter.size(); i-- > 0;) {
        if (++counter[i] < p) { more = true; break; }
        counter[i] = 0;
      }
      if (counter.empty()) more = false;
    }
  }

  std::vector<CoverClass> out;
  for (const Dip5Voltage& r : reps) out.push_back(make_class(r));
  return out;
}

}  // namespace p2pg
