#include "p2pg/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace p2pg {

namespace {

int64_t pick_order5(int64_t p, std::optional<int64_t> override_ell,
                    int64_t modulus) {
  if (override_ell) {
    int64_t ell = mod_reduce(*override_ell, modulus);
    bool ok = (p == 5 && modulus == 5)
                  ? ell == 1
                  : (std::gcd(ell, modulus) == 1 &&
                     multiplicative_order(ell, modulus) == 5);
    if (!ok)
      throw UnsupportedParameter("family: override is not an order-5 unit");
    return ell;
  }
  if (p == 5 && modulus == 5) return 1;
  auto ell = element_of_order(5, modulus);
  if (!ell)
    throw NoOrder5Element("family: no unit of multiplicative order 5");
  return *ell;
}

std::vector<GDElement> reflections(const GroupSpec& g,
                                   const std::vector<std::vector<int64_t>>& vs) {
  std::vector<GDElement> s;
  for (const auto& v : vs) s.push_back(g.element(v, true));
  return s;
}

std::vector<int64_t> unit_vec(size_t rank, size_t i) {
  std::vector<int64_t> v(rank, 0);
  v[i] = 1;
  return v;
}

}  // namespace

Graph cayley(const GroupSpec& g, const std::vector<GDElement>& s) {
  for (const GDElement& e : s) {
    if (e.is_identity()) throw IdentityInS("cayley: identity in connection set");
    bool has_inverse = std::any_of(s.begin(), s.end(), [&](const GDElement& f) {
      return f == inverse(e);
    });
    if (!has_inverse)
      throw NotSymmetricSet("cayley: connection set not closed under inverses");
  }
  std::vector<GDElement> elems = elements(g);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(elems.size() * s.size() / 2 + 1);
  for (size_t i = 0; i < elems.size(); ++i)
    for (const GDElement& e : s) {
      int64_t j = element_index(g, compose(e, elems[i]));
      if (static_cast<int64_t>(i) < j)
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      else if (j < static_cast<int64_t>(i))
        edges.emplace_back(static_cast<int>(j), static_cast<int>(i));
    }
  return Graph::build(static_cast<int>(elems.size()), edges);
}

NamedGraph family(const FamilyId& id, std::optional<int64_t> ell_override,
                  std::optional<int64_t> lambda_override) {
  int64_t par = id.parameter;
  switch (id.family) {
    case Family::K6: {
      // built directly; the group field is an order-6 placeholder and the
      // connection set stays empty
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) edges.emplace_back(i, j);
      return NamedGraph{id, GroupSpec({3}), {}, Graph::build(6, edges), {}, {}, {}};
    }
    case Family::QN:
    case Family::FQN: {
      if (par < 2 || par > 19)
        throw UnsupportedParameter("family: cube dimension out of range");
      size_t rank = static_cast<size_t>(par) - 1;
      GroupSpec g(std::vector<int64_t>(rank, 2));
      std::vector<GDElement> s;
      for (size_t i = 0; i < rank; ++i) s.push_back(g.element(unit_vec(rank, i), false));
      s.push_back(g.element(std::vector<int64_t>(rank, 0), true));
      if (id.family == Family::FQN)
        s.push_back(g.element(std::vector<int64_t>(rank, 1), true));
      NamedGraph ng{id, g, s, cayley(g, s), elements(g), {}, {}};
      return ng;
    }
    default:
      break;
  }

  if (par < 2 || !is_prime(par))
    throw UnsupportedParameter("family: parameter must be a prime");
  int64_t p = par;

  switch (id.family) {
    case Family::CD_P:
    case Family::CD_P2: {
      int64_t modulus = id.family == Family::CD_P ? p : p * p;
      int64_t ell = pick_order5(p, ell_override, modulus);
      GroupSpec g({modulus});
      std::vector<std::vector<int64_t>> vs;
      int64_t e = 0;
      for (int i = 0; i < 5; ++i) {
        vs.push_back({e});
        e = mod_reduce(e + pow_mod(ell, i, modulus), modulus);
      }
      auto s = reflections(g, vs);
      NamedGraph ng{id, g, s, cayley(g, s), elements(g), ell, {}};
      return ng;
    }
    case Family::CGD1_P2: {
      int64_t ell = pick_order5(p, ell_override, p);
      int64_t inv_lp1 = unit_inverse(ell + 1, p);
      int64_t inv_l = unit_inverse(ell, p);
      GroupSpec g({p, p});
      std::vector<std::vector<int64_t>> vs = {
          {0, 0},
          {1, 0},
          {mod_reduce(ell * inv_lp1, p), inv_l},
          {ell, inv_lp1},
          {0, 1}};
      auto s = reflections(g, vs);
      NamedGraph ng{id, g, s, cayley(g, s), elements(g), ell, {}};
      return ng;
    }
    case Family::CGD2_P2: {
      if (p == 2) throw UnsupportedParameter("family: needs an odd prime");
      if (p == 5) throw NoSquareRootOf5("family: 5 is zero mod 5");
      int64_t lambda;
      if (lambda_override) {
        lambda = mod_reduce(*lambda_override, p);
        if (mod_reduce(lambda * lambda, p) != mod_reduce(5, p))
          throw UnsupportedParameter("family: override is not a root of 5");
      } else {
        auto l = sqrt_of_five(p);
        if (!l) throw NoSquareRootOf5("family: 5 has no square root mod p");
        lambda = *l;
      }
      int64_t i = mod_reduce(unit_inverse(2, p) * (1 + lambda), p);
      GroupSpec g({p, p});
      std::vector<std::vector<int64_t>> vs = {
          {0, 0}, {1, 0}, {i, 1}, {1, i}, {0, 1}};
      auto s = reflections(g, vs);
      NamedGraph ng{id, g, s, cayley(g, s), elements(g), {}, lambda};
      return ng;
    }
    case Family::CGD_P3: {
      int64_t ell = pick_order5(p, ell_override, p);
      GroupSpec g({p, p, p});
      std::vector<std::vector<int64_t>> vs = {
          {0, 0, 0},
          {1, 0, 0},
          {0, 1, 0},
          {mod_reduce(-ell * ell, p), mod_reduce(-ell, p),
           mod_reduce(-pow_mod(ell, 4, p), p)},
          {0, 0, 1}};
      auto s = reflections(g, vs);
      NamedGraph ng{id, g, s, cayley(g, s), elements(g), ell, {}};
      return ng;
    }
    case Family::CGD_P4: {
      GroupSpec g({p, p, p, p});
      std::vector<std::vector<int64_t>> vs = {{0, 0, 0, 0},
                                              {1, 0, 0, 0},
                                              {0, 1, 0, 0},
                                              {0, 0, 1, 0},
                                              {0, 0, 0, 1}};
      auto s = reflections(g, vs);
      NamedGraph ng{id, g, s, cayley(g, s), elements(g), {}, {}};
      return ng;
    }
    default:
      throw UnsupportedParameter("family: unhandled family id");
  }
}

PermGroup normalizer_group(const NamedGraph& ng) {
  switch (ng.id.family) {
    case Family::K6:
    case Family::QN:
    case Family::FQN:
      throw UnsupportedParameter("normalizer_group: needs a GD family");
    default:
      break;
  }
  std::vector<Perm> gens = right_regular(ng.group).generators();
  AutFixingS afs = aut_fixing_s(ng.group, ng.connection);
  for (const GDAut& a : afs.auts) gens.push_back(vertex_action(ng.group, a));
  return PermGroup(ng.graph.vertex_count(), std::move(gens));
}

int64_t connection_stabilizer_order(const NamedGraph& ng) {
  return aut_fixing_s(ng.group, ng.connection).order();
}

std::string family_name(const FamilyId& id) {
  auto num = [](int64_t v) { return std::to_string(v); };
  switch (id.family) {
    case Family::K6: return "K6";
    case Family::QN: return "Q" + num(id.parameter);
    case Family::FQN: return "FQ" + num(id.parameter);
    case Family::CD_P: return "CD(" + num(id.parameter) + ")";
    case Family::CD_P2: return "CD(" + num(id.parameter) + "^2)";
    case Family::CGD1_P2: return "CGD1(" + num(id.parameter) + "^2)";
    case Family::CGD2_P2: return "CGD2(" + num(id.parameter) + "^2)";
    case Family::CGD_P3: return "CGD(" + num(id.parameter) + "^3)";
    case Family::CGD_P4: return "CGD(" + num(id.parameter) + "^4)";
  }
  throw UnsupportedParameter("family_name: unknown family");
}

FamilyId parse_family(const std::string& text, std::optional<int64_t> parameter) {
  auto parse_int = [](const std::string& t) -> std::optional<int64_t> {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return v;
  };

  if (text == "K6") return {Family::K6, 0};
  if (text.size() > 1 && text[0] == 'Q') {
    auto n = parse_int(text.substr(1));
    if (n) return {Family::QN, *n};
  }
  if (text.size() > 2 && text.rfind("FQ", 0) == 0) {
    auto n = parse_int(text.substr(2));
    if (n) return {Family::FQN, *n};
  }

  auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw UnsupportedParameter("parse_family: unrecognized id: " + text);
  std::string base = text.substr(0, open);
  std::string inner = text.substr(open + 1, text.size() - open - 2);

  int exponent = 1;
  std::string radix = inner;
  auto caret = inner.find('^');
  if (caret != std::string::npos) {
    radix = inner.substr(0, caret);
    auto e = parse_int(inner.substr(caret + 1));
    if (!e || *e < 1 || *e > 4)
      throw UnsupportedParameter("parse_family: bad exponent in " + text);
    exponent = static_cast<int>(*e);
  }

  int64_t par;
  if (radix == "p") {
    if (!parameter)
      throw UnsupportedParameter("parse_family: generic id needs --p");
    par = *parameter;
  } else {
    auto v = parse_int(radix);
    if (!v) throw UnsupportedParameter("parse_family: bad parameter in " + text);
    par = *v;
    if (parameter && *parameter != par)
      throw UnsupportedParameter("parse_family: conflicting parameters");
  }

  if (base == "CD" && exponent == 1) return {Family::CD_P, par};
  if (base == "CD" && exponent == 2) return {Family::CD_P2, par};
  if (base == "CGD1" && exponent == 2) return {Family::CGD1_P2, par};
  if (base == "CGD2" && exponent == 2) return {Family::CGD2_P2, par};
  if (base == "CGD" && exponent == 3) return {Family::CGD_P3, par};
  if (base == "CGD" && exponent == 4) return {Family::CGD_P4, par};
  throw UnsupportedParameter("parse_family: unrecognized id: " + text);
}

}  // namespace p2pg
