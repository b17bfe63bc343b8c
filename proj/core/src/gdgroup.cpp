#include "p2pg/gdgroup.hpp"

#include <algorithm>
#include <numeric>

namespace p2pg {

namespace {
constexpr int64_t kElementLimit = 1000000;

void check_same_spec(const GDElement& x, const GDElement& y) {
  if (!(*x.h_part.spec == *y.h_part.spec))
    throw SpecMismatch("GD elements live in different groups");
}
}  // namespace

GDElement compose(const GDElement& x, const GDElement& y) {
  check_same_spec(x, y);
  AbVector v = x.flip ? x.h_part - y.h_part : x.h_part + y.h_part;
  return GDElement(std::move(v), x.flip != y.flip);
}

GDElement inverse(const GDElement& x) {
  return x.flip ? x : GDElement(-x.h_part, false);
}

std::vector<GDElement> elements(const GroupSpec& g) {
  int64_t h = g.abelian_order();
  if (2 * h > kElementLimit) throw TooLarge("group beyond the element limit");
  std::vector<GDElement> out;
  out.reserve(static_cast<size_t>(2 * h));
  const auto& moduli = g.spec->moduli;
  for (int flip = 0; flip < 2; ++flip) {
    std::vector<int64_t> c(moduli.size(), 0);
    for (int64_t v = 0; v < h; ++v) {
      out.push_back(g.element(c, flip != 0));
      for (size_t i = moduli.size(); i-- > 0;) {
        if (++c[i] < moduli[i]) break;
        c[i] = 0;
      }
    }
  }
  return out;
}

int64_t element_index(const GroupSpec& g, const GDElement& x) {
  return (x.flip ? g.abelian_order() : 0) + x.h_part.radix_value();
}

PermGroup right_regular(const GroupSpec& g) {
  std::vector<GDElement> elems = elements(g);
  int n = static_cast<int>(elems.size());
  std::vector<GDElement> gens;
  for (size_t i = 0; i < g.rank(); ++i) {
    std::vector<int64_t> c(g.rank(), 0);
    c[i] = 1;
    gens.push_back(g.element(std::move(c), false));
  }
  gens.push_back(g.element(std::vector<int64_t>(g.rank(), 0), true));

  std::vector<Perm> perms;
  for (const GDElement& t : gens) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i)
      img[i] = static_cast<int>(element_index(g, compose(elems[i], t)));
    perms.emplace_back(std::move(img));
  }
  return PermGroup(n, std::move(perms));
}

AbVector GDAut::apply_h(const AbVector& v) const {
  if (mat) {
    FpVec r = mat->apply(v.comps);
    return AbVector(v.spec, std::move(r));
  }
  return v.scaled(*unit);
}

GDElement GDAut::apply(const GDElement& x) const {
  AbVector v = apply_h(x.h_part);
  if (x.flip) v = v + translation;
  return GDElement(std::move(v), x.flip);
}

AutFixingS aut_fixing_s(const GroupSpec& g, const std::vector<GDElement>& s) {
  size_t k = s.size();
  if (k == 0 || k > 8)
    throw std::invalid_argument("aut_fixing_s: unsupported connection set size");
  for (const GDElement& e : s)
    if (!e.flip)
      throw std::invalid_argument("aut_fixing_s: connection set must be reflections");

  const auto& moduli = g.spec->moduli;
  bool matrix_mode =
      moduli.size() > 1 || (moduli.size() == 1 && is_prime(moduli[0]));
  if (matrix_mode)
    for (int64_t m : moduli)
      if (m != moduli[0] || !is_prime(m))
        throw std::invalid_argument("aut_fixing_s: H must be Z_p^n or cyclic");

  std::vector<AbVector> v;
  for (const GDElement& e : s) v.push_back(e.h_part);
  std::vector<AbVector> diffs;
  for (size_t i = 1; i < k; ++i) diffs.push_back(v[i] - v[0]);

  // connectedness: the differences must generate H
  if (matrix_mode) {
    std::vector<FpVec> src;
    for (const auto& d : diffs) src.push_back(d.comps);
    std::vector<FpVec> tgt = src;
    try {
      solve_extension(moduli[0], src, tgt);
    } catch (const SourcesDoNotSpan&) {
      throw NotGenerating("aut_fixing_s: connection set does not generate");
    }
  } else {
    int64_t m = moduli[0], acc = m;
    for (const auto& d : diffs) acc = std::gcd(acc, d.comps[0]);
    if (acc != 1) throw NotGenerating("aut_fixing_s: connection set does not generate");
  }

  AutFixingS result;
  std::vector<size_t> pi(k);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    std::optional<GDAut> cand;
    if (matrix_mode) {
      int64_t p = moduli[0];
      std::vector<FpVec> src, tgt;
      for (size_t i = 1; i < k; ++i) {
        src.push_back(diffs[i - 1].comps);
        tgt.push_back((v[pi[i]] - v[pi[0]]).comps);
      }
      auto m = solve_extension(p, src, tgt);
      if (!m) continue;
      GDAut a;
      a.mat = std::move(*m);
      a.translation = v[pi[0]] - a.apply_h(v[0]);
      cand = std::move(a);
    } else {
      int64_t m = moduli[0];
      int64_t u = -1;
      for (size_t i = 1; i < k; ++i) {
        int64_t d = diffs[i - 1].comps[0];
        if (std::gcd(d, m) != 1) continue;
        int64_t t = (v[pi[i]] - v[pi[0]]).comps[0];
        u = mod_reduce(t * unit_inverse(d, m), m);
        break;
      }
      if (u < 0 || std::gcd(u, m) != 1) continue;
      bool ok = true;
      for (size_t i = 1; i < k && ok; ++i) {
        int64_t d = diffs[i - 1].comps[0];
        int64_t t = (v[pi[i]] - v[pi[0]]).comps[0];
        ok = mod_reduce(u * d, m) == t;
      }
      if (!ok) continue;
      GDAut a;
      a.unit = u;
      a.translation = v[pi[0]] - v[0].scaled(u);
      cand = std::move(a);
    }

    // the affine map must permute S; forced by construction, checked anyway
    bool permutes = true;
    for (size_t i = 0; i < k && permutes; ++i) {
      GDElement image = cand->apply(s[i]);
      permutes = std::any_of(s.begin(), s.end(),
                             [&](const GDElement& e) { return e == image; });
    }
    if (!permutes) continue;

    bool dup = std::any_of(
        result.auts.begin(), result.auts.end(), [&](const GDAut& a) {
          return a.mat == cand->mat && a.unit == cand->unit &&
                 a.translation == cand->translation;
        });
    if (!dup) result.auts.push_back(std::move(*cand));
  } while (std::next_permutation(pi.begin(), pi.end()));

  return result;
}

Perm vertex_action(const GroupSpec& g, const GDAut& a) {
  std::vector<GDElement> elems = elements(g);
  std::vector<int> img(elems.size());
  for (size_t i = 0; i < elems.size(); ++i)
    img[i] = static_cast<int>(element_index(g, a.apply(elems[i])));
  return Perm(std::move(img));
}

}  // namespace p2pg
