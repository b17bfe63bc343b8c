#pragma once

#include "p2pg/algebra.hpp"
#include "p2pg/permgrp.hpp"

namespace p2pg {

struct SpecMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotGenerating : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Element (v, flip) of the generalized dihedral group over an abelian H:
/// (v, e) * (w, f) = (v + (-1)^e w, e xor f). Every (v, 1) is an involution.
struct GDElement {
  AbVector h_part;
  bool flip = false;

  GDElement() = default;
  GDElement(AbVector v, bool f) : h_part(std::move(v)), flip(f) {}

  bool is_identity() const { return !flip && h_part.is_zero(); }
  bool operator==(const GDElement& o) const {
    return flip == o.flip && h_part == o.h_part;
  }
  bool operator<(const GDElement& o) const {
    if (flip != o.flip) return flip < o.flip;
    return h_part < o.h_part;
  }
};

/// The generalized dihedral group of the abelian group described by `spec`;
/// order is twice the abelian order.
struct GroupSpec {
  std::shared_ptr<const AbelianSpec> spec;

  explicit GroupSpec(std::vector<int64_t> moduli)
      : spec(std::make_shared<AbelianSpec>(std::move(moduli))) {}

  int64_t abelian_order() const { return spec->order(); }
  int64_t order() const { return 2 * spec->order(); }
  size_t rank() const { return spec->rank(); }

  GDElement element(std::vector<int64_t> comps, bool flip) const {
    return GDElement(AbVector(spec, std::move(comps)), flip);
  }
  GDElement identity() const {
    return element(std::vector<int64_t>(spec->rank(), 0), false);
  }
  bool operator==(const GroupSpec& o) const { return *spec == *o.spec; }
};

GDElement compose(const GDElement& x, const GDElement& y);
GDElement inverse(const GDElement& x);

/// All group elements in a fixed order: the flip-0 block then the flip-1
/// block, each sorted by the mixed-radix value of the abelian part.
std::vector<GDElement> elements(const GroupSpec& g);

/// Dense index of an element under the `elements` order.
int64_t element_index(const GroupSpec& g, const GDElement& x);

/// Right regular representation as a permutation group on elements(g).
PermGroup right_regular(const GroupSpec& g);

/// Group automorphism of GD_H in affine form: the abelian part maps through
/// an automorphism of H and flip-1 elements pick up a translation:
/// (v, 0) -> (Mv, 0) and (v, 1) -> (Mv + t, 1).
struct GDAut {
  // For H = Z_p^n the action is the matrix `mat`; for cyclic H it is the
  // unit multiplier `unit`.
  std::optional<FpMatrix> mat;
  std::optional<int64_t> unit;
  AbVector translation;

  AbVector apply_h(const AbVector& v) const;
  GDElement apply(const GDElement& x) const;
};

/// Automorphisms of GD_H fixing the five-involution connection set S
/// setwise, found by enumerating how S may be permuted and solving for the
/// abelian-part map on span differences. H must be Z_p^n or Z_{p^k}.
struct AutFixingS {
  std::vector<GDAut> auts;  // the survivors, deduplicated
  int64_t order() const { return static_cast<int64_t>(auts.size()); }
};

AutFixingS aut_fixing_s(const GroupSpec& g, const std::vector<GDElement>& s);

/// Vertex permutation of a GD automorphism under the elements(g) indexing.
Perm vertex_action(const GroupSpec& g, const GDAut& a);

}  // namespace p2pg
