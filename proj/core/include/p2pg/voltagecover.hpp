#pragma once

#include <array>

#include "p2pg/algebra.hpp"
#include "p2pg/constructions.hpp"
#include "p2pg/graphcore.hpp"
#include "p2pg/permgrp.hpp"

namespace p2pg {

struct NotSpanning : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotALift : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Voltage assignment on the five parallel arcs of the two-vertex dipole,
/// over Z_p^n, reduced on the spanning tree: zeta[0] (the tree arc) is zero
/// and the other four voltages span F_p^n.
struct Dip5Voltage {
  int64_t p = 0;
  int n = 0;
  std::array<FpVec, 5> zeta;

  Dip5Voltage() = default;
  Dip5Voltage(int64_t p_, int n_, std::array<FpVec, 5> z);

  bool operator==(const Dip5Voltage& o) const {
    return p == o.p && n == o.n && zeta == o.zeta;
  }

  std::string to_json() const;
  static Dip5Voltage from_json(const std::string& text);
};

/// Automorphism of the dipole: a permutation of the five arcs plus a bit
/// swapping the two endpoints (sending each arc to an inverse arc).
/// Composition law: (pi1, s1)(pi2, s2) = (pi1 pi2, s1 xor s2) with the arc
/// permutations composed left to right.
struct DipAut {
  std::array<int, 5> pi;  // arc i -> arc pi[i]
  bool swap = false;

  static DipAut identity();
  static DipAut from_cycle(std::initializer_list<int> cycle, bool swap);
  DipAut then(const DipAut& o) const;
  DipAut inverse() const;
  bool operator==(const DipAut& o) const { return pi == o.pi && swap == o.swap; }
  bool operator<(const DipAut& o) const;
};

/// The named dipole automorphisms used throughout: a five-cycle, a
/// four-cycle, the end swap, a three-cycle and a second four-cycle on the
/// arc labels.
DipAut dip_alpha();
DipAut dip_beta();
DipAut dip_gamma();
DipAut dip_delta();
DipAut dip_epsilon();

/// All 240 dipole automorphisms in lexicographic (swap, pi) order.
std::vector<DipAut> all_dip_auts();

/// Derived cover of the dipole: vertices {u, v} x F_p^n, with (u, x)
/// adjacent to (v, x + zeta[i]) for every arc. Vertex index: side * p^n +
/// radix value of the vector.
Graph derived(const Dip5Voltage& z);
int64_t derived_vertex(const Dip5Voltage& z, int side, const FpVec& x);

/// Voltages of the four fundamental cycles (the cotree arcs against the
/// tree arc).
std::array<FpVec, 4> fundamental_voltages(const Dip5Voltage& z);

/// Images of the fundamental-cycle voltages under a dipole automorphism,
/// evaluated on the assignment `z`.
std::array<FpVec, 4> walk_images(const Dip5Voltage& z, const DipAut& s);

/// Source/target pairs the lifting condition must extend linearly.
std::array<std::pair<FpVec, FpVec>, 4> induced_pairs(const Dip5Voltage& z,
                                                     const DipAut& s);

/// The linear extension witnessing that `s` lifts, when it exists.
std::optional<FpMatrix> lifts(const Dip5Voltage& z, const DipAut& s);

/// Explicit lift of `s` on the derived graph. Throws NotALift when the
/// matrix does not satisfy the lifting equations.
Perm lift_to_cover(const Dip5Voltage& z, const DipAut& s, const FpMatrix& m);

struct LiftingGroup {
  std::vector<DipAut> members;
  bool arc_transitive = false;
  int64_t order() const { return static_cast<int64_t>(members.size()); }
  /// members with swap = 0
  int64_t vertex_fixing_order() const;
};

/// Largest subgroup of the dipole automorphisms lifting along z.
LiftingGroup lifting_group(const Dip5Voltage& z);

/// Isomorphism of covers: a dipole automorphism delta and a linear eta with
/// eta(zeta1(W)) = zeta2(W^delta) on fundamental cycles. First witness in
/// (swap, pi) order.
std::optional<std::pair<DipAut, FpMatrix>> covers_isomorphic(
    const Dip5Voltage& z1, const Dip5Voltage& z2);

struct CoverClass {
  Dip5Voltage representative;  // pinned-pivot canonical form
  int64_t lifting_group_order = 0;
  bool arc_transitive = false;
  std::optional<FamilyId> matched_family;
};

enum class ClassifyStrategy { Brute, Analytic };

/// Connected symmetric Z_p^n covers of the dipole up to cover isomorphism.
/// Brute enumerates pinned-pivot canonical assignments and filters by the
/// lifting criterion; analytic emits the parameter solutions directly. The
/// two agree as sets of isomorphism classes.
std::vector<CoverClass> classify(int64_t p, int n, ClassifyStrategy strategy);

/// Canonical voltage assignment of a cover family at prime p.
Dip5Voltage family_voltage(const FamilyId& id);

/// GL-canonical form: the first independent cotree voltages map to unit
/// vectors in arc order.
Dip5Voltage canonical_form(const Dip5Voltage& z);

}  // namespace p2pg
