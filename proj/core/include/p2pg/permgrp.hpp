#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace p2pg {

struct PointOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegreeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SeedNotInGroup : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Permutation of {0..degree-1}, stored as the image table.
struct Perm {
  std::vector<int> img;

  Perm() = default;
  explicit Perm(std::vector<int> images);
  static Perm identity(int degree);
  /// Builds from disjoint cycles, e.g. {{0,1,2},{3,4}}.
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(img.size()); }
  int operator()(int v) const { return img[v]; }
  bool is_identity() const;
  /// Composition "apply *this, then next".
  Perm then(const Perm& next) const;
  Perm inverse() const;
  /// inverse(*this) * h * (*this)
  Perm conjugated(const Perm& h) const;
  bool operator==(const Perm& o) const { return img == o.img; }
  bool operator<(const Perm& o) const { return img < o.img; }
};

/// Permutation group given by generators, with a lazily built stabilizer
/// chain certifying order and membership. Immutable once constructed;
/// concurrent reads are safe.
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Perm> generators);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  /// Orbit of a point under the generators, sorted ascending.
  std::vector<int> orbit(int point) const;
  /// All generator orbits as a partition of the point set, sorted cells.
  std::vector<std::vector<int>> orbits() const;
  bool is_transitive() const;
  /// Trivial stabilizer at every point of every orbit.
  bool is_semiregular() const;

  int64_t order() const;
  bool contains(const Perm& g) const;

  PermGroup normal_closure(const std::vector<Perm>& seeds) const;

  /// Every normal subgroup, computed as the join closure of the normal
  /// closures of single elements. Requires order() <= element_budget.
  std::vector<PermGroup> normal_subgroups(int64_t element_budget = 1 << 16) const;

  /// True iff the orbit of tuples[0] under the coordinatewise action is
  /// exactly the given tuple set.
  bool tuple_orbit_transitive(const std::vector<std::vector<int>>& tuples) const;

  /// All group elements via the chain. Guarded by the budget.
  std::vector<Perm> elements(int64_t budget = 1 << 16) const;

 private:
  struct Chain;
  struct ChainHolder;  // once-flag plus the built chain; shared by copies
  const Chain& chain() const;

  int degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<ChainHolder> holder_;
};

}  // namespace p2pg
