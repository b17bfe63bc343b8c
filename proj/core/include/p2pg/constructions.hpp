#pragma once

#include <optional>
#include <string>

#include "p2pg/gdgroup.hpp"
#include "p2pg/graphcore.hpp"

namespace p2pg {

struct IdentityInS : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotSymmetricSet : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NoOrder5Element : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NoSquareRootOf5 : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Family {
  K6,
  QN,       // hypercube Q_n
  FQN,      // folded hypercube FQ_n
  CD_P,     // dihedral family of order 2p
  CD_P2,    // dihedral family of order 2p^2
  CGD1_P2,  // first rank-2 generalized dihedral family
  CGD2_P2,  // second rank-2 generalized dihedral family
  CGD_P3,
  CGD_P4,
};

struct FamilyId {
  Family family;
  int64_t parameter;  // p for the prime families, n for the cubes

  bool operator==(const FamilyId& o) const {
    return family == o.family && parameter == o.parameter;
  }
};

/// Stable string ids: "K6", "Q5", "FQ4", "CD(11)", "CD(11^2)", "CGD1(11^2)",
/// "CGD2(11^2)", "CGD(11^3)", "CGD(11^4)". Generic forms use a literal p,
/// e.g. "CGD(p^4)".
std::string family_name(const FamilyId& id);
/// Parses either an instantiated name or a generic one plus the parameter.
FamilyId parse_family(const std::string& text,
                      std::optional<int64_t> parameter = std::nullopt);

struct NamedGraph {
  FamilyId id;
  GroupSpec group;
  std::vector<GDElement> connection;  // empty for K6
  Graph graph;
  std::vector<GDElement> labels;  // vertex -> group element, empty for K6
  std::optional<int64_t> ell;     // order-5 unit used, when applicable
  std::optional<int64_t> lambda;  // square root of 5 used, when applicable
};

/// Cayley graph on GD_H: vertices in elements() order, g adjacent to s*g.
/// Requires 1 not in S and S closed under inverses.
Graph cayley(const GroupSpec& g, const std::vector<GDElement>& s);

/// Builds a named family member. `ell_override` / `lambda_override`
/// reproduce specific published parameter choices; defaults pick the
/// smallest valid witness.
NamedGraph family(const FamilyId& id,
                  std::optional<int64_t> ell_override = std::nullopt,
                  std::optional<int64_t> lambda_override = std::nullopt);

/// The subgroup of graph automorphisms generated by right translations and
/// the connection-set-fixing automorphisms; its order is |G| * |Aut(G, S)|.
PermGroup normalizer_group(const NamedGraph& ng);

/// Order of aut_fixing_s for the family's connection set.
int64_t connection_stabilizer_order(const NamedGraph& ng);

}  // namespace p2pg
