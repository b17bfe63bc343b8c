#pragma once

#include <map>

#include "p2pg/constructions.hpp"
#include "p2pg/graphcore.hpp"
#include "p2pg/permgrp.hpp"

namespace p2pg {

struct NotVertexTransitive : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotPentavalent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotBipartite : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSemiregular : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAbelian : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OrbitsNotParts : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full automorphism group via equitable-partition refinement and
/// individualization backtracking with orbit pruning. Guarded vertex count.
PermGroup aut_group(const Graph& g);

/// Canonical labeling from the same search; position of each vertex in the
/// canonical order.
std::vector<int> canonical_labeling(const Graph& g);

/// Witness bijection g1 -> g2, or nullopt. Decided by canonical labeling.
std::optional<std::vector<int>> isomorphic(const Graph& g1, const Graph& g2);

/// Vertex-stabilizer catalog for pentavalent arc-transitive graphs, indexed
/// by the transitivity level s.
struct StabCatalog {
  struct Entry {
    std::string name;
    int64_t order;
  };
  static const std::map<int, std::vector<Entry>>& rows();
  /// Name of the stabilizer of the given order in row s, if listed.
  static std::optional<std::string> lookup(int s, int64_t order);
};

struct SClass {
  int s = 0;
  int64_t stabilizer_order = 0;
  std::string catalog_name;  // empty when the order is not catalogued
  bool exact = true;         // false when s is only a verified lower bound
};

/// Largest s with Aut transitive on s-arcs, for a connected pentavalent
/// vertex-transitive graph.
SClass s_class(const Graph& g, const PermGroup& aut);

struct BasicVerdict {
  bool basic = false;
  /// orbits of a witnessing normal subgroup when non-basic
  std::vector<std::vector<int>> witness_orbits;
  int64_t witness_order = 0;
};

/// Translation data a construction can hand to the basicness search: the
/// covering translations of the abelian part, indexed by basis vector.
struct TranslationLattice {
  int64_t p = 0;
  int n = 0;
  std::vector<Perm> basis;  // basis[i]: translation by e_i
  Perm translate(const FpVec& w) const;
};

/// Decides whether the graph is basic: no nontrivial normal subgroup of the
/// automorphism group has more than two orbits. Small groups are searched
/// exhaustively; larger ones through invariant subspaces of the translation
/// lattice, which is sound whenever the lattice is a full Sylow p-subgroup.
BasicVerdict is_basic(const Graph& g, const PermGroup& aut,
                      const std::optional<TranslationLattice>& lattice);

struct QuotientStep {
  int64_t subgroup_order = 0;
  Graph quotient;
  std::optional<FamilyId> recognized;
};

/// Repeated maximal normal quotients down to a basic graph; the final step
/// carries the recognized family when the quotient matches one.
std::vector<QuotientStep> basic_quotient_chain(
    const Graph& g, const PermGroup& aut,
    const std::optional<TranslationLattice>& lattice);

/// Reads a generalized dihedral Cayley structure off a bipartite graph with
/// an abelian group acting regularly on each part.
struct GDRecognition {
  GroupSpec group;
  std::vector<GDElement> connection;
  std::vector<int> vertex_of;  // element index -> graph vertex
};
GDRecognition gd_recognize(const Graph& g, const PermGroup& h);

struct SymmetryReport {
  std::optional<std::string> family;
  int vertices = 0;
  int64_t aut_order = 0;
  std::optional<int> girth;
  std::optional<int> s;
  std::optional<int64_t> stabilizer_order;
  std::optional<std::string> stabilizer_name;
  std::optional<bool> basic;
  std::optional<std::string> quotient;

  std::string to_json() const;
  std::string to_pretty() const;
};

/// Full analysis of one graph; `named` supplies family labels and the
/// translation lattice when the graph came from a construction.
SymmetryReport analyze(const Graph& g, const NamedGraph* named);

/// Translation lattice of a GD-family construction (the index-2 abelian
/// part acting on vertices), available when the abelian part is Z_p^n.
std::optional<TranslationLattice> translation_lattice(const NamedGraph& ng);

/// Reduced-echelon bases of every dim-k subspace of F_p^n, in a fixed
/// enumeration order. The basicness search walks these.
std::vector<std::vector<FpVec>> subspace_bases(int64_t p, int n, int k);

struct CensusEntry {
  std::string family;
  int64_t aut_order = 0;
  int s = 0;
  std::optional<int> girth;
};

struct CensusReport {
  int64_t p = 0;
  std::vector<CensusEntry> graphs;
  bool pairwise_nonisomorphic = true;

  std::string to_json() const;
  std::string to_pretty() const;
};

/// All pentavalent symmetric graphs of order 2p^2 arising from the three
/// order-2p^2 families whose arithmetic conditions hold at p, checked
/// symmetric and pairwise distinct.
CensusReport census_2p2(int64_t p);

}  // namespace p2pg
