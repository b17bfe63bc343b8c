#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace p2pg {

struct LoopEdge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct VertexOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct Disconnected : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotAPath : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IntraCellEdge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadGraphFormat : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph with sorted neighbor lists.
class Graph {
 public:
  Graph() = default;

  /// Deduplicates edges; rejects loops and out-of-range endpoints.
  static Graph build(int vertex_count,
                     const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  int64_t edge_count() const { return m_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  bool is_regular(int k) const;
  bool is_connected() const;

  /// Length of a shortest cycle; nullopt on forests.
  std::optional<int> girth() const;

  /// Two-coloring of a connected graph, vertex 0 in the first part.
  /// nullopt when an odd cycle exists. Throws Disconnected.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition() const;

  /// Number of distinct cycles of the given length containing `path` as a
  /// consecutive subpath. `path` must walk along edges without immediate
  /// backtracking.
  int64_t cycles_through_path(const std::vector<int>& path, int length) const;

  /// Quotient by a partition of the vertex set; cells become vertices and
  /// two cells are adjacent when some edge crosses them. Edges inside a
  /// cell are rejected.
  Graph quotient(const std::vector<std::vector<int>>& cells) const;

  std::vector<std::pair<int, int>> edges() const;

  /// Text edge-list format shared with the command line tools.
  std::string to_edge_list() const;
  static Graph from_edge_list(const std::string& text);

 private:
  int n_ = 0;
  int64_t m_ = 0;
  std::vector<std::vector<int>> adj_;
};

}  // namespace p2pg
