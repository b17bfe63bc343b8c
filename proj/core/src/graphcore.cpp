#include "p2pg/graphcore.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace p2pg {

Graph Graph::build(int vertex_count,
                   const std::vector<std::pair<int, int>>& edges) {
  if (vertex_count < 0)
    throw std::invalid_argument("Graph::build: negative vertex count");
  Graph g;
  g.n_ = vertex_count;
  g.adj_.assign(vertex_count, {});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
      throw VertexOutOfRange("Graph::build: endpoint out of range");
    if (u == v) throw LoopEdge("Graph::build: loop edge");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nb : g.adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    g.m_ += static_cast<int64_t>(nb.size());
  }
  g.m_ /= 2;
  return g;
}

bool Graph::adjacent(int u, int v) const {
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_regular(int k) const {
  for (int v = 0; v < n_; ++v)
    if (degree(v) != k) return false;
  return true;
}

bool Graph::is_connected() const {
  if (n_ == 0) return true;
  std::vector<char> seen(n_, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int u : adj_[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++cnt;
        q.push_back(u);
      }
  }
  return cnt == n_;
}

std::optional<int> Graph::girth() const {
  // truncated breadth-first search from every vertex; a non-tree edge seen
  // from root r at depths (d1, d2) closes a cycle of length d1 + d2 + 1
  int best = -1;
  std::vector<int> dist(n_), parent(n_);
  for (int r = 0; r < n_; ++r) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::deque<int> q{r};
    dist[r] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (best >= 0 && 2 * dist[v] >= best) break;
      for (int u : adj_[v]) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          parent[u] = v;
          q.push_back(u);
        } else if (u != parent[v]) {
          int len = dist[u] + dist[v] + 1;
          if (best < 0 || len < best) best = len;
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> Graph::bipartition()
    const {
  if (!is_connected()) throw Disconnected("bipartition: graph not connected");
  if (n_ == 0) return std::make_pair(std::vector<int>{}, std::vector<int>{});
  std::vector<int> color(n_, -1);
  std::deque<int> q{0};
  color[0] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int u : adj_[v]) {
      if (color[u] < 0) {
        color[u] = 1 - color[v];
        q.push_back(u);
      } else if (color[u] == color[v]) {
        return std::nullopt;
      }
    }
  }
  std::vector<int> p0, p1;
  for (int v = 0; v < n_; ++v) (color[v] == 0 ? p0 : p1).push_back(v);
  return std::make_pair(std::move(p0), std::move(p1));
}

int64_t Graph::cycles_through_path(const std::vector<int>& path,
                                   int length) const {
  if (path.size() < 2) throw NotAPath("cycles_through_path: need an arc");
  for (int v : path)
    if (v < 0 || v >= n_) throw VertexOutOfRange("cycles_through_path");
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (!adjacent(path[i], path[i + 1]))
      throw NotAPath("cycles_through_path: consecutive vertices not adjacent");
  for (size_t i = 0; i + 2 < path.size(); ++i)
    if (path[i] == path[i + 2])
      throw NotAPath("cycles_through_path: immediate backtracking");

  int k = static_cast<int>(path.size()) - 1;  // edges on the path
  if (length < 3 || length < k + 1) return 0;
  std::vector<char> used(n_, 0);
  for (int v : path) {
    if (used[v]) return 0;  // repeated vertex, cannot lie on a cycle
    used[v] = 1;
  }

  // extend from the head back to the tail with length - k further edges
  int64_t count = 0;
  int remaining = length - k;
  int target = path.front();
  // depth-first over simple extensions
  struct Frame { int v; size_t next; };
  std::vector<Frame> stack{{path.back(), 0}};
  std::vector<int> depth_of{0};
  while (!stack.empty()) {
    Frame& f = stack.back();
    int d = static_cast<int>(stack.size()) - 1;  // edges used so far
    if (d == remaining - 1) {
      // one edge left: close to target if adjacent
      if (adjacent(f.v, target)) ++count;
      stack.pop_back();
      if (!stack.empty()) used[f.v] = 0;
      continue;
    }
    bool descended = false;
    while (f.next < adj_[f.v].size()) {
      int u = adj_[f.v][f.next++];
      if (used[u]) continue;
      used[u] = 1;
      stack.push_back({u, 0});
      descended = true;
      break;
    }
    if (!descended) {
      stack.pop_back();
      if (!stack.empty()) used[f.v] = 0;
    }
  }
  return count;
}

Graph Graph::quotient(const std::vector<std::vector<int>>& cells) const {
  std::vector<int> cell_of(n_, -1);
  for (size_t c = 0; c < cells.size(); ++c)
    for (int v : cells[c]) {
      if (v < 0 || v >= n_) throw VertexOutOfRange("quotient: cell member");
      if (cell_of[v] != -1)
        throw std::invalid_argument("quotient: vertex in two cells");
      cell_of[v] = static_cast<int>(c);
    }
  for (int v = 0; v < n_; ++v)
    if (cell_of[v] < 0)
      throw std::invalid_argument("quotient: vertex not covered");

  std::vector<std::pair<int, int>> qedges;
  for (int v = 0; v < n_; ++v)
    for (int u : adj_[v]) {
      if (u <= v) continue;
      if (cell_of[u] == cell_of[v])
        throw IntraCellEdge("quotient: edge inside a cell");
      qedges.emplace_back(cell_of[v], cell_of[u]);
    }
  return build(static_cast<int>(cells.size()), qedges);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<size_t>(m_));
  for (int v = 0; v < n_; ++v)
    for (int u : adj_[v])
      if (v < u) out.emplace_back(v, u);
  return out;
}

std::string Graph::to_edge_list() const {
  std::ostringstream os;
  os << "p2pg-graph v1\n" << n_ << ' ' << m_ << '\n';
  for (auto [u, v] : edges()) os << u << ' ' << v << '\n';
  return os.str();
}

Graph Graph::from_edge_list(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header) || header != "p2pg-graph v1")
    throw BadGraphFormat("edge list: missing 'p2pg-graph v1' header");
  int n = 0;
  int64_t m = 0;
  if (!(is >> n >> m)) throw BadGraphFormat("edge list: bad size line");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(m));
  for (int64_t i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(is >> u >> v)) throw BadGraphFormat("edge list: truncated edges");
    edges.emplace_back(u, v);
  }
  Graph g = build(n, edges);
  if (g.edge_count() != m)
    throw BadGraphFormat("edge list: duplicate or invalid edges");
  return g;
}

}  // namespace p2pg
