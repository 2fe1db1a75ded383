// Finite simplicial graphs: metric, circuit, and spanning-tree primitives.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gpwb {

// A circuit is stored as its vertex sequence without the repeated endpoint,
// canonicalized under rotation and reversal; length == number of edges.
using Circuit = std::vector<int>;

// Rotates/reflects a closed vertex sequence (no repeated endpoint) to its
// lexicographically least form so circuits compare as sets.
Circuit canonical_circuit(const Circuit& c);

// Finite undirected simple graph with string vertex ids.  Vertices are
// indexed 0..n-1 in lexicographic id order; every operation is deterministic
// (ties broken by least vertex index).  Immutable after construction.
class SimplicialGraph {
 public:
  SimplicialGraph(std::vector<std::string> vertex_ids,
                  std::vector<std::pair<std::string, std::string>> edge_ids);

  static SimplicialGraph from_json(const nlohmann::json& spec);
  static SimplicialGraph parse_json(const std::string& text);

  // Builders used by tests and example configs.  Cycle/path ids are
  // zero-padded so lexicographic order matches the natural order.
  static SimplicialGraph cycle(int n);
  static SimplicialGraph path(int n);
  static SimplicialGraph complete(int n);

  int vertex_count() const { return static_cast<int>(ids_.size()); }
  const std::string& vertex_id(int v) const;
  const std::vector<std::string>& vertex_ids() const { return ids_; }
  int vertex_index(const std::string& id) const;  // throws invalid_argument
  bool has_vertex(const std::string& id) const;

  bool adjacent(int a, int b) const;
  const std::vector<int>& neighbors(int v) const;     // sorted ascending
  std::vector<int> star(int v) const;                 // {v} + neighbors, sorted
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool is_connected() const;

  // Length of the shortest circuit; nullopt when the graph is acyclic.
  std::optional<int> girth() const;

  // Replaces every edge by a path with k interior vertices (length k+1).
  SimplicialGraph subdivide(int k) const;

  std::vector<int> bfs_distances(int src) const;      // -1 = unreachable
  int distance(int a, int b) const;                   // -1 = unreachable

  // All shortest paths a..b as vertex index sequences, in lexicographic
  // order of successive vertex choices.  Throws BudgetExceeded if more than
  // cap geodesics exist.
  std::vector<std::vector<int>> geodesics(int a, int b, std::size_t cap) const;

  // BFS tree rooted at root with least-index parents; preserves all
  // distances from the root.  Throws invalid_argument when disconnected.
  SimplicialGraph geodesic_spanning_tree(int root) const;
  std::vector<int> bfs_parents(int root) const;       // -1 for root

  // Every circuit of length <= n_max containing edge {a,b}, canonicalized.
  // The cap bounds the number of DFS path extensions explored.
  std::vector<Circuit> circuits_through_edge(int a, int b, int n_max,
                                             std::size_t cap) const;

  // Doubled Gromov product 2*(x,y)_z = d(x,z)+d(y,z)-d(x,y), exact integer.
  long long gromov_product_x2(int x, int y, int z) const;

  // Doubled four-point hyperbolicity defect over the sampled quadruples
  // (x,y,z,w): max of min{(x,y)_w,(y,z)_w} - (x,z)_w, clipped below at 0.
  long long estimate_delta_x2(
      const std::vector<std::array<int, 4>>& quadruples) const;

  nlohmann::json to_json() const;
  // DOT export; color_class assigns each vertex an integer class used to
  // pick a fill color (pass {} for uncolored output).
  std::string to_dot(const std::string& name,
                     const std::vector<int>& color_class) const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::vector<int>> adj_;            // sorted neighbor lists
  std::vector<std::pair<int, int>> edges_;       // a<b, sorted
  std::vector<std::vector<bool>> adj_matrix_;    // only for small n
  bool adjacent_slow(int a, int b) const;

  void check_vertex(int v) const;
};

}  // namespace gpwb
