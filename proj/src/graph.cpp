#include "gpwb/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gpwb/errors.hpp"

namespace gpwb {

namespace {

void validate_vertex_id(const std::string& id) {
  if (id.empty()) throw std::invalid_argument("vertex id must be non-empty");
  for (char ch : id) {
    if (ch == ':' || ch == '|' || ch == '"' || std::isspace(static_cast<unsigned char>(ch)) ||
        !std::isprint(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("vertex id '" + id +
                                  "' contains a reserved or non-printable character");
    }
  }
}

std::string padded(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

}  // namespace

Circuit canonical_circuit(const Circuit& c) {
  if (c.size() < 3) throw std::invalid_argument("circuit must have length > 2");
  Circuit best;
  Circuit forward = c;
  Circuit backward(c.rbegin(), c.rend());
  for (const Circuit* base : {&forward, &backward}) {
    for (std::size_t shift = 0; shift < base->size(); ++shift) {
      Circuit candidate(base->size());
      for (std::size_t i = 0; i < base->size(); ++i) {
        candidate[i] = (*base)[(shift + i) % base->size()];
      }
      if (best.empty() || candidate < best) best = std::move(candidate);
    }
  }
  return best;
}

SimplicialGraph::SimplicialGraph(
    std::vector<std::string> vertex_ids,
    std::vector<std::pair<std::string, std::string>> edge_ids) {
  for (const auto& id : vertex_ids) validate_vertex_id(id);
  std::sort(vertex_ids.begin(), vertex_ids.end());
  if (std::adjacent_find(vertex_ids.begin(), vertex_ids.end()) != vertex_ids.end()) {
    throw std::invalid_argument("duplicate vertex id");
  }
  ids_ = std::move(vertex_ids);
  const int n = vertex_count();
  adj_.assign(n, {});

  std::set<std::pair<int, int>> seen;
  for (const auto& [sa, sb] : edge_ids) {
    const int a = vertex_index(sa);
    const int b = vertex_index(sb);
    if (a == b) throw std::invalid_argument("self-loop at vertex '" + sa + "'");
    const auto key = std::minmax(a, b);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("duplicate edge {" + sa + "," + sb + "}");
    }
  }
  edges_.assign(seen.begin(), seen.end());
  for (const auto& [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  if (n <= 4096) {
    adj_matrix_.assign(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : edges_) {
      adj_matrix_[a][b] = true;
      adj_matrix_[b][a] = true;
    }
  }
}

SimplicialGraph SimplicialGraph::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("vertices") || !spec.contains("edges")) {
    throw std::invalid_argument(
        "graph spec must be an object with 'vertices' and 'edges'");
  }
  std::vector<std::string> vertices;
  for (const auto& v : spec.at("vertices")) {
    if (!v.is_string()) throw std::invalid_argument("vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : spec.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw std::invalid_argument("each edge must be a pair of vertex ids");
    }
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return SimplicialGraph(std::move(vertices), std::move(edges));
}

SimplicialGraph SimplicialGraph::parse_json(const std::string& text) {
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(std::string("malformed JSON: ") + err.what());
  }
  return from_json(spec);
}

SimplicialGraph SimplicialGraph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  const int width = static_cast<int>(std::to_string(n - 1).size());
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i) ids.push_back("v" + padded(i, width));
  for (int i = 0; i < n; ++i) edges.emplace_back(ids[i], ids[(i + 1) % n]);
  return SimplicialGraph(std::move(ids), std::move(edges));
}

SimplicialGraph SimplicialGraph::path(int n) {
  if (n < 1) throw std::invalid_argument("path needs at least 1 vertex");
  const int width = static_cast<int>(std::to_string(n - 1).size());
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i) ids.push_back("v" + padded(i, width));
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(ids[i], ids[i + 1]);
  return SimplicialGraph(std::move(ids), std::move(edges));
}

SimplicialGraph SimplicialGraph::complete(int n) {
  if (n < 1) throw std::invalid_argument("complete graph needs a vertex");
  const int width = static_cast<int>(std::to_string(n - 1).size());
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i) ids.push_back("v" + padded(i, width));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(ids[i], ids[j]);
  return SimplicialGraph(std::move(ids), std::move(edges));
}

void SimplicialGraph::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count()) {
    throw std::invalid_argument("vertex index " + std::to_string(v) +
                                " out of range");
  }
}

const std::string& SimplicialGraph::vertex_id(int v) const {
  check_vertex(v);
  return ids_[v];
}

int SimplicialGraph::vertex_index(const std::string& id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) {
    throw std::invalid_argument("unknown vertex id '" + id + "'");
  }
  return static_cast<int>(it - ids_.begin());
}

bool SimplicialGraph::has_vertex(const std::string& id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

bool SimplicialGraph::adjacent_slow(int a, int b) const {
  const auto& nb = adj_[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool SimplicialGraph::adjacent(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  if (!adj_matrix_.empty()) return adj_matrix_[a][b];
  return adjacent_slow(a, b);
}

const std::vector<int>& SimplicialGraph::neighbors(int v) const {
  check_vertex(v);
  return adj_[v];
}

std::vector<int> SimplicialGraph::star(int v) const {
  std::vector<int> result = neighbors(v);
  result.push_back(v);
  std::sort(result.begin(), result.end());
  return result;
}

bool SimplicialGraph::is_connected() const {
  if (vertex_count() == 0) return true;
  const auto dist = bfs_distances(0);
  return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

std::vector<int> SimplicialGraph::bfs_distances(int src) const {
  check_vertex(src);
  std::vector<int> dist(vertex_count(), -1);
  std::deque<int> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : adj_[u]) {
      if (dist[w] == -1) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

int SimplicialGraph::distance(int a, int b) const {
  check_vertex(b);
  return bfs_distances(a)[b];
}

std::optional<int> SimplicialGraph::girth() const {
  // Shortest cycle through each edge {a,b} = 1 + shortest a-b path avoiding
  // that edge; the minimum over all edges is exact.
  int best = -1;
  for (const auto& [a, b] : edges_) {
    std::vector<int> dist(vertex_count(), -1);
    std::deque<int> queue{a};
    dist[a] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      if (best != -1 && dist[u] + 1 >= best) break;  // cannot improve
      for (int w : adj_[u]) {
        if (u == a && w == b) continue;  // the removed edge
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    if (dist[b] != -1) {
      const int cycle = dist[b] + 1;
      if (best == -1 || cycle < best) best = cycle;
    }
  }
  if (best == -1) return std::nullopt;
  return best;
}

SimplicialGraph SimplicialGraph::subdivide(int k) const {
  if (k < 0) throw std::invalid_argument("subdivision count must be >= 0");
  if (k == 0) return *this;
  std::vector<std::string> ids = ids_;
  std::vector<std::pair<std::string, std::string>> edges;
  const int width = static_cast<int>(std::to_string(k).size());
  for (const auto& [a, b] : edges_) {
    std::string prev = ids_[a];
    for (int j = 1; j <= k; ++j) {
      std::string mid = ids_[a] + "~" + ids_[b] + "~" + padded(j, width);
      ids.push_back(mid);
      edges.emplace_back(prev, mid);
      prev = std::move(mid);
    }
    edges.emplace_back(prev, ids_[b]);
  }
  return SimplicialGraph(std::move(ids), std::move(edges));
}

std::vector<std::vector<int>> SimplicialGraph::geodesics(int a, int b,
                                                         std::size_t cap) const {
  check_vertex(a);
  const auto dist_b = bfs_distances(b);
  if (dist_b[a] == -1) {
    throw std::invalid_argument("no path between the requested vertices");
  }
  std::vector<std::vector<int>> result;
  std::vector<int> path{a};
  // Iterative DFS following strictly distance-decreasing steps toward b.
  struct Frame {
    int vertex;
    std::size_t next_index;
  };
  std::vector<Frame> stack{{a, 0}};
  while (!stack.empty()) {
    if (stack.back().vertex == b) {
      result.push_back(path);
      if (result.size() > cap) {
        throw BudgetExceeded("geodesic count exceeds cap " + std::to_string(cap));
      }
      stack.pop_back();
      path.pop_back();
      continue;
    }
    const int cur = stack.back().vertex;
    const auto& nb = adj_[cur];
    int chosen = -1;
    while (stack.back().next_index < nb.size()) {
      const int w = nb[stack.back().next_index++];
      if (dist_b[w] == dist_b[cur] - 1) {
        chosen = w;
        break;
      }
    }
    if (chosen == -1) {
      stack.pop_back();
      path.pop_back();
    } else {
      stack.push_back({chosen, 0});
      path.push_back(chosen);
    }
  }
  return result;
}

std::vector<int> SimplicialGraph::bfs_parents(int root) const {
  const auto dist = bfs_distances(root);
  std::vector<int> parent(vertex_count(), -1);
  for (int v = 0; v < vertex_count(); ++v) {
    if (v == root || dist[v] <= 0) continue;
    for (int u : adj_[v]) {  // sorted, so the first hit is the least index
      if (dist[u] == dist[v] - 1) {
        parent[v] = u;
        break;
      }
    }
  }
  return parent;
}

SimplicialGraph SimplicialGraph::geodesic_spanning_tree(int root) const {
  const auto dist = bfs_distances(root);
  if (std::find(dist.begin(), dist.end(), -1) != dist.end()) {
    throw std::invalid_argument("geodesic spanning tree requires a connected graph");
  }
  const auto parent = bfs_parents(root);
  std::vector<std::pair<std::string, std::string>> edges;
  for (int v = 0; v < vertex_count(); ++v) {
    if (parent[v] != -1) edges.emplace_back(ids_[parent[v]], ids_[v]);
  }
  return SimplicialGraph(ids_, std::move(edges));
}

std::vector<Circuit> SimplicialGraph::circuits_through_edge(
    int a, int b, int n_max, std::size_t cap) const {
  if (!adjacent(a, b)) {
    throw std::invalid_argument("circuits_through_edge: {" + ids_[a] + "," +
                                ids_[b] + "} is not an edge");
  }
  const auto dist_a = bfs_distances(a);
  std::vector<Circuit> found;
  std::vector<char> on_path(vertex_count(), 0);
  std::vector<int> path{a, b};
  on_path[a] = on_path[b] = 1;
  std::size_t steps = 0;

  struct Frame {
    int vertex;
    std::size_t next_index;
  };
  std::vector<Frame> stack{{b, 0}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto& nb = adj_[top.vertex];
    if (top.next_index >= nb.size()) {
      on_path[top.vertex] = 0;
      path.pop_back();
      stack.pop_back();
      continue;
    }
    const int w = nb[top.next_index++];
    if (w == a) {
      // Closing edge; skip the immediate reuse of edge {a,b}.
      if (path.size() >= 3) found.push_back(canonical_circuit(path));
      continue;
    }
    if (on_path[w]) continue;
    // Prune: the closed walk needs path.size() edges so far plus the
    // shortest return to a.
    if (static_cast<int>(path.size()) + dist_a[w] > n_max || dist_a[w] == -1) {
      continue;
    }
    if (++steps > cap) {
      throw BudgetExceeded("circuit search exceeded cap " + std::to_string(cap));
    }
    on_path[w] = 1;
    path.push_back(w);
    stack.push_back({w, 0});
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

long long SimplicialGraph::gromov_product_x2(int x, int y, int z) const {
  const auto from_x = bfs_distances(x);
  const auto from_y = bfs_distances(y);
  if (from_x[z] == -1 || from_y[z] == -1 || from_x[y] == -1) {
    throw std::invalid_argument("gromov product of a disconnected triple");
  }
  return static_cast<long long>(from_x[z]) + from_y[z] - from_x[y];
}

long long SimplicialGraph::estimate_delta_x2(
    const std::vector<std::array<int, 4>>& quadruples) const {
  std::map<int, std::vector<int>> cache;
  const auto dists = [&](int src) -> const std::vector<int>& {
    auto it = cache.find(src);
    if (it == cache.end()) it = cache.emplace(src, bfs_distances(src)).first;
    return it->second;
  };
  long long delta = 0;
  for (const auto& [x, y, z, w] : quadruples) {
    const auto& dx = dists(x);
    const auto& dy = dists(y);
    if (dx[w] == -1 || dy[w] == -1 || dx[y] == -1 || dy[z] == -1 ||
        dx[z] == -1 || dists(z)[w] == -1) {
      throw std::invalid_argument("delta estimate quadruple not connected");
    }
    const long long xy_w = static_cast<long long>(dx[w]) + dy[w] - dx[y];
    const long long yz_w = static_cast<long long>(dy[w]) + dists(z)[w] - dy[z];
    const long long xz_w = static_cast<long long>(dx[w]) + dists(z)[w] - dx[z];
    delta = std::max(delta, std::min(xy_w, yz_w) - xz_w);
  }
  return delta;
}

nlohmann::json SimplicialGraph::to_json() const {
  nlohmann::json j;
  j["vertices"] = ids_;
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : edges_) {
    j["edges"].push_back({ids_[a], ids_[b]});
  }
  return j;
}

std::string SimplicialGraph::to_dot(const std::string& name,
                                    const std::vector<int>& color_class) const {
  static const char* kPalette[] = {"#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f",
                                   "#cab2d6", "#ffff99", "#1f78b4", "#33a02c",
                                   "#e31a1c", "#ff7f00", "#6a3d9a", "#b15928"};
  constexpr int kPaletteSize = 12;
  std::ostringstream out;
  out << "graph " << (name.empty() ? "g" : name) << " {\n";
  out << "  node [shape=circle, fontsize=10];\n";
  for (int v = 0; v < vertex_count(); ++v) {
    out << "  \"" << ids_[v] << "\"";
    if (!color_class.empty()) {
      out << " [style=filled, fillcolor=\""
          << kPalette[((color_class[v] % kPaletteSize) + kPaletteSize) % kPaletteSize]
          << "\"]";
    }
    out << ";\n";
  }
  for (const auto& [a, b] : edges_) {
    out << "  \"" << ids_[a] << "\" -- \"" << ids_[b] << "\";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace gpwb
