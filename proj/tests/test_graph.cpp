#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <vector>

#include "gpwb/errors.hpp"
#include "gpwb/graph.hpp"

using gpwb::Circuit;
using gpwb::SimplicialGraph;

namespace {

// Independent oracle: every simple cycle of length <= n_max, canonicalized,
// by exhaustive DFS over vertex sequences.  Exponential; small inputs only.
std::set<Circuit> all_circuits_naive(const SimplicialGraph& g, int n_max) {
  std::set<Circuit> found;
  const int n = g.vertex_count();
  std::vector<int> path;
  std::vector<char> used(n, 0);
  auto dfs = [&](auto&& self, int start, int cur) -> void {
    if (static_cast<int>(path.size()) > n_max) return;
    for (int w : g.neighbors(cur)) {
      if (w == start && path.size() >= 3) {
        found.insert(gpwb::canonical_circuit(path));
      }
      if (!used[w] && w > start) {  // enumerate each cycle from its least vertex
        used[w] = 1;
        path.push_back(w);
        self(self, start, w);
        path.pop_back();
        used[w] = 0;
      }
    }
  };
  for (int s = 0; s < n; ++s) {
    used.assign(n, 0);
    used[s] = 1;
    path = {s};
    dfs(dfs, s, s);
  }
  return found;
}

bool circuit_contains_edge(const Circuit& c, int a, int b) {
  const std::size_t m = c.size();
  for (std::size_t i = 0; i < m; ++i) {
    const int x = c[i];
    const int y = c[(i + 1) % m];
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

std::set<Circuit> circuits_through_naive(const SimplicialGraph& g, int a, int b,
                                         int n_max) {
  std::set<Circuit> result;
  for (const auto& c : all_circuits_naive(g, n_max)) {
    if (circuit_contains_edge(c, a, b)) result.insert(c);
  }
  return result;
}

// Independent distance oracle (Floyd-Warshall).
std::vector<std::vector<int>> apsp_naive(const SimplicialGraph& g) {
  const int n = g.vertex_count();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& [a, b] : g.edges()) d[a][b] = d[b][a] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

SimplicialGraph grid3x3() {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  auto id = [](int r, int c) {
    return "g" + std::to_string(r) + std::to_string(c);
  };
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) ids.push_back(id(r, c));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (r + 1 < 3) edges.emplace_back(id(r, c), id(r + 1, c));
      if (c + 1 < 3) edges.emplace_back(id(r, c), id(r, c + 1));
    }
  return SimplicialGraph(ids, edges);
}

SimplicialGraph random_graph(int n, double p, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("r" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(ids[i], ids[j]);
  return SimplicialGraph(ids, edges);
}

std::vector<std::array<int, 4>> all_quadruples(int n) {
  std::vector<std::array<int, 4>> quads;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) quads.push_back({x, y, z, w});
  return quads;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("construction validates simpliciality and ids") {
  CHECK_THROWS_AS(SimplicialGraph({"a", "a"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialGraph({"a"}, {{"a", "a"}}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialGraph({"a", "b"}, {{"a", "b"}, {"b", "a"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SimplicialGraph({"a", "b"}, {{"a", "c"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SimplicialGraph({"a:b"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialGraph({"a|b"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialGraph({"a b"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialGraph({""}, {}), std::invalid_argument);
}

TEST_CASE("vertex order is lexicographic regardless of input order") {
  SimplicialGraph g({"w", "u", "v"}, {{"u", "v"}, {"v", "w"}});
  CHECK(g.vertex_id(0) == "u");
  CHECK(g.vertex_id(1) == "v");
  CHECK(g.vertex_id(2) == "w");
  CHECK(g.vertex_index("w") == 2);
  CHECK_THROWS_AS(g.vertex_index("x"), std::invalid_argument);
}

TEST_CASE("link and star") {
  SimplicialGraph p3({"u", "v", "w"}, {{"u", "v"}, {"v", "w"}});
  const int u = p3.vertex_index("u"), v = p3.vertex_index("v"),
            w = p3.vertex_index("w");
  CHECK(p3.neighbors(v) == std::vector<int>{u, w});
  CHECK(p3.star(v) == std::vector<int>{u, v, w});
  CHECK(p3.star(u) == std::vector<int>{u, v});

  SimplicialGraph iso({"a", "b"}, {});
  CHECK(iso.neighbors(0).empty());
  CHECK(iso.star(0) == std::vector<int>{0});

  const auto c21 = SimplicialGraph::cycle(21);
  for (int i = 0; i < 21; ++i) CHECK(c21.neighbors(i).size() == 2);
}

TEST_CASE("girth on basic examples") {
  CHECK(SimplicialGraph::cycle(21).girth() == 21);
  CHECK(SimplicialGraph::complete(4).girth() == 3);
  CHECK_FALSE(SimplicialGraph::path(6).girth().has_value());
  SimplicialGraph empty({}, {});
  CHECK_FALSE(empty.girth().has_value());
}

TEST_CASE("subdivision multiplies girth and preserves acyclicity") {
  CHECK(SimplicialGraph::cycle(5).subdivide(4).girth() == 25);
  CHECK(SimplicialGraph::cycle(5).subdivide(4).vertex_count() == 25);
  CHECK(SimplicialGraph::complete(4).subdivide(6).girth() == 21);
  CHECK_FALSE(SimplicialGraph::path(4).subdivide(3).girth().has_value());
  for (int k = 1; k <= 3; ++k) {
    for (const auto& g :
         {SimplicialGraph::cycle(6), SimplicialGraph::complete(4), grid3x3()}) {
      REQUIRE(g.girth().has_value());
      CHECK(g.subdivide(k).girth() == (k + 1) * g.girth().value());
    }
  }
}

TEST_CASE("circuits_through_edge matches naive enumeration") {
  const auto check_graph = [](const SimplicialGraph& g, int n_max) {
    for (const auto& [a, b] : g.edges()) {
      const auto fast = g.circuits_through_edge(a, b, n_max, 1u << 22);
      const std::set<Circuit> fast_set(fast.begin(), fast.end());
      CHECK(fast.size() == fast_set.size());
      CHECK(fast_set == circuits_through_naive(g, a, b, n_max));
    }
  };
  check_graph(SimplicialGraph::complete(4), 3);
  check_graph(SimplicialGraph::complete(4), 4);
  check_graph(grid3x3(), 8);
  for (unsigned seed = 1; seed <= 5; ++seed) {
    check_graph(random_graph(10, 0.35, seed), 8);
  }
}

TEST_CASE("circuits_through_edge on C21") {
  const auto c21 = SimplicialGraph::cycle(21);
  const auto [a, b] = c21.edges().front();
  CHECK(c21.circuits_through_edge(a, b, 20, 1u << 20).empty());
  const auto full = c21.circuits_through_edge(a, b, 21, 1u << 20);
  REQUIRE(full.size() == 1);
  CHECK(full[0].size() == 21);
}

TEST_CASE("K4 has two triangles through each edge") {
  const auto k4 = SimplicialGraph::complete(4);
  for (const auto& [a, b] : k4.edges()) {
    CHECK(k4.circuits_through_edge(a, b, 3, 1u << 20).size() == 2);
  }
}

TEST_CASE("circuit search cap raises BudgetExceeded") {
  const auto k6 = SimplicialGraph::complete(6);
  const auto [a, b] = k6.edges().front();
  CHECK_THROWS_AS(k6.circuits_through_edge(a, b, 6, 3), gpwb::BudgetExceeded);
}

TEST_CASE("bfs distance matches Floyd-Warshall") {
  for (const auto& g : {SimplicialGraph::cycle(9), grid3x3(),
                        random_graph(11, 0.3, 7), random_graph(11, 0.5, 9)}) {
    const auto expected_d = apsp_naive(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
      const auto dist = g.bfs_distances(v);
      for (int w = 0; w < g.vertex_count(); ++w) {
        if (dist[w] == -1) {
          CHECK(expected_d[v][w] >= (1 << 28));
        } else {
          CHECK(dist[w] == expected_d[v][w]);
        }
      }
    }
  }
}

TEST_CASE("cycle distances take the short arc") {
  const auto c21 = SimplicialGraph::cycle(21);
  CHECK(c21.distance(0, 10) == 10);
  CHECK(c21.distance(0, 11) == 10);
  CHECK(c21.distance(0, 0) == 0);
}

TEST_CASE("geodesics enumerates all shortest paths deterministically") {
  const auto p3 = SimplicialGraph::path(3);
  const auto ends = p3.geodesics(0, 2, 100);
  REQUIRE(ends.size() == 1);
  CHECK(ends[0] == std::vector<int>{0, 1, 2});

  const auto same = p3.geodesics(1, 1, 100);
  REQUIRE(same.size() == 1);
  CHECK(same[0] == std::vector<int>{1});

  const auto grid = grid3x3();
  const int corner = grid.vertex_index("g00");
  const int other = grid.vertex_index("g22");
  const auto paths = grid.geodesics(corner, other, 100);
  CHECK(paths.size() == 6);  // C(4,2) lattice paths
  for (const auto& p : paths) {
    REQUIRE(p.size() == 5);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      CHECK(grid.adjacent(p[i], p[i + 1]));
    }
  }
  CHECK(std::is_sorted(paths.begin(), paths.end()));
  CHECK_THROWS_AS(grid.geodesics(corner, other, 5), gpwb::BudgetExceeded);
}

TEST_CASE("geodesic spanning tree preserves root distances") {
  const auto check_tree = [](const SimplicialGraph& g, int root) {
    const auto tree = g.geodesic_spanning_tree(root);
    CHECK(tree.edges().size() == static_cast<std::size_t>(g.vertex_count() - 1));
    CHECK(tree.is_connected());
    const auto dg = g.bfs_distances(root);
    const auto dt = tree.bfs_distances(root);
    for (int v = 0; v < g.vertex_count(); ++v) CHECK(dg[v] == dt[v]);
  };
  for (int root : {0, 5, 20}) check_tree(SimplicialGraph::cycle(21), root);
  check_tree(grid3x3(), 0);
  check_tree(SimplicialGraph::complete(5), 2);

  const auto p3 = SimplicialGraph::path(3);
  const auto tree = p3.geodesic_spanning_tree(0);
  CHECK(tree.edges() == p3.edges());

  SimplicialGraph disconnected({"a", "b"}, {});
  CHECK_THROWS_AS(disconnected.geodesic_spanning_tree(0), std::invalid_argument);
}

TEST_CASE("bfs parents pick the least vertex index") {
  const auto k4 = SimplicialGraph::complete(4);
  const auto parent = k4.bfs_parents(1);
  CHECK(parent[1] == -1);
  CHECK(parent[0] == 1);
  CHECK(parent[2] == 1);
  CHECK(parent[3] == 1);
  const auto grid = grid3x3();
  const auto gp = grid.bfs_parents(grid.vertex_index("g00"));
  // g11 is reachable at distance 2 via g01 or g10; least index wins.
  CHECK(gp[grid.vertex_index("g11")] == grid.vertex_index("g01"));
}

TEST_CASE("gromov product formula and degenerate case") {
  const auto c21 = SimplicialGraph::cycle(21);
  for (int z : {0, 4, 17}) {
    for (int x : {1, 8, 13}) {
      CHECK(c21.gromov_product_x2(x, x, z) == 2 * c21.distance(x, z));
    }
  }
}

TEST_CASE("four-point delta is 0 on trees and matches brute force on C21") {
  // Random tree on 8 vertices.
  std::mt19937_64 rng(3);
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < 8; ++i) ids.push_back("t" + std::to_string(i));
  for (int i = 1; i < 8; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    edges.emplace_back(ids[pick(rng)], ids[i]);
  }
  const SimplicialGraph tree(ids, edges);
  CHECK(tree.estimate_delta_x2(all_quadruples(8)) == 0);

  const auto c21 = SimplicialGraph::cycle(21);
  const auto d = apsp_naive(c21);
  long long expected = 0;
  for (int x = 0; x < 21; ++x)
    for (int y = 0; y < 21; ++y)
      for (int z = 0; z < 21; ++z)
        for (int w = 0; w < 21; ++w) {
          const long long xy_w = d[x][w] + d[y][w] - d[x][y];
          const long long yz_w = d[y][w] + d[z][w] - d[y][z];
          const long long xz_w = d[x][w] + d[z][w] - d[x][z];
          expected = std::max(expected, std::min(xy_w, yz_w) - xz_w);
        }
  CHECK(c21.estimate_delta_x2(all_quadruples(21)) == expected);
  CHECK(expected > 0);
}

TEST_CASE("json round trip and parse diagnostics") {
  const auto g = grid3x3();
  const auto j = g.to_json();
  const auto back = SimplicialGraph::from_json(j);
  CHECK(back.vertex_ids() == g.vertex_ids());
  CHECK(back.edges() == g.edges());

  CHECK_THROWS_WITH_AS(SimplicialGraph::parse_json("{oops"),
                       doctest::Contains("malformed JSON"),
                       std::invalid_argument);
  CHECK_THROWS_AS(SimplicialGraph::parse_json("{\"vertices\": [\"a\"]}"),
                  std::invalid_argument);
}

TEST_CASE("connectivity and dot export") {
  CHECK(SimplicialGraph::cycle(5).is_connected());
  SimplicialGraph two({"a", "b"}, {});
  CHECK_FALSE(two.is_connected());
  const auto dot = SimplicialGraph::path(3).to_dot("p3", {0, 1, 0});
  CHECK(dot.find("\"v0\" -- \"v1\"") != std::string::npos);
  CHECK(dot.find("fillcolor") != std::string::npos);
}

}  // TEST_SUITE
