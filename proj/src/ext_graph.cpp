// Extension-graph vertices, copies, truncated windows, and the coned-off
// companion graph.
#include "gpwb/ext_graph.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "gpwb/errors.hpp"

namespace gpwb {

namespace {

int normalized_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Non-identity element encodings of the group at v; the single exponent 1
// generates the infinite cyclic group.
std::vector<long long> generator_elements(const ProductContext& ctx, int v) {
  const VertexGroup& group = ctx.group(v);
  if (group.is_infinite_cyclic()) return {1};
  std::vector<long long> out;
  for (long long e = 1; e < group.order(); ++e) out.push_back(e);
  return out;
}

void require_finite_groups(const ProductContext& ctx, const std::set<int>& S,
                           const char* what) {
  for (int v : S) {
    if (ctx.group(v).is_infinite_cyclic()) {
      throw std::invalid_argument(std::string(what) +
                                  " requires finite vertex groups");
    }
  }
}

}  // namespace

ExtVertex make_ext_vertex(const ProductContext& ctx, int v,
                          const NormalWord& g) {
  ctx.require_same_context(g);
  return ExtVertex{v, coset_canonical(ctx, star_set(ctx.graph(), v), g)};
}

ExtVertex base_vertex(const ProductContext& ctx, int v) {
  return make_ext_vertex(ctx, v, ctx.identity());
}

ExtVertex act(const ProductContext& ctx, const NormalWord& g,
              const ExtVertex& x) {
  return make_ext_vertex(ctx, x.vertex, ctx.mul(g, x.rep));
}

std::string ext_to_string(const ProductContext& ctx, const ExtVertex& x) {
  return ctx.to_string(x.rep) + "|" + ctx.graph().vertex_id(x.vertex);
}

ExtVertex ext_parse(const ProductContext& ctx, const std::string& text) {
  const auto bar = text.rfind('|');
  if (bar == std::string::npos) {
    return base_vertex(ctx, ctx.graph().vertex_index(text));
  }
  const int v = ctx.graph().vertex_index(text.substr(bar + 1));
  return make_ext_vertex(ctx, v, ctx.parse(text.substr(0, bar)));
}

bool share_copy(const ProductContext& ctx, const ExtVertex& x,
                const ExtVertex& y) {
  if (x.vertex == y.vertex) return x == y;
  const auto& graph = ctx.graph();
  return coset_intersect(ctx, star_set(graph, x.vertex), x.rep,
                         star_set(graph, y.vertex), y.rep)
      .nonempty;
}

bool ext_adjacent(const ProductContext& ctx, const ExtVertex& x,
                  const ExtVertex& y) {
  if (!ctx.graph().adjacent(x.vertex, y.vertex)) return false;
  return share_copy(ctx, x, y);
}

bool ext_adjacent_direct(const ProductContext& ctx, const ExtVertex& x,
                         const ExtVertex& y) {
  if (x == y) return false;
  for (long long a : generator_elements(ctx, x.vertex)) {
    const NormalWord ga =
        ctx.conjugate(x.rep, ctx.from_syllable(x.vertex, a));
    for (long long b : generator_elements(ctx, y.vertex)) {
      const NormalWord hb =
          ctx.conjugate(y.rep, ctx.from_syllable(y.vertex, b));
      if (ctx.mul(ga, hb) != ctx.mul(hb, ga)) return false;
    }
  }
  return true;
}

bool in_copy(const ProductContext& ctx, const NormalWord& g,
             const ExtVertex& x) {
  return parabolic_member(ctx, star_set(ctx.graph(), x.vertex),
                          ctx.mul(ctx.inv(x.rep), g));
}

CopyCoset all_copies(const ProductContext& ctx) {
  CopyCoset c;
  c.rep = ctx.identity();
  for (int v = 0; v < ctx.graph().vertex_count(); ++v) c.meet.insert(v);
  return c;
}

CopyCoset refine_copies(const ProductContext& ctx, const CopyCoset& c,
                        const ExtVertex& x) {
  if (!c.nonempty) return c;
  const auto r = coset_intersect(ctx, c.meet, c.rep,
                                 star_set(ctx.graph(), x.vertex), x.rep);
  return CopyCoset{r.nonempty, r.rep, r.meet};
}

CopyCoset copies_containing(const ProductContext& ctx,
                            const std::vector<ExtVertex>& xs) {
  CopyCoset c = all_copies(ctx);
  for (const auto& x : xs) {
    c = refine_copies(ctx, c, x);
    if (!c.nonempty) break;
  }
  return c;
}

std::set<int> copy_kernel(const ProductContext& ctx) {
  const auto& graph = ctx.graph();
  std::set<int> kernel;
  for (int v = 0; v < graph.vertex_count(); ++v) kernel.insert(v);
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const std::set<int> star = star_set(graph, v);
    std::set<int> next;
    std::set_intersection(kernel.begin(), kernel.end(), star.begin(),
                          star.end(), std::inserter(next, next.begin()));
    kernel = std::move(next);
    if (kernel.empty()) break;
  }
  return kernel;
}

NormalWord copy_id(const ProductContext& ctx, const NormalWord& g) {
  return coset_canonical(ctx, copy_kernel(ctx), g);
}

std::vector<NormalWord> parabolic_elements(const ProductContext& ctx,
                                           const std::set<int>& S,
                                           std::size_t cap) {
  require_finite_groups(ctx, S, "full parabolic enumeration");
  for (auto i = S.begin(); i != S.end(); ++i) {
    for (auto j = std::next(i); j != S.end(); ++j) {
      if (!ctx.graph().adjacent(*i, *j)) {
        throw std::invalid_argument(
            "parabolic support contains the non-adjacent pair {" +
            ctx.graph().vertex_id(*i) + ", " + ctx.graph().vertex_id(*j) +
            "}; the subgroup is infinite");
      }
    }
  }
  std::vector<NormalWord> out{ctx.identity()};
  for (int v : S) {
    std::vector<NormalWord> next;
    for (const auto& w : out) {
      next.push_back(w);
      for (long long e = 1; e < ctx.group(v).order(); ++e) {
        next.push_back(ctx.mul_syllable(w, Syllable{v, e}));
        if (next.size() > cap) {
          throw BudgetExceeded("parabolic enumeration exceeded " +
                               std::to_string(cap) + " elements");
        }
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NormalWord> expand_copies(const ProductContext& ctx,
                                      const CopyCoset& c, std::size_t cap) {
  if (!c.nonempty) return {};
  std::vector<NormalWord> ids;
  for (const auto& t : parabolic_elements(ctx, c.meet, cap)) {
    ids.push_back(copy_id(ctx, ctx.mul(c.rep, t)));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<NormalWord> parabolic_ball(const ProductContext& ctx,
                                       const std::set<int>& S, int L,
                                       std::size_t cap) {
  if (L < 0) throw std::invalid_argument("negative ball radius");
  require_finite_groups(ctx, S, "restricted ball enumeration");
  std::set<NormalWord> seen{ctx.identity()};
  std::vector<NormalWord> layer{ctx.identity()};
  for (int len = 1; len <= L && !layer.empty(); ++len) {
    std::vector<NormalWord> next;
    for (const auto& w : layer) {
      for (int v : S) {
        for (long long e = 1; e < ctx.group(v).order(); ++e) {
          NormalWord u = ctx.mul_syllable(w, Syllable{v, e});
          if (u.size() != len || !seen.insert(u).second) continue;
          if (seen.size() > cap) {
            throw BudgetExceeded("restricted ball exceeded " +
                                 std::to_string(cap) + " elements");
          }
          next.push_back(std::move(u));
        }
      }
    }
    layer = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

namespace {

std::vector<std::string> surrogate_ids(std::size_t n) {
  std::size_t width = 1;
  for (std::size_t x = n > 0 ? n - 1 : 0; x >= 10; x /= 10) ++width;
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    ids.push_back("n" + std::string(width - digits.size(), '0') + digits);
  }
  return ids;
}

std::vector<ExtVertex> window_vertices(const ProductContext& ctx, int L,
                                       std::size_t cap) {
  std::set<ExtVertex> out;
  const auto ball = ctx.enumerate_ball(L, cap);
  for (int v = 0; v < ctx.graph().vertex_count(); ++v) {
    for (const auto& g : ball) out.insert(make_ext_vertex(ctx, v, g));
  }
  return {out.begin(), out.end()};
}

// Shared edge builder for the window and its coned-off companion.  For a
// source (v, g) and target orbit w, every co-copy partner of orbit w is
// canonical(g·p) with p in the radius-2L ball of P_{St(v)} (p can be taken
// to be the P_{St(v)} part of the intersection witness, whose syllables all
// come from the length-<=2L word h⁻¹g).
std::vector<std::pair<int, int>> build_edges(
    const ProductContext& ctx, const std::vector<ExtVertex>& vertices, int L,
    bool neighbors_only, int jobs, std::size_t cap) {
  const auto& graph = ctx.graph();
  const int n_orbits = graph.vertex_count();
  std::vector<std::set<int>> stars(n_orbits);
  std::vector<std::vector<NormalWord>> pballs(n_orbits);
  for (int v = 0; v < n_orbits; ++v) {
    stars[v] = star_set(graph, v);
    pballs[v] = parabolic_ball(ctx, stars[v], 2 * L, cap);
  }

  const auto index_of = [&vertices](const ExtVertex& x) {
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), x);
    if (it == vertices.end() || !(*it == x)) return -1;
    return static_cast<int>(it - vertices.begin());
  };

  const int n = static_cast<int>(vertices.size());
  const int workers = std::min(normalized_jobs(jobs), std::max(n, 1));
  std::vector<std::vector<std::pair<int, int>>> partial(workers);
  std::atomic<int> next_index{0};
  const auto worker = [&](int slot) {
    auto& edges = partial[slot];
    for (int i = next_index.fetch_add(1); i < n;
         i = next_index.fetch_add(1)) {
      const ExtVertex& x = vertices[i];
      const std::vector<int> targets =
          neighbors_only ? graph.neighbors(x.vertex) : [&] {
            std::vector<int> all;
            for (int w = 0; w < n_orbits; ++w) {
              if (w != x.vertex) all.push_back(w);
            }
            return all;
          }();
      for (int w : targets) {
        for (const auto& p : pballs[x.vertex]) {
          const ExtVertex y{
              w, coset_canonical(ctx, stars[w], ctx.mul(x.rep, p))};
          const int j = index_of(y);
          if (j >= 0) edges.emplace_back(std::min(i, j), std::max(i, j));
        }
      }
    }
  };
  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (int s = 0; s < workers; ++s) threads.emplace_back(worker, s);
    for (auto& t : threads) t.join();
  }

  std::vector<std::pair<int, int>> edges;
  for (auto& part : partial) {
    edges.insert(edges.end(), part.begin(), part.end());
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

SimplicialGraph edges_to_graph(const std::vector<std::string>& ids,
                               const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::pair<std::string, std::string>> named;
  named.reserve(edges.size());
  for (const auto& [a, b] : edges) named.emplace_back(ids[a], ids[b]);
  return SimplicialGraph(ids, named);
}

}  // namespace

TruncatedWindow::TruncatedWindow(const ProductContext& ctx, int L, int jobs,
                                 std::size_t cap)
    : ctx_(ctx),
      L_((ctx.require_nontrivial_groups(),
          L < 0 ? throw std::invalid_argument("negative window radius") : L)),
      vertices_(window_vertices(ctx_, L_, cap)),
      graph_(edges_to_graph(
          surrogate_ids(vertices_.size()),
          build_edges(ctx_, vertices_, L_, /*neighbors_only=*/true, jobs,
                      cap))) {}

const ExtVertex& TruncatedWindow::vertex(int i) const {
  if (i < 0 || i >= size()) {
    throw std::invalid_argument("window vertex index out of range");
  }
  return vertices_[static_cast<std::size_t>(i)];
}

int TruncatedWindow::index_of(const ExtVertex& x) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x);
  if (it == vertices_.end() || !(*it == x)) return -1;
  return static_cast<int>(it - vertices_.begin());
}

std::string TruncatedWindow::label(int i) const {
  return ext_to_string(ctx_, vertex(i));
}

std::vector<int> TruncatedWindow::orbit_classes() const {
  std::vector<int> classes;
  classes.reserve(vertices_.size());
  for (const auto& x : vertices_) classes.push_back(x.vertex);
  return classes;
}

std::vector<ExtVertex> TruncatedWindow::neighbors(const ExtVertex& x) const {
  const int i = index_of(x);
  if (i < 0) return {};
  std::vector<ExtVertex> out;
  for (int j : graph_.neighbors(i)) out.push_back(vertices_[j]);
  return out;
}

SimplicialGraph coned_off_graph(const TruncatedWindow& window, int jobs) {
  return edges_to_graph(
      window.graph().vertex_ids(),
      build_edges(window.context(), window.vertices(), window.radius(),
                  /*neighbors_only=*/false, jobs, 5000000));
}

WindowFamily::WindowFamily(const ProductContext& ctx, int jobs,
                           std::size_t cap)
    : ctx_(ctx), jobs_(jobs), cap_(cap) {}

const TruncatedWindow& WindowFamily::at(int L) {
  auto it = windows_.find(L);
  if (it == windows_.end()) {
    it = windows_.emplace(L, TruncatedWindow(ctx_, L, jobs_, cap_)).first;
  }
  return it->second;
}

CertifiedDistance window_distance(WindowFamily& family, const ExtVertex& x,
                                  const ExtVertex& y,
                                  const std::vector<int>& schedule) {
  const ProductContext& ctx = family.context();
  const ExtVertex a = make_ext_vertex(ctx, x.vertex, x.rep);
  const ExtVertex b = make_ext_vertex(ctx, y.vertex, y.rep);
  if (a == b) return {0, true, 0, "equal"};
  if (share_copy(ctx, a, b)) {
    // Copies are convex and isometric to the defining graph, so the orbit
    // distance is exact.
    return {ctx.graph().distance(a.vertex, b.vertex), true, 0, "copy"};
  }
  if (schedule.empty()) {
    throw std::invalid_argument("empty window schedule");
  }
  int previous = -1;
  int last_distance = -1;
  int last_L = schedule.back();
  for (int L : schedule) {
    if (L < 0) throw std::invalid_argument("negative window radius");
    const TruncatedWindow& window = family.at(L);
    const int i = window.index_of(a);
    const int j = window.index_of(b);
    if (i < 0 || j < 0) continue;
    const int d = window.graph().distance(i, j);
    last_distance = d;
    last_L = L;
    if (d >= 0 && d == previous) return {d, true, L, "stable"};
    previous = d;
  }
  return {last_distance, false, last_L, "budget"};
}

}  // namespace gpwb
