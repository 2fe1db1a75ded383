// Cayley balls, hyperplane classes, crossing/contact graphs, and the
// hyperplane / extension-graph correspondence check.
#include "gpwb/quasi_median.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "gpwb/errors.hpp"
#include "gpwb/parabolic.hpp"

namespace gpwb {
namespace {

std::string padded_id(const std::string& prefix, int i, int width) {
  std::string digits = std::to_string(i);
  while (static_cast<int>(digits.size()) < width) digits.insert(0, "0");
  return prefix + digits;
}

int id_width(std::size_t n) {
  int width = 1;
  for (std::size_t bound = 10; bound < n; bound *= 10) ++width;
  return width;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Per-vertex list of present generator targets for one orbit: pairs
// (element, target index), used by both the triangle and square sweeps.
std::vector<std::pair<long long, int>> orbit_targets(const CayleyBall& ball,
                                                     int i, int v) {
  const ProductContext& ctx = ball.context();
  std::vector<std::pair<long long, int>> out;
  const long long order = ctx.group(v).order();
  for (long long e = 1; e < order; ++e) {
    const NormalWord t = ctx.mul_syllable(ball.vertex(i), Syllable{v, e});
    const int j = ball.index_of(t);
    if (j >= 0) out.emplace_back(e, j);
  }
  return out;
}

// Calls fn(i, ja, jb, jab) for every square of the ball, once from each of
// its four corners: i is the corner, ja/jb the two neighbors along the
// commuting generator pair, jab the opposite corner.
template <typename Fn>
void for_each_square(const CayleyBall& ball, Fn&& fn) {
  const ProductContext& ctx = ball.context();
  for (int i = 0; i < ball.size(); ++i) {
    for (const auto& [v, w] : ctx.graph().edges()) {
      const auto va = orbit_targets(ball, i, v);
      const auto wb = orbit_targets(ball, i, w);
      for (const auto& [a, ja] : va) {
        const NormalWord ga =
            ctx.mul_syllable(ball.vertex(i), Syllable{v, a});
        for (const auto& [b, jb] : wb) {
          const NormalWord gab = ctx.mul_syllable(ga, Syllable{w, b});
          const int jab = ball.index_of(gab);
          if (jab >= 0) fn(i, ja, jb, jab);
        }
      }
    }
  }
}

// Class id of each ball edge, from the computed class list.
std::vector<int> class_of_edges(const CayleyBall& ball,
                                const std::vector<Hyperplane>& hps) {
  std::vector<int> cls(ball.edges().size(), -1);
  for (const Hyperplane& hp : hps) {
    for (int e : hp.edges) cls[e] = hp.id;
  }
  return cls;
}

// Rank of each interior class id among the interior classes, -1 otherwise.
std::vector<int> interior_ranks(const std::vector<Hyperplane>& hps) {
  std::vector<int> rank(hps.size(), -1);
  int next = 0;
  for (const Hyperplane& hp : hps) {
    if (hp.interior) rank[hp.id] = next++;
  }
  return rank;
}

SimplicialGraph interior_class_graph(
    const std::vector<Hyperplane>& hps,
    const std::set<std::pair<int, int>>& edges) {
  const std::vector<int> ids = interior_hyperplanes(hps);
  const int width = id_width(hps.size());
  std::vector<std::string> vertex_ids;
  vertex_ids.reserve(ids.size());
  for (int id : ids) vertex_ids.push_back(padded_id("J", id, width));
  std::vector<std::pair<std::string, std::string>> edge_ids;
  edge_ids.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    edge_ids.emplace_back(padded_id("J", a, width), padded_id("J", b, width));
  }
  return SimplicialGraph(std::move(vertex_ids), std::move(edge_ids));
}

bool carriers_intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

bool carrier_contains(const std::vector<int>& carrier, int vertex) {
  return std::binary_search(carrier.begin(), carrier.end(), vertex);
}

// Elements of the coset rep·P_meet usable as witness corners; just the rep
// when the meet does not span a clique of finite groups.
std::vector<NormalWord> witness_candidates(const ProductContext& ctx,
                                           const NormalWord& rep,
                                           const std::set<int>& meet) {
  bool clique = true;
  for (int v : meet) {
    if (ctx.group(v).order() == 0) clique = false;
  }
  if (clique) {
    for (int v : meet) {
      for (int w : meet) {
        if (v < w && !ctx.graph().adjacent(v, w)) clique = false;
      }
    }
  }
  if (!clique) return {rep};
  std::vector<NormalWord> out;
  for (const NormalWord& m : parabolic_elements(ctx, meet)) {
    out.push_back(ctx.mul(rep, m));
  }
  return out;
}

}  // namespace

CayleyBall::CayleyBall(const ProductContext& ctx, int radius, std::size_t cap)
    : ctx_(ctx), radius_(radius) {
  if (radius < 0) throw std::invalid_argument("Cayley ball radius < 0");
  if (ctx_.has_infinite_group()) {
    throw std::invalid_argument("Cayley ball requires finite vertex groups");
  }
  vertices_ = ctx_.enumerate_ball(radius, cap);
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    index_.emplace(vertices_[i], i);
  }
  const int orbit_count = ctx_.graph().vertex_count();
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    for (int v = 0; v < orbit_count; ++v) {
      const long long order = ctx_.group(v).order();
      for (long long e = 1; e < order; ++e) {
        const NormalWord t = ctx_.mul_syllable(vertices_[i], Syllable{v, e});
        const auto it = index_.find(t);
        if (it != index_.end() && it->second > i) {
          edges_.push_back(CayleyEdge{i, it->second, v, e});
        }
      }
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const CayleyEdge& a, const CayleyEdge& b) {
              return std::pair(a.from, a.to) < std::pair(b.from, b.to);
            });
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    edge_index_.emplace(std::pair(edges_[e].from, edges_[e].to), e);
  }
  const int width = id_width(vertices_.size());
  std::vector<std::string> ids;
  ids.reserve(vertices_.size());
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    ids.push_back(padded_id("g", i, width));
  }
  std::vector<std::pair<std::string, std::string>> edge_ids;
  edge_ids.reserve(edges_.size());
  for (const CayleyEdge& e : edges_) {
    edge_ids.emplace_back(padded_id("g", e.from, width),
                          padded_id("g", e.to, width));
  }
  graph_ = SimplicialGraph(std::move(ids), std::move(edge_ids));
}

const NormalWord& CayleyBall::vertex(int i) const {
  if (i < 0 || i >= size()) throw std::invalid_argument("ball vertex index");
  return vertices_[i];
}

int CayleyBall::index_of(const NormalWord& g) const {
  const auto it = index_.find(g);
  return it == index_.end() ? -1 : it->second;
}

int CayleyBall::edge_between(int a, int b) const {
  if (a > b) std::swap(a, b);
  const auto it = edge_index_.find(std::pair(a, b));
  return it == edge_index_.end() ? -1 : it->second;
}

bool CayleyBall::on_shell(int i) const {
  return vertex(i).size() == radius_;
}

std::vector<Hyperplane> hyperplanes(const CayleyBall& ball) {
  const ProductContext& ctx = ball.context();
  UnionFind uf(static_cast<int>(ball.edges().size()));
  // Triangle move: two edges from one corner into the same vertex-group
  // coset (the third side closes inside the ball because the coset clique
  // is induced).
  const int orbit_count = ctx.graph().vertex_count();
  for (int i = 0; i < ball.size(); ++i) {
    for (int v = 0; v < orbit_count; ++v) {
      if (ctx.group(v).order() < 3) continue;
      const auto targets = orbit_targets(ball, i, v);
      for (std::size_t p = 1; p < targets.size(); ++p) {
        uf.unite(ball.edge_between(i, targets[0].second),
                 ball.edge_between(i, targets[p].second));
      }
    }
  }
  // Square move: opposite sides of each square.
  for_each_square(ball, [&](int i, int ja, int jb, int jab) {
    uf.unite(ball.edge_between(i, ja), ball.edge_between(jb, jab));
    uf.unite(ball.edge_between(i, jb), ball.edge_between(ja, jab));
  });

  std::map<int, std::vector<int>> classes;
  for (int e = 0; e < static_cast<int>(ball.edges().size()); ++e) {
    classes[uf.find(e)].push_back(e);
  }
  std::vector<Hyperplane> out;
  out.reserve(classes.size());
  for (auto& [root, edges] : classes) {
    Hyperplane hp;
    hp.id = static_cast<int>(out.size());
    hp.edges = std::move(edges);
    hp.orbit = ball.edges()[hp.edges.front()].orbit;
    std::set<int> carrier;
    for (int e : hp.edges) {
      if (ball.edges()[e].orbit != hp.orbit) {
        throw VerificationFailure("hyperplane class mixes edge labels");
      }
      carrier.insert(ball.edges()[e].from);
      carrier.insert(ball.edges()[e].to);
    }
    hp.carrier.assign(carrier.begin(), carrier.end());
    hp.interior = true;
    for (int x : hp.carrier) {
      if (ball.on_shell(x)) hp.interior = false;
    }
    out.push_back(std::move(hp));
  }
  return out;
}

std::vector<int> interior_hyperplanes(const std::vector<Hyperplane>& hps) {
  std::vector<int> ids;
  for (const Hyperplane& hp : hps) {
    if (hp.interior) ids.push_back(hp.id);
  }
  return ids;
}

ExtVertex hyperplane_image(const CayleyBall& ball, const Hyperplane& hp) {
  const CayleyEdge& e = ball.edges().at(hp.edges.front());
  return make_ext_vertex(ball.context(), hp.orbit, ball.vertex(e.from));
}

SimplicialGraph crossing_graph(const CayleyBall& ball,
                               const std::vector<Hyperplane>& hps) {
  const std::vector<int> cls = class_of_edges(ball, hps);
  std::set<std::pair<int, int>> edges;
  for_each_square(ball, [&](int i, int ja, int jb, int jab) {
    (void)jab;
    const int ca = cls[ball.edge_between(i, ja)];
    const int cb = cls[ball.edge_between(i, jb)];
    if (ca != cb && hps[ca].interior && hps[cb].interior) {
      edges.emplace(std::min(ca, cb), std::max(ca, cb));
    }
  });
  return interior_class_graph(hps, edges);
}

SimplicialGraph contact_graph(const CayleyBall& ball,
                              const std::vector<Hyperplane>& hps) {
  (void)ball;
  const std::vector<int> ids = interior_hyperplanes(hps);
  std::set<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (carriers_intersect(hps[ids[i]].carrier, hps[ids[j]].carrier)) {
        edges.emplace(ids[i], ids[j]);
      }
    }
  }
  return interior_class_graph(hps, edges);
}

IsoReport verify_iso(const CayleyBall& ball, const TruncatedWindow& window) {
  const ProductContext& ctx = ball.context();
  if (window.context().id() != ctx.id()) {
    throw std::invalid_argument(
        "verify_iso: ball and window come from different contexts");
  }
  const std::vector<Hyperplane> hps = hyperplanes(ball);
  const std::vector<int> ids = interior_hyperplanes(hps);
  const std::vector<int> rank = interior_ranks(hps);
  const SimplicialGraph crossing = crossing_graph(ball, hps);
  const SimplicialGraph contact = contact_graph(ball, hps);
  const std::vector<int> cls = class_of_edges(ball, hps);

  IsoReport report;
  report.hyperplane_count = static_cast<int>(hps.size());
  report.interior_count = static_cast<int>(ids.size());
  report.boundary_count = report.hyperplane_count - report.interior_count;

  std::vector<ExtVertex> images;
  images.reserve(ids.size());
  report.orbit_correct = true;
  for (int id : ids) {
    const Hyperplane& hp = hps[id];
    const ExtVertex image = hyperplane_image(ball, hp);
    const std::set<int> star = star_set(ctx.graph(), hp.orbit);
    for (int x : hp.carrier) {
      if (coset_canonical(ctx, star, ball.vertex(x)) != image.rep) {
        report.orbit_correct = false;
        report.mismatches.push_back(
            "carrier of J" + std::to_string(id) +
            " leaves the star coset of its image " +
            ext_to_string(ctx, image));
      }
    }
    if (window.contains(image)) ++report.images_in_window;
    images.push_back(image);
  }
  report.injective =
      std::set<ExtVertex>(images.begin(), images.end()).size() == images.size();
  if (!report.injective) {
    report.mismatches.push_back("images of interior classes collide");
  }

  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const ExtVertex& x = images[i];
      const ExtVertex& y = images[j];
      const std::string pair_name = "J" + std::to_string(ids[i]) + "-J" +
                                    std::to_string(ids[j]);
      const bool cross = crossing.adjacent(rank[ids[i]], rank[ids[j]]);
      const bool ext = ext_adjacent(ctx, x, y);
      ++report.crossing_pairs;
      if (cross == ext) {
        ++report.crossing_agreements;
      } else if (cross) {
        report.mismatches.push_back("crossing edge " + pair_name +
                                    " has no extension-graph edge");
      } else {
        // Extension edge with no ball square between these classes: hard
        // only when a square with matching side classes fits the ball.
        const CosetIntersection ci =
            coset_intersect(ctx, star_set(ctx.graph(), x.vertex), x.rep,
                            star_set(ctx.graph(), y.vertex), y.rep);
        bool witnessed = false;
        for (const NormalWord& k : witness_candidates(ctx, ci.rep, ci.meet)) {
          const int ki = ball.index_of(k);
          if (ki < 0) continue;
          for (const auto& [a, ka] : orbit_targets(ball, ki, x.vertex)) {
            (void)a;
            const int ea = ball.edge_between(ki, ka);
            if (ea < 0 || cls[ea] != ids[i]) continue;
            for (const auto& [b, kb] : orbit_targets(ball, ki, y.vertex)) {
              const int eb = ball.edge_between(ki, kb);
              if (eb < 0 || cls[eb] != ids[j]) continue;
              const NormalWord kab =
                  ctx.mul_syllable(ball.vertex(ka), Syllable{y.vertex, b});
              if (ball.index_of(kab) >= 0) witnessed = true;
            }
          }
        }
        if (witnessed) {
          report.mismatches.push_back("extension-graph edge " + pair_name +
                                      " has an in-ball square witness but no "
                                      "crossing edge");
        } else {
          ++report.crossing_beyond_ball;
        }
      }

      const bool touch = contact.adjacent(rank[ids[i]], rank[ids[j]]);
      const bool shared = share_copy(ctx, x, y);
      ++report.contact_pairs;
      if (touch == shared) {
        ++report.contact_agreements;
      } else if (touch) {
        report.mismatches.push_back("contact edge " + pair_name +
                                    " joins classes with no shared copy");
      } else {
        const CosetIntersection ci =
            coset_intersect(ctx, star_set(ctx.graph(), x.vertex), x.rep,
                            star_set(ctx.graph(), y.vertex), y.rep);
        bool witnessed = false;
        for (const NormalWord& k : witness_candidates(ctx, ci.rep, ci.meet)) {
          const int ki = ball.index_of(k);
          if (ki >= 0 && carrier_contains(hps[ids[i]].carrier, ki) &&
              carrier_contains(hps[ids[j]].carrier, ki)) {
            witnessed = true;
          }
        }
        if (witnessed) {
          report.mismatches.push_back("shared copy of " + pair_name +
                                      " lies in both carriers but the "
                                      "contact edge is missing");
        } else {
          ++report.contact_beyond_ball;
        }
      }
    }
  }

  report.passed = report.injective && report.orbit_correct &&
                  report.mismatches.empty();
  return report;
}

std::string ball_to_dot(const CayleyBall& ball,
                        const std::vector<Hyperplane>& hps,
                        const std::string& name) {
  static const char* kPalette[] = {
      "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
      "#f032e6", "#bcf60c", "#008080", "#9a6324", "#800000", "#808000"};
  constexpr int kPaletteSize = 12;
  const std::vector<int> cls = class_of_edges(ball, hps);
  const ProductContext& ctx = ball.context();
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (int i = 0; i < ball.size(); ++i) {
    out << "  n" << i << " [label=\"" << ctx.to_string(ball.vertex(i))
        << "\"];\n";
  }
  for (int e = 0; e < static_cast<int>(ball.edges().size()); ++e) {
    const CayleyEdge& edge = ball.edges()[e];
    out << "  n" << edge.from << " -- n" << edge.to << " [color=\""
        << kPalette[cls[e] % kPaletteSize] << "\" tooltip=\"J" << cls[e]
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

long long sampled_delta_x2(const SimplicialGraph& g, int samples,
                           unsigned seed) {
  if (g.vertex_count() == 0) return 0;
  // Restrict to the largest connected component (ties to the lowest root).
  std::vector<int> best_component;
  std::vector<bool> seen(g.vertex_count(), false);
  for (int root = 0; root < g.vertex_count(); ++root) {
    if (seen[root]) continue;
    std::vector<int> component;
    const std::vector<int> dist = g.bfs_distances(root);
    for (int i = 0; i < g.vertex_count(); ++i) {
      if (dist[i] >= 0) {
        component.push_back(i);
        seen[i] = true;
      }
    }
    if (component.size() > best_component.size()) {
      best_component = std::move(component);
    }
  }
  const int m = static_cast<int>(best_component.size());
  if (m < 4) return 0;
  std::vector<std::array<int, 4>> quadruples;
  if (samples <= 0) {
    if (m > 40) {
      throw std::invalid_argument(
          "exhaustive delta estimate limited to components of at most 40 "
          "vertices; pass a positive sample count");
    }
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) {
        for (int z = 0; z < m; ++z) {
          for (int w = 0; w < m; ++w) {
            quadruples.push_back({best_component[x], best_component[y],
                                  best_component[z], best_component[w]});
          }
        }
      }
    }
  } else {
    std::mt19937 gen(seed);
    quadruples.reserve(samples);
    for (int s = 0; s < samples; ++s) {
      std::array<int, 4> q;
      for (int t = 0; t < 4; ++t) {
        q[t] = best_component[static_cast<int>(gen() % m)];
      }
      quadruples.push_back(q);
    }
  }
  return g.estimate_delta_x2(quadruples);
}

}  // namespace gpwb
