// Structural checks on the extension graph: girth and circuit censuses,
// admissible paths, decompositions of bigons, triangles, and circuits into
// copies of the defining graph, geodesic plane counts, tightness constants,
// the asymptotic-dimension cover, and synthetic sample families.
#include "gpwb/ext_checks.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gpwb/errors.hpp"

namespace gpwb {
namespace {

constexpr int kUnset = std::numeric_limits<int>::max() / 4;

ExtPath canonical_path(const ProductContext& ctx, const ExtPath& p) {
  ExtPath out;
  out.reserve(p.size());
  for (const ExtVertex& x : p) {
    out.push_back(make_ext_vertex(ctx, x.vertex, x.rep));
  }
  return out;
}

CopyCoset empty_copies(const ProductContext& ctx) {
  return CopyCoset{false, ctx.identity(), {}};
}

// Copies containing both constraint families.  Exact: a non-empty
// intersection of parabolic cosets is again a parabolic coset of the meet.
CopyCoset meet_copies(const ProductContext& ctx, const CopyCoset& a,
                      const CopyCoset& b) {
  if (!a.nonempty || !b.nonempty) return empty_copies(ctx);
  CosetIntersection r = coset_intersect(ctx, a.meet, a.rep, b.meet, b.rep);
  if (!r.nonempty) return empty_copies(ctx);
  return CopyCoset{true, r.rep, r.meet};
}

// True iff the copy g.Γ belongs to the family c.
bool copies_include(const ProductContext& ctx, const CopyCoset& c,
                    const std::set<int>& kernel, const NormalWord& g) {
  if (!c.nonempty) return false;
  return double_coset_member(ctx, c.meet, kernel, ctx.mul(ctx.inv(c.rep), g));
}

// at(i, j) = copies containing path[i..j]; emptiness propagates outward.
struct IntervalCosets {
  std::vector<std::vector<CopyCoset>> rows;
  const CopyCoset& at(int i, int j) const { return rows[i][j - i]; }
};

IntervalCosets interval_cosets(const ProductContext& ctx, const ExtPath& p) {
  IntervalCosets t;
  const int n = static_cast<int>(p.size());
  t.rows.resize(n);
  for (int i = 0; i < n; ++i) {
    t.rows[i].reserve(n - i);
    CopyCoset c = refine_copies(ctx, all_copies(ctx), p[i]);
    t.rows[i].push_back(c);
    for (int j = i + 1; j < n; ++j) {
      if (c.nonempty) c = refine_copies(ctx, c, p[j]);
      t.rows[i].push_back(c);
    }
  }
  return t;
}

// Minimal number of segment pairs covering prefixes of two paths that share
// their start vertex, each pair inside one common copy.  One side of a pair
// may stand still; both prefixes together must advance.
struct LadderDP {
  std::vector<std::vector<int>> val;
  std::vector<std::vector<std::pair<int, int>>> from;
};

LadderDP ladder_dp(const ProductContext& ctx, const ExtPath& A,
                   const IntervalCosets& CA, const ExtPath& B,
                   const IntervalCosets& CB) {
  const int N = static_cast<int>(A.size()) - 1;
  const int M = static_cast<int>(B.size()) - 1;
  LadderDP dp;
  dp.val.assign(N + 1, std::vector<int>(M + 1, kUnset));
  dp.from.assign(N + 1, std::vector<std::pair<int, int>>(M + 1, {-1, -1}));
  dp.val[0][0] = 0;
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= M; ++j) {
      if (i == 0 && j == 0) continue;
      int& best = dp.val[i][j];
      for (int i2 = i; i2 >= 0; --i2) {
        // A widening interval can only lose copies, so stop at the first
        // empty one.
        if (!CA.at(i2, i).nonempty) break;
        for (int j2 = j; j2 >= 0; --j2) {
          if (!CB.at(j2, j).nonempty) break;
          if (i2 == i && j2 == j) continue;
          if (dp.val[i2][j2] == kUnset || dp.val[i2][j2] + 1 >= best) continue;
          if (!meet_copies(ctx, CA.at(i2, i), CB.at(j2, j)).nonempty) continue;
          best = dp.val[i2][j2] + 1;
          dp.from[i][j] = {i2, j2};
        }
      }
    }
  }
  return dp;
}

struct LadderStep {
  int a_from = 0, a_to = 0, b_from = 0, b_to = 0;
};

// Segment list of the optimal ladder ending at (i, j), ordered from the
// shared start vertex outward.
std::vector<LadderStep> ladder_steps(const LadderDP& dp, int i, int j,
                                     const std::string& what) {
  if (dp.val[i][j] == kUnset) {
    throw VerificationFailure(what + ": no decomposition into copies exists");
  }
  std::vector<LadderStep> out;
  while (i != 0 || j != 0) {
    const auto [pi, pj] = dp.from[i][j];
    out.push_back({pi, i, pj, j});
    i = pi;
    j = pj;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

void require_large_girth(const ProductContext& ctx, const std::string& what) {
  const std::optional<int> g = ctx.graph().girth();
  if (g && *g <= 20) {
    throw std::invalid_argument(what + " requires defining girth > 20");
  }
}

// Validates that the three vertex lists only overlap in the declared shared
// corners and have no internal repetitions.
void require_distinct_sides(const ExtPath& p, const ExtPath& q,
                            const ExtPath& r) {
  auto distinct = [](const ExtPath& s) {
    std::set<ExtVertex> seen(s.begin(), s.end());
    return seen.size() == s.size();
  };
  if (!distinct(p) || !distinct(q) || !distinct(r)) {
    throw std::invalid_argument("triangle side has a repeated vertex");
  }
  auto overlap_only = [](const ExtPath& s, const ExtPath& t,
                         const ExtVertex& corner) {
    std::set<ExtVertex> seen(s.begin(), s.end());
    for (const ExtVertex& x : t) {
      if (seen.count(x) && x != corner) return false;
    }
    return true;
  };
  if (!overlap_only(p, q, p.back()) || !overlap_only(q, r, q.back()) ||
      !overlap_only(p, r, p.front())) {
    throw std::invalid_argument("triangle sides intersect away from corners");
  }
}

std::vector<int> multi_source_distances(const SimplicialGraph& g,
                                        const std::vector<int>& sources) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> bfs;
  for (int s : sources) {
    if (dist[s] < 0) {
      dist[s] = 0;
      bfs.push(s);
    }
  }
  while (!bfs.empty()) {
    const int u = bfs.front();
    bfs.pop();
    for (int w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        bfs.push(w);
      }
    }
  }
  return dist;
}

// Greedy farthest-reach split of a window path into the fewest segments,
// each inside one copy.  Segment feasibility is prefix-closed, so the greedy
// split is minimal.  Returns the mark positions and the final segment's
// copy family.
std::pair<std::vector<int>, CopyCoset> greedy_copy_marks(
    const TruncatedWindow& window, const std::vector<int>& path) {
  const ProductContext& ctx = window.context();
  std::vector<int> marks{0};
  CopyCoset cur = refine_copies(ctx, all_copies(ctx), window.vertex(path[0]));
  for (std::size_t t = 1; t < path.size(); ++t) {
    const CopyCoset next = refine_copies(ctx, cur, window.vertex(path[t]));
    if (next.nonempty) {
      cur = next;
      continue;
    }
    marks.push_back(static_cast<int>(t) - 1);
    cur = copies_containing(
        ctx, {window.vertex(path[t - 1]), window.vertex(path[t])});
    if (!cur.nonempty) {
      throw VerificationFailure("consecutive path vertices share no copy");
    }
  }
  if (marks.back() != static_cast<int>(path.size()) - 1) {
    marks.push_back(static_cast<int>(path.size()) - 1);
  }
  return {marks, cur};
}

// Circular order of a defining circuit's vertex indices; requires a single
// circuit of length 21 (the shape used by the synthetic families).
std::vector<int> require_c21(const ProductContext& ctx) {
  const SimplicialGraph& g = ctx.graph();
  const int n = g.vertex_count();
  bool circuit = g.is_connected() && n == 21;
  for (int v = 0; circuit && v < n; ++v) {
    circuit = g.neighbors(v).size() == 2;
  }
  if (!circuit) {
    throw std::invalid_argument(
        "synthetic families require a defining circuit of length 21");
  }
  std::vector<int> pos{0, g.neighbors(0)[0]};
  while (static_cast<int>(pos.size()) < n) {
    const int prev = pos[pos.size() - 2];
    const int cur = pos.back();
    const auto& nb = g.neighbors(cur);
    pos.push_back(nb[0] == prev ? nb[1] : nb[0]);
  }
  return pos;
}

// Non-identity single-syllable choices at v (both generators for an
// infinite cyclic group, every non-identity element otherwise).
std::vector<long long> junction_elements(const ProductContext& ctx, int v) {
  const VertexGroup& G = ctx.group(v);
  if (G.is_infinite_cyclic()) return {1, -1};
  std::vector<long long> out;
  for (long long e = 1; e < G.order(); ++e) out.push_back(e);
  return out;
}

ExtPath translate(const ProductContext& ctx, const NormalWord& g,
                  const ExtPath& p) {
  if (g.empty()) return p;
  ExtPath out;
  out.reserve(p.size());
  for (const ExtVertex& x : p) out.push_back(act(ctx, g, x));
  return out;
}

// The length-19 geodesic pair around a one-syllable copy: side p runs 10
// base edges and 9 copy edges, side q runs 9 base edges and 10 copy edges;
// both join base t to the copy's vertex over t+1.
struct ThetaPair {
  ExtPath p, q;
};

ThetaPair theta_pair(const ProductContext& ctx, const std::vector<int>& pos,
                     int t, const NormalWord& s) {
  auto at = [&](int k) { return pos[((k % 21) + 21) % 21]; };
  ThetaPair out;
  for (int k = 0; k <= 10; ++k) out.p.push_back(base_vertex(ctx, at(t + k)));
  for (int k = 9; k >= 1; --k) {
    out.p.push_back(make_ext_vertex(ctx, at(t + k), s));
  }
  for (int k = 0; k <= 9; ++k) out.q.push_back(base_vertex(ctx, at(t - k)));
  for (int k = 13; k <= 21; ++k) {
    out.q.push_back(make_ext_vertex(ctx, at(t + k), s));
  }
  out.q.push_back(make_ext_vertex(ctx, at(t + 1), s));
  return out;
}

// Certifies that a freshly constructed sample path is geodesic; used on an
// untranslated instance, after which group translates inherit the
// certificate because the group acts by graph automorphisms.
void certify_sample(WindowFamily& family, const ExtPath& path,
                    const std::string& what) {
  const std::vector<int> schedule{1, 2};
  const CertifiedDistance d =
      window_distance(family, path.front(), path.back(), schedule);
  if (!d.certified || d.distance != static_cast<int>(path.size()) - 1) {
    throw VerificationFailure(what + " failed geodesic certification");
  }
}

}  // namespace

void require_ext_path(const ProductContext& ctx, const ExtPath& p) {
  if (p.empty()) throw std::invalid_argument("empty path");
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!ext_adjacent(ctx, p[i], p[i + 1])) {
      throw std::invalid_argument("consecutive path vertices are not adjacent");
    }
  }
}

void require_certified_geodesic(WindowFamily& family, const ExtPath& p_in,
                                const std::vector<int>& schedule) {
  const ProductContext& ctx = family.context();
  const ExtPath p = canonical_path(ctx, p_in);
  require_ext_path(ctx, p);
  const CertifiedDistance d =
      window_distance(family, p.front(), p.back(), schedule);
  if (!d.certified) {
    throw std::invalid_argument(
        "endpoint distance did not certify within the window schedule");
  }
  if (d.distance != static_cast<int>(p.size()) - 1) {
    throw std::invalid_argument(
        "path is not geodesic: length " + std::to_string(p.size() - 1) +
        " vs certified distance " + std::to_string(d.distance));
  }
}

GirthReport girth_check(WindowFamily& family, int L, int n_max,
                        std::size_t cap) {
  const ProductContext& ctx = family.context();
  const TruncatedWindow& window = family.at(L);
  const SimplicialGraph& g = window.graph();
  const std::optional<int> base_girth = ctx.graph().girth();
  if (base_girth && n_max < *base_girth) {
    throw std::invalid_argument("circuit budget below the defining girth");
  }
  std::set<Circuit> seen;
  for (const auto& [a, b] : ctx.graph().edges()) {
    const int i = window.index_of(base_vertex(ctx, a));
    const int j = window.index_of(base_vertex(ctx, b));
    for (const Circuit& c : g.circuits_through_edge(i, j, n_max, cap)) {
      seen.insert(c);
    }
  }
  GirthReport rep;
  rep.circuits_checked = static_cast<long long>(seen.size());
  std::optional<int> min_len;
  for (const Circuit& c : seen) {
    const int len = static_cast<int>(c.size());
    if (!min_len || len < *min_len) min_len = len;
  }
  rep.min_circuit_length = min_len;
  rep.minimal_circuits_single_copy = true;
  if (min_len) {
    for (const Circuit& c : seen) {
      if (static_cast<int>(c.size()) != *min_len) continue;
      ++rep.minimal_circuits;
      std::vector<ExtVertex> verts;
      verts.reserve(c.size());
      for (int idx : c) verts.push_back(window.vertex(idx));
      if (!copies_containing(ctx, verts).nonempty) {
        rep.minimal_circuits_single_copy = false;
      }
    }
  }
  // The whole window must agree as well: any window circuit is a genuine
  // circuit of the extension graph, so a short one would be a falsification.
  rep.matches_defining_girth =
      (g.girth() == base_girth) && (min_len == base_girth);
  return rep;
}

long long doubling_census(WindowFamily& family, int v, int L,
                          std::size_t cap) {
  const ProductContext& ctx = family.context();
  const SimplicialGraph& base = ctx.graph();
  const int n = base.vertex_count();
  bool circuit = base.is_connected() && n > 20;
  for (int u = 0; circuit && u < n; ++u) {
    circuit = base.neighbors(u).size() == 2;
  }
  if (!circuit) {
    throw std::invalid_argument(
        "doubling census requires a defining circuit of length > 20");
  }
  if (L < 1) {
    throw std::invalid_argument("doubling census needs window radius >= 1");
  }
  const TruncatedWindow& window = family.at(L);
  const auto& nb = base.neighbors(v);
  const int iu = window.index_of(base_vertex(ctx, nb[0]));
  const int iv = window.index_of(base_vertex(ctx, v));
  const int iw = window.index_of(base_vertex(ctx, nb[1]));
  long long count = 0;
  for (const Circuit& c : window.graph().circuits_through_edge(iu, iv, n, cap)) {
    if (static_cast<int>(c.size()) != n) continue;
    if (std::find(c.begin(), c.end(), iw) == c.end()) continue;
    ++count;
  }
  return count;
}

FinenessCensus fineness_census(WindowFamily& family, int a, int b, int n,
                               const std::vector<int>& L_schedule,
                               std::size_t cap) {
  const ProductContext& ctx = family.context();
  if (!ctx.graph().adjacent(a, b)) {
    throw std::invalid_argument("fineness census requires a base edge");
  }
  if (L_schedule.empty()) throw std::invalid_argument("empty window schedule");
  for (std::size_t i = 1; i < L_schedule.size(); ++i) {
    if (L_schedule[i] <= L_schedule[i - 1]) {
      throw std::invalid_argument("window schedule must increase");
    }
  }
  FinenessCensus out;
  for (int L : L_schedule) {
    const TruncatedWindow& window = family.at(L);
    const int i = window.index_of(base_vertex(ctx, a));
    const int j = window.index_of(base_vertex(ctx, b));
    const long long count = static_cast<long long>(
        window.graph().circuits_through_edge(i, j, n, cap).size());
    out.counts.push_back({L, count});
    if (!out.stabilized && out.counts.size() >= 2 &&
        out.counts[out.counts.size() - 2].second == count) {
      out.stabilized = true;
      out.value = count;
    }
  }
  return out;
}

bool is_admissible(const ProductContext& ctx, const ExtPath& p_in,
                   const std::vector<int>& marks) {
  const ExtPath p = canonical_path(ctx, p_in);
  require_ext_path(ctx, p);
  const int last = static_cast<int>(p.size()) - 1;
  if (marks.size() < 2 || marks.front() != 0 || marks.back() != last) {
    throw std::invalid_argument(
        "marks must start at the first and end at the last vertex");
  }
  for (std::size_t t = 1; t < marks.size(); ++t) {
    if (marks[t] < marks[t - 1] || marks[t] > last) {
      throw std::invalid_argument("marks must be non-decreasing positions");
    }
  }
  std::vector<CopyCoset> folds;
  std::vector<int> lengths;
  for (std::size_t t = 1; t < marks.size(); ++t) {
    CopyCoset c = refine_copies(ctx, all_copies(ctx), p[marks[t - 1]]);
    for (int i = marks[t - 1] + 1; i <= marks[t] && c.nonempty; ++i) {
      c = refine_copies(ctx, c, p[i]);
    }
    // (1) the segment lies in a copy and is geodesic there; inside a copy
    // the orbit distance is the exact distance.
    if (!c.nonempty) return false;
    const int len = marks[t] - marks[t - 1];
    const int d =
        ctx.graph().distance(p[marks[t - 1]].vertex, p[marks[t]].vertex);
    if (len != d) return false;
    folds.push_back(c);
    lengths.push_back(len);
  }
  for (std::size_t t = 0; t + 1 < folds.size(); ++t) {
    // (2) no copy contains two consecutive segments.
    CopyCoset both = meet_copies(ctx, folds[t], folds[t + 1]);
    if (both.nonempty) {
      CopyCoset wide = both;
      for (int i = marks[t]; i <= marks[t + 2] && wide.nonempty; ++i) {
        wide = refine_copies(ctx, wide, p[i]);
      }
      if (wide.nonempty) return false;
    }
    // (3) short adjacent segments admit no backtracking.
    if (std::max(lengths[t], lengths[t + 1]) <= 4) {
      for (int i = marks[t] + 1; i < marks[t + 2]; ++i) {
        if (p[i - 1] == p[i + 1]) return false;
      }
    }
  }
  return true;
}

BigonWitness bigon_decomposition(WindowFamily& family, const ExtPath& p_in,
                                 const ExtPath& q_in,
                                 const std::vector<int>& schedule) {
  const ProductContext& ctx = family.context();
  require_large_girth(ctx, "bigon decomposition");
  const ExtPath p = canonical_path(ctx, p_in);
  const ExtPath q = canonical_path(ctx, q_in);
  if (p.size() < 2 || q.size() < 2) {
    throw std::invalid_argument("bigon sides need at least one edge");
  }
  if (p.front() != q.front() || p.back() != q.back()) {
    throw std::invalid_argument("bigon sides must share their endpoints");
  }
  if (p.front() == p.back()) {
    throw std::invalid_argument("bigon endpoints must be distinct");
  }
  {
    std::set<ExtVertex> pv(p.begin(), p.end());
    std::set<ExtVertex> qv(q.begin(), q.end());
    if (pv.size() != p.size() || qv.size() != q.size()) {
      throw std::invalid_argument("bigon side has a repeated vertex");
    }
    for (std::size_t t = 1; t + 1 < q.size(); ++t) {
      if (pv.count(q[t])) {
        throw std::invalid_argument(
            "bigon sides intersect away from the endpoints");
      }
    }
  }
  require_certified_geodesic(family, p, schedule);
  require_certified_geodesic(family, q, schedule);
  const int N = static_cast<int>(p.size()) - 1;
  const int M = static_cast<int>(q.size()) - 1;

  const IntervalCosets CP = interval_cosets(ctx, p);
  const IntervalCosets CQ = interval_cosets(ctx, q);
  const LadderDP dp = ladder_dp(ctx, p, CP, q, CQ);
  const std::vector<LadderStep> steps = ladder_steps(dp, N, M, "bigon");

  BigonWitness w;
  std::vector<CopyCoset> folds;
  for (const LadderStep& s : steps) {
    const CopyCoset f =
        meet_copies(ctx, CP.at(s.a_from, s.a_to), CQ.at(s.b_from, s.b_to));
    folds.push_back(f);
    w.segments.push_back(
        {s.a_from, s.a_to, s.b_from, s.b_to, copy_id(ctx, f.rep)});
  }
  for (const BigonSegment& s : w.segments) {
    if (std::min(s.p_to - s.p_from, s.q_to - s.q_from) < 7) {
      throw VerificationFailure("bigon segment overlap below 7");
    }
  }
  for (std::size_t t = 0; t + 1 < folds.size(); ++t) {
    if (meet_copies(ctx, folds[t], folds[t + 1]).nonempty) {
      throw VerificationFailure("consecutive bigon segments share a copy");
    }
    // Junction marks lie in two distinct copies, hence at distance <= 2;
    // both sit inside folds[t], so the orbit distance is exact.
    const ExtVertex& x = p[w.segments[t].p_to];
    const ExtVertex& y = q[w.segments[t].q_to];
    const int d = ctx.graph().distance(x.vertex, y.vertex);
    if (d < 0 || d > 2) {
      throw VerificationFailure("bigon junction marks exceed distance 2");
    }
  }
  return w;
}

TriangleWitness triangle_decomposition(WindowFamily& family,
                                       const ExtPath& p_in, const ExtPath& q_in,
                                       const ExtPath& r_in,
                                       const std::vector<int>& schedule) {
  const ProductContext& ctx = family.context();
  require_large_girth(ctx, "triangle decomposition");
  const ExtPath p = canonical_path(ctx, p_in);  // a -> b
  const ExtPath q = canonical_path(ctx, q_in);  // b -> c
  const ExtPath r = canonical_path(ctx, r_in);  // a -> c
  if (p.size() < 2 || q.size() < 2 || r.size() < 2) {
    throw std::invalid_argument("triangle sides need at least one edge");
  }
  const ExtVertex a = p.front();
  const ExtVertex b = p.back();
  const ExtVertex c = q.back();
  if (q.front() != b || r.front() != a || r.back() != c) {
    throw std::invalid_argument("triangle sides do not share their corners");
  }
  if (a == b || b == c || a == c) {
    throw std::invalid_argument("triangle corners must be distinct");
  }
  require_distinct_sides(p, q, r);
  require_certified_geodesic(family, p, schedule);
  require_certified_geodesic(family, q, schedule);
  require_certified_geodesic(family, r, schedule);

  const int N = static_cast<int>(p.size()) - 1;
  const int M = static_cast<int>(q.size()) - 1;
  const int Lr = static_cast<int>(r.size()) - 1;
  const ExtPath p_rev(p.rbegin(), p.rend());
  const ExtPath q_rev(q.rbegin(), q.rend());
  const ExtPath r_rev(r.rbegin(), r.rend());
  const IntervalCosets CP = interval_cosets(ctx, p);
  const IntervalCosets CQ = interval_cosets(ctx, q);
  const IntervalCosets CR = interval_cosets(ctx, r);
  const IntervalCosets CPrev = interval_cosets(ctx, p_rev);
  const IntervalCosets CQrev = interval_cosets(ctx, q_rev);
  const IntervalCosets CRrev = interval_cosets(ctx, r_rev);
  const LadderDP dpA = ladder_dp(ctx, p, CP, r, CR);
  const LadderDP dpB = ladder_dp(ctx, p_rev, CPrev, q, CQ);
  const LadderDP dpC = ladder_dp(ctx, q_rev, CQrev, r_rev, CRrev);

  // Candidate central copies: every copy through one vertex of each side
  // contains a copy of some constrained pair, so scanning vertex triples
  // with at least two distinct vertices is exhaustive.
  std::set<NormalWord> candidates;
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= M; ++j) {
      for (int l = 0; l <= Lr; ++l) {
        std::set<ExtVertex> distinct{p[i], q[j], r[l]};
        if (distinct.size() < 2) continue;
        CopyCoset cand = all_copies(ctx);
        for (const ExtVertex& x : distinct) {
          cand = refine_copies(ctx, cand, x);
          if (!cand.nonempty) break;
        }
        if (!cand.nonempty) continue;
        for (const NormalWord& id : expand_copies(ctx, cand)) {
          candidates.insert(id);
        }
      }
    }
  }
  if (candidates.empty()) {
    throw VerificationFailure("no candidate central copy meets all sides");
  }

  struct Best {
    int total = kUnset;
    NormalWord k;
    int i1 = 0, i2 = 0, j1 = 0, j2 = 0, l1 = 0, l2 = 0;
  } best;

  for (const NormalWord& k : candidates) {
    // Maximal run of each side inside k.Γ; a split run would contradict
    // convexity of copies.
    auto run_of = [&](const ExtPath& side) -> std::optional<std::pair<int, int>> {
      int lo = -1, hi = -1;
      for (int t = 0; t < static_cast<int>(side.size()); ++t) {
        if (!in_copy(ctx, k, side[t])) continue;
        if (lo < 0) {
          lo = hi = t;
        } else if (t == hi + 1) {
          hi = t;
        } else {
          throw VerificationFailure("copy meets a geodesic non-contiguously");
        }
      }
      if (lo < 0) return std::nullopt;
      return std::make_pair(lo, hi);
    };
    const auto rp = run_of(p);
    const auto rq = run_of(q);
    const auto rr = run_of(r);
    if (!rp || !rq || !rr) continue;
    const auto [pl, pr] = *rp;
    const auto [ql, qr] = *rq;
    const auto [rl, rz] = *rr;

    // PA[i2][l2] = min dpA over x_n <= i2, z_n <= l2 within the runs.
    std::vector<std::vector<int>> PA(N + 1, std::vector<int>(Lr + 1, kUnset));
    std::vector<std::vector<std::pair<int, int>>> PAarg(
        N + 1, std::vector<std::pair<int, int>>(Lr + 1, {-1, -1}));
    for (int i = pl; i <= pr; ++i) {
      for (int l = rl; l <= rz; ++l) {
        int v = dpA.val[i][l];
        std::pair<int, int> arg{i, l};
        if (i > pl && PA[i - 1][l] < v) {
          v = PA[i - 1][l];
          arg = PAarg[i - 1][l];
        }
        if (l > rl && PA[i][l - 1] < v) {
          v = PA[i][l - 1];
          arg = PAarg[i][l - 1];
        }
        PA[i][l] = v;
        PAarg[i][l] = arg;
      }
    }
    // RC[j1][l2] = min over y'_0 = j2 >= j1 of dpC at (q-suffix, r-suffix).
    std::vector<std::vector<int>> RC(M + 1, std::vector<int>(Lr + 1, kUnset));
    std::vector<std::vector<int>> RCarg(M + 1, std::vector<int>(Lr + 1, -1));
    for (int l = rl; l <= rz; ++l) {
      for (int j = qr; j >= ql; --j) {
        int v = dpC.val[M - j][Lr - l];
        int arg = j;
        if (j < qr && RC[j + 1][l] < v) {
          v = RC[j + 1][l];
          arg = RCarg[j + 1][l];
        }
        RC[j][l] = v;
        RCarg[j][l] = arg;
      }
    }
    for (int i2 = pl; i2 <= pr; ++i2) {
      for (int j1 = ql; j1 <= qr; ++j1) {
        const int vb = dpB.val[N - i2][j1];
        if (vb >= kUnset) continue;
        for (int l2 = rl; l2 <= rz; ++l2) {
          const int va = PA[i2][l2];
          const int vc = RC[j1][l2];
          if (va >= kUnset || vc >= kUnset) continue;
          const int total = va + vb + vc;
          if (total < best.total) {
            best.total = total;
            best.k = k;
            best.i1 = PAarg[i2][l2].first;
            best.l1 = PAarg[i2][l2].second;
            best.i2 = i2;
            best.j1 = j1;
            best.j2 = RCarg[j1][l2];
            best.l2 = l2;
          }
        }
      }
    }
  }
  if (best.total >= kUnset) {
    throw VerificationFailure(
        "no triangle decomposition into corner ladders and a central copy");
  }

  const std::vector<LadderStep> stepsA =
      ladder_steps(dpA, best.i1, best.l1, "triangle corner a");
  const std::vector<LadderStep> stepsB =
      ladder_steps(dpB, N - best.i2, best.j1, "triangle corner b");
  const std::vector<LadderStep> stepsC =
      ladder_steps(dpC, M - best.j2, Lr - best.l2, "triangle corner c");

  TriangleWitness w;
  w.central_copy = best.k;
  w.p_from = best.i1;
  w.p_to = best.i2;
  w.q_from = best.j1;
  w.q_to = best.j2;
  w.r_from = best.l1;
  w.r_to = best.l2;

  const std::set<int> kernel = copy_kernel(ctx);
  // Per-ladder verification: overlaps of at least 7, consecutive copies
  // disjoint, and the step nearest the center distinct from the central
  // copy.
  auto check_ladder = [&](const std::vector<LadderStep>& steps,
                          const IntervalCosets& CA, const IntervalCosets& CB,
                          const std::string& what)
      -> std::vector<CopyCoset> {
    std::vector<CopyCoset> folds;
    for (const LadderStep& s : steps) {
      const CopyCoset f =
          meet_copies(ctx, CA.at(s.a_from, s.a_to), CB.at(s.b_from, s.b_to));
      folds.push_back(f);
      if (std::min(s.a_to - s.a_from, s.b_to - s.b_from) < 7) {
        throw VerificationFailure(what + ": ladder overlap below 7");
      }
    }
    for (std::size_t t = 0; t + 1 < folds.size(); ++t) {
      if (meet_copies(ctx, folds[t], folds[t + 1]).nonempty) {
        throw VerificationFailure(what + ": consecutive steps share a copy");
      }
    }
    if (!folds.empty() &&
        copies_include(ctx, folds.back(), kernel, best.k)) {
      throw VerificationFailure(what +
                                ": innermost step equals the central copy");
    }
    return folds;
  };
  check_ladder(stepsA, CP, CR, "corner a");
  check_ladder(stepsB, CPrev, CQ, "corner b");
  check_ladder(stepsC, CQrev, CRrev, "corner c");

  for (const LadderStep& s : stepsA) {
    const CopyCoset f =
        meet_copies(ctx, CP.at(s.a_from, s.a_to), CR.at(s.b_from, s.b_to));
    w.a_ladder.push_back({s.a_from, s.a_to, s.b_from, s.b_to,
                          copy_id(ctx, f.rep)});
  }
  for (const LadderStep& s : stepsB) {
    const CopyCoset f =
        meet_copies(ctx, CPrev.at(s.a_from, s.a_to), CQ.at(s.b_from, s.b_to));
    w.b_ladder.push_back({N - s.a_to, N - s.a_from, s.b_from, s.b_to,
                          copy_id(ctx, f.rep)});
  }
  for (const LadderStep& s : stepsC) {
    const CopyCoset f = meet_copies(ctx, CQrev.at(s.a_from, s.a_to),
                                    CRrev.at(s.b_from, s.b_to));
    w.c_ladder.push_back({M - s.a_to, M - s.a_from, Lr - s.b_to,
                          Lr - s.b_from, copy_id(ctx, f.rep)});
  }

  // Condition on near-degenerate corners: with no a- or b-ladder and
  // corners a, b at distance <= 2, the central overlaps on the remaining
  // sides must reach 7.
  if (stepsA.empty() && stepsB.empty()) {
    const int dab = ctx.graph().distance(a.vertex, b.vertex);
    if (dab >= 0 && dab <= 2 &&
        std::min(best.j2 - best.j1, best.l2 - best.l1) < 7) {
      throw VerificationFailure(
          "degenerate triangle with short central overlaps");
    }
  }
  return w;
}

CircuitCopyWitness circuit_copy_witness(const ProductContext& ctx,
                                        const ExtPath& circuit_in,
                                        std::size_t cap) {
  require_large_girth(ctx, "circuit witness");
  const ExtPath c = canonical_path(ctx, circuit_in);
  const int n = static_cast<int>(c.size());
  if (n < 3) {
    throw std::invalid_argument("a circuit needs at least three vertices");
  }
  {
    std::set<ExtVertex> seen(c.begin(), c.end());
    if (seen.size() != c.size()) {
      throw std::invalid_argument("circuit has a repeated vertex");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!ext_adjacent(ctx, c[i], c[(i + 1) % n])) {
      throw std::invalid_argument("circuit edges must be adjacent pairs");
    }
  }
  // Every witness subpath contains a circuit edge, so expanding each edge's
  // copy family is exhaustive.
  std::set<NormalWord> candidates;
  for (int i = 0; i < n; ++i) {
    const CopyCoset e = copies_containing(ctx, {c[i], c[(i + 1) % n]});
    for (const NormalWord& id : expand_copies(ctx, e, cap)) {
      candidates.insert(id);
    }
  }
  std::vector<std::vector<char>> flags;
  std::vector<NormalWord> order(candidates.begin(), candidates.end());
  for (const NormalWord& g : order) {
    std::vector<char> f(n);
    bool all = true;
    for (int i = 0; i < n; ++i) {
      f[i] = in_copy(ctx, g, c[i]) ? 1 : 0;
      all = all && f[i];
    }
    if (all) return {0, 0, g, {}, true};
    flags.push_back(std::move(f));
  }
  for (std::size_t gi = 0; gi < order.size(); ++gi) {
    const NormalWord& g = order[gi];
    const std::vector<char>& f = flags[gi];
    for (int s = 0; s < n; ++s) {
      if (!f[s] || f[(s - 1 + n) % n]) continue;  // run start
      int len = 0;
      while (f[(s + len) % n]) ++len;
      for (int o1 = 0; o1 + 2 < len; ++o1) {
        for (int o2 = o1 + 2; o2 < len; ++o2) {
          const ExtVertex& av = c[(s + o1) % n];
          const ExtVertex& bv = c[(s + o2) % n];
          const int d = ctx.graph().distance(av.vertex, bv.vertex);
          if (d < 1 || d > 4 || o2 - o1 <= d) continue;
          const auto geos = ctx.graph().geodesics(av.vertex, bv.vertex, cap);
          if (geos.size() != 1) {
            throw VerificationFailure(
                "short in-copy geodesic is not unique despite girth > 20");
          }
          ExtPath shortcut;
          for (int wv : geos[0]) {
            shortcut.push_back(act(ctx, g, base_vertex(ctx, wv)));
          }
          if (shortcut.front() != av || shortcut.back() != bv) {
            throw VerificationFailure("copy geodesic endpoints mismatch");
          }
          std::set<ExtVertex> sub;
          for (int t = o1; t <= o2; ++t) sub.insert(c[(s + t) % n]);
          bool clean = true;
          for (std::size_t t = 1; t + 1 < shortcut.size(); ++t) {
            if (sub.count(shortcut[t])) {
              clean = false;
              break;
            }
          }
          if (!clean) continue;
          return {(s + o1) % n, o2 - o1, g, shortcut, false};
        }
      }
    }
  }
  throw VerificationFailure("no copy shortcut found for the circuit");
}

std::vector<PlaneVisit> plane_visits(const ProductContext& ctx,
                                     const ExtPath& p_in, int n,
                                     std::size_t cap) {
  if (n < 1) throw std::invalid_argument("plane visits need n >= 1");
  const ExtPath p = canonical_path(ctx, p_in);
  require_ext_path(ctx, p);
  const int len = static_cast<int>(p.size()) - 1;
  std::set<NormalWord> candidates;
  for (int i = 0; i + n <= len; ++i) {
    CopyCoset c = all_copies(ctx);
    for (int t = i; t <= i + n && c.nonempty; ++t) {
      c = refine_copies(ctx, c, p[t]);
    }
    if (!c.nonempty) continue;
    for (const NormalWord& id : expand_copies(ctx, c, cap)) {
      candidates.insert(id);
    }
  }
  std::vector<PlaneVisit> out;
  for (const NormalWord& g : candidates) {
    int lo = -1, hi = -1;
    for (int t = 0; t <= len; ++t) {
      if (!in_copy(ctx, g, p[t])) continue;
      if (lo < 0) {
        lo = hi = t;
      } else if (t == hi + 1) {
        hi = t;
      } else {
        throw VerificationFailure("copy meets a geodesic non-contiguously");
      }
    }
    if (lo >= 0 && hi - lo >= n) out.push_back({g, lo, hi});
  }
  std::sort(out.begin(), out.end(), [](const PlaneVisit& a, const PlaneVisit& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.copy < b.copy;
  });
  return out;
}

bool plane_count_check(const ProductContext& ctx, const ExtPath& p, int k,
                       int c_index, std::size_t cap) {
  if (k < 0) throw std::invalid_argument("plane count needs k >= 0");
  if (c_index < 0 || c_index >= static_cast<int>(p.size())) {
    throw std::invalid_argument("plane count center outside the path");
  }
  long long hits = 0;
  for (const PlaneVisit& v : plane_visits(ctx, p, 3, cap)) {
    // Distance along the geodesic from the center to the visit interval.
    const int d = c_index < v.from ? v.from - c_index
                                   : (c_index > v.to ? c_index - v.to : 0);
    if (d <= k) ++hits;
  }
  return hits <= 2LL * (k + 1) + 4;
}

TightnessConstants tightness_constants(
    long long k, long long delta,
    const std::map<long long, long long>& f_values) {
  if (k < 0 || delta < 0) {
    throw std::invalid_argument("tightness constants need k, delta >= 0");
  }
  const auto f = [&](long long x) {
    const auto it = f_values.find(x);
    if (it == f_values.end()) {
      throw std::invalid_argument("missing fineness bound f(" +
                                  std::to_string(x) + ")");
    }
    return it->second;
  };
  const long long a0 = k + 2 * delta + 3;
  const long long a1 = k + 4 * delta + 3;
  TightnessConstants t;
  t.P0 = 2 * k + 1 + 2 * a0 * (2 * a0 + 4) * f(24 * delta + 32);
  t.P1 = 2 * k + 1 + 2 * a1 * (2 * a1 + 4) * f(32 * delta + 32);
  t.k1 = k + 12 * delta + 23;
  return t;
}

long long defining_fineness_bound(const SimplicialGraph& graph, int n,
                                  std::size_t cap) {
  long long best = 0;
  for (const auto& [a, b] : graph.edges()) {
    best = std::max(
        best,
        static_cast<long long>(graph.circuits_through_edge(a, b, n, cap).size()));
  }
  return best;
}

std::vector<int> geodesic_union(const TruncatedWindow& window, int a, int b) {
  const SimplicialGraph& g = window.graph();
  const std::vector<int> da = g.bfs_distances(a);
  const std::vector<int> db = g.bfs_distances(b);
  const int D = da[b];
  std::vector<int> out;
  if (D < 0) return out;
  for (int t = 0; t < g.vertex_count(); ++t) {
    if (da[t] >= 0 && db[t] >= 0 && da[t] + db[t] == D) out.push_back(t);
  }
  return out;
}

ConedDecomposition coned_off_geodesic_decompose(const TruncatedWindow& window,
                                                const SimplicialGraph& coned,
                                                const std::vector<int>& path) {
  if (path.empty()) throw std::invalid_argument("empty path");
  const SimplicialGraph& g = window.graph();
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    if (!g.adjacent(path[t], path[t + 1])) {
      throw std::invalid_argument("path is not a window path");
    }
  }
  if (g.distance(path.front(), path.back()) !=
      static_cast<int>(path.size()) - 1) {
    throw std::invalid_argument("path is not a window geodesic");
  }
  auto [marks, last] = greedy_copy_marks(window, path);
  (void)last;
  ConedDecomposition out;
  out.marks = marks;
  out.coned_distance = coned.distance(path.front(), path.back());
  const int segments = static_cast<int>(marks.size()) - 1;
  if (path.size() == 1) {
    return out;
  }
  for (int t = 1; t <= segments; ++t) {
    // Consecutive marks share the segment's copy, so they are coned-off
    // adjacent whenever distinct.
    if (path[marks[t - 1]] != path[marks[t]] &&
        !coned.adjacent(path[marks[t - 1]], path[marks[t]])) {
      throw VerificationFailure("marks are not coned-off adjacent");
    }
  }
  if (segments != out.coned_distance) {
    throw VerificationFailure(
        "greedy decomposition into copies (" + std::to_string(segments) +
        " segments) does not realize the coned-off distance " +
        std::to_string(out.coned_distance));
  }
  // Independent coned-off geodesic via least-index BFS parents.
  const std::vector<int> parent = coned.bfs_parents(path.front());
  std::vector<int> alpha{path.back()};
  while (alpha.back() != path.front()) {
    const int nxt = parent[alpha.back()];
    if (nxt < 0) throw VerificationFailure("coned-off graph is disconnected");
    alpha.push_back(nxt);
  }
  int hausdorff = 0;
  auto one_sided = [&](const std::vector<int>& from,
                       const std::vector<int>& to) {
    for (int u : from) {
      const std::vector<int> d = coned.bfs_distances(u);
      int nearest = kUnset;
      for (int v : to) {
        if (d[v] >= 0) nearest = std::min(nearest, d[v]);
      }
      hausdorff = std::max(hausdorff, nearest);
    }
  };
  std::vector<int> mark_vertices;
  for (int m : marks) mark_vertices.push_back(path[m]);
  one_sided(mark_vertices, alpha);
  one_sided(alpha, mark_vertices);
  out.hausdorff = hausdorff;
  return out;
}

AsdimCover asdim_cover(const TruncatedWindow& window,
                       const SimplicialGraph& coned, const ExtVertex& origin,
                       int R) {
  const ProductContext& ctx = window.context();
  if (R < 0) throw std::invalid_argument("cover radius must be non-negative");
  if (coned.vertex_count() != window.size()) {
    throw std::invalid_argument("coned graph does not match the window");
  }
  const int o =
      window.index_of(make_ext_vertex(ctx, origin.vertex, origin.rep));
  if (o < 0) throw std::invalid_argument("origin is outside the window");
  const std::vector<int> dhat = coned.bfs_distances(o);
  const std::vector<int> parent = window.graph().bfs_parents(o);
  std::map<std::pair<int, NormalWord>, std::vector<int>> pieces;
  for (int x = 0; x < window.size(); ++x) {
    if (dhat[x] < 0 || dhat[x] > R + 1) continue;
    std::vector<int> path{x};
    while (path.back() != o) {
      const int nxt = parent[path.back()];
      if (nxt < 0) {
        throw VerificationFailure(
            "window is disconnected: no tree path to a covered vertex");
      }
      path.push_back(nxt);
    }
    std::reverse(path.begin(), path.end());
    auto [marks, lastfold] = greedy_copy_marks(window, path);
    const int segments = static_cast<int>(marks.size()) - 1;
    if (segments != dhat[x]) {
      throw VerificationFailure(
          "tree-path decomposition does not realize the coned-off distance");
    }
    pieces[{dhat[x], copy_id(ctx, lastfold.rep)}].push_back(x);
  }
  AsdimCover cover;
  cover.origin = o;
  cover.R = R;
  for (auto& [key, members] : pieces) {
    std::sort(members.begin(), members.end());
    cover.pieces.push_back({key.first, key.second, members});
  }
  return cover;
}

CoverSeparationReport cover_separation_check(const TruncatedWindow& window,
                                             const SimplicialGraph& coned,
                                             const AsdimCover& cover, int r) {
  if (r < 0) throw std::invalid_argument("separation radius must be >= 0");
  const ProductContext& ctx = window.context();
  const std::vector<int> dhat = coned.bfs_distances(cover.origin);
  CoverSeparationReport rep;

  std::vector<int> expected;
  for (int x = 0; x < window.size(); ++x) {
    if (dhat[x] >= 0 && dhat[x] <= cover.R + 1) expected.push_back(x);
  }
  std::vector<int> got;
  for (const AsdimPiece& piece : cover.pieces) {
    got.insert(got.end(), piece.members.begin(), piece.members.end());
  }
  std::sort(got.begin(), got.end());
  rep.pieces_cover_ball = (got == expected);

  rep.pieces_inside_their_copy = true;
  for (const AsdimPiece& piece : cover.pieces) {
    for (int idx : piece.members) {
      if (!in_copy(ctx, piece.label, window.vertex(idx))) {
        rep.pieces_inside_their_copy = false;
      }
    }
  }

  std::vector<int> inner;
  for (int x = 0; x < window.size(); ++x) {
    if (dhat[x] >= 0 && dhat[x] <= cover.R) inner.push_back(x);
  }
  const std::vector<int> wdist =
      multi_source_distances(window.graph(), inner);
  std::set<int> removed;
  for (int x : expected) {
    if (wdist[x] >= 0 && wdist[x] <= 3 * r + 12) removed.insert(x);
  }
  std::vector<std::vector<int>> survivors;
  for (const AsdimPiece& piece : cover.pieces) {
    std::vector<int> s;
    for (int idx : piece.members) {
      if (!removed.count(idx)) s.push_back(idx);
    }
    survivors.push_back(std::move(s));
  }
  rep.separation_holds = true;
  rep.vacuous = true;
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    if (survivors[i].empty()) continue;
    const std::vector<int> dist =
        multi_source_distances(window.graph(), survivors[i]);
    for (std::size_t j = i + 1; j < survivors.size(); ++j) {
      if (survivors[j].empty()) continue;
      rep.vacuous = false;
      int pair_min = kUnset;
      for (int idx : survivors[j]) {
        if (dist[idx] >= 0) pair_min = std::min(pair_min, dist[idx]);
      }
      if (pair_min == kUnset) continue;  // unreachable: separated
      if (rep.min_separation < 0 || pair_min < rep.min_separation) {
        rep.min_separation = pair_min;
      }
      if (pair_min < r) rep.separation_holds = false;
    }
  }
  return rep;
}

std::vector<std::pair<ExtPath, ExtPath>> synthetic_long_bigons(
    WindowFamily& family, int want) {
  const ProductContext& ctx = family.context();
  std::vector<std::pair<ExtPath, ExtPath>> out;
  if (want <= 0) return out;
  const std::vector<int> pos = require_c21(ctx);
  const std::vector<NormalWord> shifts = ctx.enumerate_ball(1);
  for (const NormalWord& g : shifts) {
    for (int t = 0; t < 21; ++t) {
      for (long long e : junction_elements(ctx, pos[(t + 11) % 21])) {
        if (static_cast<int>(out.size()) >= want) return out;
        const NormalWord s = ctx.from_syllable(pos[(t + 11) % 21], e);
        const ThetaPair base = theta_pair(ctx, pos, t, s);
        if (g.empty()) {
          certify_sample(family, base.p, "synthetic bigon");
        }
        out.push_back({translate(ctx, g, base.p), translate(ctx, g, base.q)});
      }
    }
  }
  return out;
}

std::vector<std::array<ExtPath, 3>> synthetic_triangles(WindowFamily& family,
                                                        int want) {
  const ProductContext& ctx = family.context();
  std::vector<std::array<ExtPath, 3>> out;
  if (want <= 0) return out;
  const std::vector<int> pos = require_c21(ctx);
  const std::vector<NormalWord> shifts = ctx.enumerate_ball(1);
  auto at = [&](int k) { return pos[((k % 21) + 21) % 21]; };
  bool split_kind = false;
  for (const NormalWord& g : shifts) {
    for (int t = 0; t < 21; ++t) {
      if (static_cast<int>(out.size()) >= want) return out;
      if (!split_kind) {
        // One-copy girth triangle: three arcs of lengths 7 + 7 + 7.
        ExtPath p, q, r;
        for (int k = 0; k <= 7; ++k) p.push_back(base_vertex(ctx, at(t + k)));
        for (int k = 0; k <= 7; ++k) {
          q.push_back(base_vertex(ctx, at(t + 7 + k)));
        }
        for (int k = 0; k <= 7; ++k) r.push_back(base_vertex(ctx, at(t - k)));
        out.push_back({translate(ctx, g, p), translate(ctx, g, q),
                       translate(ctx, g, r)});
      } else {
        // Split bigon: base arc (10), copy arc (9), against the 19-geodesic.
        const long long e = junction_elements(ctx, at(t + 11)).front();
        const NormalWord s = ctx.from_syllable(at(t + 11), e);
        ExtPath p, q;
        for (int k = 0; k <= 10; ++k) p.push_back(base_vertex(ctx, at(t + k)));
        q.push_back(base_vertex(ctx, at(t + 10)));
        for (int k = 9; k >= 1; --k) {
          q.push_back(make_ext_vertex(ctx, at(t + k), s));
        }
        const ExtPath r = theta_pair(ctx, pos, t, s).q;
        if (g.empty()) {
          certify_sample(family, r, "synthetic triangle long side");
        }
        out.push_back({translate(ctx, g, p), translate(ctx, g, q),
                       translate(ctx, g, r)});
      }
      split_kind = !split_kind;
    }
  }
  return out;
}

std::vector<ExtPath> synthetic_circuits(WindowFamily& family, int want) {
  const ProductContext& ctx = family.context();
  std::vector<ExtPath> out;
  if (want <= 0) return out;
  const std::vector<int> pos = require_c21(ctx);
  const std::vector<NormalWord> shifts = ctx.enumerate_ball(1);
  ExtPath base_cycle;
  for (int k = 0; k < 21; ++k) {
    base_cycle.push_back(base_vertex(ctx, pos[k]));
  }
  for (const NormalWord& g : shifts) {
    if (static_cast<int>(out.size()) >= want) return out;
    out.push_back(translate(ctx, g, base_cycle));
    for (int t = 0; t < 21 && static_cast<int>(out.size()) < want; t += 3) {
      const long long e = junction_elements(ctx, pos[(t + 11) % 21]).front();
      const NormalWord s = ctx.from_syllable(pos[(t + 11) % 21], e);
      const ThetaPair th = theta_pair(ctx, pos, t, s);
      ExtPath circuit = th.p;
      for (std::size_t k = th.q.size() - 2; k >= 1; --k) {
        circuit.push_back(th.q[k]);
      }
      out.push_back(translate(ctx, g, circuit));
    }
  }
  return out;
}

}  // namespace gpwb
