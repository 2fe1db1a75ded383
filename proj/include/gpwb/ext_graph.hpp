// Extension-graph machinery: canonical vertices g·G_v·g⁻¹ of the extension
// graph, copies of the defining graph, finite truncated windows of the
// (locally infinite) extension graph, the coned-off variant, and certified
// window distances.
#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gpwb/parabolic.hpp"

namespace gpwb {

// A vertex of the extension graph: the conjugate rep·G_v·rep⁻¹, encoded by
// its orbit vertex v together with the canonical representative of the coset
// rep·P_{St(v)}.  Two vertices are equal iff both fields agree; vertices with
// different orbit vertices are always distinct.
struct ExtVertex {
  int vertex = 0;
  NormalWord rep;

  friend bool operator==(const ExtVertex& a, const ExtVertex& b) {
    return a.vertex == b.vertex && a.rep == b.rep;
  }
  friend bool operator!=(const ExtVertex& a, const ExtVertex& b) {
    return !(a == b);
  }
  friend bool operator<(const ExtVertex& a, const ExtVertex& b) {
    return a.vertex != b.vertex ? a.vertex < b.vertex : a.rep < b.rep;
  }
};

// Builds the vertex g.v, canonicalizing g with respect to P_{St(v)}.
ExtVertex make_ext_vertex(const ProductContext& ctx, int v,
                          const NormalWord& g);
// The base-copy vertex 1.v.
ExtVertex base_vertex(const ProductContext& ctx, int v);
// The left action g.(h.v) = (gh).v.
ExtVertex act(const ProductContext& ctx, const NormalWord& g,
              const ExtVertex& x);

// "word|vertex-id", e.g. "v00:1|v05"; the identity word prints as "1".
std::string ext_to_string(const ProductContext& ctx, const ExtVertex& x);
// Inverse of ext_to_string; also accepts a bare vertex id for a base vertex.
ExtVertex ext_parse(const ProductContext& ctx, const std::string& text);

// True iff some copy g.Γ contains both x and y.  Vertices in one copy have
// exactly one representative per orbit vertex, so two distinct vertices with
// the same orbit vertex never share a copy.
bool share_copy(const ProductContext& ctx, const ExtVertex& x,
                const ExtVertex& y);

// Extension-graph adjacency: x ≠ y, the orbit vertices are adjacent in the
// defining graph, and x, y share a copy (the fast double-coset test).
bool ext_adjacent(const ProductContext& ctx, const ExtVertex& x,
                  const ExtVertex& y);

// The defining test: x ≠ y and the two conjugate subgroups commute
// elementwise, decided by the word problem on generator pairs.  Quadratic in
// the group orders; intended as the oracle for ext_adjacent in tests.
bool ext_adjacent_direct(const ProductContext& ctx, const ExtVertex& x,
                         const ExtVertex& y);

// True iff x lies in the copy g.Γ, i.e. g ∈ rep(x)·P_{St(v(x))}.
bool in_copy(const ProductContext& ctx, const NormalWord& g,
             const ExtVertex& x);

// The set of group elements g whose copy g.Γ contains a given list of
// vertices.  When non-empty the set is a single coset rep·P_meet; meet is
// the intersection of the constraint stars (all vertices for no constraint).
struct CopyCoset {
  bool nonempty = true;
  NormalWord rep;
  std::set<int> meet;
};

// The unconstrained coset (every group element).
CopyCoset all_copies(const ProductContext& ctx);
// Intersects c with the constraint "the copy contains x".
CopyCoset refine_copies(const ProductContext& ctx, const CopyCoset& c,
                        const ExtVertex& x);
// Folds refine_copies over the list.
CopyCoset copies_containing(const ProductContext& ctx,
                            const std::vector<ExtVertex>& xs);

// Vertex set K with g.Γ = h.Γ iff h⁻¹g ∈ P_K: the intersection of all
// stars.  Empty unless some vertex is adjacent to every other.
std::set<int> copy_kernel(const ProductContext& ctx);
// Canonical name of the copy g.Γ: the canonical representative of g·P_K.
NormalWord copy_id(const ProductContext& ctx, const NormalWord& g);

// All elements of P_S, provided S spans a clique of finite groups (then P_S
// is their finite direct product).  Throws std::invalid_argument when P_S is
// infinite and BudgetExceeded past cap.
std::vector<NormalWord> parabolic_elements(const ProductContext& ctx,
                                           const std::set<int>& S,
                                           std::size_t cap = 100000);

// The distinct copy ids {copy_id(g) : g ∈ c}, sorted.  Requires the meet to
// span a clique of finite groups (always true for two or more constraint
// vertices when girth(Γ) > 4).
std::vector<NormalWord> expand_copies(const ProductContext& ctx,
                                      const CopyCoset& c,
                                      std::size_t cap = 100000);

// All elements of P_S with syllable length <= L (layered search restricted
// to the alphabet S).  Requires finite groups on S.
std::vector<NormalWord> parabolic_ball(const ProductContext& ctx,
                                       const std::set<int>& S, int L,
                                       std::size_t cap = 5000000);

// The induced subgraph of the extension graph on every vertex whose
// canonical representative has syllable length <= L.  The edge set is exact:
// for window vertices x = (v, g) and y = (w, h) sharing a copy, the witness
// coset yields h = canonical(g·p) with p ∈ P_{St(v)} of length <= 2L, so
// enumerating the restricted ball of radius 2L per source vertex lists every
// neighbor.  Construction is deterministic for every job count.
class TruncatedWindow {
 public:
  TruncatedWindow(const ProductContext& ctx, int L, int jobs = 1,
                  std::size_t cap = 5000000);

  const ProductContext& context() const { return ctx_; }
  int radius() const { return L_; }
  int size() const { return static_cast<int>(vertices_.size()); }

  const std::vector<ExtVertex>& vertices() const { return vertices_; }
  const ExtVertex& vertex(int i) const;
  // Index of x among the window vertices, or -1 when absent.
  int index_of(const ExtVertex& x) const;
  bool contains(const ExtVertex& x) const { return index_of(x) >= 0; }

  // The window as a plain graph over surrogate ids "n<zero-padded index>";
  // graph vertex i is vertices()[i].
  const SimplicialGraph& graph() const { return graph_; }
  // Human-readable label of vertex i ("word|vertex-id").
  std::string label(int i) const;
  // Orbit vertex index per window vertex, e.g. for DOT coloring.
  std::vector<int> orbit_classes() const;

  // Window neighbors of x (empty when x is not a window vertex).
  std::vector<ExtVertex> neighbors(const ExtVertex& x) const;

 private:
  ProductContext ctx_;
  int L_;
  std::vector<ExtVertex> vertices_;
  SimplicialGraph graph_;
};

// The coned-off companion on the same vertex set: an edge joins every pair
// of distinct vertices sharing a copy, so each copy spans a clique.  Vertex
// ids match window.graph().
SimplicialGraph coned_off_graph(const TruncatedWindow& window, int jobs = 1);

// Caches windows of one context by radius.
class WindowFamily {
 public:
  explicit WindowFamily(const ProductContext& ctx, int jobs = 1,
                        std::size_t cap = 5000000);
  const ProductContext& context() const { return ctx_; }
  const TruncatedWindow& at(int L);

 private:
  ProductContext ctx_;
  int jobs_;
  std::size_t cap_;
  std::map<int, TruncatedWindow> windows_;
};

// A window-metric distance together with its certificate.  Certificates:
// "equal" (x == y), "copy" (both endpoints in one copy: exact because copies
// are convex), "stable" (the BFS value agreed across two consecutive window
// radii).  Values that never stabilized within the schedule are reported
// with certified = false and method "budget".
struct CertifiedDistance {
  int distance = -1;
  bool certified = false;
  int used_L = 0;
  std::string method;
};

// BFS distance between x and y inside windows of increasing radius, taken
// from the schedule in ascending order.
CertifiedDistance window_distance(WindowFamily& family, const ExtVertex& x,
                                  const ExtVertex& y,
                                  const std::vector<int>& schedule);

}  // namespace gpwb
