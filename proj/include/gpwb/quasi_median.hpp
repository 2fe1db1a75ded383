// Cayley-ball machinery for the quasi-median geometry of a graph product:
// hyperplanes as edge classes under the triangle/square moves, carriers, the
// crossing and contact graphs on interior hyperplanes, and the verified
// correspondence between hyperplanes and extension-graph vertices.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gpwb/ext_graph.hpp"

namespace gpwb {

// One undirected edge of the Cayley ball, stored from the smaller vertex
// index: vertex(to) == vertex(from) * (orbit, element).
struct CayleyEdge {
  int from = 0;
  int to = 0;
  int orbit = 0;
  long long element = 0;
};

// The radius-r ball in the Cayley graph of the product over the generating
// set of all non-identity vertex-group elements: the induced subgraph on all
// elements of syllable length <= r.  Vertices are sorted normal forms
// (identity first); immutable after construction.  Requires finite vertex
// groups.
class CayleyBall {
 public:
  CayleyBall(const ProductContext& ctx, int radius,
             std::size_t cap = 2000000);

  const ProductContext& context() const { return ctx_; }
  int radius() const { return radius_; }
  int size() const { return static_cast<int>(vertices_.size()); }

  const std::vector<NormalWord>& vertices() const { return vertices_; }
  const NormalWord& vertex(int i) const;
  // Index of g among the ball vertices, or -1 when absent.
  int index_of(const NormalWord& g) const;

  const std::vector<CayleyEdge>& edges() const { return edges_; }
  // Index into edges() of the edge joining vertices a and b, or -1.
  int edge_between(int a, int b) const;
  // True when vertex i lies on the outer shell (syllable length == radius).
  bool on_shell(int i) const;

  // The ball as a plain graph with vertex ids "g<zero-padded index>";
  // graph vertex i is vertices()[i].
  const SimplicialGraph& graph() const { return graph_; }

 private:
  ProductContext ctx_;
  int radius_;
  std::vector<NormalWord> vertices_;
  std::vector<CayleyEdge> edges_;
  SimplicialGraph graph_{{}, {}};
  std::map<NormalWord, int> index_;
  std::map<std::pair<int, int>, int> edge_index_;
};

// An equivalence class of ball edges, closed within the ball under the two
// moves "two sides of a triangle" and "opposite sides of a square".  All
// edges of one class are labeled in the same vertex group (the orbit).  A
// class is interior when no carrier vertex lies on the outer shell; classes
// touching the shell may be truncated by the ball boundary and are excluded
// from graph comparisons.
struct Hyperplane {
  int id = 0;
  int orbit = 0;
  std::vector<int> edges;    // indices into ball.edges(), ascending
  std::vector<int> carrier;  // endpoint vertex indices, ascending
  bool interior = false;
};

// All edge classes of the ball, ordered by their smallest edge index.
std::vector<Hyperplane> hyperplanes(const CayleyBall& ball);

// Ids of the interior classes, ascending.
std::vector<int> interior_hyperplanes(const std::vector<Hyperplane>& hps);

// The extension-graph vertex corresponding to a class: the class of edges
// labeled in G_v through g corresponds to the conjugate copy g.v.
ExtVertex hyperplane_image(const CayleyBall& ball, const Hyperplane& hp);

// Crossing graph on the interior classes: two distinct classes are adjacent
// when some ball square contains an edge of each.  Graph vertex i is the
// i-th interior class (ascending id); ids are "J<zero-padded class id>".
SimplicialGraph crossing_graph(const CayleyBall& ball,
                               const std::vector<Hyperplane>& hps);

// Contact graph on the interior classes: adjacent when the carriers share a
// vertex.  Same vertex convention as crossing_graph.
SimplicialGraph contact_graph(const CayleyBall& ball,
                              const std::vector<Hyperplane>& hps);

// Report of the hyperplane / extension-graph correspondence check on the
// interior classes of a ball.  Pair comparisons are exact on the
// extension-graph side; on the ball side an extension edge whose witness
// square (or shared carrier vertex) cannot fit inside the ball is counted
// as beyond_ball rather than as a disagreement.
struct IsoReport {
  int hyperplane_count = 0;
  int interior_count = 0;
  int boundary_count = 0;
  bool injective = false;      // images pairwise distinct
  bool orbit_correct = false;  // carriers lie in the star coset of the image
  int images_in_window = 0;    // images found among the window vertices
  int crossing_pairs = 0;
  int crossing_agreements = 0;
  int crossing_beyond_ball = 0;
  int contact_pairs = 0;
  int contact_agreements = 0;
  int contact_beyond_ball = 0;
  std::vector<std::string> mismatches;  // hard disagreements, human-readable
  bool passed = false;  // injective, orbit-correct, and no hard disagreement
};

// Checks that the correspondence is injective and orbit-correct on interior
// classes, that crossing-graph adjacency matches extension-graph adjacency,
// and that contact-graph adjacency matches the shared-copy relation (the
// coned-off adjacency).  The window is used to report how many images lie
// within the truncated extension graph of matching budget.
IsoReport verify_iso(const CayleyBall& ball, const TruncatedWindow& window);

// DOT export of the ball with edges colored by their class.
std::string ball_to_dot(const CayleyBall& ball,
                        const std::vector<Hyperplane>& hps,
                        const std::string& name);

// Doubled four-point hyperbolicity defect over quadruples from the largest
// connected component: exhaustive when samples <= 0 (component size capped
// at 40), otherwise over `samples` quadruples drawn deterministically from
// the seed.  A diagnostic, not a certificate.
long long sampled_delta_x2(const SimplicialGraph& g, int samples,
                           unsigned seed);

}  // namespace gpwb
