// Semidirect products of a graph product with a finite group acting on the
// defining graph: element arithmetic, the induced action on extension-graph
// vertices, and exact stabilizer computations.
#pragma once

#include <string>
#include <vector>

#include "gpwb/ext_graph.hpp"
#include "gpwb/group.hpp"
#include "gpwb/word.hpp"

namespace gpwb {

// A graph product together with a finite group acting on its defining graph
// by automorphisms.  Construction checks that the action's graph is
// structurally identical to the product's defining graph and that vertex
// groups agree along action orbits, so relabelling a word's syllables by a
// graph automorphism is well-defined.
class WreathContext {
 public:
  WreathContext(ProductContext ctx, GraphAction action);

  const ProductContext& ctx() const { return ctx_; }
  const GraphAction& action() const { return action_; }
  // Orbits and stabilizers of the acting group, computed at construction.
  const ActionDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  ProductContext ctx_;
  GraphAction action_;
  ActionDiagnostics diagnostics_;
};

// An element (f, g) of the semidirect product: f in the graph product, g an
// element index of the acting group.  Multiplication follows
// (f1, g1)(f2, g2) = (f1 * alpha(g1, f2), g1 g2).
struct WreathElement {
  NormalWord f;
  int g = 0;

  friend bool operator==(const WreathElement& a, const WreathElement& b) {
    return a.g == b.g && a.f == b.f;
  }
  friend bool operator!=(const WreathElement& a, const WreathElement& b) {
    return !(a == b);
  }
  friend bool operator<(const WreathElement& a, const WreathElement& b) {
    if (a.f != b.f) return a.f < b.f;
    return a.g < b.g;
  }
};

// The automorphism of the graph product induced by action element g: every
// syllable keeps its group element and moves to the image vertex, then the
// word is re-canonicalized.
NormalWord alpha(const WreathContext& wctx, int g, const NormalWord& f);

// Identity element (1, 1).
WreathElement wreath_identity(const WreathContext& wctx);

// Semidirect-product multiplication and inverse.
WreathElement wmul(const WreathContext& wctx, const WreathElement& x,
                   const WreathElement& y);
WreathElement winv(const WreathContext& wctx, const WreathElement& x);

// Left action on extension-graph vertices:
// (f, g).(h . v) = (f * alpha(g, h)) . (g v).
ExtVertex wreath_act(const WreathContext& wctx, const WreathElement& x,
                     const ExtVertex& ev);

// "(f; g)" with f printed as a word and g by its element name.
std::string wreath_to_string(const WreathContext& wctx,
                             const WreathElement& x);
// Parses the wreath_to_string format (outer parentheses optional).
WreathElement wreath_parse(const WreathContext& wctx, const std::string& text);

// Stabilizer of a base edge {e_minus, e_plus} of the extension graph inside
// the semidirect product.  When the defining graph has girth > 4 (or is
// acyclic), the graph-product part of the stabilizer is exactly
// G_{e_minus} x G_{e_plus}, so the whole stabilizer is the internal direct
// product of those two vertex groups with the subgroup of the acting group
// fixing both endpoints.
struct EdgeStabilizerReport {
  int e_minus = 0;
  int e_plus = 0;
  // Acting-group elements fixing both endpoints, ascending.
  std::vector<int> action_stabilizer;
  // Every stabilizer element, sorted; order == elements.size().
  std::vector<WreathElement> elements;
  long long order = 0;
  // |G_{e_minus}| * |G_{e_plus}| * |action_stabilizer|.
  long long predicted_order = 0;
};

// Requires an edge of a defining graph with girth > 4 (or acyclic) and
// finite vertex groups.  The returned list is cross-checked against a
// brute-force enumeration: every listed element must fix both endpoints of
// the base edge, and no other element of ball(2) x G may do so; a mismatch
// throws VerificationFailure.
EdgeStabilizerReport edge_stabilizer(const WreathContext& wctx, int e_minus,
                                     int e_plus);

// One vertex orbit of the action, together with the stabilizer
// <Stab_G(v), G_w : w in St(v)> of the base vertex v in the semidirect
// product.  The stabilizer is infinite exactly when some group in the star
// is infinite or the link of v contains two non-adjacent vertices; the
// orbits with infinite stabilizer form the peripheral family.
struct PeripheralEntry {
  int vertex = 0;                      // least vertex of the orbit
  std::vector<int> orbit;              // ascending
  std::vector<int> star;               // St(vertex), ascending
  std::vector<int> action_stabilizer;  // Stab_G(vertex), ascending
  bool infinite = false;
  long long finite_order = 0;          // order when finite, else 0
  std::string generators;              // human-readable generating set
  bool peripheral = false;             // == infinite
};

// One entry per vertex orbit, ordered by representative.  Requires
// nontrivial vertex groups (the link criterion for infiniteness presumes
// them).
std::vector<PeripheralEntry> parabolic_family(const WreathContext& wctx);

}  // namespace gpwb
