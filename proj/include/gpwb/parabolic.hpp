// Standard parabolic subgroups P_S = <G_v : v in S>: membership, canonical
// coset representatives, double cosets, coset intersections, and stabilizer
// intersections of base vertices.
#pragma once

#include <optional>
#include <set>
#include <vector>

#include "gpwb/word.hpp"

namespace gpwb {

// The star {v} ∪ N(v) as a vertex set.
std::set<int> star_set(const SimplicialGraph& graph, int v);

// True iff g lies in P_S, equivalently supp(g) ⊆ S.
bool parabolic_member(const ProductContext& ctx, const std::set<int>& S,
                      const NormalWord& g);

// g factored as rep * tail with supp(tail) ⊆ S, where rep is the greedy
// right-strip fixpoint: repeatedly remove the rightmost syllable that has
// support in S and commutes past everything after it.
struct CosetSplit {
  NormalWord rep;
  NormalWord tail;
};
CosetSplit coset_split(const ProductContext& ctx, const std::set<int>& S,
                       const NormalWord& g);

// The canonical representative of the left coset g·P_S (the rep part of
// coset_split).  Constant on cosets and idempotent; the test suite certifies
// it equals the length-minimal, lexicographically least coset element on all
// enumerable contexts.
NormalWord coset_canonical(const ProductContext& ctx, const std::set<int>& S,
                           const NormalWord& g);

// Mirror image: g = head * rep with supp(head) ⊆ S.
struct LeftCosetSplit {
  NormalWord head;
  NormalWord rep;
};
LeftCosetSplit left_coset_split(const ProductContext& ctx,
                                const std::set<int>& S, const NormalWord& g);

// g = left * residual * right with supp(left) ⊆ S and supp(right) ⊆ T, the
// fixpoint of interleaved left/right stripping.  g ∈ P_S·P_T iff the
// residual is empty.
struct DoubleCosetDecomposition {
  bool member = false;
  NormalWord left;
  NormalWord residual;
  NormalWord right;
};
DoubleCosetDecomposition double_coset_decompose(const ProductContext& ctx,
                                                const std::set<int>& S,
                                                const std::set<int>& T,
                                                const NormalWord& g);
bool double_coset_member(const ProductContext& ctx, const std::set<int>& S,
                         const std::set<int>& T, const NormalWord& g);

// The intersection g·P_S ∩ h·P_T.  When non-empty it is a single coset
// k·P_{S∩T}; rep is the canonical representative of that coset and meet the
// intersection S∩T.
struct CosetIntersection {
  bool nonempty = false;
  NormalWord rep;
  std::set<int> meet;
};
CosetIntersection coset_intersect(const ProductContext& ctx,
                                  const std::set<int>& S, const NormalWord& g,
                                  const std::set<int>& T, const NormalWord& h);

// Which of the three girth>4 cases the pair of base vertices falls into:
// case 1 (adjacent, subgroup G_a × G_b), case 2 (distance two, subgroup G_c
// for the unique common neighbor c), case 3 (distance >= 3, trivial).
struct StabIntersectionReport {
  int distance = 0;            // graph distance (-1 if disconnected)
  int case_id = 0;             // 1, 2, or 3
  std::optional<int> middle;   // the common neighbor in case 2
  std::vector<NormalWord> elements;  // the full subgroup, sorted
};
StabIntersectionReport stab_intersection(const ProductContext& ctx, int a,
                                         int b);

}  // namespace gpwb
