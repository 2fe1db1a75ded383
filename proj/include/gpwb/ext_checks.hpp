// Mechanical verification of the extension graph's structural results:
// girth agreement, circuit censuses, admissible paths, bigon / triangle /
// circuit decompositions into copies, geodesic plane counts, tightness
// constants, and the asymptotic-dimension cover construction.
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpwb/ext_graph.hpp"

namespace gpwb {

// A path in the extension graph as its vertex sequence.
using ExtPath = std::vector<ExtVertex>;

// Throws std::invalid_argument unless consecutive vertices are adjacent.
void require_ext_path(const ProductContext& ctx, const ExtPath& p);
// Additionally requires a certified distance equal to the length.
void require_certified_geodesic(WindowFamily& family, const ExtPath& p,
                                const std::vector<int>& schedule);

// --- girth and circuit censuses --------------------------------------------

struct GirthReport {
  // Shortest circuit found through a base edge; nullopt when none exists
  // within the budget (always the case for an acyclic defining graph).
  std::optional<int> min_circuit_length;
  long long circuits_checked = 0;
  long long minimal_circuits = 0;
  // True when min_circuit_length matches the defining graph's girth
  // (vacuously true when both graphs are acyclic).
  bool matches_defining_girth = false;
  // True when every minimal circuit lies in a single copy.
  bool minimal_circuits_single_copy = false;
};

// Enumerates circuits of length <= n_max through every base edge in
// window(L) and checks the girth agreement statement.
GirthReport girth_check(WindowFamily& family, int L, int n_max,
                        std::size_t cap = 2000000);

// Number of girth-length circuits in window(L) containing the base star
// path around v; the defining graph must be a single circuit of length
// > 20, and the count must equal the order of the group at v.
long long doubling_census(WindowFamily& family, int v, int L,
                          std::size_t cap = 2000000);

struct FinenessCensus {
  std::vector<std::pair<int, long long>> counts;  // (L, circuit count)
  bool stabilized = false;
  long long value = 0;  // meaningful when stabilized
};

// Counts circuits of length <= n through the base edge (a, b) within
// windows of increasing radius; stabilized when two consecutive radii
// agree.  The count is exact within each window but only stabilization, not
// proof, ties it to the full extension graph.
FinenessCensus fineness_census(WindowFamily& family, int a, int b, int n,
                               const std::vector<int>& L_schedule,
                               std::size_t cap = 2000000);

// --- admissible paths -------------------------------------------------------

// Checks the three admissibility conditions of p with respect to the marked
// index subsequence: every marked segment is geodesic and lies in a copy, no
// copy contains two consecutive segments, and short segment pairs have no
// backtracking.  Segment geodesy is exact (a segment inside a copy is
// geodesic iff its length equals the defining-graph distance of the orbit
// endpoints).
bool is_admissible(const ProductContext& ctx, const ExtPath& p,
                   const std::vector<int>& marks);

// --- bigon and triangle decompositions --------------------------------------

struct BigonSegment {
  int p_from = 0, p_to = 0;  // index range on p
  int q_from = 0, q_to = 0;  // index range on q
  NormalWord copy;           // copy id containing both ranges
};

struct BigonWitness {
  std::vector<BigonSegment> segments;
};

// Decomposes a geodesic bigon (two certified geodesics with the same
// endpoints and disjoint interiors) into the minimal number of segment
// pairs, each pair inside one copy.  Verifies the decomposition statement:
// every pair overlaps both sides by >= 7, consecutive copies differ, and
// junction marks are at distance <= 2.  Throws VerificationFailure when the
// search fails or a verified property is violated.
BigonWitness bigon_decomposition(WindowFamily& family, const ExtPath& p,
                                 const ExtPath& q,
                                 const std::vector<int>& schedule);

struct TriangleLadderStep {
  int first_from = 0, first_to = 0;    // range on the first involved side
  int second_from = 0, second_to = 0;  // range on the second involved side
  NormalWord copy;
};

struct TriangleWitness {
  // Ladders from the three corners: a couples p with r, b couples p with q,
  // c couples q with r.  Steps are listed from the corner inward.
  std::vector<TriangleLadderStep> a_ladder;
  std::vector<TriangleLadderStep> b_ladder;
  std::vector<TriangleLadderStep> c_ladder;
  NormalWord central_copy;
  // Central intervals on the three sides.
  int p_from = 0, p_to = 0;
  int q_from = 0, q_to = 0;
  int r_from = 0, r_to = 0;
};

// Decomposes a geodesic triangle (sides p: a->b, q: b->c, r: a->c, certified
// geodesics whose concatenation is a circuit) into three corner ladders
// around a central copy, minimizing the total number of ladder steps, and
// verifies the decomposition statement's side conditions.
TriangleWitness triangle_decomposition(WindowFamily& family, const ExtPath& p,
                                       const ExtPath& q, const ExtPath& r,
                                       const std::vector<int>& schedule);

// --- circuits and copies ----------------------------------------------------

struct CircuitCopyWitness {
  int from = 0;       // index into the circuit
  int length = 0;     // edges along the circuit (0 = whole circuit in copy)
  NormalWord copy;
  ExtPath shortcut;   // the unique geodesic between the subpath's endpoints
  bool whole_circuit = false;
};

// For any circuit in the extension graph, finds a subpath lying in one copy
// whose endpoints are at distance <= 4 such that replacing it by the unique
// geodesic between its endpoints again yields a circuit, all inside that
// copy (or certifies that the whole circuit lies in one copy).  Failure
// throws VerificationFailure: it would falsify the statement.
CircuitCopyWitness circuit_copy_witness(const ProductContext& ctx,
                                        const ExtPath& circuit,
                                        std::size_t cap = 100000);

// --- geodesic plane visits --------------------------------------------------

struct PlaneVisit {
  NormalWord copy;
  int from = 0;  // maximal index interval of the geodesic inside the copy
  int to = 0;
};

// The copies whose intersection with the certified geodesic p spans at
// least n edges, with their maximal intervals, sorted by interval start.
// Requires n >= 1.
std::vector<PlaneVisit> plane_visits(const ProductContext& ctx,
                                     const ExtPath& p, int n,
                                     std::size_t cap = 100000);

// Verifies that at most 2(k+1)+4 of the copies spanning >= 3 edges of p
// come within distance k of p[c_index] along p.
bool plane_count_check(const ProductContext& ctx, const ExtPath& p, int k,
                       int c_index, std::size_t cap = 100000);

// --- tightness constants ----------------------------------------------------

struct TightnessConstants {
  long long P0 = 0;
  long long P1 = 0;
  long long k1 = 0;
};

// The explicit constants of the tightness statement:
//   P0 = 2k+1 + 2(k+2d+3)·(2(k+2d+3)+4)·f(24d+32)
//   P1 = 2k+1 + 2(k+4d+3)·(2(k+4d+3)+4)·f(32d+32)
//   k1 = k+12d+23
// f_values must supply f at the two required arguments.
TightnessConstants tightness_constants(
    long long k, long long delta,
    const std::map<long long, long long>& f_values);

// A uniform-fineness witness for the defining graph: the maximum over edges
// of the number of circuits of length <= n through the edge.
long long defining_fineness_bound(const SimplicialGraph& graph, int n,
                                  std::size_t cap = 2000000);

// Window indices lying on some geodesic between window indices a and b.
std::vector<int> geodesic_union(const TruncatedWindow& window, int a, int b);

// --- coned-off decomposition and the asymptotic-dimension cover -------------

struct ConedDecomposition {
  std::vector<int> marks;  // indices into the path, first and last included
  int coned_distance = 0;
  int hausdorff = 0;  // between the marks and an independent coned geodesic
};

// Greedily decomposes a window geodesic into the fewest marks whose
// consecutive pairs span common copies, verifies the mark count equals the
// coned-off distance of the endpoints, and measures the coned-off Hausdorff
// distance to an independently computed coned-off geodesic (the statement
// bounds it by 1).
ConedDecomposition coned_off_geodesic_decompose(const TruncatedWindow& window,
                                                const SimplicialGraph& coned,
                                                const std::vector<int>& path);

struct AsdimPiece {
  int coned_distance = 0;
  NormalWord label;           // copy id of the final decomposition segment
  std::vector<int> members;   // window indices
};

struct AsdimCover {
  int origin = 0;  // window index
  int R = 0;
  std::vector<AsdimPiece> pieces;  // sorted by (coned_distance, label)
};

// Builds the cover of the coned-off (R+1)-ball around the origin: each
// member's piece is keyed by its coned-off distance and the copy of the
// final segment of its decomposed spanning-tree geodesic.  Every piece lies
// inside its labelling copy.
AsdimCover asdim_cover(const TruncatedWindow& window,
                       const SimplicialGraph& coned, const ExtVertex& origin,
                       int R);

struct CoverSeparationReport {
  bool pieces_cover_ball = false;
  bool pieces_inside_their_copy = false;
  // Minimal window distance between distinct pieces after removing the
  // (3r+12)-neighborhood of the coned R-ball; -1 when no pair remains.
  int min_separation = -1;
  bool separation_holds = false;  // min_separation >= r, or no pair remains
  bool vacuous = false;           // no pair of pieces survived the removal
};

// Verifies the separation claim behind the cover: distinct pieces, after
// removing the (3r+12)-neighborhood of the coned-off R-ball preimage, are
// at window distance >= r from each other.
CoverSeparationReport cover_separation_check(const TruncatedWindow& window,
                                             const SimplicialGraph& coned,
                                             const AsdimCover& cover, int r);

// --- synthetic sample families ----------------------------------------------

// Geodesic bigons of length 19 bulging through a one-syllable copy: one side
// runs 10 base edges and 9 copy edges, the other 9 base edges and 10 copy
// edges.  Requires the defining graph to be a circuit of length 21.  All
// returned pairs are certified geodesics with disjoint interiors; translated
// copies of the base family are emitted until `want` pairs are produced.
std::vector<std::pair<ExtPath, ExtPath>> synthetic_long_bigons(
    WindowFamily& family, int want);

// Geodesic triangles: girth triangles (three arcs of one copy) and split
// bigons (a 19-geodesic against its 10+9 two-copy partner), translated.
std::vector<std::array<ExtPath, 3>> synthetic_triangles(WindowFamily& family,
                                                        int want);

// Circuits for the copy-witness check: girth circuits through base edges
// and synthetic bigon circuits, translated, until `want` circuits.
std::vector<ExtPath> synthetic_circuits(WindowFamily& family, int want);

}  // namespace gpwb
