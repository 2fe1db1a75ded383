#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "gpwb/errors.hpp"
#include "gpwb/ext_checks.hpp"

using gpwb::asdim_cover;
using gpwb::AsdimCover;
using gpwb::base_vertex;
using gpwb::bigon_decomposition;
using gpwb::circuit_copy_witness;
using gpwb::coned_off_geodesic_decompose;
using gpwb::coned_off_graph;
using gpwb::cover_separation_check;
using gpwb::defining_fineness_bound;
using gpwb::doubling_census;
using gpwb::ext_adjacent;
using gpwb::ExtPath;
using gpwb::ExtVertex;
using gpwb::fineness_census;
using gpwb::geodesic_union;
using gpwb::girth_check;
using gpwb::GroupTable;
using gpwb::in_copy;
using gpwb::is_admissible;
using gpwb::make_ext_vertex;
using gpwb::NormalWord;
using gpwb::plane_count_check;
using gpwb::plane_visits;
using gpwb::ProductContext;
using gpwb::require_ext_path;
using gpwb::SimplicialGraph;
using gpwb::synthetic_circuits;
using gpwb::synthetic_long_bigons;
using gpwb::synthetic_triangles;
using gpwb::tightness_constants;
using gpwb::triangle_decomposition;
using gpwb::TruncatedWindow;
using gpwb::VerificationFailure;
using gpwb::VertexGroup;
using gpwb::WindowFamily;

namespace {

ProductContext uniform_context(SimplicialGraph graph, int order) {
  std::vector<VertexGroup> groups(graph.vertex_count(),
                                  VertexGroup::finite(GroupTable::cyclic(order)));
  return ProductContext(std::move(graph), std::move(groups));
}

WindowFamily& c21_family() {
  static WindowFamily family(uniform_context(SimplicialGraph::cycle(21), 2));
  return family;
}

WindowFamily& c21_z3_family() {
  static WindowFamily family(uniform_context(SimplicialGraph::cycle(21), 3));
  return family;
}

WindowFamily& c22_family() {
  static WindowFamily family(uniform_context(SimplicialGraph::cycle(22), 2));
  return family;
}

WindowFamily& p3_family() {
  static WindowFamily family(uniform_context(
      SimplicialGraph({"u", "v", "w"}, {{"u", "v"}, {"v", "w"}}), 2));
  return family;
}

NormalWord syl(const ProductContext& ctx, int v, long long e = 1) {
  return ctx.from_syllable(v, e);
}

// Base-copy arc a, a+1, ..., a+len around the defining circuit.
ExtPath base_arc(const ProductContext& ctx, int a, int len) {
  const int n = ctx.graph().vertex_count();
  ExtPath p;
  for (int k = 0; k <= len; ++k) {
    p.push_back(base_vertex(ctx, ((a + k) % n + n) % n));
  }
  return p;
}

// Same arc walked in the decreasing direction.
ExtPath base_arc_down(const ProductContext& ctx, int a, int len) {
  const int n = ctx.graph().vertex_count();
  ExtPath p;
  for (int k = 0; k <= len; ++k) {
    p.push_back(base_vertex(ctx, ((a - k) % n + n) % n));
  }
  return p;
}

}  // namespace

TEST_SUITE("ext_checks") {

TEST_CASE("girth of the window matches the defining circuit") {
  auto& family = c21_family();
  const auto rep = girth_check(family, 1, 21);
  REQUIRE(rep.min_circuit_length.has_value());
  CHECK(*rep.min_circuit_length == 21);
  CHECK(rep.matches_defining_girth);
  CHECK(rep.minimal_circuits_single_copy);
  // The base circuit plus one translated copy per defining vertex.
  CHECK(rep.minimal_circuits == 22);
  CHECK(rep.circuits_checked >= rep.minimal_circuits);
}

TEST_CASE("acyclic defining graphs give circuit-free windows") {
  auto& family = p3_family();
  const auto rep = girth_check(family, 1, 8);
  CHECK_FALSE(rep.min_circuit_length.has_value());
  CHECK(rep.circuits_checked == 0);
  CHECK(rep.matches_defining_girth);
  CHECK(rep.minimal_circuits_single_copy);
}

TEST_CASE("doubling census counts one circuit per group element") {
  CHECK(doubling_census(c21_family(), 0, 1) == 2);
  CHECK(doubling_census(c21_family(), 13, 1) == 2);
  CHECK(doubling_census(c21_z3_family(), 0, 1) == 3);
  CHECK_THROWS_AS(doubling_census(p3_family(), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(doubling_census(c21_family(), 0, 0), std::invalid_argument);
}

TEST_CASE("fineness census stabilizes across growing windows") {
  auto& family = c21_family();
  const auto census = fineness_census(family, 0, 1, 21, {1, 2});
  REQUIRE(census.counts.size() == 2);
  CHECK(census.counts[0] == std::pair<int, long long>{1, 3});
  CHECK(census.counts[1] == std::pair<int, long long>{2, 4});
  CHECK_FALSE(census.stabilized);

  // The path graph has no circuits at all, so the census is stably zero.
  const auto empty = fineness_census(p3_family(), 0, 1, 8, {1, 2});
  CHECK(empty.stabilized);
  CHECK(empty.value == 0);

  CHECK_THROWS_AS(fineness_census(family, 0, 2, 21, {1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fineness_census(family, 0, 1, 21, {2, 2}),
                  std::invalid_argument);
}

TEST_CASE("admissibility accepts copy-geodesic segmentations") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const auto bigons = synthetic_long_bigons(family, 1);
  REQUIRE(bigons.size() == 1);
  const ExtPath& p = bigons[0].first;
  REQUIRE(p.size() == 20);
  CHECK(is_admissible(ctx, p, {0, 10, 19}));
  // Splitting the base arc in two puts consecutive segments in one copy.
  CHECK_FALSE(is_admissible(ctx, base_arc(ctx, 0, 10), {0, 5, 10}));
  // A non-geodesic segment fails even inside its copy.
  CHECK_FALSE(is_admissible(ctx, base_arc(ctx, 0, 11), {0, 11}));
  CHECK_THROWS_AS(is_admissible(ctx, p, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(is_admissible(ctx, p, {1, 19}), std::invalid_argument);
}

TEST_CASE("admissibility rejects backtracking across short segments") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  // Walk two base edges, then re-enter a different copy through the same
  // edge: both segments are in-copy geodesics and share no copy, but the
  // combined path backtracks.
  const ExtVertex turn =
      make_ext_vertex(ctx, 19, ctx.mul(syl(ctx, 20), syl(ctx, 0)));
  const ExtPath p = {base_vertex(ctx, 19), base_vertex(ctx, 20),
                     base_vertex(ctx, 0), base_vertex(ctx, 20), turn};
  require_ext_path(ctx, p);
  CHECK_FALSE(is_admissible(ctx, p, {0, 2, 4}));
}

TEST_CASE("long synthetic bigons decompose into two overlapping copies") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const auto bigons = synthetic_long_bigons(family, 1);
  const auto w = bigon_decomposition(family, bigons[0].first,
                                     bigons[0].second, {1, 2});
  REQUIRE(w.segments.size() == 2);
  CHECK(w.segments[0].p_from == 0);
  CHECK(w.segments[0].p_to == 10);
  CHECK(w.segments[0].q_from == 0);
  CHECK(w.segments[0].q_to == 9);
  CHECK(w.segments[0].copy == ctx.identity());
  CHECK(w.segments[1].p_from == 10);
  CHECK(w.segments[1].p_to == 19);
  CHECK(w.segments[1].q_from == 9);
  CHECK(w.segments[1].q_to == 19);
  CHECK(w.segments[1].copy == syl(ctx, 11));
}

TEST_CASE("translated bigons decompose with deeper window schedules") {
  auto& family = c21_family();
  const auto bigons = synthetic_long_bigons(family, 25);
  REQUIRE(bigons.size() == 25);
  // Entry 21 is the first translated instance (one per base position).
  const auto w = bigon_decomposition(family, bigons[21].first,
                                     bigons[21].second, {2, 3});
  CHECK(w.segments.size() == 2);
}

TEST_CASE("antipodal bigons on an even circuit lie in a single copy") {
  auto& family = c22_family();
  const auto& ctx = family.context();
  const ExtPath p = base_arc(ctx, 0, 11);
  const ExtPath q = base_arc_down(ctx, 0, 11);
  const auto w = bigon_decomposition(family, p, q, {1});
  REQUIRE(w.segments.size() == 1);
  CHECK(w.segments[0].p_to == 11);
  CHECK(w.segments[0].q_to == 11);
  CHECK(w.segments[0].copy == ctx.identity());
}

TEST_CASE("bigon decomposition validates its input") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  // Non-geodesic side: eleven edges between vertices at distance ten.
  CHECK_THROWS_AS(bigon_decomposition(family, base_arc(ctx, 0, 11),
                                      base_arc_down(ctx, 0, 10), {1, 2}),
                  std::invalid_argument);
  // Sides with different endpoints.
  CHECK_THROWS_AS(bigon_decomposition(family, base_arc(ctx, 0, 10),
                                      base_arc(ctx, 0, 9), {1, 2}),
                  std::invalid_argument);
}

TEST_CASE("girth triangles are witnessed by one central copy") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const auto tris = synthetic_triangles(family, 1);
  REQUIRE(tris.size() == 1);
  const auto w = triangle_decomposition(family, tris[0][0], tris[0][1],
                                        tris[0][2], {1, 2});
  CHECK(w.a_ladder.empty());
  CHECK(w.b_ladder.empty());
  CHECK(w.c_ladder.empty());
  CHECK(w.central_copy == ctx.identity());
  CHECK(w.p_from == 0);
  CHECK(w.p_to == 7);
  CHECK(w.q_from == 0);
  CHECK(w.q_to == 7);
  CHECK(w.r_from == 0);
  CHECK(w.r_to == 7);
}

TEST_CASE("split bigon triangles need one corner ladder step") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const auto tris = synthetic_triangles(family, 2);
  REQUIRE(tris.size() == 2);
  // The second sample splits the 19-geodesic at base position 1, around
  // the one-syllable copy over vertex 12.  Two minimal decompositions
  // exist (central base copy with one far-corner step through the split
  // copy, or the mirror image); the candidate order picks the base copy.
  const auto w = triangle_decomposition(family, tris[1][0], tris[1][1],
                                        tris[1][2], {1, 2});
  CHECK(w.central_copy == ctx.identity());
  CHECK(w.a_ladder.empty());
  CHECK(w.b_ladder.empty());
  REQUIRE(w.c_ladder.size() == 1);
  CHECK(w.c_ladder[0].first_from == 0);
  CHECK(w.c_ladder[0].first_to == 9);
  CHECK(w.c_ladder[0].second_from == 9);
  CHECK(w.c_ladder[0].second_to == 19);
  CHECK(w.c_ladder[0].copy == syl(ctx, 12));
  CHECK(w.p_from == 0);
  CHECK(w.p_to == 10);
  CHECK(w.q_from == 0);
  CHECK(w.q_to == 0);
  CHECK(w.r_from == 0);
  CHECK(w.r_to == 9);
}

TEST_CASE("triangles with adjacent corners keep long central overlaps") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const ExtPath p = base_arc(ctx, 0, 1);
  const ExtPath q = base_arc(ctx, 1, 10);
  const ExtPath r = base_arc_down(ctx, 0, 10);
  const auto w = triangle_decomposition(family, p, q, r, {1});
  CHECK(w.a_ladder.empty());
  CHECK(w.b_ladder.empty());
  CHECK(w.c_ladder.empty());
  CHECK(w.central_copy == ctx.identity());
  CHECK(w.q_to - w.q_from == 10);
  CHECK(w.r_to - w.r_from == 10);
}

TEST_CASE("triangle decomposition validates its corners") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const ExtPath p = base_arc(ctx, 0, 7);
  const ExtPath q = base_arc(ctx, 7, 7);
  CHECK_THROWS_AS(
      triangle_decomposition(family, p, q, base_arc(ctx, 0, 7), {1}),
      std::invalid_argument);
  CHECK_THROWS_AS(triangle_decomposition(family, p, p, p, {1}),
                  std::invalid_argument);
}

TEST_CASE("the defining circuit is its own copy witness") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const auto circuits = synthetic_circuits(family, 1);
  REQUIRE(circuits.size() == 1);
  REQUIRE(circuits[0].size() == 21);
  const auto w = circuit_copy_witness(ctx, circuits[0]);
  CHECK(w.whole_circuit);
  CHECK(w.copy == ctx.identity());
}

TEST_CASE("bigon circuits shortcut through a base copy") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const auto circuits = synthetic_circuits(family, 2);
  REQUIRE(circuits.size() == 2);
  const ExtPath& circuit = circuits[1];
  REQUIRE(circuit.size() == 38);
  const auto w = circuit_copy_witness(ctx, circuit);
  CHECK_FALSE(w.whole_circuit);
  CHECK(w.copy == ctx.identity());
  REQUIRE(w.shortcut.size() >= 2);
  CHECK(w.shortcut.size() <= 5);
  CHECK(w.shortcut.front() == circuit[w.from]);
  CHECK(w.shortcut.back() ==
        circuit[(w.from + w.length) % static_cast<int>(circuit.size())]);
  CHECK(w.length > static_cast<int>(w.shortcut.size()) - 1);
  for (const ExtVertex& x : w.shortcut) {
    CHECK(in_copy(ctx, w.copy, x));
  }
}

TEST_CASE("every synthetic circuit admits a copy witness") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  for (const ExtPath& circuit : synthetic_circuits(family, 6)) {
    CHECK_NOTHROW(circuit_copy_witness(ctx, circuit));
  }
  CHECK_THROWS_AS(circuit_copy_witness(ctx, base_arc(ctx, 0, 2)),
                  std::invalid_argument);
}

TEST_CASE("plane visits list the copies spanning long intervals") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const auto bigons = synthetic_long_bigons(family, 1);
  const ExtPath& p = bigons[0].first;
  const auto visits = plane_visits(ctx, p, 3);
  REQUIRE(visits.size() == 2);
  CHECK(visits[0].copy == ctx.identity());
  CHECK(visits[0].from == 0);
  CHECK(visits[0].to == 10);
  CHECK(visits[1].copy == syl(ctx, 11));
  CHECK(visits[1].from == 10);
  CHECK(visits[1].to == 19);
  CHECK_THROWS_AS(plane_visits(ctx, p, 0), std::invalid_argument);
}

TEST_CASE("plane counts respect the linear bound") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const auto bigons = synthetic_long_bigons(family, 1);
  const ExtPath& p = bigons[0].first;
  for (int k = 0; k <= 5; ++k) {
    CHECK(plane_count_check(ctx, p, k, 10));
    CHECK(plane_count_check(ctx, p, k, 0));
  }
  CHECK_THROWS_AS(plane_count_check(ctx, p, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS(plane_count_check(ctx, p, 1, 99), std::invalid_argument);
}

TEST_CASE("tightness constants match their closed forms") {
  const auto spot = tightness_constants(1, 0, {{32, 1}});
  CHECK(spot.P0 == 99);
  CHECK(spot.P1 == 99);
  CHECK(spot.k1 == 24);
  CHECK_THROWS_AS(tightness_constants(1, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(tightness_constants(-1, 0, {{32, 1}}),
                  std::invalid_argument);
  // A plain circuit graph has exactly one circuit through each edge, so its
  // fineness bound feeds the spot check's f = 1.
  const auto cycle = SimplicialGraph::cycle(21);
  CHECK(defining_fineness_bound(cycle, 32) == 1);
  const auto again =
      tightness_constants(1, 0, {{32, defining_fineness_bound(cycle, 32)}});
  CHECK(again.P0 == 99);
}

TEST_CASE("geodesic union of an arc is the arc itself") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const TruncatedWindow& w1 = family.at(1);
  const int ia = w1.index_of(base_vertex(ctx, 0));
  const int ib = w1.index_of(base_vertex(ctx, 10));
  const auto got = geodesic_union(w1, ia, ib);
  std::set<int> expect;
  for (int v = 0; v <= 10; ++v) {
    expect.insert(w1.index_of(base_vertex(ctx, v)));
  }
  CHECK(std::set<int>(got.begin(), got.end()) == expect);
}

TEST_CASE("coned-off decomposition marks copy changes along geodesics") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const TruncatedWindow& w1 = family.at(1);
  const SimplicialGraph coned = coned_off_graph(w1);

  std::vector<int> arc;
  for (int v = 0; v <= 10; ++v) {
    arc.push_back(w1.index_of(base_vertex(ctx, v)));
  }
  const auto one = coned_off_geodesic_decompose(w1, coned, arc);
  CHECK(one.marks == std::vector<int>{0, 10});
  CHECK(one.coned_distance == 1);
  CHECK(one.hausdorff == 0);

  const auto bigons = synthetic_long_bigons(family, 1);
  std::vector<int> theta;
  for (const ExtVertex& x : bigons[0].first) {
    const int idx = w1.index_of(x);
    REQUIRE(idx >= 0);
    theta.push_back(idx);
  }
  const auto two = coned_off_geodesic_decompose(w1, coned, theta);
  CHECK(two.marks == std::vector<int>{0, 10, 19});
  CHECK(two.coned_distance == 2);
  CHECK(two.hausdorff <= 1);

  // A non-geodesic window path is rejected.
  std::vector<int> detour = arc;
  detour.push_back(w1.index_of(base_vertex(ctx, 9)));
  CHECK_THROWS_AS(coned_off_geodesic_decompose(w1, coned, detour),
                  std::invalid_argument);
}

TEST_CASE("the cover of the coned-off unit ball groups by touching copies") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const TruncatedWindow& w1 = family.at(1);
  const SimplicialGraph coned = coned_off_graph(w1);
  const AsdimCover cover = asdim_cover(w1, coned, base_vertex(ctx, 0), 0);
  REQUIRE(cover.pieces.size() == 5);
  CHECK(cover.pieces[0].coned_distance == 0);
  CHECK(cover.pieces[0].label == ctx.identity());
  CHECK(cover.pieces[0].members ==
        std::vector<int>{w1.index_of(base_vertex(ctx, 0))});
  std::multiset<std::size_t> sizes;
  for (const auto& piece : cover.pieces) {
    sizes.insert(piece.members.size());
    CHECK(piece.coned_distance <= 1);
  }
  CHECK(sizes == std::multiset<std::size_t>{1, 18, 18, 18, 20});

  const auto rep = cover_separation_check(w1, coned, cover, 2);
  CHECK(rep.pieces_cover_ball);
  CHECK(rep.pieces_inside_their_copy);
  CHECK(rep.separation_holds);
  // The radius-one window is swallowed by the removal neighborhood.
  CHECK(rep.vacuous);
}

TEST_CASE("the radius-one cover spans the whole small window") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const TruncatedWindow& w1 = family.at(1);
  const SimplicialGraph coned = coned_off_graph(w1);
  const AsdimCover cover = asdim_cover(w1, coned, base_vertex(ctx, 0), 1);
  std::size_t covered = 0;
  for (const auto& piece : cover.pieces) {
    covered += piece.members.size();
    CHECK(piece.coned_distance <= 2);
    for (int idx : piece.members) {
      CHECK(in_copy(ctx, piece.label, w1.vertex(idx)));
    }
  }
  CHECK(covered == static_cast<std::size_t>(w1.size()));
  const auto rep = cover_separation_check(w1, coned, cover, 2);
  CHECK(rep.pieces_cover_ball);
  CHECK(rep.pieces_inside_their_copy);
  CHECK(rep.separation_holds);
}

TEST_CASE("synthetic families have the advertised shapes") {
  auto& family = c21_family();
  const auto& ctx = family.context();
  const auto bigons = synthetic_long_bigons(family, 3);
  REQUIRE(bigons.size() == 3);
  for (const auto& [p, q] : bigons) {
    CHECK(p.size() == 20);
    CHECK(q.size() == 20);
    CHECK(p.front() == q.front());
    CHECK(p.back() == q.back());
    require_ext_path(ctx, p);
    require_ext_path(ctx, q);
  }
  const auto tris = synthetic_triangles(family, 2);
  REQUIRE(tris.size() == 2);
  for (const auto& t : tris) {
    CHECK(t[0].back() == t[1].front());
    CHECK(t[0].front() == t[2].front());
    CHECK(t[1].back() == t[2].back());
    for (const auto& side : t) require_ext_path(ctx, side);
  }
  CHECK(tris[0][0].size() == 8);
  CHECK(tris[1][0].size() == 11);
  CHECK(tris[1][1].size() == 10);
  CHECK(tris[1][2].size() == 20);
  const auto circuits = synthetic_circuits(family, 2);
  REQUIRE(circuits.size() == 2);
  CHECK(circuits[0].size() == 21);
  CHECK(circuits[1].size() == 38);
  for (const auto& c : circuits) {
    require_ext_path(ctx, c);
    CHECK(ext_adjacent(ctx, c.back(), c.front()));
  }
}

TEST_CASE("synthetic families require the length-21 circuit shape") {
  CHECK_THROWS_AS(synthetic_long_bigons(c22_family(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(synthetic_triangles(p3_family(), 1), std::invalid_argument);
  CHECK_THROWS_AS(synthetic_circuits(c22_family(), 1), std::invalid_argument);
}

}  // TEST_SUITE
