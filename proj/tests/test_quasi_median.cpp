#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gpwb/errors.hpp"
#include "gpwb/parabolic.hpp"
#include "gpwb/quasi_median.hpp"

using gpwb::ball_to_dot;
using gpwb::BudgetExceeded;
using gpwb::CayleyBall;
using gpwb::contact_graph;
using gpwb::coset_canonical;
using gpwb::crossing_graph;
using gpwb::ExtVertex;
using gpwb::GroupTable;
using gpwb::Hyperplane;
using gpwb::hyperplane_image;
using gpwb::hyperplanes;
using gpwb::interior_hyperplanes;
using gpwb::IsoReport;
using gpwb::make_ext_vertex;
using gpwb::NormalWord;
using gpwb::ProductContext;
using gpwb::sampled_delta_x2;
using gpwb::SimplicialGraph;
using gpwb::star_set;
using gpwb::Syllable;
using gpwb::TruncatedWindow;
using gpwb::verify_iso;
using gpwb::VertexGroup;

namespace {

ProductContext uniform_context(SimplicialGraph graph, int order) {
  std::vector<VertexGroup> groups(graph.vertex_count(),
                                  VertexGroup::finite(GroupTable::cyclic(order)));
  return ProductContext(std::move(graph), std::move(groups));
}

ProductContext edge_z2() {
  return uniform_context(SimplicialGraph({"u", "v"}, {{"u", "v"}}), 2);
}

ProductContext p3_z2() {
  return uniform_context(
      SimplicialGraph({"u", "v", "w"}, {{"u", "v"}, {"v", "w"}}), 2);
}

ProductContext two_isolated_z2() {
  return uniform_context(SimplicialGraph({"a", "b"}, {}), 2);
}

NormalWord syl(const ProductContext& ctx, int v, long long e = 1) {
  return ctx.from_syllable(v, e);
}

// Classes must partition the edges, carry one label each, list exact
// endpoint carriers, and be interior exactly when no carrier vertex sits on
// the outer shell.  Crossing edges must also be contact edges.
void check_class_laws(const CayleyBall& ball) {
  const auto hps = hyperplanes(ball);
  std::vector<int> covered;
  for (const Hyperplane& hp : hps) {
    std::set<int> endpoints;
    bool interior = true;
    for (int e : hp.edges) {
      CHECK(ball.edges()[e].orbit == hp.orbit);
      endpoints.insert(ball.edges()[e].from);
      endpoints.insert(ball.edges()[e].to);
      covered.push_back(e);
    }
    CHECK(hp.carrier == std::vector<int>(endpoints.begin(), endpoints.end()));
    for (int x : hp.carrier) interior = interior && !ball.on_shell(x);
    CHECK(hp.interior == interior);
  }
  std::sort(covered.begin(), covered.end());
  std::vector<int> all(ball.edges().size());
  for (int e = 0; e < static_cast<int>(all.size()); ++e) all[e] = e;
  CHECK(covered == all);

  const SimplicialGraph crossing = crossing_graph(ball, hps);
  const SimplicialGraph contact = contact_graph(ball, hps);
  CHECK(crossing.vertex_count() == contact.vertex_count());
  for (const auto& [a, b] : crossing.edges()) {
    CHECK(contact.adjacent(a, b));
    const int ida = std::stoi(crossing.vertex_id(a).substr(1));
    const int idb = std::stoi(crossing.vertex_id(b).substr(1));
    CHECK(ball.context().graph().adjacent(hps[ida].orbit, hps[idb].orbit));
  }
}

}  // namespace

TEST_SUITE("quasi_median") {

TEST_CASE("radius zero ball is the single identity vertex") {
  ProductContext ctx = uniform_context(SimplicialGraph::cycle(21), 2);
  CayleyBall ball(ctx, 0);
  CHECK(ball.size() == 1);
  CHECK(ball.vertex(0) == ctx.identity());
  CHECK(ball.edges().empty());
  CHECK(ball.on_shell(0));
  CHECK(ball.graph().vertex_count() == 1);
}

TEST_CASE("commuting edge pair yields the square Cayley graph") {
  ProductContext ctx = edge_z2();
  CayleyBall ball(ctx, 2);
  CHECK(ball.size() == 4);
  CHECK(ball.vertex(0) == ctx.identity());
  CHECK(ball.index_of(syl(ctx, 0)) == 1);
  CHECK(ball.index_of(ctx.mul(syl(ctx, 0), syl(ctx, 1))) == 2);
  CHECK(ball.index_of(syl(ctx, 1)) == 3);
  CHECK(ball.edges().size() == 4);
  CHECK(ball.graph().girth() == 4);
  CHECK(ball.on_shell(2));       // the length-two corner
  CHECK_FALSE(ball.on_shell(1));

  // The whole group has diameter two, so at radius three the shell is empty.
  CayleyBall full(ctx, 3);
  CHECK(full.size() == 4);
  for (int i = 0; i < full.size(); ++i) CHECK_FALSE(full.on_shell(i));
}

TEST_CASE("ball rejects infinite groups and tiny caps") {
  SimplicialGraph graph({"u", "v"}, {{"u", "v"}});
  std::vector<VertexGroup> groups{VertexGroup::finite(GroupTable::cyclic(2)),
                                  VertexGroup::infinite_cyclic()};
  ProductContext mixed(graph, groups);
  CHECK_THROWS_AS(CayleyBall(mixed, 1), std::invalid_argument);
  ProductContext c21 = uniform_context(SimplicialGraph::cycle(21), 2);
  CHECK_THROWS_AS(CayleyBall(c21, 2, 10), BudgetExceeded);
}

TEST_CASE("free product of two involutions gives a dihedral segment") {
  ProductContext ctx = two_isolated_z2();
  CayleyBall ball(ctx, 3);
  const NormalWord a = syl(ctx, 0);
  const NormalWord b = syl(ctx, 1);
  CHECK(ball.size() == 7);
  CHECK(ball.index_of(ctx.identity()) == 0);
  CHECK(ball.index_of(a) == 1);
  CHECK(ball.index_of(ctx.mul(a, b)) == 2);
  CHECK(ball.index_of(ctx.mul(ctx.mul(a, b), a)) == 3);
  CHECK(ball.index_of(b) == 4);
  CHECK(ball.index_of(ctx.mul(b, a)) == 5);
  CHECK(ball.index_of(ctx.mul(ctx.mul(b, a), b)) == 6);
  CHECK(ball.edges().size() == 6);
  // A path: the two deepest words are its endpoints.
  CHECK(ball.graph().is_connected());
  CHECK(ball.graph().neighbors(3).size() == 1);
  CHECK(ball.graph().neighbors(6).size() == 1);
  CHECK(ball.graph().neighbors(0).size() == 2);
  CHECK(ball.edges()[ball.edge_between(0, 1)].orbit == 0);
  CHECK(ball.edges()[ball.edge_between(0, 4)].orbit == 1);
}

TEST_CASE("square ball splits into two opposite-edge classes") {
  ProductContext ctx = edge_z2();
  CayleyBall ball(ctx, 3);
  const auto hps = hyperplanes(ball);
  REQUIRE(hps.size() == 2);
  for (const Hyperplane& hp : hps) {
    CHECK(hp.edges.size() == 2);
    CHECK(hp.carrier.size() == 4);
    CHECK(hp.interior);
  }
  CHECK(hps[0].orbit == 0);
  CHECK(hps[1].orbit == 1);
  CHECK(hyperplane_image(ball, hps[0]) == make_ext_vertex(ctx, 0, ctx.identity()));
  CHECK(hyperplane_image(ball, hps[1]) == make_ext_vertex(ctx, 1, ctx.identity()));
  CHECK(interior_hyperplanes(hps) == std::vector<int>{0, 1});

  // At radius two the length-two corner lies on the shell, so both classes
  // are flagged as possibly truncated.
  CayleyBall tight(ctx, 2);
  CHECK(interior_hyperplanes(hyperplanes(tight)).empty());
}

TEST_CASE("one Z/3 vertex group merges its triangle into one class") {
  ProductContext ctx = uniform_context(SimplicialGraph({"a"}, {}), 3);
  CayleyBall ball(ctx, 2);
  CHECK(ball.size() == 3);
  CHECK(ball.edges().size() == 3);
  const auto hps = hyperplanes(ball);
  REQUIRE(hps.size() == 1);
  CHECK(hps[0].edges.size() == 3);
  CHECK(hps[0].carrier.size() == 3);
  CHECK(hps[0].interior);
  CHECK(crossing_graph(ball, hps).vertex_count() == 1);
  CHECK(crossing_graph(ball, hps).edges().empty());

  TruncatedWindow window(ctx, 1);
  const IsoReport report = verify_iso(ball, window);
  CHECK(report.passed);
  CHECK(report.interior_count == 1);
  CHECK(report.images_in_window == 1);
  CHECK(report.crossing_pairs == 0);
}

TEST_CASE("two commuting Z/3 groups give two nine-edge classes") {
  ProductContext ctx = uniform_context(SimplicialGraph({"u", "v"}, {{"u", "v"}}), 3);
  CayleyBall ball(ctx, 3);
  CHECK(ball.size() == 9);
  const auto hps = hyperplanes(ball);
  REQUIRE(hps.size() == 2);
  for (const Hyperplane& hp : hps) {
    CHECK(hp.edges.size() == 9);
    CHECK(hp.carrier.size() == 9);
    CHECK(hp.interior);
  }
  CHECK(crossing_graph(ball, hps).edges().size() == 1);
  CHECK(contact_graph(ball, hps).edges().size() == 1);

  TruncatedWindow window(ctx, 1);
  const IsoReport report = verify_iso(ball, window);
  CHECK(report.passed);
  CHECK(report.interior_count == 2);
  CHECK(report.images_in_window == 2);
  CHECK(report.crossing_pairs == 1);
  CHECK(report.crossing_agreements == 1);
  CHECK(report.contact_agreements == 1);
}

TEST_CASE("dihedral segment: edgeless crossing graph, path contact graph") {
  ProductContext ctx = two_isolated_z2();
  CayleyBall ball(ctx, 3);
  const auto hps = hyperplanes(ball);
  CHECK(hps.size() == 6);
  for (const Hyperplane& hp : hps) CHECK(hp.edges.size() == 1);
  const auto ids = interior_hyperplanes(hps);
  CHECK(ids.size() == 4);

  const SimplicialGraph crossing = crossing_graph(ball, hps);
  CHECK(crossing.vertex_count() == 4);
  CHECK(crossing.edges().empty());

  const SimplicialGraph contact = contact_graph(ball, hps);
  CHECK(contact.vertex_count() == 4);
  CHECK(contact.edges().size() == 3);
  CHECK(contact.is_connected());
  std::vector<int> degrees;
  for (int i = 0; i < 4; ++i)
    degrees.push_back(static_cast<int>(contact.neighbors(i).size()));
  std::sort(degrees.begin(), degrees.end());
  CHECK(degrees == std::vector<int>{1, 1, 2, 2});
  CHECK(sampled_delta_x2(contact, 0, 0) == 0);

  TruncatedWindow window(ctx, 1);
  const IsoReport report = verify_iso(ball, window);
  CHECK(report.passed);
  CHECK(report.interior_count == 4);
  CHECK(report.images_in_window == 4);
  CHECK(report.contact_pairs == 6);
  CHECK(report.contact_agreements == 6);
  CHECK(report.contact_beyond_ball == 0);
  std::set<ExtVertex> images;
  for (int id : ids) images.insert(hyperplane_image(ball, hps[id]));
  const std::set<ExtVertex> expected{
      make_ext_vertex(ctx, 0, ctx.identity()),
      make_ext_vertex(ctx, 0, syl(ctx, 1)),
      make_ext_vertex(ctx, 1, ctx.identity()),
      make_ext_vertex(ctx, 1, syl(ctx, 0))};
  CHECK(images == expected);
}

TEST_CASE("path product ball census at radius three") {
  ProductContext ctx = p3_z2();
  CayleyBall ball(ctx, 3);
  CHECK(ball.size() == 12);
  CHECK(ball.edges().size() == 15);
  const auto hps = hyperplanes(ball);
  CHECK(hps.size() == 7);
  // Every class realizes one conjugate copy: the count must match the
  // number of distinct (label, star-coset) pairs over all ball edges.
  std::set<std::pair<int, NormalWord>> realized;
  for (const auto& e : ball.edges()) {
    realized.emplace(e.orbit,
                     coset_canonical(ctx, star_set(ctx.graph(), e.orbit),
                                     ball.vertex(e.from)));
  }
  CHECK(realized.size() == hps.size());
  const auto ids = interior_hyperplanes(hps);
  REQUIRE(ids.size() == 2);
  CHECK(hyperplane_image(ball, hps[ids[0]]) ==
        make_ext_vertex(ctx, 0, ctx.identity()));
  CHECK(hyperplane_image(ball, hps[ids[1]]) ==
        make_ext_vertex(ctx, 2, ctx.identity()));
}

TEST_CASE("path product interior classes at radius four") {
  ProductContext ctx = p3_z2();
  CayleyBall ball(ctx, 4);
  const auto hps = hyperplanes(ball);
  const auto ids = interior_hyperplanes(hps);
  REQUIRE(ids.size() == 4);
  std::set<ExtVertex> images;
  for (int id : ids) images.insert(hyperplane_image(ball, hps[id]));
  const std::set<ExtVertex> expected{
      make_ext_vertex(ctx, 0, ctx.identity()),
      make_ext_vertex(ctx, 0, syl(ctx, 2)),
      make_ext_vertex(ctx, 2, ctx.identity()),
      make_ext_vertex(ctx, 2, syl(ctx, 0))};
  CHECK(images == expected);

  // No two interior classes cross (their orbit vertices are the two path
  // ends), but carriers chain through the shared middle-group cosets.
  const SimplicialGraph crossing = crossing_graph(ball, hps);
  CHECK(crossing.vertex_count() == 4);
  CHECK(crossing.edges().empty());
  const SimplicialGraph contact = contact_graph(ball, hps);
  CHECK(contact.edges().size() == 3);
  std::vector<int> degrees;
  for (int i = 0; i < 4; ++i)
    degrees.push_back(static_cast<int>(contact.neighbors(i).size()));
  std::sort(degrees.begin(), degrees.end());
  CHECK(degrees == std::vector<int>{1, 1, 2, 2});

  TruncatedWindow window(ctx, 2);
  const IsoReport report = verify_iso(ball, window);
  CHECK(report.passed);
  CHECK(report.interior_count == 4);
  CHECK(report.boundary_count > 0);
  CHECK(report.images_in_window == 4);
  CHECK(report.crossing_pairs == 6);
  CHECK(report.crossing_agreements == 6);
  CHECK(report.crossing_beyond_ball == 0);
  CHECK(report.contact_pairs == 6);
  CHECK(report.contact_agreements == 6);
  CHECK(report.contact_beyond_ball == 0);
  CHECK(report.mismatches.empty());
}

TEST_CASE("class laws hold across the example balls") {
  check_class_laws(CayleyBall(edge_z2(), 3));
  check_class_laws(CayleyBall(two_isolated_z2(), 3));
  check_class_laws(CayleyBall(p3_z2(), 4));
  check_class_laws(
      CayleyBall(uniform_context(SimplicialGraph({"u", "v"}, {{"u", "v"}}), 3),
                 3));
  check_class_laws(
      CayleyBall(uniform_context(SimplicialGraph::cycle(21), 2), 2));
}

TEST_CASE("long-girth cycle: every class touches the shell, pass is vacuous") {
  ProductContext ctx = uniform_context(SimplicialGraph::cycle(21), 2);
  CayleyBall ball(ctx, 2);
  CHECK(ball.size() == 421);
  const auto hps = hyperplanes(ball);
  CHECK(hps.size() == 399);
  CHECK(interior_hyperplanes(hps).empty());

  TruncatedWindow window(ctx, 1);
  const IsoReport report = verify_iso(ball, window);
  CHECK(report.passed);
  CHECK(report.hyperplane_count == 399);
  CHECK(report.interior_count == 0);
  CHECK(report.boundary_count == 399);
  CHECK(report.crossing_pairs == 0);
  CHECK(report.images_in_window == 0);
}

TEST_CASE("verify_iso demands matching contexts") {
  CayleyBall ball(edge_z2(), 2);
  TruncatedWindow window(p3_z2(), 1);
  CHECK_THROWS_AS(verify_iso(ball, window), std::invalid_argument);
}

TEST_CASE("four-point defect: zero on trees, two on the hexagon") {
  CHECK(sampled_delta_x2(SimplicialGraph::path(7), 0, 0) == 0);
  CHECK(sampled_delta_x2(SimplicialGraph::cycle(6), 0, 0) == 2);
  const long long sampled = sampled_delta_x2(SimplicialGraph::cycle(6), 500, 1);
  CHECK(sampled >= 0);
  CHECK(sampled <= 2);
  CHECK(sampled == sampled_delta_x2(SimplicialGraph::cycle(6), 500, 1));
  CHECK_THROWS_AS(sampled_delta_x2(SimplicialGraph::cycle(50), 0, 0),
                  std::invalid_argument);
  // Quadruples come from the largest component; a three-vertex component
  // has no quadruples at all.
  SimplicialGraph split({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}});
  CHECK(sampled_delta_x2(split, 0, 0) == 0);
}

TEST_CASE("dot export colors edges by class") {
  ProductContext ctx = edge_z2();
  CayleyBall ball(ctx, 3);
  const std::string dot = ball_to_dot(ball, hyperplanes(ball), "ball");
  CHECK(dot.find("graph ball {") != std::string::npos);
  CHECK(dot.find("--") != std::string::npos);
  CHECK(dot.find("#e6194b") != std::string::npos);
  std::size_t colored = 0;
  for (std::size_t at = dot.find("color="); at != std::string::npos;
       at = dot.find("color=", at + 1)) {
    ++colored;
  }
  CHECK(colored == ball.edges().size());
}

}  // TEST_SUITE
