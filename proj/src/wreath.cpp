// Semidirect products of a graph product with a finite graph-automorphism
// group: element arithmetic and exact stabilizer computations.
#include "gpwb/wreath.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "gpwb/errors.hpp"

namespace gpwb {

namespace {

bool same_vertex_group(const VertexGroup& a, const VertexGroup& b) {
  if (a.is_infinite_cyclic() || b.is_infinite_cyclic()) {
    return a.is_infinite_cyclic() && b.is_infinite_cyclic();
  }
  return a.table() == b.table();
}

void check_action_element(const WreathContext& wctx, int g) {
  const int order = wctx.action().group().order();
  if (g < 0 || g >= order) {
    throw std::invalid_argument("action element index " + std::to_string(g) +
                                " out of range [0, " + std::to_string(order) +
                                ")");
  }
}

std::string trimmed(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

WreathContext::WreathContext(ProductContext ctx, GraphAction action)
    : ctx_(std::move(ctx)), action_(std::move(action)) {
  const SimplicialGraph& product_graph = ctx_.graph();
  const SimplicialGraph& action_graph = action_.graph();
  if (product_graph.vertex_ids() != action_graph.vertex_ids() ||
      product_graph.edges() != action_graph.edges()) {
    throw std::invalid_argument(
        "the action must act on the defining graph of the product (vertex "
        "ids and edges must match)");
  }
  diagnostics_ = action_.validate();
  for (const std::vector<int>& orbit : diagnostics_.vertex_orbits) {
    for (std::size_t i = 1; i < orbit.size(); ++i) {
      if (!same_vertex_group(ctx_.group(orbit[0]), ctx_.group(orbit[i]))) {
        throw std::invalid_argument(
            "vertex groups must be constant on action orbits ('" +
            product_graph.vertex_id(orbit[0]) + "' and '" +
            product_graph.vertex_id(orbit[i]) + "' differ)");
      }
    }
  }
}

NormalWord alpha(const WreathContext& wctx, int g, const NormalWord& f) {
  const ProductContext& ctx = wctx.ctx();
  ctx.require_same_context(f);
  check_action_element(wctx, g);
  std::vector<Syllable> moved;
  moved.reserve(f.size());
  for (const Syllable& s : f.syllables()) {
    moved.push_back({wctx.action().image(g, s.vertex), s.element});
  }
  return ctx.normalize(moved);
}

WreathElement wreath_identity(const WreathContext& wctx) {
  return {wctx.ctx().identity(), 0};
}

WreathElement wmul(const WreathContext& wctx, const WreathElement& x,
                   const WreathElement& y) {
  const ProductContext& ctx = wctx.ctx();
  ctx.require_same_context(x.f);
  ctx.require_same_context(y.f);
  check_action_element(wctx, x.g);
  check_action_element(wctx, y.g);
  return {ctx.mul(x.f, alpha(wctx, x.g, y.f)),
          wctx.action().group().mul(x.g, y.g)};
}

WreathElement winv(const WreathContext& wctx, const WreathElement& x) {
  const ProductContext& ctx = wctx.ctx();
  ctx.require_same_context(x.f);
  check_action_element(wctx, x.g);
  const int ginv = wctx.action().group().inv(x.g);
  return {alpha(wctx, ginv, ctx.inv(x.f)), ginv};
}

ExtVertex wreath_act(const WreathContext& wctx, const WreathElement& x,
                     const ExtVertex& ev) {
  const ProductContext& ctx = wctx.ctx();
  ctx.require_same_context(x.f);
  ctx.require_same_context(ev.rep);
  check_action_element(wctx, x.g);
  const ExtVertex moved = make_ext_vertex(
      ctx, wctx.action().image(x.g, ev.vertex), alpha(wctx, x.g, ev.rep));
  return act(ctx, x.f, moved);
}

std::string wreath_to_string(const WreathContext& wctx,
                             const WreathElement& x) {
  return "(" + wctx.ctx().to_string(x.f) + "; " +
         wctx.action().group().name(x.g) + ")";
}

WreathElement wreath_parse(const WreathContext& wctx, const std::string& text) {
  std::string body = trimmed(text);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
    body = body.substr(1, body.size() - 2);
  }
  const std::size_t split = body.rfind(';');
  if (split == std::string::npos) {
    throw std::invalid_argument(
        "a wreath element must be written \"(word; g)\"");
  }
  NormalWord f = wctx.ctx().parse(trimmed(body.substr(0, split)));
  const int g =
      wctx.action().group().element_by_name(trimmed(body.substr(split + 1)));
  return {std::move(f), g};
}

EdgeStabilizerReport edge_stabilizer(const WreathContext& wctx, int e_minus,
                                     int e_plus) {
  const ProductContext& ctx = wctx.ctx();
  const SimplicialGraph& graph = ctx.graph();
  if (!graph.adjacent(e_minus, e_plus)) {
    throw std::invalid_argument(
        "edge stabilizer requires an edge of the defining graph");
  }
  if (const auto girth = graph.girth(); girth.has_value() && *girth <= 4) {
    throw std::invalid_argument(
        "edge stabilizer requires girth > 4 (the defining graph has girth " +
        std::to_string(*girth) + ")");
  }
  if (ctx.has_infinite_group()) {
    throw std::invalid_argument(
        "edge stabilizer requires finite vertex groups");
  }

  const GroupTable& acting = wctx.action().group();
  EdgeStabilizerReport report;
  report.e_minus = e_minus;
  report.e_plus = e_plus;
  for (int g = 0; g < acting.order(); ++g) {
    if (wctx.action().image(g, e_minus) == e_minus &&
        wctx.action().image(g, e_plus) == e_plus) {
      report.action_stabilizer.push_back(g);
    }
  }

  const long long order_minus = ctx.group(e_minus).order();
  const long long order_plus = ctx.group(e_plus).order();
  for (long long a = 0; a < order_minus; ++a) {
    for (long long b = 0; b < order_plus; ++b) {
      NormalWord f = ctx.identity();
      if (a != 0) f = ctx.mul_syllable(f, {e_minus, a});
      if (b != 0) f = ctx.mul_syllable(f, {e_plus, b});
      for (int g : report.action_stabilizer) {
        report.elements.push_back({f, g});
      }
    }
  }
  std::sort(report.elements.begin(), report.elements.end());
  report.order = static_cast<long long>(report.elements.size());
  report.predicted_order = order_minus * order_plus *
                           static_cast<long long>(
                               report.action_stabilizer.size());
  if (report.order != report.predicted_order) {
    throw VerificationFailure(
        "edge stabilizer list disagrees with the product of component "
        "orders");
  }

  const ExtVertex base_minus = base_vertex(ctx, e_minus);
  const ExtVertex base_plus = base_vertex(ctx, e_plus);
  for (const WreathElement& el : report.elements) {
    if (wreath_act(wctx, el, base_minus) != base_minus ||
        wreath_act(wctx, el, base_plus) != base_plus) {
      throw VerificationFailure(
          "listed edge-stabilizer element " + wreath_to_string(wctx, el) +
          " moves an endpoint of the base edge");
    }
  }

  // Independence check: every stabilizer element has word part of syllable
  // length <= 2, so scanning ball(2) x G for fixers of both endpoints must
  // reproduce the list exactly.
  std::vector<WreathElement> fixers;
  for (const NormalWord& w : ctx.enumerate_ball(2)) {
    for (int g = 0; g < acting.order(); ++g) {
      const WreathElement el{w, g};
      if (wreath_act(wctx, el, base_minus) == base_minus &&
          wreath_act(wctx, el, base_plus) == base_plus) {
        fixers.push_back(el);
      }
    }
  }
  if (fixers != report.elements) {
    throw VerificationFailure(
        "edge stabilizer does not match the brute-force fixer enumeration "
        "(listed " +
        std::to_string(report.elements.size()) + ", found " +
        std::to_string(fixers.size()) + ")");
  }
  return report;
}

std::vector<PeripheralEntry> parabolic_family(const WreathContext& wctx) {
  const ProductContext& ctx = wctx.ctx();
  ctx.require_nontrivial_groups();
  const SimplicialGraph& graph = ctx.graph();

  std::vector<PeripheralEntry> family;
  for (const std::vector<int>& orbit : wctx.diagnostics().vertex_orbits) {
    PeripheralEntry entry;
    entry.vertex = orbit.front();
    entry.orbit = orbit;
    entry.star = graph.star(entry.vertex);
    entry.action_stabilizer =
        wctx.diagnostics().vertex_stabilizers[entry.vertex];

    bool infinite_group_in_star = false;
    for (int w : entry.star) {
      if (ctx.group(w).order() == 0) infinite_group_in_star = true;
    }
    const std::vector<int>& link = graph.neighbors(entry.vertex);
    bool non_adjacent_link_pair = false;
    for (std::size_t i = 0; i < link.size() && !non_adjacent_link_pair; ++i) {
      for (std::size_t j = i + 1; j < link.size(); ++j) {
        if (!graph.adjacent(link[i], link[j])) {
          non_adjacent_link_pair = true;
          break;
        }
      }
    }
    entry.infinite = infinite_group_in_star || non_adjacent_link_pair;
    entry.peripheral = entry.infinite;
    if (!entry.infinite) {
      // The star spans a clique of finite groups, so the star parabolic is
      // their direct product and the stabilizer is its semidirect extension
      // by the vertex stabilizer in the acting group.
      long long order = static_cast<long long>(entry.action_stabilizer.size());
      for (int w : entry.star) order *= ctx.group(w).order();
      entry.finite_order = order;
    }

    std::ostringstream described;
    described << "<Stab_G(" << graph.vertex_id(entry.vertex) << ")";
    for (int w : entry.star) described << ", G_" << graph.vertex_id(w);
    described << ">";
    entry.generators = described.str();
    family.push_back(std::move(entry));
  }
  return family;
}

}  // namespace gpwb
