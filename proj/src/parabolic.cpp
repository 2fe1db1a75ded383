// Parabolic subgroup machinery: coset canonicalization by greedy stripping.
#include "gpwb/parabolic.hpp"

#include <algorithm>

#include "gpwb/errors.hpp"

namespace gpwb {
namespace {

std::vector<char> mask_of(const ProductContext& ctx, const std::set<int>& S) {
  std::vector<char> mask(ctx.graph().vertex_count(), 0);
  for (int v : S) {
    if (v < 0 || v >= ctx.graph().vertex_count()) {
      throw std::invalid_argument("support set contains vertex index " +
                                  std::to_string(v) + " out of range");
    }
    mask[v] = 1;
  }
  return mask;
}

}  // namespace

std::set<int> star_set(const SimplicialGraph& graph, int v) {
  const auto star = graph.star(v);
  return std::set<int>(star.begin(), star.end());
}

bool parabolic_member(const ProductContext& ctx, const std::set<int>& S,
                      const NormalWord& g) {
  const auto mask = mask_of(ctx, S);
  for (int v : ctx.support(g)) {
    if (!mask[v]) return false;
  }
  return true;
}

CosetSplit coset_split(const ProductContext& ctx, const std::set<int>& S,
                       const NormalWord& g) {
  ctx.require_same_context(g);
  const auto mask = mask_of(ctx, S);
  std::vector<Syllable> rep = g.syllables();
  std::vector<Syllable> tail;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = static_cast<int>(rep.size()) - 1; i >= 0; --i) {
      if (!mask[rep[i].vertex]) continue;
      bool movable = true;
      for (std::size_t j = i + 1; j < rep.size(); ++j) {
        if (!ctx.graph().adjacent(rep[j].vertex, rep[i].vertex)) {
          movable = false;
          break;
        }
      }
      if (!movable) continue;
      tail.insert(tail.begin(), rep[i]);
      rep.erase(rep.begin() + i);
      changed = true;
      break;
    }
  }
  return {ctx.normalize(rep), ctx.normalize(tail)};
}

NormalWord coset_canonical(const ProductContext& ctx, const std::set<int>& S,
                           const NormalWord& g) {
  return coset_split(ctx, S, g).rep;
}

LeftCosetSplit left_coset_split(const ProductContext& ctx,
                                const std::set<int>& S, const NormalWord& g) {
  ctx.require_same_context(g);
  const auto mask = mask_of(ctx, S);
  std::vector<Syllable> rep = g.syllables();
  std::vector<Syllable> head;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      if (!mask[rep[i].vertex]) continue;
      bool movable = true;
      for (std::size_t j = 0; j < i; ++j) {
        if (!ctx.graph().adjacent(rep[j].vertex, rep[i].vertex)) {
          movable = false;
          break;
        }
      }
      if (!movable) continue;
      head.push_back(rep[i]);
      rep.erase(rep.begin() + i);
      changed = true;
      break;
    }
  }
  return {ctx.normalize(head), ctx.normalize(rep)};
}

DoubleCosetDecomposition double_coset_decompose(const ProductContext& ctx,
                                                const std::set<int>& S,
                                                const std::set<int>& T,
                                                const NormalWord& g) {
  DoubleCosetDecomposition result;
  result.left = ctx.identity();
  result.right = ctx.identity();
  result.residual = g;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto ls = left_coset_split(ctx, S, result.residual);
    if (!ls.head.empty()) {
      result.left = ctx.mul(result.left, ls.head);
      result.residual = ls.rep;
      changed = true;
    }
    const auto rs = coset_split(ctx, T, result.residual);
    if (!rs.tail.empty()) {
      result.right = ctx.mul(rs.tail, result.right);
      result.residual = rs.rep;
      changed = true;
    }
  }
  result.member = result.residual.empty();
  return result;
}

bool double_coset_member(const ProductContext& ctx, const std::set<int>& S,
                         const std::set<int>& T, const NormalWord& g) {
  return double_coset_decompose(ctx, S, T, g).member;
}

CosetIntersection coset_intersect(const ProductContext& ctx,
                                  const std::set<int>& S, const NormalWord& g,
                                  const std::set<int>& T,
                                  const NormalWord& h) {
  CosetIntersection result;
  std::set_intersection(S.begin(), S.end(), T.begin(), T.end(),
                        std::inserter(result.meet, result.meet.begin()));
  // g·P_S meets h·P_T iff h^-1 g ∈ P_T · P_S; a witness k then satisfies
  // k = g·s^-1 = h·t for the decomposition h^-1 g = t·s.
  const auto d = double_coset_decompose(ctx, T, S, ctx.mul(ctx.inv(h), g));
  if (!d.member) return result;
  const NormalWord k = ctx.mul(g, ctx.inv(d.right));
  if (k != ctx.mul(h, d.left)) {
    throw VerificationFailure(
        "coset intersection witness failed the two-sided check");
  }
  result.nonempty = true;
  result.rep = coset_canonical(ctx, result.meet, k);
  return result;
}

StabIntersectionReport stab_intersection(const ProductContext& ctx, int a,
                                         int b) {
  const auto& graph = ctx.graph();
  if (const auto girth = graph.girth(); girth && *girth <= 4) {
    throw std::invalid_argument(
        "stabilizer intersection requires defining graph girth > 4");
  }
  if (a == b) {
    throw std::invalid_argument(
        "stabilizer intersection needs two distinct base vertices");
  }
  StabIntersectionReport report;
  report.distance = graph.distance(a, b);

  const auto vertex_group_elements = [&](int v) {
    if (ctx.group(v).is_infinite_cyclic()) {
      throw std::invalid_argument(
          "stabilizer intersection cannot materialize an infinite vertex "
          "group");
    }
    std::vector<NormalWord> elems;
    for (long long e = 0; e < ctx.group(v).order(); ++e) {
      elems.push_back(ctx.from_syllable(v, e));
    }
    return elems;
  };

  if (report.distance == 1) {
    report.case_id = 1;
    std::set<NormalWord> elems;
    for (const auto& x : vertex_group_elements(a)) {
      for (const auto& y : vertex_group_elements(b)) {
        elems.insert(ctx.mul(x, y));
      }
    }
    report.elements.assign(elems.begin(), elems.end());
  } else if (report.distance == 2) {
    report.case_id = 2;
    const auto na = graph.neighbors(a);
    const auto nb = graph.neighbors(b);
    std::vector<int> common;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                          std::back_inserter(common));
    if (common.size() != 1) {
      throw VerificationFailure(
          "vertices at distance two have " + std::to_string(common.size()) +
          " common neighbors despite girth > 4");
    }
    report.middle = common[0];
    report.elements = vertex_group_elements(common[0]);
  } else {
    report.case_id = 3;
    report.elements = {ctx.identity()};
  }
  return report;
}

}  // namespace gpwb
