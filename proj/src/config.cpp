// Workbench configuration loading and validation.
#include "gpwb/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gpwb {

namespace {

void reject_unknown_keys(const nlohmann::json& j,
                         const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    if (known.find(item.key()) == known.end()) {
      throw std::invalid_argument("unknown key \"" + item.key() + "\" in " +
                                  where);
    }
  }
}

int positive_int(const nlohmann::json& j, const std::string& key,
                 int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer() || j[key].get<long long>() <= 0) {
    throw std::invalid_argument("budget \"" + key +
                                "\" must be a positive integer");
  }
  return j[key].get<int>();
}

std::size_t positive_size(const nlohmann::json& j, const std::string& key,
                          std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer() || j[key].get<long long>() <= 0) {
    throw std::invalid_argument("budget \"" + key +
                                "\" must be a positive integer");
  }
  return static_cast<std::size_t>(j[key].get<long long>());
}

SimplicialGraph graph_from_spec(const nlohmann::json& spec) {
  if (!spec.is_object()) {
    throw std::invalid_argument("\"graph\" must be an object");
  }
  const auto shorthand = [&](const char* key) {
    if (!spec[key].is_number_integer() || spec[key].get<int>() < 1) {
      throw std::invalid_argument(std::string("graph \"") + key +
                                  "\" needs a positive vertex count");
    }
    return spec[key].get<int>();
  };
  if (spec.contains("cycle")) {
    reject_unknown_keys(spec, {"cycle"}, "\"graph\"");
    return SimplicialGraph::cycle(shorthand("cycle"));
  }
  if (spec.contains("path")) {
    reject_unknown_keys(spec, {"path"}, "\"graph\"");
    return SimplicialGraph::path(shorthand("path"));
  }
  if (spec.contains("complete")) {
    reject_unknown_keys(spec, {"complete"}, "\"graph\"");
    return SimplicialGraph::complete(shorthand("complete"));
  }
  reject_unknown_keys(spec, {"vertices", "edges"}, "\"graph\"");
  return SimplicialGraph::from_json(spec);
}

std::vector<VertexGroup> groups_from_spec(const nlohmann::json& spec,
                                          const SimplicialGraph& graph) {
  if (!spec.is_object() || spec.empty()) {
    throw std::invalid_argument(
        "\"groups\" must be a non-empty object keyed by vertex id or "
        "\"default\"");
  }
  std::optional<VertexGroup> fallback;
  if (spec.contains("default")) {
    fallback = VertexGroup::from_json(spec["default"]);
  }
  for (const auto& item : spec.items()) {
    if (item.key() != "default" && !graph.has_vertex(item.key())) {
      throw std::invalid_argument("group spec references unknown vertex \"" +
                                  item.key() + "\"");
    }
  }
  std::vector<VertexGroup> groups;
  groups.reserve(graph.vertex_count());
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const std::string& id = graph.vertex_id(v);
    if (spec.contains(id)) {
      groups.push_back(VertexGroup::from_json(spec[id]));
    } else if (fallback) {
      groups.push_back(*fallback);
    } else {
      throw std::invalid_argument("vertex \"" + id +
                                  "\" has no group and no \"default\" is "
                                  "given");
    }
  }
  return groups;
}

}  // namespace

WorkbenchConfig::WorkbenchConfig(ProductContext ctx,
                                 std::optional<GraphAction> action,
                                 Budgets budgets, unsigned seed)
    : ctx_(std::move(ctx)),
      action_(std::move(action)),
      budgets_(budgets),
      seed_(seed) {}

WorkbenchConfig WorkbenchConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }
  reject_unknown_keys(j, {"graph", "groups", "action", "budgets", "seed"},
                      "config");
  if (!j.contains("graph") || !j.contains("groups")) {
    throw std::invalid_argument(
        "config needs \"graph\" and \"groups\" entries");
  }

  SimplicialGraph graph = graph_from_spec(j["graph"]);
  std::vector<VertexGroup> groups = groups_from_spec(j["groups"], graph);
  ProductContext ctx(graph, std::move(groups));

  std::optional<GraphAction> action;
  if (j.contains("action")) {
    action = GraphAction::from_json(j["action"], graph);
    // Validates orbit-constant groups right away.
    WreathContext(ctx, *action);
  }

  Budgets budgets;
  if (j.contains("budgets")) {
    const nlohmann::json& b = j["budgets"];
    if (!b.is_object()) {
      throw std::invalid_argument("\"budgets\" must be an object");
    }
    reject_unknown_keys(
        b, {"window_L", "cayley_r", "circuit_cap", "geodesic_cap"},
        "\"budgets\"");
    budgets.window_L = positive_int(b, "window_L", budgets.window_L);
    budgets.cayley_r = positive_int(b, "cayley_r", budgets.cayley_r);
    budgets.circuit_cap = positive_size(b, "circuit_cap", budgets.circuit_cap);
    budgets.geodesic_cap =
        positive_size(b, "geodesic_cap", budgets.geodesic_cap);
  }

  unsigned seed = 0;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) {
      throw std::invalid_argument("\"seed\" must be a non-negative integer");
    }
    seed = static_cast<unsigned>(j["seed"].get<long long>());
  }

  return WorkbenchConfig(std::move(ctx), std::move(action), budgets, seed);
}

WorkbenchConfig WorkbenchConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument("malformed JSON in '" + path +
                                "': " + err.what());
  }
  return from_json(j);
}

const GraphAction& WorkbenchConfig::action() const {
  if (!action_) {
    throw std::invalid_argument("config has no \"action\" entry");
  }
  return *action_;
}

WreathContext WorkbenchConfig::wreath() const {
  return WreathContext(ctx_, action());
}

}  // namespace gpwb
