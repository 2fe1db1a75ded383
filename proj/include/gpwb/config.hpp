// Workbench configuration: one JSON file describing the defining graph, the
// vertex groups, an optional acting group, exploration budgets, and the
// randomness seed.
#pragma once

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>

#include "gpwb/group.hpp"
#include "gpwb/word.hpp"
#include "gpwb/wreath.hpp"

namespace gpwb {

// Exploration budgets; all must be positive.
struct Budgets {
  int window_L = 1;                  // truncated-window radius
  int cayley_r = 2;                  // Cayley-ball radius
  std::size_t circuit_cap = 2000000; // circuit enumeration budget
  std::size_t geodesic_cap = 100000; // geodesic enumeration budget
};

// Parsed and validated configuration.  Layout:
//   {
//     "graph":   {"cycle": 21} | {"path": n} | {"complete": n}
//                | {"vertices": [...], "edges": [["a","b"], ...]},
//     "groups":  {"default": <group spec>, "<vertex id>": <group spec>, ...},
//     "action":  {"order": N, "generators": {...}},      // optional
//     "budgets": {"window_L": 1, "cayley_r": 2,
//                 "circuit_cap": 2000000, "geodesic_cap": 100000},  // optional
//     "seed":    2026                                    // optional
//   }
// Group specs follow VertexGroup::from_json; every vertex must receive a
// group, either by id or through "default".  Unknown keys are rejected.
class WorkbenchConfig {
 public:
  static WorkbenchConfig from_json(const nlohmann::json& j);
  // Reads and parses the file; malformed JSON is reported as
  // std::invalid_argument with the parser's position diagnostic.
  static WorkbenchConfig load_file(const std::string& path);

  const ProductContext& context() const { return ctx_; }
  const SimplicialGraph& graph() const { return ctx_.graph(); }
  bool has_action() const { return action_.has_value(); }
  const GraphAction& action() const;  // throws when no action is configured
  // Builds the semidirect-product context; throws when no action is
  // configured.
  WreathContext wreath() const;
  const Budgets& budgets() const { return budgets_; }
  unsigned seed() const { return seed_; }

 private:
  WorkbenchConfig(ProductContext ctx, std::optional<GraphAction> action,
                  Budgets budgets, unsigned seed);

  ProductContext ctx_;
  std::optional<GraphAction> action_;
  Budgets budgets_;
  unsigned seed_;
};

}  // namespace gpwb
