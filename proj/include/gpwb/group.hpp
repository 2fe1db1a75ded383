// Finite groups as explicit multiplication tables, plus group actions on
// simplicial graphs by automorphisms.
#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpwb/graph.hpp"

namespace gpwb {

// Default upper bound on table order (7! covers every symmetric group we
// construct); guards against accidental combinatorial explosion.
inline constexpr int kDefaultTableCap = 5040;

// A finite group given by a full multiplication table.  Element 0 is always
// the identity.  Immutable after construction and freely shareable.
class GroupTable {
 public:
  // Builds a table from mul[i][j] = index of (element i)*(element j).
  // Verifies the group laws: Latin-square shape, identity at index 0,
  // two-sided inverses, and associativity (via a generating-set check).
  // Throws std::invalid_argument on any violation or if order exceeds cap.
  static GroupTable from_table(const std::vector<std::vector<int>>& mul,
                               std::vector<std::string> names = {},
                               int cap = kDefaultTableCap);

  // Z/n with elements named "0".."n-1".  n >= 1.
  static GroupTable cyclic(int n, int cap = kDefaultTableCap);

  // Symmetric group on {0..n-1}.  Elements are named by one-line notation
  // ("012", "021", ...) and indexed in lexicographic order of those words,
  // which puts the identity at index 0.  Requires 1 <= n and n! <= cap.
  static GroupTable symmetric(int n, int cap = kDefaultTableCap);

  // Direct product with componentwise multiplication; element (a,b) is
  // named "(name_a,name_b)" and indexed as a*|B|+b.
  static GroupTable direct_product(const GroupTable& a, const GroupTable& b,
                                   int cap = kDefaultTableCap);

  // Accepts {"type":"cyclic","n":N}, {"type":"symmetric","n":N},
  // {"type":"table","mul":[[...]],"names":[...]} (names optional), and
  // {"type":"product","factors":[spec,spec,...]}.
  static GroupTable from_json(const nlohmann::json& j,
                              int cap = kDefaultTableCap);

  int order() const { return order_; }
  int mul(int a, int b) const { return mul_[check(a) * order_ + check(b)]; }
  int inv(int a) const { return inv_[check(a)]; }
  const std::string& name(int i) const { return names_[check(i)]; }
  const std::vector<std::string>& names() const { return names_; }

  // Resolves an element name.  Cyclic groups additionally accept any decimal
  // integer (possibly negative or >= n) and reduce it mod n.
  int element_by_name(const std::string& name) const;

  // Order of the cyclic subgroup generated by a.
  int element_order(int a) const;

  bool operator==(const GroupTable& other) const {
    return mul_ == other.mul_ && names_ == other.names_;
  }

 private:
  GroupTable() = default;
  int check(int i) const;
  void build_indices();  // inv_, name_to_index_; throws on bad structure
  static void validate_laws(const GroupTable& g);

  int order_ = 0;
  std::vector<int> mul_;  // row-major order_ x order_
  std::vector<int> inv_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> name_to_index_;
  int cyclic_modulus_ = 0;  // n when built as cyclic(n), else 0
};

// Result of validating a GraphAction: orbit decompositions and stabilizers.
struct ActionDiagnostics {
  std::vector<std::vector<int>> vertex_orbits;           // sorted vertex lists
  std::vector<std::vector<std::pair<int, int>>> edge_orbits;
  std::vector<std::vector<int>> vertex_stabilizers;      // per vertex
  std::map<std::pair<int, int>, std::vector<int>> edge_stabilizers;  // setwise
};

// A finite group acting on a graph by automorphisms.  Built from a finite
// set of generator permutations, completed to the full group by closure.
class GraphAction {
 public:
  // j = {"order": N, "generators": {"name": {"v":"w", ...}, ...}}.
  // Each generator must be a total automorphism of the graph.  The closure of
  // the generators under composition must have exactly the declared order.
  // Element i's permutation sends vertex v to image(i, v); composition follows
  // the left-action rule image(g*h, v) = image(g, image(h, v)).  Element names
  // are shortest generator words joined with '*' ("1" for the identity).
  static GraphAction from_json(const nlohmann::json& j,
                               const SimplicialGraph& graph);

  // The trivial group acting on a graph.
  static GraphAction trivial(const SimplicialGraph& graph);

  const GroupTable& group() const { return group_; }
  const SimplicialGraph& graph() const { return graph_; }
  int image(int element, int vertex) const;

  // Re-checks the action laws (automorphism, homomorphism, identity) and
  // reports orbits and stabilizers.  Throws VerificationFailure if a law
  // fails, which would indicate construction let a bad action through.
  ActionDiagnostics validate() const;

 private:
  GraphAction(GroupTable group, SimplicialGraph graph,
              std::vector<std::vector<int>> images);

  GroupTable group_;
  SimplicialGraph graph_;
  std::vector<std::vector<int>> images_;  // [element][vertex] -> vertex
};

}  // namespace gpwb
