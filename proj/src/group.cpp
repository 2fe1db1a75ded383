// Finite group tables and graph actions: construction, law checking, orbits.
#include "gpwb/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gpwb/errors.hpp"

namespace gpwb {
namespace {

void check_name_token(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("element name must be non-empty");
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("element name '" + name +
                                  "' contains whitespace");
    }
  }
}

std::optional<long long> parse_integer(const std::string& s) {
  long long value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::vector<int> compose(const std::vector<int>& outer,
                         const std::vector<int>& inner) {
  std::vector<int> result(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) result[i] = outer[inner[i]];
  return result;
}

}  // namespace

int GroupTable::check(int i) const {
  if (i < 0 || i >= order_) {
    throw std::invalid_argument("element index " + std::to_string(i) +
                                " out of range for group of order " +
                                std::to_string(order_));
  }
  return i;
}

void GroupTable::build_indices() {
  inv_.assign(order_, -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mul_[a * order_ + b] == 0 && mul_[b * order_ + a] == 0) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] == -1) {
      throw std::invalid_argument("element " + std::to_string(a) +
                                  " has no two-sided inverse");
    }
  }
  name_to_index_.clear();
  for (int i = 0; i < order_; ++i) {
    check_name_token(names_[i]);
    if (!name_to_index_.emplace(names_[i], i).second) {
      throw std::invalid_argument("duplicate element name '" + names_[i] + "'");
    }
  }
}

void GroupTable::validate_laws(const GroupTable& g) {
  const int n = g.order_;
  for (int a = 0; a < n; ++a) {
    if (g.mul_[a] != a || g.mul_[a * n] != a) {
      throw std::invalid_argument("element 0 is not a two-sided identity");
    }
  }
  // Latin-square shape gives sharper diagnostics than a late associativity
  // failure would.
  for (int a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (row[g.mul_[a * n + b]]++) {
        throw std::invalid_argument("row " + std::to_string(a) +
                                    " of the multiplication table repeats");
      }
      if (col[g.mul_[b * n + a]]++) {
        throw std::invalid_argument("column " + std::to_string(a) +
                                    " of the multiplication table repeats");
      }
    }
  }
  // Associativity via the generating-set test: it suffices to check
  // (x*m)*y == x*(m*y) for m in a set whose closure under the table is the
  // whole set, because the middle nucleus is closed under multiplication.
  std::vector<char> generated(n, 0);
  generated[0] = 1;
  int generated_count = 1;
  std::vector<int> generators;
  std::deque<int> queue;
  const auto mark = [&](int x) {
    if (!generated[x]) {
      generated[x] = 1;
      ++generated_count;
      queue.push_back(x);
    }
  };
  while (generated_count < n) {
    int seed = 0;
    while (generated[seed]) ++seed;
    generators.push_back(seed);
    mark(seed);
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      for (int b = 0; b < n; ++b) {
        if (!generated[b]) continue;
        mark(g.mul_[a * n + b]);
        mark(g.mul_[b * n + a]);
      }
    }
  }
  for (int mid : generators) {
    for (int a = 0; a < n; ++a) {
      const int am = g.mul_[a * n + mid];
      for (int b = 0; b < n; ++b) {
        if (g.mul_[am * n + b] != g.mul_[a * n + g.mul_[mid * n + b]]) {
          throw std::invalid_argument(
              "multiplication table is not associative at (" +
              std::to_string(a) + "," + std::to_string(mid) + "," +
              std::to_string(b) + ")");
        }
      }
    }
  }
}

GroupTable GroupTable::from_table(const std::vector<std::vector<int>>& mul,
                                  std::vector<std::string> names, int cap) {
  GroupTable g;
  const int n = static_cast<int>(mul.size());
  if (n < 1) throw std::invalid_argument("multiplication table is empty");
  if (n > cap) {
    throw std::invalid_argument("group order " + std::to_string(n) +
                                " exceeds table cap " + std::to_string(cap));
  }
  g.order_ = n;
  g.mul_.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("multiplication table is not square");
    }
    for (int v : row) {
      if (v < 0 || v >= n) {
        throw std::invalid_argument("table entry " + std::to_string(v) +
                                    " out of range");
      }
      g.mul_.push_back(v);
    }
  }
  if (names.empty()) {
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  if (static_cast<int>(names.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) +
                                " element names, got " +
                                std::to_string(names.size()));
  }
  g.names_ = std::move(names);
  validate_laws(g);
  g.build_indices();
  return g;
}

GroupTable GroupTable::cyclic(int n, int cap) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  if (n > cap) {
    throw std::invalid_argument("group order " + std::to_string(n) +
                                " exceeds table cap " + std::to_string(cap));
  }
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  GroupTable g = from_table(mul, {}, cap);
  g.cyclic_modulus_ = n;
  return g;
}

GroupTable GroupTable::symmetric(int n, int cap) {
  if (n < 1) throw std::invalid_argument("symmetric group degree must be >= 1");
  long long order = 1;
  for (int i = 2; i <= n; ++i) order *= i;
  if (order > cap) {
    throw std::invalid_argument("group order " + std::to_string(order) +
                                " exceeds table cap " + std::to_string(cap));
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // next_permutation enumerates in lexicographic order, so the identity is
  // first and names sort the same way as indices.
  std::map<std::vector<int>, int> index_of;
  std::vector<std::string> names;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) {
    index_of[perms[i]] = i;
    std::string name;
    for (int v : perms[i]) name += static_cast<char>('0' + v);
    names.push_back(name);
  }
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> mul(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) mul[a][b] = index_of[compose(perms[a], perms[b])];
  return from_table(mul, std::move(names), cap);
}

GroupTable GroupTable::direct_product(const GroupTable& a, const GroupTable& b,
                                      int cap) {
  const long long order =
      static_cast<long long>(a.order()) * static_cast<long long>(b.order());
  if (order > cap) {
    throw std::invalid_argument("group order " + std::to_string(order) +
                                " exceeds table cap " + std::to_string(cap));
  }
  const int na = a.order(), nb = b.order();
  const int n = static_cast<int>(order);
  auto pack = [nb](int x, int y) { return x * nb + y; };
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int x1 = 0; x1 < na; ++x1) {
    for (int y1 = 0; y1 < nb; ++y1) {
      names[pack(x1, y1)] = "(" + a.name(x1) + "," + b.name(y1) + ")";
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          mul[pack(x1, y1)][pack(x2, y2)] = pack(a.mul(x1, x2), b.mul(y1, y2));
    }
  }
  return from_table(mul, std::move(names), cap);
}

GroupTable GroupTable::from_json(const nlohmann::json& j, int cap) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw std::invalid_argument("group spec must be an object with a \"type\"");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "cyclic" || type == "symmetric") {
    if (!j.contains("n") || !j["n"].is_number_integer()) {
      throw std::invalid_argument("group spec of type " + type +
                                  " needs integer field \"n\"");
    }
    const int n = j["n"].get<int>();
    return type == "cyclic" ? cyclic(n, cap) : symmetric(n, cap);
  }
  if (type == "table") {
    if (!j.contains("mul") || !j["mul"].is_array()) {
      throw std::invalid_argument("table group spec needs array field \"mul\"");
    }
    std::vector<std::vector<int>> mul;
    for (const auto& row : j["mul"]) {
      if (!row.is_array()) {
        throw std::invalid_argument("table rows must be arrays");
      }
      mul.emplace_back();
      for (const auto& v : row) {
        if (!v.is_number_integer()) {
          throw std::invalid_argument("table entries must be integers");
        }
        mul.back().push_back(v.get<int>());
      }
    }
    std::vector<std::string> names;
    if (j.contains("names")) {
      for (const auto& v : j["names"]) {
        if (!v.is_string()) {
          throw std::invalid_argument("element names must be strings");
        }
        names.push_back(v.get<std::string>());
      }
    }
    return from_table(mul, std::move(names), cap);
  }
  if (type == "product") {
    if (!j.contains("factors") || !j["factors"].is_array() ||
        j["factors"].empty()) {
      throw std::invalid_argument(
          "product group spec needs non-empty array field \"factors\"");
    }
    GroupTable result = from_json(j["factors"][0], cap);
    for (std::size_t i = 1; i < j["factors"].size(); ++i) {
      result = direct_product(result, from_json(j["factors"][i], cap), cap);
    }
    return result;
  }
  throw std::invalid_argument("unknown group type '" + type + "'");
}

int GroupTable::element_by_name(const std::string& name) const {
  const auto it = name_to_index_.find(name);
  if (it != name_to_index_.end()) return it->second;
  if (cyclic_modulus_ > 0) {
    if (const auto value = parse_integer(name)) {
      const long long n = cyclic_modulus_;
      return static_cast<int>(((*value % n) + n) % n);
    }
  }
  throw std::invalid_argument("unknown element name '" + name + "'");
}

int GroupTable::element_order(int a) const {
  check(a);
  int acc = a;
  int k = 1;
  while (acc != 0) {
    acc = mul(acc, a);
    ++k;
  }
  return k;
}

GraphAction::GraphAction(GroupTable group, SimplicialGraph graph,
                         std::vector<std::vector<int>> images)
    : group_(std::move(group)),
      graph_(std::move(graph)),
      images_(std::move(images)) {}

int GraphAction::image(int element, int vertex) const {
  group_.name(element);  // range check
  if (vertex < 0 || vertex >= graph_.vertex_count()) {
    throw std::invalid_argument("vertex index out of range");
  }
  return images_[element][vertex];
}

namespace {

// Checks that perm (a total map on vertex indices) is a graph automorphism.
void check_automorphism(const SimplicialGraph& graph,
                        const std::vector<int>& perm,
                        const std::string& label) {
  std::vector<char> hit(graph.vertex_count(), 0);
  for (int v : perm) {
    if (v < 0 || v >= graph.vertex_count() || hit[v]++) {
      throw std::invalid_argument("action element '" + label +
                                  "' is not a permutation of the vertices");
    }
  }
  for (const auto& [a, b] : graph.edges()) {
    if (!graph.adjacent(perm[a], perm[b])) {
      throw std::invalid_argument(
          "action element '" + label + "' maps edge {" + graph.vertex_id(a) +
          "," + graph.vertex_id(b) + "} to a non-edge");
    }
  }
}

}  // namespace

GraphAction GraphAction::from_json(const nlohmann::json& j,
                                   const SimplicialGraph& graph) {
  if (!j.is_object() || !j.contains("order") ||
      !j["order"].is_number_integer() || !j.contains("generators") ||
      !j["generators"].is_object()) {
    throw std::invalid_argument(
        "action spec must be an object with integer \"order\" and object "
        "\"generators\"");
  }
  const int declared = j["order"].get<int>();
  if (declared < 1) throw std::invalid_argument("action order must be >= 1");
  const int n = graph.vertex_count();

  std::vector<std::pair<std::string, std::vector<int>>> generators;
  for (const auto& [name, mapping] : j["generators"].items()) {
    check_name_token(name);
    if (name == "1" || name.find('*') != std::string::npos) {
      throw std::invalid_argument("generator name '" + name + "' is reserved");
    }
    if (!mapping.is_object()) {
      throw std::invalid_argument("generator '" + name +
                                  "' must map vertex ids to vertex ids");
    }
    std::vector<int> perm(n, -1);
    for (const auto& [from, to] : mapping.items()) {
      if (!to.is_string()) {
        throw std::invalid_argument("generator '" + name +
                                    "' has a non-string image");
      }
      perm[graph.vertex_index(from)] = graph.vertex_index(to.get<std::string>());
    }
    for (int v = 0; v < n; ++v) {
      if (perm[v] == -1) {
        throw std::invalid_argument("generator '" + name +
                                    "' does not map vertex '" +
                                    graph.vertex_id(v) + "'");
      }
    }
    check_automorphism(graph, perm, name);
    generators.emplace_back(name, std::move(perm));
  }
  // nlohmann::json objects iterate in key order, so generator order (and with
  // it element naming) is deterministic.

  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  std::map<std::vector<int>, int> index_of;
  std::vector<std::vector<int>> perms{identity};
  std::vector<std::string> names{"1"};
  index_of[identity] = 0;
  for (std::size_t head = 0; head < perms.size(); ++head) {
    // Copy: perms may reallocate while we append.
    const std::vector<int> current = perms[head];
    const std::string current_name = names[head];
    for (const auto& [gname, gperm] : generators) {
      std::vector<int> next = compose(current, gperm);
      if (index_of.count(next)) continue;
      if (static_cast<int>(perms.size()) >= declared) {
        throw std::invalid_argument(
            "generator closure exceeds declared action order " +
            std::to_string(declared));
      }
      index_of[next] = static_cast<int>(perms.size());
      perms.push_back(std::move(next));
      names.push_back(head == 0 ? gname : current_name + "*" + gname);
    }
  }
  if (static_cast<int>(perms.size()) != declared) {
    throw std::invalid_argument(
        "generator closure has order " + std::to_string(perms.size()) +
        " but the action declares order " + std::to_string(declared));
  }

  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> mul(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) mul[a][b] = index_of[compose(perms[a], perms[b])];
  GroupTable group = GroupTable::from_table(mul, std::move(names));
  return GraphAction(std::move(group), graph, std::move(perms));
}

GraphAction GraphAction::trivial(const SimplicialGraph& graph) {
  nlohmann::json j;
  j["order"] = 1;
  j["generators"] = nlohmann::json::object();
  return from_json(j, graph);
}

ActionDiagnostics GraphAction::validate() const {
  const int n = graph_.vertex_count();
  const int m = group_.order();
  for (int v = 0; v < n; ++v) {
    if (images_[0][v] != v) {
      throw VerificationFailure("identity element does not act trivially");
    }
  }
  for (int g = 0; g < m; ++g) {
    try {
      check_automorphism(graph_, images_[g], group_.name(g));
    } catch (const std::invalid_argument& e) {
      throw VerificationFailure(e.what());
    }
  }
  for (int g = 0; g < m; ++g) {
    for (int h = 0; h < m; ++h) {
      const std::vector<int> expected = compose(images_[g], images_[h]);
      if (images_[group_.mul(g, h)] != expected) {
        throw VerificationFailure("action images do not respect the group law "
                                  "at (" +
                                  group_.name(g) + "," + group_.name(h) + ")");
      }
    }
  }

  ActionDiagnostics diag;
  std::vector<char> seen(n, 0);
  for (int v = 0; v < n; ++v) {
    if (seen[v]) continue;
    std::set<int> orbit;
    for (int g = 0; g < m; ++g) orbit.insert(images_[g][v]);
    for (int w : orbit) seen[w] = 1;
    diag.vertex_orbits.emplace_back(orbit.begin(), orbit.end());
  }
  std::set<std::pair<int, int>> seen_edges;
  for (const auto& e : graph_.edges()) {
    if (seen_edges.count(e)) continue;
    std::set<std::pair<int, int>> orbit;
    for (int g = 0; g < m; ++g) {
      const int a = images_[g][e.first], b = images_[g][e.second];
      orbit.insert({std::min(a, b), std::max(a, b)});
    }
    seen_edges.insert(orbit.begin(), orbit.end());
    diag.edge_orbits.emplace_back(orbit.begin(), orbit.end());
  }
  diag.vertex_stabilizers.resize(n);
  for (int v = 0; v < n; ++v) {
    for (int g = 0; g < m; ++g) {
      if (images_[g][v] == v) diag.vertex_stabilizers[v].push_back(g);
    }
  }
  for (const auto& [a, b] : graph_.edges()) {
    std::vector<int> stab;
    for (int g = 0; g < m; ++g) {
      const int ia = images_[g][a], ib = images_[g][b];
      if ((ia == a && ib == b) || (ia == b && ib == a)) stab.push_back(g);
    }
    diag.edge_stabilizers[{a, b}] = std::move(stab);
  }
  return diag;
}

}  // namespace gpwb
