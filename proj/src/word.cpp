// Normal-form arithmetic for graph products of vertex groups.
#include "gpwb/word.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <sstream>

#include "gpwb/errors.hpp"

namespace gpwb {
namespace {

std::atomic<std::uint64_t> next_context_id{1};

std::optional<long long> parse_integer(const std::string& s) {
  long long value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

VertexGroup VertexGroup::finite(GroupTable table) {
  return VertexGroup(std::move(table));
}

VertexGroup VertexGroup::infinite_cyclic() { return VertexGroup(std::nullopt); }

VertexGroup VertexGroup::from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("type") && j["type"].is_string() &&
      j["type"].get<std::string>() == "infinite_cyclic") {
    return infinite_cyclic();
  }
  return finite(GroupTable::from_json(j));
}

const GroupTable& VertexGroup::table() const {
  if (!table_) {
    throw std::invalid_argument(
        "vertex group is infinite cyclic and has no multiplication table");
  }
  return *table_;
}

long long VertexGroup::mul(long long a, long long b) const {
  check_element(a);
  check_element(b);
  if (table_) return table_->mul(static_cast<int>(a), static_cast<int>(b));
  long long sum = 0;
  if (__builtin_add_overflow(a, b, &sum)) {
    throw std::invalid_argument("exponent overflow in infinite cyclic group");
  }
  return sum;
}

long long VertexGroup::inv(long long a) const {
  check_element(a);
  return table_ ? table_->inv(static_cast<int>(a)) : -a;
}

void VertexGroup::check_element(long long e) const {
  if (table_ && (e < 0 || e >= table_->order())) {
    throw std::invalid_argument("element index " + std::to_string(e) +
                                " out of range for group of order " +
                                std::to_string(table_->order()));
  }
}

std::string VertexGroup::element_name(long long e) const {
  check_element(e);
  return table_ ? table_->name(static_cast<int>(e)) : std::to_string(e);
}

long long VertexGroup::element_by_name(const std::string& name) const {
  if (table_) return table_->element_by_name(name);
  if (const auto value = parse_integer(name)) return *value;
  throw std::invalid_argument("infinite cyclic element '" + name +
                              "' is not an integer");
}

ProductContext::ProductContext(SimplicialGraph graph,
                               std::vector<VertexGroup> groups)
    : graph_(std::move(graph)),
      groups_(std::move(groups)),
      id_(next_context_id.fetch_add(1)) {
  if (static_cast<int>(groups_.size()) != graph_.vertex_count()) {
    throw std::invalid_argument(
        "expected one vertex group per vertex: " +
        std::to_string(graph_.vertex_count()) + " vertices, " +
        std::to_string(groups_.size()) + " groups");
  }
}

const VertexGroup& ProductContext::group(int v) const {
  if (v < 0 || v >= graph_.vertex_count()) {
    throw std::invalid_argument("vertex index " + std::to_string(v) +
                                " out of range");
  }
  return groups_[v];
}

bool ProductContext::all_groups_nontrivial() const {
  for (const auto& g : groups_) {
    if (!g.is_infinite_cyclic() && g.order() < 2) return false;
  }
  return true;
}

void ProductContext::require_nontrivial_groups() const {
  if (!all_groups_nontrivial()) {
    throw std::invalid_argument(
        "operation requires every vertex group to be non-trivial");
  }
}

bool ProductContext::has_infinite_group() const {
  for (const auto& g : groups_) {
    if (g.is_infinite_cyclic()) return true;
  }
  return false;
}

void ProductContext::check_word(const NormalWord& w) const {
  if (!w.empty() && w.context_id() != id_) {
    throw std::invalid_argument("word belongs to a different product context");
  }
}

void ProductContext::check_syllables(const std::vector<Syllable>& word) const {
  for (const auto& s : word) group(s.vertex).check_element(s.element);
}

void ProductContext::reduce(std::vector<Syllable>& word) const {
  std::erase_if(word, [](const Syllable& s) { return s.element == 0; });
  bool changed = true;
  while (changed) {
    changed = false;
    const int n = static_cast<int>(word.size());
    for (int i = 0; i < n && !changed; ++i) {
      const int v = word[i].vertex;
      // Walk right while syllables commute past vertex v; the first
      // same-vertex syllable reached this way can be merged into position i.
      for (int j = i + 1; j < n; ++j) {
        if (word[j].vertex == v) {
          const long long merged =
              group(v).mul(word[i].element, word[j].element);
          word.erase(word.begin() + j);
          if (merged == 0) {
            word.erase(word.begin() + i);
          } else {
            word[i].element = merged;
          }
          changed = true;
          break;
        }
        if (!graph_.adjacent(word[j].vertex, v)) break;
      }
    }
  }
}

void ProductContext::canonical_sort(std::vector<Syllable>& word) const {
  std::vector<Syllable> remaining = std::move(word);
  word.clear();
  while (!remaining.empty()) {
    int best = 0;
    // A syllable can move to the front iff everything before it commutes
    // with it; position 0 always qualifies.
    for (int idx = 1; idx < static_cast<int>(remaining.size()); ++idx) {
      bool movable = true;
      for (int k = 0; k < idx; ++k) {
        if (!graph_.adjacent(remaining[k].vertex, remaining[idx].vertex)) {
          movable = false;
          break;
        }
      }
      if (movable && remaining[idx] < remaining[best]) best = idx;
    }
    word.push_back(remaining[best]);
    remaining.erase(remaining.begin() + best);
  }
}

NormalWord ProductContext::normalize(const std::vector<Syllable>& word) const {
  check_syllables(word);
  std::vector<Syllable> w = word;
  reduce(w);
  canonical_sort(w);
  return NormalWord(std::move(w), id_);
}

NormalWord ProductContext::from_syllable(int vertex, long long element) const {
  group(vertex).check_element(element);
  if (element == 0) return identity();
  return NormalWord({Syllable{vertex, element}}, id_);
}

NormalWord ProductContext::mul(const NormalWord& x, const NormalWord& y) const {
  check_word(x);
  check_word(y);
  std::vector<Syllable> w = x.syllables();
  w.insert(w.end(), y.syllables().begin(), y.syllables().end());
  reduce(w);
  canonical_sort(w);
  return NormalWord(std::move(w), id_);
}

NormalWord ProductContext::mul_syllable(const NormalWord& x,
                                        const Syllable& s) const {
  check_word(x);
  group(s.vertex).check_element(s.element);
  std::vector<Syllable> w = x.syllables();
  w.push_back(s);
  reduce(w);
  canonical_sort(w);
  return NormalWord(std::move(w), id_);
}

NormalWord ProductContext::inv(const NormalWord& x) const {
  check_word(x);
  std::vector<Syllable> w(x.syllables().rbegin(), x.syllables().rend());
  for (auto& s : w) s.element = group(s.vertex).inv(s.element);
  // Inverting a geodesic word keeps it geodesic; only the canonical shuffle
  // needs recomputing.
  canonical_sort(w);
  return NormalWord(std::move(w), id_);
}

NormalWord ProductContext::conjugate(const NormalWord& g,
                                     const NormalWord& x) const {
  return mul(mul(g, x), inv(g));
}

std::set<int> ProductContext::support(const NormalWord& x) const {
  check_word(x);
  std::set<int> result;
  for (const auto& s : x.syllables()) result.insert(s.vertex);
  return result;
}

std::set<std::string> ProductContext::support_ids(const NormalWord& x) const {
  std::set<std::string> result;
  for (int v : support(x)) result.insert(graph_.vertex_id(v));
  return result;
}

bool ProductContext::is_reduced_decomposition(
    const std::vector<NormalWord>& parts) const {
  NormalWord product = identity();
  int total = 0;
  for (const auto& part : parts) {
    product = mul(product, part);
    total += part.size();
  }
  return product.size() == total;
}

std::array<NormalWord, 3> ProductContext::conjugation_decomposition(
    int v, long long a, const NormalWord& g) const {
  group(v).check_element(a);
  if (a == 0) {
    throw std::invalid_argument(
        "conjugation decomposition needs a non-identity element");
  }
  check_word(g);

  const auto decompose = [&](auto&& self, const NormalWord& word,
                             long long elem) -> std::array<NormalWord, 3> {
    const NormalWord conj = conjugate(word, from_syllable(v, elem));
    if (conj.size() == 2 * word.size() + 1) {
      return {word, identity(), identity()};
    }
    const auto& syls = word.syllables();
    const int n = word.size();
    for (int i = n - 1; i >= 0; --i) {
      bool tail_commutes = true;
      for (int j = i + 1; j < n; ++j) {
        if (!graph_.adjacent(syls[j].vertex, syls[i].vertex)) {
          tail_commutes = false;
          break;
        }
      }
      if (!tail_commutes) continue;
      std::vector<Syllable> rest(syls.begin(), syls.end());
      rest.erase(rest.begin() + i);
      if (syls[i].vertex == v) {
        // The stripped syllable lives at v itself: absorb it into the
        // conjugated element and append it to the tail part h3.
        const long long conj_elem = group(v).mul(
            group(v).mul(syls[i].element, elem), group(v).inv(syls[i].element));
        auto [h1, h2, h3] = self(self, normalize(rest), conj_elem);
        return {h1, h2, mul(h3, from_syllable(v, syls[i].element))};
      }
      if (graph_.adjacent(syls[i].vertex, v)) {
        // The stripped syllable commutes with the element at v: it joins the
        // link part h2.
        auto [h1, h2, h3] = self(self, normalize(rest), elem);
        return {h1, mul(h2, from_syllable(syls[i].vertex, syls[i].element)),
                h3};
      }
    }
    throw VerificationFailure(
        "conjugation decomposition found a non-reduced conjugate with no "
        "strippable syllable");
  };
  return decompose(decompose, g, a);
}

std::vector<NormalWord> ProductContext::enumerate_ball(int L,
                                                       std::size_t cap) const {
  if (L < 0) throw std::invalid_argument("ball radius must be >= 0");
  if (has_infinite_group()) {
    throw std::invalid_argument(
        "ball enumeration requires finite vertex groups");
  }
  std::set<NormalWord> known;
  std::vector<NormalWord> frontier{identity()};
  known.insert(identity());
  for (int length = 1; length <= L; ++length) {
    std::vector<NormalWord> next;
    for (const auto& w : frontier) {
      for (int v = 0; v < graph_.vertex_count(); ++v) {
        const long long order = group(v).order();
        for (long long e = 1; e < order; ++e) {
          NormalWord candidate = mul_syllable(w, Syllable{v, e});
          if (candidate.size() != length) continue;
          if (known.insert(candidate).second) {
            if (known.size() > cap) {
              throw BudgetExceeded("ball enumeration exceeded cap of " +
                                   std::to_string(cap) + " elements");
            }
            next.push_back(std::move(candidate));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return std::vector<NormalWord>(known.begin(), known.end());
}

NormalWord ProductContext::parse(const std::string& text) const {
  std::istringstream stream(text);
  std::vector<Syllable> word;
  std::string token;
  while (stream >> token) {
    if (token == "1") continue;  // identity syllable
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("syllable '" + token +
                                  "' is missing the ':' separator");
    }
    const int v = graph_.vertex_index(token.substr(0, colon));
    const long long e = group(v).element_by_name(token.substr(colon + 1));
    word.push_back(Syllable{v, e});
  }
  return normalize(word);
}

std::string ProductContext::to_string(const NormalWord& x) const {
  check_word(x);
  if (x.empty()) return "1";
  std::string out;
  for (const auto& s : x.syllables()) {
    if (!out.empty()) out += ' ';
    out += graph_.vertex_id(s.vertex);
    out += ':';
    out += group(s.vertex).element_name(s.element);
  }
  return out;
}

bool ProductContext::passes_normal_form_criterion(
    const std::vector<Syllable>& word) const {
  check_syllables(word);
  const int n = static_cast<int>(word.size());
  for (int i = 0; i < n; ++i) {
    if (word[i].element == 0) return false;
    for (int j = i + 1; j < n; ++j) {
      if (word[j].vertex != word[i].vertex) continue;
      bool separated = false;
      for (int k = i + 1; k < j; ++k) {
        if (!graph_.adjacent(word[k].vertex, word[i].vertex)) {
          separated = true;
          break;
        }
      }
      if (!separated) return false;
    }
  }
  return true;
}

}  // namespace gpwb
