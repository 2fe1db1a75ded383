// Graph products of vertex groups: syllable words, the normal form, and
// element arithmetic (multiplication, inversion, support, conjugation).
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gpwb/graph.hpp"
#include "gpwb/group.hpp"

namespace gpwb {

// A vertex group: a finite table, or the infinite cyclic group whose elements
// are integer exponents.  In both encodings element 0 is the identity (for a
// table, the identity index; for Z, the zero exponent).
class VertexGroup {
 public:
  static VertexGroup finite(GroupTable table);
  static VertexGroup infinite_cyclic();
  // {"type":"cyclic"|"symmetric"|"table"|"product", ...} as in
  // GroupTable::from_json, plus {"type":"infinite_cyclic"}.
  static VertexGroup from_json(const nlohmann::json& j);

  bool is_infinite_cyclic() const { return !table_.has_value(); }
  const GroupTable& table() const;  // throws if infinite cyclic
  // Order of the group; 0 denotes infinite.
  long long order() const { return table_ ? table_->order() : 0; }

  long long mul(long long a, long long b) const;
  long long inv(long long a) const;
  void check_element(long long e) const;  // throws std::invalid_argument
  std::string element_name(long long e) const;
  long long element_by_name(const std::string& name) const;

 private:
  explicit VertexGroup(std::optional<GroupTable> table)
      : table_(std::move(table)) {}
  std::optional<GroupTable> table_;
};

// One letter of a word: a non-identity element of the group at a vertex.
struct Syllable {
  int vertex = 0;          // vertex index in the defining graph
  long long element = 0;   // element encoding in that vertex's group

  friend bool operator==(const Syllable& a, const Syllable& b) {
    return a.vertex == b.vertex && a.element == b.element;
  }
  friend bool operator<(const Syllable& a, const Syllable& b) {
    return a.vertex != b.vertex ? a.vertex < b.vertex : a.element < b.element;
  }
};

// A group element in canonical normal form: a geodesic syllable word,
// lexicographically least in its shuffle class.  Instances are produced by
// ProductContext operations and stamped with the owning context's id; the
// empty word (identity) is valid in every context.
class NormalWord {
 public:
  NormalWord() = default;  // the identity

  const std::vector<Syllable>& syllables() const { return syllables_; }
  int size() const { return static_cast<int>(syllables_.size()); }
  bool empty() const { return syllables_.empty(); }
  std::uint64_t context_id() const { return context_id_; }

  friend bool operator==(const NormalWord& a, const NormalWord& b) {
    return a.syllables_ == b.syllables_;
  }
  friend bool operator!=(const NormalWord& a, const NormalWord& b) {
    return !(a == b);
  }
  friend bool operator<(const NormalWord& a, const NormalWord& b) {
    return a.syllables_ < b.syllables_;
  }

 private:
  friend class ProductContext;
  NormalWord(std::vector<Syllable> syllables, std::uint64_t context_id)
      : syllables_(std::move(syllables)), context_id_(context_id) {}

  std::vector<Syllable> syllables_;
  std::uint64_t context_id_ = 0;
};

// The graph product of the vertex groups over a defining simplicial graph.
// Immutable; every operation is reentrant and safe for concurrent use.
class ProductContext {
 public:
  // groups[i] is the group at graph.vertex_id(i).
  ProductContext(SimplicialGraph graph, std::vector<VertexGroup> groups);

  const SimplicialGraph& graph() const { return graph_; }
  const VertexGroup& group(int v) const;
  std::uint64_t id() const { return id_; }

  // Throws std::invalid_argument unless w was produced by this context (the
  // identity passes everywhere).
  void require_same_context(const NormalWord& w) const { check_word(w); }

  // True when every vertex group has order >= 2.  Operations whose
  // underlying statements assume non-trivial vertex groups call
  // require_nontrivial_groups().
  bool all_groups_nontrivial() const;
  void require_nontrivial_groups() const;
  bool has_infinite_group() const;

  // --- word arithmetic -----------------------------------------------------

  // Rewrites an arbitrary syllable sequence to the canonical normal form:
  // drop identity syllables and merge same-vertex syllables whenever all
  // syllables strictly between them commute past, to a fixpoint; then emit
  // the lexicographically least shuffle of the resulting geodesic word.
  NormalWord normalize(const std::vector<Syllable>& word) const;

  NormalWord identity() const { return NormalWord({}, id_); }
  NormalWord from_syllable(int vertex, long long element) const;
  NormalWord mul(const NormalWord& x, const NormalWord& y) const;
  // Right-multiply by a single syllable; the workhorse of ball enumeration.
  NormalWord mul_syllable(const NormalWord& x, const Syllable& s) const;
  NormalWord inv(const NormalWord& x) const;
  NormalWord conjugate(const NormalWord& g, const NormalWord& x) const;

  std::set<int> support(const NormalWord& x) const;
  std::set<std::string> support_ids(const NormalWord& x) const;

  // True iff the syllable length of the product of parts equals the sum of
  // the parts' syllable lengths.
  bool is_reduced_decomposition(const std::vector<NormalWord>& parts) const;

  // Splits g into h1*h2*h3 such that, for the non-identity element a of the
  // group at v:  g == h1*h2*h3, supp(h1) ∪ {v} == supp(g a g^-1),
  // supp(h2) ⊆ link(v), and supp(h3) ⊆ {v}.  Follows the inductive
  // right-to-left stripping procedure; throws VerificationFailure if no strip
  // case applies while the conjugate is still shorter than reduced, which
  // would contradict the underlying decomposition statement.
  std::array<NormalWord, 3> conjugation_decomposition(
      int v, long long a, const NormalWord& g) const;

  // All elements of syllable length <= L, sorted, each exactly once.
  // Requires finite vertex groups; throws BudgetExceeded past cap.
  std::vector<NormalWord> enumerate_ball(int L,
                                         std::size_t cap = 5000000) const;

  // --- word I/O ------------------------------------------------------------

  // Parses whitespace-separated "vertex:element" syllables; "1" (or an empty
  // string) denotes the identity.  The result is normalized.
  NormalWord parse(const std::string& text) const;
  std::string to_string(const NormalWord& x) const;

  // True when the stored word satisfies the geodesic criterion: for every
  // pair of equal-vertex positions i<j some position strictly between them is
  // non-adjacent to that vertex.  Exposed for property tests.
  bool passes_normal_form_criterion(const std::vector<Syllable>& word) const;

 private:
  void check_word(const NormalWord& w) const;
  void check_syllables(const std::vector<Syllable>& word) const;
  // In-place merge/delete rewriting to a geodesic fixpoint.
  void reduce(std::vector<Syllable>& word) const;
  // Lexicographically least legal shuffle of a geodesic word.
  void canonical_sort(std::vector<Syllable>& word) const;

  SimplicialGraph graph_;
  std::vector<VertexGroup> groups_;
  std::uint64_t id_;
};

}  // namespace gpwb
