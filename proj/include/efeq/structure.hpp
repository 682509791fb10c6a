#ifndef EFEQ_STRUCTURE_HPP
#define EFEQ_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace efeq {

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ElementId = int;

struct PredicateSymbol {
  std::string name;
  int arity = 1;
  friend bool operator==(const PredicateSymbol&, const PredicateSymbol&) = default;
};

/// Unary function symbol. When `domain` names a unary predicate the
/// function may only be defined on elements of that predicate.
struct FunctionSymbol {
  std::string name;
  std::optional<std::string> domain;
  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<PredicateSymbol> predicates, std::vector<FunctionSymbol> functions,
             std::vector<std::string> constants);

  const std::vector<PredicateSymbol>& predicates() const { return predicates_; }
  const std::vector<FunctionSymbol>& functions() const { return functions_; }
  const std::vector<std::string>& constants() const { return constants_; }

  std::optional<std::size_t> predicate_index(const std::string& name) const;
  std::optional<std::size_t> function_index(const std::string& name) const;
  std::optional<std::size_t> constant_index(const std::string& name) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<PredicateSymbol> predicates_;
  std::vector<FunctionSymbol> functions_;
  std::vector<std::string> constants_;
};

/// Injective partial function between two element spaces, kept in
/// insertion order. Equality is set equality.
template <class E>
class BasicPartialMap {
 public:
  using value_type = std::pair<E, E>;

  BasicPartialMap() = default;
  BasicPartialMap(std::initializer_list<value_type> pairs) {
    for (const auto& p : pairs) insert(p.first, p.second);
  }

  /// Throws StructureError if the pair breaks functionality or injectivity.
  /// Re-inserting an existing pair is a no-op.
  void insert(const E& a, const E& b) {
    const E* image = image_of(a);
    const E* pre = preimage_of(b);
    if (image != nullptr && pre != nullptr && *image == b) return;
    if (image != nullptr || pre != nullptr) {
      throw StructureError("partial map would stop being injective or functional");
    }
    pairs_.emplace_back(a, b);
  }
  /// Like insert, but reports conflicts instead of throwing.
  bool try_insert(const E& a, const E& b) {
    const E* image = image_of(a);
    const E* pre = preimage_of(b);
    if (image != nullptr && pre != nullptr && *image == b) return true;
    if (image != nullptr || pre != nullptr) return false;
    pairs_.emplace_back(a, b);
    return true;
  }

  const E* image_of(const E& a) const {
    for (const auto& p : pairs_) {
      if (p.first == a) return &p.second;
    }
    return nullptr;
  }
  const E* preimage_of(const E& b) const {
    for (const auto& p : pairs_) {
      if (p.second == b) return &p.first;
    }
    return nullptr;
  }
  bool in_domain(const E& a) const { return image_of(a) != nullptr; }
  bool in_range(const E& b) const { return preimage_of(b) != nullptr; }

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }
  const std::vector<value_type>& pairs() const { return pairs_; }

  BasicPartialMap inverse() const {
    BasicPartialMap out;
    for (const auto& [a, b] : pairs_) out.pairs_.emplace_back(b, a);
    return out;
  }
  bool is_subset_of(const BasicPartialMap& other) const {
    return std::all_of(pairs_.begin(), pairs_.end(), [&](const value_type& p) {
      const E* image = other.image_of(p.first);
      return image != nullptr && *image == p.second;
    });
  }
  std::vector<value_type> sorted() const {
    std::vector<value_type> out = pairs_;
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const BasicPartialMap& a, const BasicPartialMap& b) {
    return a.size() == b.size() && a.is_subset_of(b);
  }

 private:
  std::vector<value_type> pairs_;
};

using PartialMap = BasicPartialMap<ElementId>;

/// Immutable finite structure over the dense universe {0, ..., size-1}.
class FiniteStructure {
 public:
  using Tuple = std::vector<ElementId>;

  const Vocabulary& vocabulary() const { return vocabulary_; }
  int size() const { return size_; }
  bool contains(ElementId e) const { return e >= 0 && e < size_; }

  const std::set<Tuple>& relation(std::size_t predicate) const { return relations_.at(predicate); }
  bool holds(std::size_t predicate, const Tuple& tuple) const {
    return relations_.at(predicate).count(tuple) > 0;
  }
  std::optional<ElementId> apply(std::size_t function, ElementId arg) const {
    return functions_.at(function).at(static_cast<std::size_t>(arg));
  }
  ElementId constant(std::size_t index) const { return constants_.at(index); }

 private:
  friend class StructureBuilder;

  Vocabulary vocabulary_;
  int size_ = 0;
  std::vector<std::set<Tuple>> relations_;
  std::vector<std::vector<std::optional<ElementId>>> functions_;
  std::vector<ElementId> constants_;
};

class StructureBuilder {
 public:
  StructureBuilder(Vocabulary vocabulary, int size);

  StructureBuilder& add_tuple(const std::string& predicate, FiniteStructure::Tuple tuple);
  StructureBuilder& set_function(const std::string& function, ElementId arg, ElementId value);
  StructureBuilder& set_constant(const std::string& constant, ElementId value);

  /// Validates and returns the structure; throws StructureError on violations.
  FiniteStructure build() const;

 private:
  void check_element(ElementId e) const;

  FiniteStructure draft_;
  std::vector<bool> constant_set_;
};

/// Convenience: a strict linear order `<` on n elements (0 < 1 < ... < n-1).
FiniteStructure linear_order(int n);

bool check_partial_isomorphism(const FiniteStructure& a, const FiniteStructure& b,
                               const PartialMap& f);
/// Same as check_partial_isomorphism, but returns the first failure instead of false.
std::optional<std::string> explain_partial_isomorphism(const FiniteStructure& a,
                                                       const FiniteStructure& b,
                                                       const PartialMap& f);

/// All automorphisms of `a` (at most `limit`), as image vectors in lexicographic order.
std::vector<std::vector<ElementId>> automorphism_images(const FiniteStructure& a, std::size_t limit);
std::vector<PartialMap> automorphism_search(const FiniteStructure& a, std::size_t limit);

}  // namespace efeq

#endif  // EFEQ_STRUCTURE_HPP
