#ifndef EFEQ_MODEL_HPP
#define EFEQ_MODEL_HPP

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "efeq/family.hpp"
#include "efeq/freegroup.hpp"
#include "efeq/game.hpp"
#include "efeq/parameter.hpp"
#include "efeq/structure.hpp"
#include "efeq/transcript_io.hpp"

namespace efeq {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element (s, x) of the model: x lies in the group of sort s.
struct ModelElement {
  Sort sort;
  GroupElement value;

  static ModelElement identity(GroupMode mode, Sort sort) { return {std::move(sort), GroupElement::identity(mode)}; }
  /// `(<sorted u>, <word>)`, e.g. `([0,1], g<...>*g<...>^-1)`.
  std::string to_string() const;
  static ModelElement parse(std::string_view text, GroupMode mode);

  friend bool operator==(const ModelElement&, const ModelElement&) = default;
  friend auto operator<=>(const ModelElement& a, const ModelElement& b) {
    if (auto c = a.sort <=> b.sort; c != 0) return c;
    return a.value <=> b.value;
  }
};

using ModelMap = BasicPartialMap<ModelElement>;

/// P_s(x)
struct PAtom {
  Sort sort;
  ModelElement x;
};
/// Q_{s1,s2}(x, y); defined for s1 a subset of s2.
struct QAtom {
  Sort s1;
  Sort s2;
  ModelElement x;
  ModelElement y;
};
/// F_{s,a}(x) = y
struct FAtom {
  Sort sort;
  GroupElement a;
  ModelElement x;
  ModelElement y;
};
using Atom = std::variant<PAtom, QAtom, FAtom>;

/// The model of a parameter, evaluated lazily. Thread-safe.
class Model {
 public:
  explicit Model(ParameterSpec spec);

  const ParameterSpec& spec() const { return spec_; }
  GroupMode mode() const { return spec_.mode; }

  /// Parsed key of a generator; throws ModelError for keys that do not parse.
  GeneratorKey key_of(const Generator& g) const;

  std::optional<std::string> element_violation(const ModelElement& x) const;
  bool valid_element(const ModelElement& x) const { return !element_violation(x); }

  /// (x, y) in the pair subgroup of s1 and s2. Throws ModelError unless s1 is
  /// a subset of s2 and the generators of x, y belong to s1, s2.
  bool q_member(const Sort& s1, const Sort& s2, const GroupElement& x, const GroupElement& y) const;

  /// Throws ModelError on a sort mismatch between the atom and its arguments.
  bool eval_atomic(const Atom& atom) const;

  /// Entries lie in their groups and every comparable pair is in its pair subgroup.
  bool membership_C(const Family& c) const;

  /// First reason `f` (together with c1 -> c2 when given) fails to be a
  /// partial isomorphism, or nullopt. P, Q and every F atom among the mapped
  /// elements are checked exactly.
  std::optional<std::string> check_map(const ModelMap& f,
                                       const std::optional<std::pair<ModelElement, ModelElement>>& constant) const;

  /// The family c with f(x) = x * c_s on every pair of f, if f has that shape.
  std::optional<Family> translation_family(const ModelMap& f) const;

 private:
  void require_sort(const GroupElement& x, const Sort& s) const;
  std::optional<std::string> cached_label(const Generator& g, const Sort& other, bool left) const;

  ParameterSpec spec_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, GeneratorKey> keys_;
  mutable std::unordered_map<std::string, std::optional<std::string>> labels_;
};

/// f_c((s, y)) = (s, y * c_s). Throws ModelError if s is outside the support.
ModelElement apply_family(const Family& c, const ModelElement& x);

/// c_s read off as the value of the image of (s, e).
Family family_from_images(const std::map<Sort, ModelElement>& images);

/// Reduced words of length at most `bound` over `gens` (Boolean: subsets), in canonical order.
std::vector<GroupElement> enumerate_words(GroupMode mode, const std::vector<Generator>& gens, std::size_t bound);

/// Finite fragment over the elements (s, w) with |w| <= word_bound and
/// generators projected from `key_pool`. F symbols are partial where a
/// product leaves the fragment.
FiniteStructure export_fragment(const Model& model, const std::vector<Sort>& sorts, std::size_t word_bound,
                                const std::vector<GeneratorKey>& key_pool);

/// The pointed models (M, c1) and (M, c2) as a game arena.
class SymbolicArena {
 public:
  using element = ModelElement;

  SymbolicArena(const Model& model, ModelElement c1, ModelElement c2)
      : model_(model), c1_(std::move(c1)), c2_(std::move(c2)) {}

  bool contains_left(const ModelElement& e) const { return model_.valid_element(e); }
  bool contains_right(const ModelElement& e) const { return model_.valid_element(e); }
  std::optional<std::string> check(const ModelMap& f) const { return model_.check_map(f, std::make_pair(c1_, c2_)); }

  const Model& model() const { return model_; }
  const ModelElement& c1() const { return c1_; }
  const ModelElement& c2() const { return c2_; }

 private:
  const Model& model_;
  ModelElement c1_;
  ModelElement c2_;
};

template <>
struct ElementCodec<ModelElement> {
  GroupMode mode = GroupMode::free_group;
  nlohmann::json encode(const ModelElement& e) const { return e.to_string(); }
  ModelElement decode(const nlohmann::json& j) const { return ModelElement::parse(j.get<std::string>(), mode); }
};

}  // namespace efeq

#endif  // EFEQ_MODEL_HPP
