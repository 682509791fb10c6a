#include "efeq/structure.hpp"

#include <unordered_set>

namespace efeq {

Vocabulary::Vocabulary(std::vector<PredicateSymbol> predicates,
                       std::vector<FunctionSymbol> functions, std::vector<std::string> constants)
    : predicates_(std::move(predicates)),
      functions_(std::move(functions)),
      constants_(std::move(constants)) {
  std::unordered_set<std::string> names;
  auto claim = [&](const std::string& name) {
    if (name.empty()) throw StructureError("empty symbol name");
    if (!names.insert(name).second) throw StructureError("duplicate symbol name '" + name + "'");
  };
  for (const auto& p : predicates_) {
    claim(p.name);
    if (p.arity < 1) throw StructureError("predicate '" + p.name + "' has arity < 1");
  }
  for (const auto& f : functions_) claim(f.name);
  for (const auto& c : constants_) claim(c);
  for (const auto& f : functions_) {
    if (!f.domain) continue;
    auto idx = predicate_index(*f.domain);
    if (!idx || predicates_[*idx].arity != 1) {
      throw StructureError("function '" + f.name + "' has a domain that is not a unary predicate");
    }
  }
}

std::optional<std::size_t> Vocabulary::predicate_index(const std::string& name) const {
  for (std::size_t i = 0; i < predicates_.size(); ++i) {
    if (predicates_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Vocabulary::function_index(const std::string& name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    if (functions_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Vocabulary::constant_index(const std::string& name) const {
  for (std::size_t i = 0; i < constants_.size(); ++i) {
    if (constants_[i] == name) return i;
  }
  return std::nullopt;
}

StructureBuilder::StructureBuilder(Vocabulary vocabulary, int size) {
  if (size < 0) throw StructureError("negative universe size");
  draft_.vocabulary_ = std::move(vocabulary);
  draft_.size_ = size;
  const Vocabulary& v = draft_.vocabulary_;
  draft_.relations_.resize(v.predicates().size());
  draft_.functions_.assign(v.functions().size(),
                           std::vector<std::optional<ElementId>>(static_cast<std::size_t>(size)));
  draft_.constants_.assign(v.constants().size(), 0);
  constant_set_.assign(v.constants().size(), false);
}

void StructureBuilder::check_element(ElementId e) const {
  if (!draft_.contains(e)) {
    throw StructureError("element id " + std::to_string(e) + " outside the universe of size " +
                         std::to_string(draft_.size_));
  }
}

StructureBuilder& StructureBuilder::add_tuple(const std::string& predicate,
                                              FiniteStructure::Tuple tuple) {
  auto idx = draft_.vocabulary_.predicate_index(predicate);
  if (!idx) throw StructureError("unknown predicate '" + predicate + "'");
  if (static_cast<int>(tuple.size()) != draft_.vocabulary_.predicates()[*idx].arity) {
    throw StructureError("tuple arity mismatch for '" + predicate + "'");
  }
  for (ElementId e : tuple) check_element(e);
  draft_.relations_[*idx].insert(std::move(tuple));
  return *this;
}

StructureBuilder& StructureBuilder::set_function(const std::string& function, ElementId arg,
                                                 ElementId value) {
  auto idx = draft_.vocabulary_.function_index(function);
  if (!idx) throw StructureError("unknown function '" + function + "'");
  check_element(arg);
  check_element(value);
  draft_.functions_[*idx][static_cast<std::size_t>(arg)] = value;
  return *this;
}

StructureBuilder& StructureBuilder::set_constant(const std::string& constant, ElementId value) {
  auto idx = draft_.vocabulary_.constant_index(constant);
  if (!idx) throw StructureError("unknown constant '" + constant + "'");
  check_element(value);
  draft_.constants_[*idx] = value;
  constant_set_[*idx] = true;
  return *this;
}

FiniteStructure StructureBuilder::build() const {
  const Vocabulary& v = draft_.vocabulary_;
  for (std::size_t i = 0; i < constant_set_.size(); ++i) {
    if (!constant_set_[i]) throw StructureError("constant '" + v.constants()[i] + "' is unassigned");
  }
  // Off-sort values stay undefined: a function with a domain predicate may
  // only be defined on members of that predicate.
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    const auto& domain = v.functions()[f].domain;
    if (!domain) continue;
    const std::size_t p = *v.predicate_index(*domain);
    for (ElementId e = 0; e < draft_.size_; ++e) {
      if (draft_.functions_[f][static_cast<std::size_t>(e)] && !draft_.holds(p, {e})) {
        throw StructureError("function '" + v.functions()[f].name + "' is defined off its domain");
      }
    }
  }
  return draft_;
}

FiniteStructure linear_order(int n) {
  StructureBuilder builder(Vocabulary({{"<", 2}}, {}, {}), n);
  for (ElementId i = 0; i < n; ++i) {
    for (ElementId j = i + 1; j < n; ++j) builder.add_tuple("<", {i, j});
  }
  return builder.build();
}

std::optional<std::string> explain_partial_isomorphism(const FiniteStructure& a,
                                                       const FiniteStructure& b,
                                                       const PartialMap& f) {
  if (!(a.vocabulary() == b.vocabulary())) throw StructureError("vocabulary mismatch");
  for (const auto& [x, y] : f) {
    if (!a.contains(x) || !b.contains(y)) {
      throw StructureError("partial map pair (" + std::to_string(x) + "," + std::to_string(y) +
                           ") leaves the universes");
    }
  }
  const Vocabulary& v = a.vocabulary();

  for (std::size_t p = 0; p < v.predicates().size(); ++p) {
    const std::string& name = v.predicates()[p].name;
    for (const auto& tuple : a.relation(p)) {
      FiniteStructure::Tuple image;
      for (ElementId e : tuple) {
        const ElementId* y = f.image_of(e);
        if (y == nullptr) break;
        image.push_back(*y);
      }
      if (image.size() == tuple.size() && !b.holds(p, image)) {
        return "predicate " + name + " not preserved forwards";
      }
    }
    for (const auto& tuple : b.relation(p)) {
      FiniteStructure::Tuple pre;
      for (ElementId e : tuple) {
        const ElementId* x = f.preimage_of(e);
        if (x == nullptr) break;
        pre.push_back(*x);
      }
      if (pre.size() == tuple.size() && !a.holds(p, pre)) {
        return "predicate " + name + " not preserved backwards";
      }
    }
  }

  for (std::size_t fn = 0; fn < v.functions().size(); ++fn) {
    const std::string& name = v.functions()[fn].name;
    for (const auto& [x, y] : f) {
      if (auto value = a.apply(fn, x); value && f.in_domain(*value)) {
        if (b.apply(fn, y) != *f.image_of(*value)) return "function " + name + " not preserved forwards";
      }
      if (auto value = b.apply(fn, y); value && f.in_range(*value)) {
        if (a.apply(fn, x) != *f.preimage_of(*value)) {
          return "function " + name + " not preserved backwards";
        }
      }
    }
  }

  for (std::size_t c = 0; c < v.constants().size(); ++c) {
    const ElementId ca = a.constant(c);
    const ElementId cb = b.constant(c);
    if (const ElementId* y = f.image_of(ca); y != nullptr && *y != cb) {
      return "constant " + v.constants()[c] + " not preserved";
    }
    if (const ElementId* x = f.preimage_of(cb); x != nullptr && *x != ca) {
      return "constant " + v.constants()[c] + " not reflected";
    }
  }
  return std::nullopt;
}

bool check_partial_isomorphism(const FiniteStructure& a, const FiniteStructure& b,
                               const PartialMap& f) {
  return !explain_partial_isomorphism(a, b, f).has_value();
}

namespace {

void extend_automorphisms(const FiniteStructure& a, std::vector<ElementId>& images,
                          std::vector<bool>& used, PartialMap& partial, std::size_t limit,
                          std::vector<std::vector<ElementId>>& out) {
  if (out.size() >= limit) return;
  const auto next = static_cast<ElementId>(images.size());
  if (next == a.size()) {
    out.push_back(images);
    return;
  }
  for (ElementId candidate = 0; candidate < a.size(); ++candidate) {
    if (used[static_cast<std::size_t>(candidate)]) continue;
    PartialMap trial = partial;
    trial.insert(next, candidate);
    if (!check_partial_isomorphism(a, a, trial)) continue;
    used[static_cast<std::size_t>(candidate)] = true;
    images.push_back(candidate);
    extend_automorphisms(a, images, used, trial, limit, out);
    images.pop_back();
    used[static_cast<std::size_t>(candidate)] = false;
    if (out.size() >= limit) return;
  }
}

}  // namespace

std::vector<std::vector<ElementId>> automorphism_images(const FiniteStructure& a,
                                                        std::size_t limit) {
  if (limit == 0) throw StructureError("automorphism search limit must be positive");
  std::vector<std::vector<ElementId>> out;
  std::vector<ElementId> images;
  std::vector<bool> used(static_cast<std::size_t>(a.size()), false);
  PartialMap partial;
  extend_automorphisms(a, images, used, partial, limit, out);
  return out;
}

std::vector<PartialMap> automorphism_search(const FiniteStructure& a, std::size_t limit) {
  std::vector<PartialMap> out;
  for (const auto& images : automorphism_images(a, limit)) {
    PartialMap m;
    for (std::size_t i = 0; i < images.size(); ++i) m.insert(static_cast<ElementId>(i), images[i]);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace efeq
