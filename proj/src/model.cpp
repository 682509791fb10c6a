#include "efeq/model.hpp"

#include <algorithm>
#include <set>

namespace efeq {

std::string ModelElement::to_string() const { return "(" + sort_to_string(sort) + ", " + value.to_string() + ")"; }

ModelElement ModelElement::parse(std::string_view text, GroupMode mode) {
  auto fail = [&](const char* why) {
    return ModelError("malformed element '" + std::string(text) + "': " + why);
  };
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw fail("expected (<sort>, <word>)");
  s = s.substr(1, s.size() - 2);
  const std::size_t close = s.find(']');
  if (close == std::string_view::npos) throw fail("missing sort");
  ModelElement out;
  try {
    out.sort = parse_sort(s.substr(0, close + 1));
  } catch (const std::invalid_argument&) {
    throw fail("bad sort");
  }
  std::string_view rest = s.substr(close + 1);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  if (rest.empty() || rest.front() != ',') throw fail("expected ',' after the sort");
  rest.remove_prefix(1);
  try {
    out.value = GroupElement::parse(rest, mode);
  } catch (const GroupError& e) {
    throw ModelError(e.what());
  }
  return out;
}

Model::Model(ParameterSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

GeneratorKey Model::key_of(const Generator& g) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = keys_.find(g.key());
    if (it != keys_.end()) return it->second;
  }
  GeneratorKey t;
  try {
    t = GeneratorKey::parse(g.key());
  } catch (const ParameterError& e) {
    throw ModelError(e.what());
  }
  std::lock_guard<std::mutex> lock(mutex_);
  keys_.emplace(g.key(), t);
  return t;
}

std::optional<std::string> Model::element_violation(const ModelElement& x) const {
  if (x.sort.empty()) return "empty sort";
  if (x.sort.back() >= spec_.N) return "sort " + sort_to_string(x.sort) + " leaves [0, N)";
  if (x.value.mode() != spec_.mode) return "group mode differs from the parameter";
  for (const Generator& g : x.value.support()) {
    GeneratorKey t;
    try {
      t = key_of(g);
    } catch (const ModelError& e) {
      return e.what();
    }
    if (t.u != x.sort) return g.to_string() + " is not a generator of sort " + sort_to_string(x.sort);
    try {
      if (auto why = j_violation(spec_, t)) return g.to_string() + " is not in J: " + *why;
    } catch (const ParameterError& e) {
      return g.to_string() + ": " + e.what();
    }
  }
  return std::nullopt;
}

void Model::require_sort(const GroupElement& x, const Sort& s) const {
  if (x.mode() != spec_.mode) throw ModelError("group mode differs from the parameter");
  for (const Generator& g : x.support()) {
    if (key_of(g).u != s) throw ModelError("sort mismatch: " + g.to_string() + " is not a generator of " + sort_to_string(s));
  }
}

bool Model::q_member(const Sort& s1, const Sort& s2, const GroupElement& x, const GroupElement& y) const {
  if (!is_subsort(s1, s2)) {
    throw ModelError("no Q symbol for " + sort_to_string(s1) + " and " + sort_to_string(s2));
  }
  require_sort(x, s1);
  require_sort(y, s2);
  if (linkage_is_functional(spec_)) {
    return pair_membership_functional(
        [&](const Generator& g) -> std::optional<Generator> { return project(s1, key_of(g)).generator(); }, x, y);
  }
  return pair_membership_blocks([&](const Generator& g) { return cached_label(g, s2, true); },
                                [&](const Generator& g) { return cached_label(g, s1, false); }, x, y);
}

std::optional<std::string> Model::cached_label(const Generator& g, const Sort& other, bool left) const {
  const std::string id = (left ? "L" : "R") + sort_to_string(other) + g.key();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = labels_.find(id);
    if (it != labels_.end()) return it->second;
  }
  const GeneratorKey t = key_of(g);
  std::optional<std::string> label =
      left ? linkage_label_left(spec_, t, other) : std::optional<std::string>(linkage_label(spec_, other, t));
  std::lock_guard<std::mutex> lock(mutex_);
  labels_.emplace(id, label);
  return label;
}

bool Model::eval_atomic(const Atom& atom) const {
  struct Visitor {
    const Model& m;
    bool operator()(const PAtom& a) const { return a.x.sort == a.sort; }
    bool operator()(const QAtom& a) const {
      if (a.x.sort != a.s1 || a.y.sort != a.s2) throw ModelError("sort mismatch between Q atom and its arguments");
      return m.q_member(a.s1, a.s2, a.x.value, a.y.value);
    }
    bool operator()(const FAtom& a) const {
      if (a.x.sort != a.sort) throw ModelError("sort mismatch between F atom and its argument");
      m.require_sort(a.a, a.sort);
      return a.y.sort == a.sort && gmul(a.a, a.x.value) == a.y.value;
    }
  };
  return std::visit(Visitor{*this}, atom);
}

bool Model::membership_C(const Family& c) const {
  for (const auto& [s, x] : c.entries) {
    if (x.mode() != spec_.mode) throw ModelError("family entry of " + sort_to_string(s) + " has the wrong group mode");
    if (element_violation(ModelElement{s, x})) return false;
  }
  for (const auto& [s1, x1] : c.entries) {
    for (const auto& [s2, x2] : c.entries) {
      if (s1 == s2 || !is_subsort(s1, s2)) continue;
      if (!q_member(s1, s2, x1, x2)) return false;
    }
  }
  return true;
}

std::optional<std::string> Model::check_map(const ModelMap& f,
                                            const std::optional<std::pair<ModelElement, ModelElement>>& constant) const {
  std::vector<std::pair<ModelElement, ModelElement>> pairs(f.begin(), f.end());
  for (const auto& [x, y] : pairs) {
    if (auto why = element_violation(x)) return "left element " + x.to_string() + ": " + *why;
    if (auto why = element_violation(y)) return "right element " + y.to_string() + ": " + *why;
  }
  if (constant) {
    const auto& [c1, c2] = *constant;
    const ModelElement* image = f.image_of(c1);
    const ModelElement* pre = f.preimage_of(c2);
    if (image && !(*image == c2)) return "constant c: " + c1.to_string() + " is not sent to " + c2.to_string();
    if (pre && !(*pre == c1)) return "constant c: " + c2.to_string() + " has the wrong preimage";
    if (!image) pairs.emplace_back(c1, c2);
  }
  for (const auto& [x, y] : pairs) {
    if (x.sort != y.sort) return "P: " + x.to_string() + " and " + y.to_string() + " lie in different sorts";
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j) continue;
      const auto& [xi, yi] = pairs[i];
      const auto& [xj, yj] = pairs[j];
      if (xi.sort == xj.sort) {
        // F_{s,a}(xi) = xj holds for exactly one a, namely xj * xi^-1.
        if (gmul(xj.value, ginv(xi.value)) != gmul(yj.value, ginv(yi.value))) {
          return "F: the symbol taking " + xi.to_string() + " to " + xj.to_string() + " is not preserved";
        }
      }
      if (is_subsort(xi.sort, xj.sort)) {
        const bool left = q_member(xi.sort, xj.sort, xi.value, xj.value);
        const bool right = q_member(yi.sort, yj.sort, yi.value, yj.value);
        if (left != right) {
          return "Q" + sort_to_string(xi.sort) + sort_to_string(xj.sort) + ": " + xi.to_string() + ", " +
                 xj.to_string() + (left ? " holds" : " fails") + " but the images " + (right ? "hold" : "fail");
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Family> Model::translation_family(const ModelMap& f) const {
  Family c;
  for (const auto& [x, y] : f) {
    if (x.sort != y.sort) return std::nullopt;
    GroupElement shift = gmul(ginv(x.value), y.value);
    auto [it, inserted] = c.entries.emplace(x.sort, shift);
    if (!inserted && it->second != shift) return std::nullopt;
  }
  return c;
}

ModelElement apply_family(const Family& c, const ModelElement& x) {
  auto it = c.entries.find(x.sort);
  if (it == c.entries.end()) throw ModelError("sort " + sort_to_string(x.sort) + " is outside the family's support");
  return {x.sort, gmul(x.value, it->second)};
}

Family family_from_images(const std::map<Sort, ModelElement>& images) {
  Family out;
  for (const auto& [s, image] : images) {
    if (image.sort != s) throw ModelError("image of the identity of " + sort_to_string(s) + " lies in another sort");
    out.entries.emplace(s, image.value);
  }
  return out;
}

std::vector<GroupElement> enumerate_words(GroupMode mode, const std::vector<Generator>& gens, std::size_t bound) {
  std::vector<GroupElement> out{GroupElement::identity(mode)};
  if (mode == GroupMode::boolean) {
    std::vector<Generator> sorted = gens;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      for (std::size_t i = from; i < sorted.size() && pick.size() < bound; ++i) {
        pick.push_back(i);
        std::vector<Generator> members;
        for (std::size_t k : pick) members.push_back(sorted[k]);
        out.push_back(GroupElement::from_set(std::move(members)));
        self(self, i + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  } else {
    std::vector<GroupElement> layer = out;
    for (std::size_t len = 1; len <= bound; ++len) {
      std::vector<GroupElement> next;
      for (const GroupElement& w : layer) {
        for (const Generator& g : gens) {
          for (int e : {1, -1}) {
            GroupElement v = gmul(w, GroupElement::generator(mode, g, e));
            if (v.length() == len) next.push_back(std::move(v));
          }
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FiniteStructure export_fragment(const Model& model, const std::vector<Sort>& sorts_in, std::size_t word_bound,
                                const std::vector<GeneratorKey>& key_pool) {
  if (sorts_in.empty()) throw ModelError("export needs at least one sort");
  if (key_pool.empty()) throw ModelError("export needs at least one key");
  std::vector<Sort> sorts;
  for (const Sort& s : sorts_in) {
    if (std::find(sorts.begin(), sorts.end(), s) == sorts.end()) sorts.push_back(s);
  }
  const ParameterSpec& spec = model.spec();

  std::vector<PredicateSymbol> predicates;
  std::vector<FunctionSymbol> functions;
  std::vector<std::vector<Generator>> gens(sorts.size());
  std::vector<std::vector<GroupElement>> words(sorts.size());
  std::vector<std::map<GroupElement, ElementId>> ids(sorts.size());
  ElementId next_id = 0;
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    const Sort& s = sorts[i];
    if (!model.valid_element(ModelElement::identity(spec.mode, s))) {
      throw ModelError("sort " + sort_to_string(s) + " is not a sort of the model");
    }
    std::set<Generator> found;
    for (const GeneratorKey& t : key_pool) {
      if (!j_membership(spec, t)) throw ModelError("pool key " + t.serialize() + " is not in J");
      if (is_subsort(s, t.u)) found.insert(project(s, t).generator());
    }
    gens[i].assign(found.begin(), found.end());
    words[i] = enumerate_words(spec.mode, gens[i], word_bound);
    for (const GroupElement& w : words[i]) ids[i].emplace(w, next_id++);
    predicates.push_back({"P" + sort_to_string(s), 1});
  }
  std::vector<std::pair<std::size_t, std::size_t>> q_pairs;
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    for (std::size_t j = 0; j < sorts.size(); ++j) {
      if (is_subsort(sorts[i], sorts[j])) {
        q_pairs.emplace_back(i, j);
        predicates.push_back({"Q" + sort_to_string(sorts[i]) + sort_to_string(sorts[j]), 2});
      }
    }
  }
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    for (const Generator& g : gens[i]) {
      functions.push_back({"F" + sort_to_string(sorts[i]) + g.to_string(), "P" + sort_to_string(sorts[i])});
    }
  }

  StructureBuilder b(Vocabulary(predicates, functions, {}), next_id);
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    for (const auto& [w, id] : ids[i]) b.add_tuple("P" + sort_to_string(sorts[i]), {id});
  }
  for (const auto& [i, j] : q_pairs) {
    const std::string name = "Q" + sort_to_string(sorts[i]) + sort_to_string(sorts[j]);
    for (const auto& [x, xid] : ids[i]) {
      for (const auto& [y, yid] : ids[j]) {
        if (model.q_member(sorts[i], sorts[j], x, y)) b.add_tuple(name, {xid, yid});
      }
    }
  }
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    for (const Generator& g : gens[i]) {
      const std::string name = "F" + sort_to_string(sorts[i]) + g.to_string();
      const GroupElement a = GroupElement::generator(spec.mode, g);
      for (const auto& [w, id] : ids[i]) {
        auto it = ids[i].find(gmul(a, w));
        if (it != ids[i].end()) b.set_function(name, id, it->second);
      }
    }
  }
  return b.build();
}

}  // namespace efeq
