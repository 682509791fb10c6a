#include "efeq/strategy.hpp"

#include <algorithm>
#include <set>

namespace efeq {

InitResult init_state(const ParameterSpec& spec, const Sort& s_star, const Ordinal& alpha) {
  if (alpha.is_zero()) throw StrategyError("alpha must be at least 1");
  if (s_star.empty()) throw StrategyError("the anchor sort is empty");
  if (s_star.back() >= spec.N) throw StrategyError("the anchor sort leaves [0, N)");

  IsoState st;
  st.s_star = s_star;
  st.gamma_star = s_star.back() + 1;
  st.g.tag = alpha;
  st.g.values.assign(st.gamma_star, Ordinal());
  auto t = key_for(spec, st.g, s_star);
  if (!t) throw StrategyError("alpha " + alpha.to_string() + " gives no generator of the anchor sort (alphaStar is " +
                              spec.alpha_star.to_string() + ")");
  st.t_star = *t;
  ModelElement c1 = ModelElement::identity(spec.mode, s_star);
  ModelElement c2{s_star, GroupElement::generator(spec.mode, st.t_star.generator())};
  st.map.insert(c1, c2);
  return {std::move(st), std::move(c1), std::move(c2)};
}

Ordinal symbolic_game_length(const Ordinal& alpha) {
  if (alpha.is_zero()) throw StrategyError("alpha must be at least 1");
  if (alpha.is_successor()) return alpha.predecessor();
  return alpha;
}

std::vector<Sort> sorts_of(const IsoState& st) {
  std::set<Sort> out{st.s_star};
  for (const auto& [x, y] : st.map) out.insert(x.sort);
  return {out.begin(), out.end()};
}

RespondResult respond(const Model& model, const IsoState& st, const std::vector<ModelElement>& demand_left,
                      const std::vector<ModelElement>& demand_right, const RespondOptions& options) {
  const ParameterSpec& spec = model.spec();
  RespondResult out;
  auto stuck = [&](std::string why) {
    out.state = st;
    out.stuck = true;
    out.reason = std::move(why);
    return out;
  };

  std::set<Sort> sorts;
  for (const Sort& s : sorts_of(st)) sorts.insert(s);
  std::uint64_t domain = st.g.domain();
  for (const auto* side : {&demand_left, &demand_right}) {
    for (const ModelElement& x : *side) {
      if (auto why = model.element_violation(x)) return stuck("demanded " + x.to_string() + ": " + *why);
      sorts.insert(x.sort);
      domain = std::max<std::uint64_t>(domain, x.sort.back() + 1);
    }
  }
  ++domain;

  const Ordinal value = options.fault_equal_values ? st.g.max_value() : st.g.max_value().successor();
  if (!(value < st.g.tag)) return stuck("no value left below the tag " + st.g.tag.to_string());
  IsoState next = st;
  next.g.values.resize(domain, value);
  next.round = st.round.successor();
  const std::vector<std::uint64_t> h = derive_h(next.g);

  Family c;
  for (const Sort& s : sorts) {
    auto t = key_for(spec, next.g, h, s);
    if (!t) return stuck("sort " + sort_to_string(s) + " has no generator under the extended g");
    c.entries.emplace(s, GroupElement::generator(spec.mode, t->generator()));
  }

  for (const ModelElement& x : demand_left) {
    if (next.map.in_domain(x)) continue;
    ModelElement y = apply_family(c, x);
    if (next.map.in_range(y)) return stuck("image of " + x.to_string() + " is already taken");
    next.map.insert(x, std::move(y));
  }
  for (const ModelElement& z : demand_right) {
    if (next.map.in_range(z)) continue;
    ModelElement x{z.sort, gmul(z.value, ginv(c.entries.at(z.sort)))};
    if (next.map.in_domain(x)) return stuck("preimage of " + z.to_string() + " is already taken");
    next.map.insert(std::move(x), z);
  }
  out.state = std::move(next);
  return out;
}

bool r_leq(const TaggedMonotone& g1, const TaggedMonotone& g2) {
  if (g1.tag != g2.tag || g1.domain() > g2.domain()) return false;
  if (!std::equal(g1.values.begin(), g1.values.end(), g2.values.begin())) return false;
  if (g1.values.empty()) return true;
  const Ordinal top = g1.max_value();
  return std::all_of(g2.values.begin() + static_cast<std::ptrdiff_t>(g1.domain()), g2.values.end(),
                     [&](const Ordinal& v) { return top < v; });
}

IsoState limit_union(const std::vector<IsoState>& chain) {
  if (chain.empty()) throw StrategyError("empty chain");
  IsoState out = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const IsoState& s = chain[i];
    if (s.s_star != out.s_star || s.gamma_star != out.gamma_star || !(s.t_star == out.t_star)) {
      throw StrategyError("chain mixes different anchors");
    }
    if (!r_leq(out.g, s.g)) throw StrategyError("chain is not increasing at stage " + std::to_string(i));
    for (const auto& [x, y] : s.map) {
      if (!out.map.try_insert(x, y)) throw StrategyError("maps of the chain disagree at stage " + std::to_string(i));
    }
    out.g = s.g;
    out.round = std::max(out.round, s.round);
  }
  return out;
}

std::optional<std::string> check_state(const Model& model, const IsoState& st) {
  const ParameterSpec& spec = model.spec();
  try {
    st.g.validate();
  } catch (const ParameterError& e) {
    return std::string("g: ") + e.what();
  }
  if (st.g.domain() < st.gamma_star) return "g does not reach gamma*";
  for (std::uint64_t i = 0; i < st.gamma_star; ++i) {
    if (!st.g.values[i].is_zero()) return "g is not zero below gamma*";
  }
  if (st.g.domain() > st.gamma_star && st.g.values[st.gamma_star] != Ordinal(1)) return "g(gamma*) is not 1";

  const std::vector<std::uint64_t> h = derive_h(st.g);
  auto anchor = key_for(spec, st.g, h, st.s_star);
  if (!anchor || !(*anchor == st.t_star)) return "anchor generator moved away from t*";
  const ModelElement c1 = ModelElement::identity(spec.mode, st.s_star);
  const ModelElement* image = st.map.image_of(c1);
  if (image == nullptr || image->value != GroupElement::generator(spec.mode, st.t_star.generator())) {
    return "c1 is not sent to c2";
  }
  for (const auto& [x, y] : st.map) {
    auto t = key_for(spec, st.g, h, x.sort);
    if (!t) return "sort " + sort_to_string(x.sort) + " of the map is outside the index set";
    if (!(y == ModelElement{x.sort, gmul(x.value, GroupElement::generator(spec.mode, t->generator()))})) {
      return "pair " + x.to_string() + " -> " + y.to_string() + " is not the translation by the family";
    }
  }
  return std::nullopt;
}

std::optional<ModelMap> CanonicalIsoPlayer::respond(const ModelMap& current, const BasicDemand<ModelElement>& demand,
                                                    const Ordinal& /*position*/) {
  if (!(current == chain_.back().map)) {
    failure_ = "referee map differs from the strategy's map";
    return std::nullopt;
  }
  RespondResult r = efeq::respond(model_, chain_.back(), demand.left, demand.right, options_);
  if (r.stuck) {
    failure_ = r.reason;
    return std::nullopt;
  }
  chain_.push_back(std::move(r.state));
  return chain_.back().map;
}

void CanonicalIsoPlayer::on_limit(const Ordinal& index, const ModelMap& united) {
  IsoState u = limit_union(chain_);
  if (!(u.map == united)) throw StrategyError("limit map differs from the union of the strategy's maps");
  u.round = index;
  chain_.push_back(std::move(u));
}

}  // namespace efeq
