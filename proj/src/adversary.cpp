#include "efeq/adversary.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace efeq {

GeneratorKey random_key(const ParameterSpec& spec, const Sort& u, std::mt19937_64& rng, std::uint64_t tag_cap,
                        std::uint64_t h_slack) {
  std::uint64_t top = tag_cap;
  if (auto a = spec.alpha_star.as_natural()) top = std::min<std::uint64_t>(top, *a - 1);
  if (top == 0) throw ModelError("alphaStar leaves no tag for generators");
  GeneratorKey t;
  t.u = u;
  const std::uint64_t tag = 1 + rng() % top;
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i > 0 && rng() % 2 == 0 && v + 1 < tag) ++v;
    t.g.emplace_back(v);
  }
  // h is constant on blocks of equal g, increases across blocks, and exceeds every point of its block.
  const std::uint64_t ceiling = spec.effective_h_ceiling();
  std::uint64_t last = 0;
  for (std::size_t i = 0; i < u.size();) {
    std::size_t j = i;
    while (j < u.size() && t.g[j] == t.g[i]) ++j;
    std::uint64_t lo = std::max(u[j - 1] + 1, last);
    std::uint64_t h = std::min(lo + rng() % (h_slack + 1), ceiling - 1);
    for (std::size_t k = i; k < j; ++k) t.h.push_back(h);
    last = h;
    i = j;
  }
  t.tag = key_tag(spec, Ordinal(tag), t.g);
  return t;
}

ModelElement random_element(GroupMode mode, const Sort& u, const std::vector<GeneratorKey>& keys, std::mt19937_64& rng,
                            std::size_t max_len) {
  GroupElement w = GroupElement::identity(mode);
  if (!keys.empty()) {
    const std::size_t len = rng() % (max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
      const GeneratorKey& t = keys[rng() % keys.size()];
      w = gmul(w, GroupElement::generator(mode, t.generator(), rng() % 2 ? 1 : -1));
    }
  }
  return {u, w};
}

RandomAdversary::RandomAdversary(const Model& model, std::uint64_t mu, std::uint64_t seed, std::size_t max_sort_size)
    : model_(model), mu_(mu), rng_(seed), max_sort_size_(max_sort_size) {}

Sort RandomAdversary::random_sort() {
  const std::uint64_t n = model_.spec().N;
  const std::size_t size = 1 + rng_() % std::min<std::uint64_t>(max_sort_size_, n);
  std::vector<std::uint64_t> v;
  while (v.size() < size) {
    v.push_back(rng_() % n);
    v = make_sort(std::move(v));
  }
  return v;
}

ModelElement RandomAdversary::element_on(const Sort& u) {
  std::vector<GeneratorKey> keys;
  const std::size_t count = 1 + rng_() % 3;
  for (std::size_t i = 0; i < count; ++i) keys.push_back(random_key(model_.spec(), u, rng_));
  return random_element(model_.mode(), u, keys, rng_);
}

std::optional<ModelDemand> RandomAdversary::demand(const ModelMap& current, const Ordinal& /*position*/) {
  ModelDemand d;
  const std::size_t size = 1 + rng_() % mu_;
  std::vector<ModelElement> mapped_sorts;
  for (const auto& [x, y] : current) mapped_sorts.push_back(x);
  for (std::size_t i = 0; i < size; ++i) {
    // Reuse a sort already in play half of the time, so Q links between demands show up.
    Sort u = (!mapped_sorts.empty() && rng_() % 2 == 0) ? mapped_sorts[rng_() % mapped_sorts.size()].sort : random_sort();
    (rng_() % 2 ? d.left : d.right).push_back(element_on(u));
  }
  return d;
}

BoundaryAdversary::BoundaryAdversary(const Model& model, std::uint64_t mu, std::uint64_t seed, StateView view)
    : RandomAdversary(model, mu, seed, 3), view_(std::move(view)) {}

std::optional<ModelDemand> BoundaryAdversary::demand(const ModelMap& /*current*/, const Ordinal& /*position*/) {
  const IsoState& st = view_();
  const ParameterSpec& spec = model_.spec();
  const std::uint64_t n = spec.N;
  const std::uint64_t gs = st.gamma_star;
  const std::uint64_t edge = std::min<std::uint64_t>(st.g.domain(), n - 1);

  std::vector<Sort> sorts;
  auto add = [&](std::vector<std::uint64_t> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [&](std::uint64_t x) { return x >= n; }), v.end());
    if (!v.empty()) sorts.push_back(make_sort(std::move(v)));
  };
  add({gs - 1, gs});
  add({gs - 1, edge});
  add({edge == 0 ? 0 : edge - 1, edge});
  add({gs, edge});
  add(st.s_star);
  {
    std::vector<std::uint64_t> sup = st.s_star;
    sup.push_back(edge);
    add(sup);
  }
  add({0, gs, n - 1});

  // Generators of the next family, guessed by extending g with max + 1.
  TaggedMonotone guess = st.g;
  const Ordinal next_value = st.g.max_value().successor();
  if (next_value < guess.tag) guess.values.resize(std::max<std::uint64_t>(guess.domain(), n) + 1, next_value);

  ModelDemand d;
  const std::size_t size = 1 + rng_() % mu_;
  for (std::size_t i = 0; i < size; ++i) {
    const Sort& u = sorts[rng_() % sorts.size()];
    std::vector<GeneratorKey> keys;
    for (const TaggedMonotone* g : {&st.g, static_cast<const TaggedMonotone*>(&guess)}) {
      if (auto t = key_for(spec, *g, u)) keys.push_back(*t);
    }
    keys.push_back(random_key(spec, u, rng_));
    (rng_() % 2 ? d.left : d.right).push_back(random_element(spec.mode, u, keys, rng_, 2));
  }
  return d;
}

ReplayAdversary::ReplayAdversary(const ModelTranscript& t) {
  for (const auto& r : t.rounds) {
    if (r.kind == RoundKind::move) moves_.push_back({r.demand_left, r.demand_right});
  }
}

std::optional<ModelDemand> ReplayAdversary::demand(const ModelMap& /*current*/, const Ordinal& /*position*/) {
  if (next_ >= moves_.size()) return std::nullopt;
  return moves_[next_++];
}

std::optional<ModelDemand> InteractiveAdversary::demand(const ModelMap& current, const Ordinal& position) {
  out_ << "position " << position.to_string() << ", map:\n";
  for (const auto& [x, y] : current) out_ << "  " << x.to_string() << " -> " << y.to_string() << "\n";
  out_ << "demand (L <elem> | R <elem> | go | resign)\n" << std::flush;
  ModelDemand d;
  std::string line;
  while (std::getline(in_, line)) {
    std::istringstream words(line);
    std::string cmd;
    words >> cmd;
    if (cmd.empty()) continue;
    if (cmd == "resign") return std::nullopt;
    if (cmd == "go") return d;
    if (cmd != "L" && cmd != "R") {
      out_ << "unknown command '" << cmd << "'\n" << std::flush;
      continue;
    }
    std::string rest;
    std::getline(words, rest);
    try {
      ModelElement e = ModelElement::parse(rest, mode_);
      (cmd == "L" ? d.left : d.right).push_back(std::move(e));
    } catch (const std::exception& e) {
      out_ << "error: " << e.what() << "\n" << std::flush;
    }
  }
  return std::nullopt;
}

std::string to_string(AdversaryKind k) { return k == AdversaryKind::random ? "random" : "boundary"; }

AdversaryKind adversary_kind_from_string(const std::string& text) {
  if (text == "random") return AdversaryKind::random;
  if (text == "boundary") return AdversaryKind::boundary;
  throw std::invalid_argument("unknown adversary '" + text + "'");
}

}  // namespace efeq
