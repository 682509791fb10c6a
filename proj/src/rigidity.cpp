#include <algorithm>
#include <map>

#include "efeq/strategy.hpp"

namespace efeq {

std::optional<Family> nontrivial_family_probe(const Model& model, const std::vector<Sort>& pool,
                                              std::size_t word_bound) {
  const ParameterSpec& spec = model.spec();
  if (pool.empty() || word_bound == 0) return std::nullopt;
  if (!(Ordinal(1) < spec.alpha_star)) return std::nullopt;

  Sort top;
  for (const Sort& s : pool) {
    if (s.empty() || s.back() >= spec.N) return std::nullopt;
    top.insert(top.end(), s.begin(), s.end());
  }
  top = make_sort(top);

  // One generator on the union; its projections agree on every comparable pair.
  GeneratorKey t;
  t.u = top;
  t.g.assign(top.size(), Ordinal());
  t.h.assign(top.size(), top.back() + 1);
  t.tag = key_tag(spec, Ordinal(1), t.g);
  if (!j_membership(spec, t)) return std::nullopt;

  Family c;
  for (const Sort& s : pool) c.entries.emplace(s, GroupElement::generator(spec.mode, project(s, t).generator()));
  if (!model.membership_C(c)) return std::nullopt;
  return c;
}

std::uint64_t StepFunction::operator()(std::uint64_t x) const {
  std::uint64_t v = 0;
  for (const auto& [start, value] : steps) {
    if (start > x) break;
    v = value;
  }
  return v;
}

void StepFunction::validate(std::uint64_t n, const std::string& what) const {
  if (steps.empty() || steps.front().first != 0) throw StrategyError(what + ": presentation does not start at 0");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].first >= n) throw StrategyError(what + ": step starts outside [0, N)");
    if (i > 0 && steps[i].first <= steps[i - 1].first) throw StrategyError(what + ": step starts do not increase");
    if (i > 0 && steps[i].second < steps[i - 1].second) throw StrategyError(what + ": values decrease");
  }
}

namespace {

nlohmann::json steps_to_json(const StepFunction& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [start, value] : f.steps) out.push_back({start, value});
  return out;
}

StepFunction steps_from_json(const nlohmann::json& j) {
  StepFunction f;
  for (const auto& p : j) f.steps.emplace_back(p.at(0).get<std::uint64_t>(), p.at(1).get<std::uint64_t>());
  return f;
}

// Last point of each constant piece; h(x) > x everywhere iff it holds there.
bool h_exceeds_identity(const StepFunction& h, std::uint64_t n) {
  for (std::size_t i = 0; i < h.steps.size(); ++i) {
    const std::uint64_t end = i + 1 < h.steps.size() ? h.steps[i + 1].first - 1 : n - 1;
    if (h.steps[i].second <= end) return false;
  }
  return true;
}

}  // namespace

nlohmann::json candidate_to_json(const ObstructionCandidate& c) {
  nlohmann::json letters = nlohmann::json::array();
  for (const auto& l : c.letters) {
    letters.push_back({{"g", steps_to_json(l.g)}, {"h", steps_to_json(l.h)}, {"alpha", l.alpha.to_string()}, {"sign", l.sign}});
  }
  return {{"nStar", c.n_star}, {"uStar", c.u_star}, {"letters", letters}};
}

ObstructionCandidate candidate_from_json(const nlohmann::json& j) {
  ObstructionCandidate c;
  try {
    c.n_star = j.at("nStar").get<std::uint64_t>();
    c.u_star = make_sort(j.at("uStar").get<std::vector<std::uint64_t>>());
    for (const auto& l : j.at("letters")) {
      ObstructionLetter letter;
      letter.g = steps_from_json(l.at("g"));
      letter.h = steps_from_json(l.at("h"));
      const auto& a = l.at("alpha");
      letter.alpha = a.is_string() ? Ordinal::parse(a.get<std::string>()) : Ordinal(a.get<std::uint64_t>());
      letter.sign = l.value("sign", 1);
      c.letters.push_back(std::move(letter));
    }
  } catch (const nlohmann::json::exception& e) {
    throw StrategyError(std::string("malformed candidate: ") + e.what());
  }
  return c;
}

GroupElement candidate_word(const ParameterSpec& spec, const ObstructionCandidate& c, const Sort& u) {
  GroupElement w = GroupElement::identity(spec.mode);
  for (const auto& l : c.letters) {
    GeneratorKey t;
    t.u = u;
    t.tag = l.alpha;
    for (std::uint64_t beta : u) {
      t.g.emplace_back(l.g(beta));
      t.h.push_back(l.h(beta));
    }
    w = gmul(w, GroupElement::generator(spec.mode, t.generator(), l.sign));
  }
  return w;
}

nlohmann::json obstruction_trace(const ParameterSpec& spec, const ObstructionCandidate& cand) {
  const std::uint64_t n = spec.N;
  if (cand.n_star == 0) throw StrategyError("nStar must be positive: a trivial family needs no obstruction");
  if (cand.letters.size() != cand.n_star) throw StrategyError("candidate must have exactly nStar letters");
  if (cand.u_star.empty() || cand.u_star.back() >= n) throw StrategyError("uStar must be a nonempty subset of [0, N)");
  for (std::size_t l = 0; l < cand.letters.size(); ++l) {
    const auto& letter = cand.letters[l];
    const std::string name = "letter " + std::to_string(l);
    letter.g.validate(n, name + " g");
    letter.h.validate(n, name + " h");
    if (letter.sign != 1 && letter.sign != -1) throw StrategyError(name + ": sign must be +1 or -1");
    if (!h_exceeds_identity(letter.h, n)) throw StrategyError(name + ": h(beta) > beta fails");
    if (!(Ordinal(letter.g.steps.back().second) < letter.alpha)) throw StrategyError(name + ": g reaches alpha");
  }

  // (1) least witness of each value in the range.
  std::vector<std::map<std::uint64_t, std::uint64_t>> witness(cand.letters.size());
  nlohmann::json witnesses = nlohmann::json::array();
  std::uint64_t need = cand.u_star.back() + 1;
  std::string binding = "sup(uStar)";
  for (std::size_t l = 0; l < cand.letters.size(); ++l) {
    const auto& letter = cand.letters[l];
    for (const auto& [start, value] : letter.g.steps) {
      if (!witness[l].emplace(value, start).second) continue;
      const std::uint64_t hb = letter.h(start);
      witnesses.push_back({{"letter", l}, {"value", value}, {"beta", start}, {"h", hb}});
      if (hb + 1 > need) {
        need = hb + 1;
        binding = "h of letter " + std::to_string(l) + " at " + std::to_string(start);
      }
    }
  }

  nlohmann::json out;
  out["N"] = n;
  out["nStar"] = cand.n_star;
  out["uStar"] = cand.u_star;
  out["witnesses"] = witnesses;

  // (2) least closure point above uStar, the witnesses and their h-images.
  if (need >= n) {
    out["verdict"] = "NO-CLOSURE-POINT";
    out["deltaStar"] = nullptr;
    out["required"] = need;
    out["binding"] = binding;
    return out;
  }
  const std::uint64_t delta = need;
  out["deltaStar"] = delta;

  // (3) every value g(delta*) could take is refuted.
  nlohmann::json chain = nlohmann::json::array();
  bool verified = true;
  for (std::size_t l = 0; l < cand.letters.size(); ++l) {
    const auto& letter = cand.letters[l];
    for (const auto& [i, beta] : witness[l]) {
      const std::uint64_t hb = letter.h(beta);
      const bool ok = letter.g(beta) == i && beta < hb && hb < delta;
      verified = verified && ok;
      chain.push_back({{"letter", l},
                       {"value", i},
                       {"beta", beta},
                       {"h", hb},
                       {"holds", ok},
                       {"chain", std::to_string(i) + " = g(" + std::to_string(beta) + ") < g(" + std::to_string(hb) +
                                     ") <= g(" + std::to_string(delta) + ") = " + std::to_string(i)}});
    }
  }
  out["chain"] = chain;

  Sort wide = cand.u_star;
  wide.push_back(delta);
  wide = make_sort(wide);
  const std::size_t n_small = candidate_word(spec, cand, cand.u_star).length();
  const std::size_t n_wide = candidate_word(spec, cand, wide).length();
  out["wordLengths"] = nlohmann::json::array(
      {{{"u", cand.u_star}, {"n", n_small}}, {{"u", wide}, {"n", n_wide}}});
  out["monotone"] = n_small <= n_wide;
  out["verdict"] = verified ? "CONTRADICTION" : "UNVERIFIED";
  return out;
}

}  // namespace efeq
