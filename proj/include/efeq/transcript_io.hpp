#ifndef EFEQ_TRANSCRIPT_IO_HPP
#define EFEQ_TRANSCRIPT_IO_HPP

#include "efeq/game.hpp"
#include "json.hpp"

namespace efeq {

/// JSON encoding of game elements; specialised per element type.
template <class E>
struct ElementCodec;

template <>
struct ElementCodec<ElementId> {
  nlohmann::json encode(ElementId e) const { return e; }
  ElementId decode(const nlohmann::json& j) const { return j.get<ElementId>(); }
};

template <class E, class Codec = ElementCodec<E>>
nlohmann::json map_to_json(const BasicPartialMap<E>& m, const Codec& codec = {}) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [a, b] : m) out.push_back({codec.encode(a), codec.encode(b)});
  return out;
}

template <class E, class Codec = ElementCodec<E>>
BasicPartialMap<E> map_from_json(const nlohmann::json& j, const Codec& codec = {}) {
  BasicPartialMap<E> m;
  for (const auto& pair : j) m.insert(codec.decode(pair.at(0)), codec.decode(pair.at(1)));
  return m;
}

template <class E, class Codec = ElementCodec<E>>
nlohmann::json transcript_to_json(const BasicTranscript<E>& t, const Codec& codec = {}) {
  using nlohmann::json;
  json rounds = json::array();
  for (const auto& r : t.rounds) {
    json left = json::array();
    json right = json::array();
    for (const E& e : r.demand_left) left.push_back(codec.encode(e));
    for (const E& e : r.demand_right) right.push_back(codec.encode(e));
    rounds.push_back({{"index", r.index.to_string()},
                      {"kind", r.kind == RoundKind::move ? "move" : "limit"},
                      {"demand_left", left},
                      {"demand_right", right},
                      {"map", map_to_json(r.map_after, codec)}});
  }
  return {{"seed", map_to_json(t.seed, codec)}, {"rounds", rounds}, {"outcome", to_string(t.outcome)}, {"note", t.note}};
}

template <class E, class Codec = ElementCodec<E>>
BasicTranscript<E> transcript_from_json(const nlohmann::json& j, const Codec& codec = {}) {
  try {
    BasicTranscript<E> t;
    t.seed = map_from_json<E>(j.at("seed"), codec);
    for (const auto& r : j.at("rounds")) {
      BasicRound<E> round;
      round.index = Ordinal::parse(r.at("index").get<std::string>());
      const std::string kind = r.at("kind").get<std::string>();
      if (kind != "move" && kind != "limit") throw GameError("unknown round kind '" + kind + "'");
      round.kind = kind == "move" ? RoundKind::move : RoundKind::limit;
      for (const auto& e : r.at("demand_left")) round.demand_left.push_back(codec.decode(e));
      for (const auto& e : r.at("demand_right")) round.demand_right.push_back(codec.decode(e));
      round.map_after = map_from_json<E>(r.at("map"), codec);
      t.rounds.push_back(std::move(round));
    }
    t.outcome = play_outcome_from_string(j.value("outcome", std::string("completed")));
    t.note = j.value("note", std::string());
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw GameError(std::string("malformed transcript: ") + e.what());
  }
}

}  // namespace efeq

#endif  // EFEQ_TRANSCRIPT_IO_HPP
