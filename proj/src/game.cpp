#include "efeq/game.hpp"

namespace efeq {

std::string to_string(PlayOutcome outcome) {
  switch (outcome) {
    case PlayOutcome::completed: return "completed";
    case PlayOutcome::prefix: return "prefix";
    case PlayOutcome::iso_stuck: return "iso_stuck";
    case PlayOutcome::ais_resigned: return "incomplete";
  }
  return "completed";
}

PlayOutcome play_outcome_from_string(const std::string& text) {
  if (text == "completed") return PlayOutcome::completed;
  if (text == "prefix") return PlayOutcome::prefix;
  if (text == "iso_stuck") return PlayOutcome::iso_stuck;
  if (text == "incomplete") return PlayOutcome::ais_resigned;
  throw GameError("unknown play outcome '" + text + "'");
}

}  // namespace efeq
