#ifndef EFEQ_CAMPAIGN_HPP
#define EFEQ_CAMPAIGN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "efeq/adversary.hpp"
#include "efeq/strategy.hpp"

namespace efeq {

/// splitmix64 step applied to seed + index; independent streams per game.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

struct GameOptions {
  Ordinal alpha = 3;
  std::uint64_t mu = 4;
  AdversaryKind adversary = AdversaryKind::random;
  std::uint64_t seed = 0;
  Sort s_star = {0, 1};
  RespondOptions respond;
};

struct GameRecord {
  Ordinal alpha;
  std::uint64_t seed = 0;
  ModelElement c1;
  ModelElement c2;
  ModelTranscript transcript;
  bool verified = false;
  bool stuck = false;
  bool anchor_ok = false;
  std::size_t maps_checked = 0;
  std::string failure;
  bool passed() const { return verified && !stuck && anchor_ok; }
};

/// One game of the canonical strategy against a seeded adversary, with the
/// transcript verified and the state invariants checked after every move.
GameRecord run_game(const Model& model, const GameOptions& options);

nlohmann::json game_to_json(const GameRecord& g, GroupMode mode);

struct CampaignConfig {
  std::vector<Ordinal> alphas = {1, 2, 3, 4};
  std::uint64_t mu = 4;
  std::vector<AdversaryKind> adversaries = {AdversaryKind::random, AdversaryKind::boundary};
  std::uint64_t seed = 1;
  std::size_t games = 100;  // per alpha and adversary
  std::size_t threads = 0;  // 0: hardware concurrency
  Sort s_star = {0, 1};
  bool keep_records = false;
};

nlohmann::json campaign_config_to_json(const CampaignConfig& c);
CampaignConfig campaign_config_from_json(const nlohmann::json& j);

struct CampaignResult {
  std::size_t games = 0;
  std::size_t passed = 0;
  std::size_t stuck = 0;
  std::size_t verify_failures = 0;
  std::size_t anchor_failures = 0;
  std::size_t maps_checked = 0;
  /// Whether every game used the same (c1, c2).
  bool single_pair = true;
  std::vector<std::string> failures;  // first few
  std::optional<GameRecord> first_failure;
  std::vector<GameRecord> records;  // filled when keep_records is set
  bool all_pass() const { return passed == games && games > 0; }
  nlohmann::json to_json(GroupMode mode) const;
};

CampaignResult run_campaign(const Model& model, const CampaignConfig& config);

}  // namespace efeq

#endif  // EFEQ_CAMPAIGN_HPP
