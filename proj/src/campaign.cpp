#include "efeq/campaign.hpp"

#include <atomic>
#include <memory>
#include <thread>

#include "efeq/transcript_io.hpp"

namespace efeq {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GameRecord run_game(const Model& model, const GameOptions& options) {
  GameRecord rec;
  rec.alpha = options.alpha;
  rec.seed = options.seed;
  InitResult init = init_state(model.spec(), options.s_star, options.alpha);
  rec.c1 = init.c1;
  rec.c2 = init.c2;

  SymbolicArena arena(model, init.c1, init.c2);
  ModelGameConfig cfg;
  cfg.length = symbolic_game_length(options.alpha);
  cfg.mu = options.mu;
  cfg.seed = init.state.map;

  CanonicalIsoPlayer iso(model, init.state, options.respond);
  std::unique_ptr<AisPlayer<ModelElement>> ais;
  if (options.adversary == AdversaryKind::random) {
    ais = std::make_unique<RandomAdversary>(model, options.mu, options.seed);
  } else {
    ais = std::make_unique<BoundaryAdversary>(model, options.mu, options.seed,
                                              [&iso]() -> const IsoState& { return iso.state(); });
  }

  rec.transcript = play(arena, cfg, iso, *ais);
  rec.stuck = rec.transcript.outcome == PlayOutcome::iso_stuck;
  if (rec.stuck) rec.failure = rec.transcript.note + (iso.last_failure().empty() ? "" : " (" + iso.last_failure() + ")");

  const VerifyResult v = verify_transcript(arena, cfg, rec.transcript);
  rec.verified = v.ok;
  rec.maps_checked = rec.transcript.rounds.size() + 1;
  if (!v.ok && rec.failure.empty()) rec.failure = "round " + std::to_string(v.round) + ": " + v.failure;

  rec.anchor_ok = true;
  for (const IsoState& st : iso.chain()) {
    if (auto why = check_state(model, st)) {
      rec.anchor_ok = false;
      if (rec.failure.empty()) rec.failure = "round " + st.round.to_string() + ": " + *why;
      break;
    }
  }
  for (const auto& r : rec.transcript.rounds) {
    const ModelElement* image = r.map_after.image_of(init.c1);
    if (image == nullptr || !(*image == init.c2)) {
      rec.anchor_ok = false;
      if (rec.failure.empty()) rec.failure = "c1 lost its image at " + r.index.to_string();
    }
  }
  return rec;
}

nlohmann::json game_to_json(const GameRecord& g, GroupMode mode) {
  ElementCodec<ModelElement> codec{mode};
  return {{"alpha", g.alpha.to_string()},
          {"seed", g.seed},
          {"c1", g.c1.to_string()},
          {"c2", g.c2.to_string()},
          {"verified", g.verified},
          {"stuck", g.stuck},
          {"anchor", g.anchor_ok},
          {"failure", g.failure},
          {"transcript", transcript_to_json(g.transcript, codec)}};
}

nlohmann::json campaign_config_to_json(const CampaignConfig& c) {
  nlohmann::json alphas = nlohmann::json::array();
  for (const Ordinal& a : c.alphas) alphas.push_back(a.to_string());
  nlohmann::json adv = nlohmann::json::array();
  for (AdversaryKind k : c.adversaries) adv.push_back(to_string(k));
  return {{"alphas", alphas}, {"mu", c.mu},     {"adversaries", adv}, {"seed", c.seed},
          {"games", c.games}, {"sStar", c.s_star}};
}

CampaignConfig campaign_config_from_json(const nlohmann::json& j) {
  CampaignConfig c;
  if (j.contains("alphas")) {
    c.alphas.clear();
    for (const auto& a : j.at("alphas")) {
      c.alphas.push_back(a.is_string() ? Ordinal::parse(a.get<std::string>()) : Ordinal(a.get<std::uint64_t>()));
    }
  }
  if (j.contains("adversaries")) {
    c.adversaries.clear();
    for (const auto& a : j.at("adversaries")) c.adversaries.push_back(adversary_kind_from_string(a.get<std::string>()));
  }
  c.mu = j.value("mu", c.mu);
  c.seed = j.value("seed", c.seed);
  c.games = j.value("games", c.games);
  c.threads = j.value("threads", c.threads);
  if (j.contains("sStar")) c.s_star = make_sort(j.at("sStar").get<std::vector<std::uint64_t>>());
  return c;
}

nlohmann::json CampaignResult::to_json(GroupMode mode) const {
  nlohmann::json out = {{"games", games},
                        {"passed", passed},
                        {"stuck", stuck},
                        {"verifyFailures", verify_failures},
                        {"anchorFailures", anchor_failures},
                        {"mapsChecked", maps_checked},
                        {"singlePair", single_pair},
                        {"failures", failures}};
  if (first_failure) out["firstFailure"] = game_to_json(*first_failure, mode);
  return out;
}

CampaignResult run_campaign(const Model& model, const CampaignConfig& config) {
  std::vector<GameOptions> jobs;
  for (const Ordinal& alpha : config.alphas) {
    for (AdversaryKind kind : config.adversaries) {
      for (std::size_t i = 0; i < config.games; ++i) {
        GameOptions o;
        o.alpha = alpha;
        o.mu = config.mu;
        o.adversary = kind;
        o.s_star = config.s_star;
        o.seed = split_seed(config.seed, jobs.size());
        jobs.push_back(o);
      }
    }
  }

  std::vector<std::optional<GameRecord>> records(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        records[i] = run_game(model, jobs[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  CampaignResult out;
  std::optional<std::pair<ModelElement, ModelElement>> pair;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    ++out.games;
    if (!records[i]) {
      if (out.failures.size() < 8) out.failures.push_back("game " + std::to_string(i) + " threw: " + errors[i]);
      continue;
    }
    const GameRecord& r = *records[i];
    if (!pair) pair.emplace(r.c1, r.c2);
    if (!(pair->first == r.c1) || !(pair->second == r.c2)) out.single_pair = false;
    out.maps_checked += r.maps_checked;
    if (r.stuck) ++out.stuck;
    if (!r.verified) ++out.verify_failures;
    if (!r.anchor_ok) ++out.anchor_failures;
    if (r.passed()) {
      ++out.passed;
    } else {
      if (out.failures.size() < 8) {
        out.failures.push_back("game " + std::to_string(i) + " (alpha " + r.alpha.to_string() + "): " + r.failure);
      }
      if (!out.first_failure) out.first_failure = r;
    }
    if (config.keep_records) out.records.push_back(r);
  }
  return out;
}

}  // namespace efeq
