#ifndef EFEQ_ADVERSARY_HPP
#define EFEQ_ADVERSARY_HPP

#include <functional>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "efeq/game.hpp"
#include "efeq/model.hpp"
#include "efeq/strategy.hpp"

namespace efeq {

using ModelDemand = BasicDemand<ModelElement>;
using ModelTranscript = BasicTranscript<ModelElement>;
using ModelGameConfig = BasicGameConfig<ModelElement>;

/// Random key of J on sort u: tag in [1, tag_cap] (and below alphaStar),
/// g below the tag, h within `h_slack` of max(u).
GeneratorKey random_key(const ParameterSpec& spec, const Sort& u, std::mt19937_64& rng, std::uint64_t tag_cap = 4,
                        std::uint64_t h_slack = 4);

/// Random element of sort u: a reduced word of at most `max_len` letters over `keys`.
ModelElement random_element(GroupMode mode, const Sort& u, const std::vector<GeneratorKey>& keys, std::mt19937_64& rng,
                            std::size_t max_len = 3);

class RandomAdversary : public AisPlayer<ModelElement> {
 public:
  RandomAdversary(const Model& model, std::uint64_t mu, std::uint64_t seed, std::size_t max_sort_size = 3);
  std::optional<ModelDemand> demand(const ModelMap& current, const Ordinal& position) override;

 protected:
  ModelElement element_on(const Sort& u);
  Sort random_sort();

  const Model& model_;
  std::uint64_t mu_;
  std::mt19937_64 rng_;
  std::size_t max_sort_size_;
};

/// Demands sorts straddling gamma* and the current domain edge, with words
/// built from the generators the strategy is about to use.
class BoundaryAdversary : public RandomAdversary {
 public:
  using StateView = std::function<const IsoState&()>;
  BoundaryAdversary(const Model& model, std::uint64_t mu, std::uint64_t seed, StateView view);
  std::optional<ModelDemand> demand(const ModelMap& current, const Ordinal& position) override;

 private:
  StateView view_;
};

/// Replays the demands of a recorded transcript, then resigns.
class ReplayAdversary : public AisPlayer<ModelElement> {
 public:
  explicit ReplayAdversary(const ModelTranscript& t);
  std::optional<ModelDemand> demand(const ModelMap& current, const Ordinal& position) override;

 private:
  std::vector<ModelDemand> moves_;
  std::size_t next_ = 0;
};

/// Reads demands from a stream: `L <element>` and `R <element>` lines, then
/// `go`; `resign` ends the game.
class InteractiveAdversary : public AisPlayer<ModelElement> {
 public:
  InteractiveAdversary(GroupMode mode, std::istream& in, std::ostream& out) : mode_(mode), in_(in), out_(out) {}
  std::optional<ModelDemand> demand(const ModelMap& current, const Ordinal& position) override;

 private:
  GroupMode mode_;
  std::istream& in_;
  std::ostream& out_;
};

enum class AdversaryKind { random, boundary };
std::string to_string(AdversaryKind k);
AdversaryKind adversary_kind_from_string(const std::string& text);

}  // namespace efeq

#endif  // EFEQ_ADVERSARY_HPP
