#include "efeq/solver.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace efeq {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::iso_wins: return "ISO";
    case SolveStatus::ais_wins: return "AIS";
    case SolveStatus::budget_exceeded: return "budget_exceeded";
  }
  return "budget_exceeded";
}

namespace detail {

namespace {

struct BudgetExceeded {};

constexpr std::int8_t kUnmapped = -1;

// image[a] = b, or kUnmapped
using Images = std::vector<std::int8_t>;

}  // namespace

class SolverCore {
 public:
  SolverCore(FiniteStructure left, FiniteStructure right, std::uint64_t mu, std::uint64_t budget,
             bool canonical)
      : left_(std::move(left)), right_(std::move(right)), mu_(mu), budget_(budget) {
    if (left_.size() > 127 || right_.size() > 127) {
      throw GameError("solver supports at most 127 elements per side");
    }
    if (canonical) {
      constexpr std::size_t kLimit = 512;
      left_aut_ = automorphism_images(left_, kLimit);
      right_aut_ = automorphism_images(right_, kLimit);
      if (left_aut_.size() >= kLimit || right_aut_.size() >= kLimit) {
        left_aut_.clear();
        right_aut_.clear();
      }
    }
  }

  std::uint64_t nodes() const { return nodes_; }

  Images images_of(const PartialMap& m) const {
    Images img(static_cast<std::size_t>(left_.size()), kUnmapped);
    for (const auto& [a, b] : m) img[static_cast<std::size_t>(a)] = static_cast<std::int8_t>(b);
    return img;
  }

  PartialMap map_of(const Images& img) const {
    PartialMap m;
    for (std::size_t a = 0; a < img.size(); ++a) {
      if (img[a] != kUnmapped) m.insert(static_cast<ElementId>(a), img[a]);
    }
    return m;
  }

  bool legal(const Images& img) const { return check_partial_isomorphism(left_, right_, map_of(img)); }

  bool wins(const Images& img, int rounds_left) {
    if (rounds_left == 0) return true;
    const std::string key = memo_key(img, rounds_left);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++nodes_ > budget_) throw BudgetExceeded{};

    bool result = true;
    for (const Demand& d : maximal_demands(img)) {
      if (!first_winning_extension(img, d, rounds_left)) {
        result = false;
        break;
      }
    }
    memo_.emplace(key, result);
    return result;
  }

  /// Demands of min(mu, #uncovered) uncovered elements in lexicographic order;
  /// left elements precede right elements.
  std::vector<Demand> maximal_demands(const Images& img) const {
    std::vector<ElementId> free_left;
    std::vector<ElementId> free_right;
    std::vector<bool> covered(static_cast<std::size_t>(right_.size()), false);
    for (std::size_t a = 0; a < img.size(); ++a) {
      if (img[a] == kUnmapped) {
        free_left.push_back(static_cast<ElementId>(a));
      } else {
        covered[static_cast<std::size_t>(img[a])] = true;
      }
    }
    for (ElementId b = 0; b < right_.size(); ++b) {
      if (!covered[static_cast<std::size_t>(b)]) free_right.push_back(b);
    }
    const std::size_t total = free_left.size() + free_right.size();
    const std::size_t m = static_cast<std::size_t>(std::min<std::uint64_t>(mu_, total));
    std::vector<Demand> out;
    if (m == 0) return out;
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    while (true) {
      Demand d;
      for (std::size_t i : pick) {
        if (i < free_left.size()) {
          d.left.push_back(free_left[i]);
        } else {
          d.right.push_back(free_right[i - free_left.size()]);
        }
      }
      out.push_back(std::move(d));
      std::size_t i = m;
      while (i > 0 && pick[i - 1] == total - m + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t k = i; k < m; ++k) pick[k] = pick[k - 1] + 1;
    }
    return out;
  }

  /// All minimal legal extensions covering the demand, lexicographic order.
  std::vector<Images> extensions(const Images& img, const Demand& d) const {
    std::vector<ElementId> need_left;
    std::vector<ElementId> need_right;
    for (ElementId a : d.left) {
      if (img[static_cast<std::size_t>(a)] == kUnmapped &&
          std::find(need_left.begin(), need_left.end(), a) == need_left.end()) {
        need_left.push_back(a);
      }
    }
    for (ElementId b : d.right) {
      if (std::find(img.begin(), img.end(), static_cast<std::int8_t>(b)) == img.end() &&
          std::find(need_right.begin(), need_right.end(), b) == need_right.end()) {
        need_right.push_back(b);
      }
    }
    std::sort(need_left.begin(), need_left.end());
    std::sort(need_right.begin(), need_right.end());
    std::vector<Images> out;
    Images work = img;
    extend_left(work, need_left, 0, need_right, out);
    return out;
  }

  std::optional<Images> first_winning_extension(const Images& img, const Demand& d, int rounds_left) {
    for (const Images& next : extensions(img, d)) {
      if (wins(next, rounds_left - 1)) return next;
    }
    return std::nullopt;
  }

  std::mutex& mutex() { return mutex_; }

  struct Root {
    Images images;
    int rounds = 0;
  };
  void set_root(Images images, int rounds) { root_ = {std::move(images), rounds}; }
  const Root& root() const { return root_; }
  // Strategy queries after a completed solve are not budgeted.
  void lift_budget() { budget_ = UINT64_MAX; }

 private:
  void extend_left(Images& work, const std::vector<ElementId>& need_left, std::size_t i,
                   const std::vector<ElementId>& need_right, std::vector<Images>& out) const {
    if (i == need_left.size()) {
      extend_right(work, need_right, 0, out);
      return;
    }
    const auto a = static_cast<std::size_t>(need_left[i]);
    for (ElementId b = 0; b < right_.size(); ++b) {
      if (std::find(work.begin(), work.end(), static_cast<std::int8_t>(b)) != work.end()) continue;
      work[a] = static_cast<std::int8_t>(b);
      if (legal(work)) extend_left(work, need_left, i + 1, need_right, out);
      work[a] = kUnmapped;
    }
  }

  void extend_right(Images& work, const std::vector<ElementId>& need_right, std::size_t i,
                    std::vector<Images>& out) const {
    if (i == need_right.size()) {
      out.push_back(work);
      return;
    }
    const auto b = static_cast<std::int8_t>(need_right[i]);
    if (std::find(work.begin(), work.end(), b) != work.end()) {
      extend_right(work, need_right, i + 1, out);
      return;
    }
    for (std::size_t a = 0; a < work.size(); ++a) {
      if (work[a] != kUnmapped) continue;
      work[a] = b;
      if (legal(work)) extend_right(work, need_right, i + 1, out);
      work[a] = kUnmapped;
    }
  }

  std::string memo_key(const Images& img, int rounds_left) const {
    std::string key(1, static_cast<char>(rounds_left));
    if (left_aut_.empty()) {
      key.append(img.begin(), img.end());
      return key;
    }
    Images best;
    Images moved(img.size());
    for (const auto& sigma : left_aut_) {
      for (const auto& tau : right_aut_) {
        std::fill(moved.begin(), moved.end(), kUnmapped);
        for (std::size_t a = 0; a < img.size(); ++a) {
          if (img[a] != kUnmapped) {
            moved[static_cast<std::size_t>(sigma[a])] =
                static_cast<std::int8_t>(tau[static_cast<std::size_t>(img[a])]);
          }
        }
        if (best.empty() || moved < best) best = moved;
      }
    }
    key.append(best.begin(), best.end());
    return key;
  }

  FiniteStructure left_;
  FiniteStructure right_;
  std::uint64_t mu_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<ElementId>> left_aut_;
  std::vector<std::vector<ElementId>> right_aut_;
  std::unordered_map<std::string, bool> memo_;
  std::mutex mutex_;
  Root root_;

};

}  // namespace detail

namespace {

using detail::BudgetExceeded;
using detail::Images;

int finite_rounds(const Ordinal& length) {
  auto n = length.as_natural();
  if (!n) throw GameError("the solver needs a finite game length, got " + length.to_string());
  if (*n > 100) throw GameError("game length too large for the solver");
  return static_cast<int>(*n);
}

}  // namespace

bool WinningStrategy::iso_wins(const PartialMap& position, int rounds_left) const {
  std::lock_guard lock(core_->mutex());
  return core_->wins(core_->images_of(position), rounds_left);
}

std::optional<PartialMap> WinningStrategy::iso_response(const PartialMap& position, int rounds_left,
                                                        const Demand& demand) const {
  if (rounds_left <= 0) return std::nullopt;
  std::lock_guard lock(core_->mutex());
  auto next = core_->first_winning_extension(core_->images_of(position), demand, rounds_left);
  if (!next) return std::nullopt;
  return core_->map_of(*next);
}

std::optional<Demand> WinningStrategy::ais_demand(const PartialMap& position, int rounds_left) const {
  if (rounds_left <= 0) return std::nullopt;
  std::lock_guard lock(core_->mutex());
  const Images img = core_->images_of(position);
  for (const Demand& d : core_->maximal_demands(img)) {
    if (!core_->first_winning_extension(img, d, rounds_left)) return d;
  }
  return std::nullopt;
}

nlohmann::json WinningStrategy::table() const {
  using nlohmann::json;
  json entries = json::array();
  if (!core_) return entries;
  std::lock_guard lock(core_->mutex());
  const auto& root = core_->root();
  const bool iso = core_->wins(root.images, root.rounds);
  std::vector<std::pair<Images, int>> frontier{{root.images, root.rounds}};
  std::unordered_map<std::string, bool> seen;
  auto map_json = [&](const Images& img) {
    json m = json::array();
    for (const auto& [a, b] : core_->map_of(img)) m.push_back({a, b});
    return m;
  };
  auto demand_json = [](const Demand& d) { return json{{"left", d.left}, {"right", d.right}}; };
  while (!frontier.empty()) {
    auto [img, rounds] = frontier.back();
    frontier.pop_back();
    if (rounds == 0) continue;
    std::string key(1, static_cast<char>(rounds));
    key.append(img.begin(), img.end());
    if (!seen.emplace(key, true).second) continue;
    if (iso) {
      for (const Demand& d : core_->maximal_demands(img)) {
        auto next = core_->first_winning_extension(img, d, rounds);
        if (!next) continue;  // unreachable: the position is winning
        entries.push_back({{"rounds_left", rounds},
                           {"map", map_json(img)},
                           {"demand", demand_json(d)},
                           {"response", map_json(*next)}});
        frontier.emplace_back(*next, rounds - 1);
      }
    } else {
      for (const Demand& d : core_->maximal_demands(img)) {
        if (core_->first_winning_extension(img, d, rounds)) continue;
        entries.push_back({{"rounds_left", rounds}, {"map", map_json(img)}, {"demand", demand_json(d)}});
        for (const Images& next : core_->extensions(img, d)) frontier.emplace_back(next, rounds - 1);
        break;
      }
    }
  }
  return {{"winner", iso ? "ISO" : "AIS"}, {"entries", entries}};
}

std::optional<PartialMap> StrategyIsoPlayer::respond(const PartialMap& current, const Demand& demand,
                                                     const Ordinal& position) {
  const int played = static_cast<int>(position.as_natural().value_or(0));
  return strategy_.iso_response(current, total_rounds_ - played, demand);
}

SolveResult solve(const FiniteStructure& left, const FiniteStructure& right, const GameConfig& cfg,
                  const SolveOptions& options) {
  const int rounds = finite_rounds(cfg.length);
  if (cfg.mu < 1) throw GameError("mu must be at least 1");
  if (auto why = explain_partial_isomorphism(left, right, cfg.seed)) {
    throw GameError("seed map is not a partial isomorphism: " + *why);
  }
  auto core = std::make_shared<detail::SolverCore>(left, right, cfg.mu, options.node_budget,
                                                   options.canonical_keys);
  core->set_root(core->images_of(cfg.seed), rounds);
  SolveResult result;
  try {
    std::lock_guard lock(core->mutex());
    result.status = core->wins(core->root().images, rounds) ? SolveStatus::iso_wins : SolveStatus::ais_wins;
  } catch (const BudgetExceeded&) {
    result.status = SolveStatus::budget_exceeded;
    result.nodes = core->nodes();
    return result;
  }
  result.nodes = core->nodes();
  core->lift_budget();
  result.strategy = WinningStrategy(std::move(core));
  return result;
}

}  // namespace efeq
