#ifndef EFEQ_FREEGROUP_HPP
#define EFEQ_FREEGROUP_HPP

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace efeq {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when asked to decide membership in a subgroup of a product of free
/// groups whose generating pairs are not the graph of a map.
class UndecidableConfiguration : public GroupError {
 public:
  using GroupError::GroupError;
};

/// Free generator x_t, identified by the canonical serialization of t.
class Generator {
 public:
  Generator() = default;
  explicit Generator(std::string key) : key_(std::move(key)) {}
  const std::string& key() const { return key_; }
  std::string to_string() const { return "g<" + key_ + ">"; }
  friend auto operator<=>(const Generator&, const Generator&) = default;

 private:
  std::string key_;
};

enum class GroupMode { free_group, boolean };

std::string to_string(GroupMode mode);
GroupMode group_mode_from_string(std::string_view text);

struct Letter {
  Generator gen;
  int exponent = 1;  // +1 or -1
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Element of the free group on generators (a reduced word), or of the
/// Boolean group (a finite set under symmetric difference).
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement identity(GroupMode mode);
  static GroupElement generator(GroupMode mode, Generator g, int exponent = 1);
  /// Free mode; the letters are reduced.
  static GroupElement from_letters(std::vector<Letter> letters);
  /// Boolean mode; repeated generators cancel in pairs.
  static GroupElement from_set(std::vector<Generator> gens);
  static GroupElement parse(std::string_view text, GroupMode mode);

  GroupMode mode() const { return mode_; }
  bool is_identity() const { return letters_.empty() && members_.empty(); }
  /// Word length in free mode, set size in Boolean mode.
  std::size_t length() const { return mode_ == GroupMode::free_group ? letters_.size() : members_.size(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const std::vector<Generator>& members() const { return members_; }
  /// Distinct generators occurring, sorted.
  std::vector<Generator> support() const;

  std::string to_string() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    if (auto c = a.mode_ <=> b.mode_; c != 0) return c;
    if (auto c = a.letters_ <=> b.letters_; c != 0) return c;
    return a.members_ <=> b.members_;
  }

 private:
  GroupMode mode_ = GroupMode::free_group;
  std::vector<Letter> letters_;
  std::vector<Generator> members_;
};

GroupElement gmul(const GroupElement& a, const GroupElement& b);
GroupElement ginv(const GroupElement& a);

using GeneratorMap = std::function<std::optional<Generator>(const Generator&)>;

/// Letterwise image of `a` under the homomorphism induced by `gen_map`.
/// Throws GroupError when a generator of `a` is unmapped.
GroupElement induced_hom(const GeneratorMap& gen_map, const GroupElement& a);
GroupElement induced_hom(const std::map<Generator, Generator>& gen_map, const GroupElement& a);

/// (x1, x2) in the subgroup generated by {(x_{pi(t)}, x_t)}, where
/// `projection` is the map pi from right generators to left generators
/// (nullopt = t is not linked).
bool pair_membership_functional(const GeneratorMap& projection, const GroupElement& x1,
                                const GroupElement& x2);

/// (x1, x2) in the subgroup generated by {(x_a, x_b) : (a, b) in pairs}.
/// Boolean mode solves the GF(2) system; free mode requires the pairs to be
/// the graph of a map from right to left generators and otherwise throws
/// UndecidableConfiguration.
bool pair_membership_pairs(const std::vector<std::pair<Generator, Generator>>& pairs,
                           const GroupElement& x1, const GroupElement& x2);

using BlockLabel = std::function<std::optional<std::string>(const Generator&)>;

/// Membership for linkages that are disjoint unions of complete bipartite
/// blocks: a ~ b iff label_left(a) == label_right(b), with nullopt marking
/// generators that have no partner at all.
bool pair_membership_blocks(const BlockLabel& label_left, const BlockLabel& label_right,
                            const GroupElement& x1, const GroupElement& x2);

}  // namespace efeq

#endif  // EFEQ_FREEGROUP_HPP
