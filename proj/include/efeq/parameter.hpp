#ifndef EFEQ_PARAMETER_HPP
#define EFEQ_PARAMETER_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "efeq/family.hpp"
#include "efeq/freegroup.hpp"
#include "efeq/ordinal.hpp"
#include "json.hpp"

namespace efeq {

class ParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TVariant { uniform, zero_free };

std::string to_string(TVariant v);
TVariant t_variant_from_string(std::string_view text);

/// Switches on the clauses of the linkage relation T. Turning one off gives
/// the mutated relations used by fault tests.
struct TOptions {
  bool require_h_containment = true;
  /// sup(u1) <= sup(u2); implied by u1 being a subset of u2.
  bool gamma_clause = true;
};

struct ParameterSpec {
  std::uint64_t N = 8;
  Ordinal alpha_star = 3;
  GroupMode mode = GroupMode::free_group;
  TVariant variant = TVariant::uniform;
  /// Exclusive bound on h-values; 0 picks 2N + 16.
  std::uint64_t h_ceiling = 0;
  TOptions t_options;

  std::uint64_t effective_h_ceiling() const { return h_ceiling == 0 ? 2 * N + 16 : h_ceiling; }
  /// Throws ParameterError when N < 2 or the h ceiling does not exceed N.
  void validate() const;
};

nlohmann::json spec_to_json(const ParameterSpec& spec);
ParameterSpec spec_from_json(const nlohmann::json& j);
ParameterSpec load_spec(const std::string& path);

/// t = (u, tag, g, h) with g and h listed in the order of u.
struct GeneratorKey {
  Sort u;
  Ordinal tag;
  std::vector<Ordinal> g;
  std::vector<std::uint64_t> h;

  /// `u=[1,3];a=2;g=[(1,0),(3,1)];h=[(1,3),(3,4)]`
  std::string serialize() const;
  static GeneratorKey parse(std::string_view text);
  Generator generator() const { return Generator(serialize()); }

  friend bool operator==(const GeneratorKey&, const GeneratorKey&) = default;
  friend auto operator<=>(const GeneratorKey& a, const GeneratorKey& b) { return a.serialize() <=> b.serialize(); }
};

/// First failed clause of J for `t`, or nullopt when t is in J.
/// Throws ParameterError when u leaves [0, N), an h-value reaches the
/// ceiling, or the key is malformed (unsorted u, length mismatch).
std::optional<std::string> j_violation(const ParameterSpec& spec, const GeneratorKey& t);
bool j_membership(const ParameterSpec& spec, const GeneratorKey& t);

/// (t1, t2) in T. Throws ParameterError unless both keys are in J.
bool t_membership(const ParameterSpec& spec, const GeneratorKey& t1, const GeneratorKey& t2);

/// Non-decreasing g on [0, domain) with values below `tag`.
struct TaggedMonotone {
  Ordinal tag;
  std::vector<Ordinal> values;

  std::uint64_t domain() const { return values.size(); }
  /// Largest value, 0 on the empty domain.
  Ordinal max_value() const { return values.empty() ? Ordinal() : values.back(); }
  /// Restriction to [0, gamma).
  TaggedMonotone prefix(std::uint64_t gamma) const;
  /// Throws ParameterError if not non-decreasing or a value reaches the tag.
  void validate() const;

  friend bool operator==(const TaggedMonotone&, const TaggedMonotone&) = default;
};

/// h(gamma) = least beta' <= domain such that g(beta') > g(gamma), or domain.
std::vector<std::uint64_t> derive_h(const TaggedMonotone& g);

/// Tag carried by the key of sort u under g. The zero-free variant gives keys
/// whose g is identically zero the fixed tag 1.
Ordinal key_tag(const ParameterSpec& spec, const Ordinal& g_tag, const std::vector<Ordinal>& g_on_u);

/// t_{s,g} = (u_s, tag, g|u_s, h_g|u_s) when u_s lies in the domain and the key is in J.
std::optional<GeneratorKey> key_for(const ParameterSpec& spec, const TaggedMonotone& g, const Sort& s);
std::optional<GeneratorKey> key_for(const ParameterSpec& spec, const TaggedMonotone& g,
                                    const std::vector<std::uint64_t>& h_g, const Sort& s);

std::vector<Sort> index_set(const ParameterSpec& spec, const TaggedMonotone& g, const std::vector<Sort>& pool);

/// c_{g,s} = x_{t_{g,s}} for every s of the index set.
Family family_of(const ParameterSpec& spec, const TaggedMonotone& g, const std::vector<Sort>& pool);

/// (u1, tag, g|u1, h|u1). Throws ParameterError unless u1 is a subset of t.u.
GeneratorKey project(const Sort& u1, const GeneratorKey& t);

/// Whether some key on u2 restricts to t1 on t1.u with the same tag
/// (`any_tag` lets the tag vary over [1, alpha_star)). Ignores h on t1.u when
/// `keep_h` is false. Exact, by dynamic programming over u2.
bool key_extends(const ParameterSpec& spec, const GeneratorKey& t1, const Sort& u2, bool any_tag, bool keep_h = true);

/// Label of the T-block of generator `t` of sort u2 relative to the subsort
/// u1: keys t1 on u1 and t2 on u2 are T-linked exactly when their labels agree.
std::string linkage_label(const ParameterSpec& spec, const Sort& u1, const GeneratorKey& t);

/// Label of a generator `t` of the subsort, or nullopt if it has no partner on u2.
std::optional<std::string> linkage_label_left(const ParameterSpec& spec, const GeneratorKey& t, const Sort& u2);

/// Whether T restricted to J_{u1} x J_{u2} is the graph of a map J_{u2} -> J_{u1}.
bool linkage_is_functional(const ParameterSpec& spec);

/// All keys on sort s with tags in [1, tag_cap], g-values below the tag and
/// h-values at most max(s) + h_slack (and below the ceiling).
std::vector<GeneratorKey> enumerate_keys(const ParameterSpec& spec, const Sort& s, std::uint64_t tag_cap,
                                         std::uint64_t h_slack);

/// All nonempty subsets of [0, N) with at most `max_size` elements, by size then lexicographically.
std::vector<Sort> enumerate_sorts(std::uint64_t N, std::size_t max_size);

struct ValidationBound {
  std::size_t max_u_size = 3;
  std::uint64_t tag_cap = 3;
  std::uint64_t h_slack = 2;
  /// Random g samples drawn for the closure checks.
  std::size_t g_samples = 200;
  /// Cap on (t1, t2) pairs inspected per check.
  std::size_t pair_budget = 200'000;
  std::uint64_t seed = 1;
};

struct ValidationCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::vector<std::string> violations;  // first few only
  std::uint64_t violation_count = 0;
  bool passed() const { return violation_count == 0; }
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> notes;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

ValidationReport validate_full_parameter(const ParameterSpec& spec, const ValidationBound& bound = {});

}  // namespace efeq

#endif  // EFEQ_PARAMETER_HPP
