#ifndef EFEQ_FAMILY_HPP
#define EFEQ_FAMILY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "efeq/freegroup.hpp"

namespace efeq {

/// A sort is named by its finite set u of naturals, kept sorted and duplicate free.
using Sort = std::vector<std::uint64_t>;

/// Normalises a list of naturals into a sort (sorted, duplicates removed).
Sort make_sort(std::vector<std::uint64_t> elements);
bool is_subsort(const Sort& a, const Sort& b);
std::string sort_to_string(const Sort& s);
/// Reads "[0,1,5]". Throws std::invalid_argument on malformed text.
Sort parse_sort(std::string_view text);

/// One group element per sort of the support.
struct Family {
  std::map<Sort, GroupElement> entries;

  std::vector<Sort> support() const;
  bool contains(const Sort& s) const { return entries.count(s) > 0; }
  const GroupElement& at(const Sort& s) const { return entries.at(s); }
  bool is_trivial() const;
  /// Entries on the sorts of `sorts` that are in the support.
  Family restricted_to(const std::vector<Sort>& sorts) const;
  std::string to_string() const;

  friend bool operator==(const Family&, const Family&) = default;
};

/// Componentwise product on the common support.
Family family_product(const Family& a, const Family& b);
Family family_inverse(const Family& a);

}  // namespace efeq

#endif  // EFEQ_FAMILY_HPP
