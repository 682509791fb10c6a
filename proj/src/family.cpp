#include "efeq/family.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace efeq {

Sort make_sort(std::vector<std::uint64_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

bool is_subsort(const Sort& a, const Sort& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::string sort_to_string(const Sort& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

Sort parse_sort(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("malformed sort '" + std::string(text) + "'"); };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') throw fail();
  std::string_view body = text.substr(1, text.size() - 2);
  std::vector<std::uint64_t> out;
  while (!body.empty()) {
    while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || ptr == body.data()) throw fail();
    out.push_back(v);
    body.remove_prefix(static_cast<std::size_t>(ptr - body.data()));
    while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
    if (body.empty()) break;
    if (body.front() != ',') throw fail();
    body.remove_prefix(1);
  }
  Sort s = make_sort(out);
  if (s.size() != out.size() || !std::is_sorted(out.begin(), out.end())) throw fail();
  return s;
}

std::vector<Sort> Family::support() const {
  std::vector<Sort> out;
  out.reserve(entries.size());
  for (const auto& [s, c] : entries) out.push_back(s);
  return out;
}

bool Family::is_trivial() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& kv) { return kv.second.is_identity(); });
}

Family Family::restricted_to(const std::vector<Sort>& sorts) const {
  Family out;
  for (const Sort& s : sorts) {
    auto it = entries.find(s);
    if (it != entries.end()) out.entries.emplace(s, it->second);
  }
  return out;
}

std::string Family::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [s, c] : entries) {
    if (!first) out += "; ";
    first = false;
    out += sort_to_string(s) + ": " + c.to_string();
  }
  return out + "}";
}

Family family_product(const Family& a, const Family& b) {
  Family out;
  for (const auto& [s, c] : a.entries) {
    auto it = b.entries.find(s);
    if (it != b.entries.end()) out.entries.emplace(s, gmul(c, it->second));
  }
  return out;
}

Family family_inverse(const Family& a) {
  Family out;
  for (const auto& [s, c] : a.entries) out.entries.emplace(s, ginv(c));
  return out;
}

}  // namespace efeq
