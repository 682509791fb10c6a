#include "efeq/freegroup.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace efeq {

std::string to_string(GroupMode mode) { return mode == GroupMode::free_group ? "free" : "boolean"; }

GroupMode group_mode_from_string(std::string_view text) {
  if (text == "free") return GroupMode::free_group;
  if (text == "boolean") return GroupMode::boolean;
  throw GroupError("unknown group mode '" + std::string(text) + "'");
}

namespace {

void push_reduced(std::vector<Letter>& word, const Letter& l) {
  if (!word.empty() && word.back().gen == l.gen && word.back().exponent == -l.exponent) {
    word.pop_back();
  } else {
    word.push_back(l);
  }
}

void require_same_mode(const GroupElement& a, const GroupElement& b) {
  if (a.mode() != b.mode()) throw GroupError("group elements of different modes");
}

// Dense GF(2) linear system: each row holds coefficients followed by the right-hand side.
class Gf2System {
 public:
  explicit Gf2System(std::size_t unknowns) : unknowns_(unknowns), words_((unknowns + 1 + 63) / 64) {}

  void add_equation(const std::vector<std::size_t>& vars, bool rhs) {
    std::vector<std::uint64_t> row(words_, 0);
    for (std::size_t v : vars) row[v / 64] ^= (std::uint64_t{1} << (v % 64));
    if (rhs) row[unknowns_ / 64] ^= (std::uint64_t{1} << (unknowns_ % 64));
    rows_.push_back(std::move(row));
  }

  bool solvable() {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < unknowns_ && rank < rows_.size(); ++col) {
      const std::uint64_t mask = std::uint64_t{1} << (col % 64);
      std::size_t pivot = rank;
      while (pivot < rows_.size() && !(rows_[pivot][col / 64] & mask)) ++pivot;
      if (pivot == rows_.size()) continue;
      std::swap(rows_[rank], rows_[pivot]);
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (r != rank && (rows_[r][col / 64] & mask)) {
          for (std::size_t w = 0; w < words_; ++w) rows_[r][w] ^= rows_[rank][w];
        }
      }
      ++rank;
    }
    const std::uint64_t rhs_mask = std::uint64_t{1} << (unknowns_ % 64);
    for (std::size_t r = rank; r < rows_.size(); ++r) {
      if (rows_[r][unknowns_ / 64] & rhs_mask) return false;
    }
    return true;
  }

 private:
  std::size_t unknowns_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

bool boolean_pair_membership(const std::vector<std::pair<Generator, Generator>>& pairs,
                             const GroupElement& x1, const GroupElement& x2) {
  std::map<Generator, std::vector<std::size_t>> left_vars;
  std::map<Generator, std::vector<std::size_t>> right_vars;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    left_vars[pairs[k].first].push_back(k);
    right_vars[pairs[k].second].push_back(k);
  }
  for (const Generator& g : x1.members()) left_vars.try_emplace(g);
  for (const Generator& g : x2.members()) right_vars.try_emplace(g);

  Gf2System system(pairs.size());
  const std::set<Generator> in1(x1.members().begin(), x1.members().end());
  const std::set<Generator> in2(x2.members().begin(), x2.members().end());
  for (const auto& [g, vars] : left_vars) system.add_equation(vars, in1.count(g) > 0);
  for (const auto& [g, vars] : right_vars) system.add_equation(vars, in2.count(g) > 0);
  return system.solvable();
}

}  // namespace

GroupElement GroupElement::identity(GroupMode mode) {
  GroupElement e;
  e.mode_ = mode;
  return e;
}

GroupElement GroupElement::generator(GroupMode mode, Generator g, int exponent) {
  if (exponent != 1 && exponent != -1) throw GroupError("generator exponent must be +1 or -1");
  GroupElement e = identity(mode);
  if (mode == GroupMode::free_group) {
    e.letters_.push_back({std::move(g), exponent});
  } else {
    e.members_.push_back(std::move(g));
  }
  return e;
}

GroupElement GroupElement::from_letters(std::vector<Letter> letters) {
  GroupElement e = identity(GroupMode::free_group);
  for (const Letter& l : letters) {
    if (l.exponent != 1 && l.exponent != -1) throw GroupError("letter exponent must be +1 or -1");
    push_reduced(e.letters_, l);
  }
  return e;
}

GroupElement GroupElement::from_set(std::vector<Generator> gens) {
  std::sort(gens.begin(), gens.end());
  GroupElement e = identity(GroupMode::boolean);
  for (std::size_t i = 0; i < gens.size();) {
    std::size_t j = i;
    while (j < gens.size() && gens[j] == gens[i]) ++j;
    if ((j - i) % 2 == 1) e.members_.push_back(gens[i]);
    i = j;
  }
  return e;
}

std::vector<Generator> GroupElement::support() const {
  std::vector<Generator> out;
  if (mode_ == GroupMode::boolean) return members_;
  for (const Letter& l : letters_) out.push_back(l.gen);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string GroupElement::to_string() const {
  if (is_identity()) return "e";
  std::string out;
  if (mode_ == GroupMode::boolean) {
    out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i > 0) out += ",";
      out += members_[i].to_string();
    }
    return out + "}";
  }
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i > 0) out += "*";
    out += letters_[i].gen.to_string();
    if (letters_[i].exponent == -1) out += "^-1";
  }
  return out;
}

GroupElement GroupElement::parse(std::string_view text, GroupMode mode) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  auto fail = [&](const std::string& why) {
    return GroupError("cannot parse group element '" + std::string(text) + "': " + why);
  };
  // Reads g<key> starting at pos, returns the generator and advances pos.
  auto read_generator = [&](std::string_view s, std::size_t& pos) {
    if (s.substr(pos, 2) != "g<") throw fail("expected g<key>");
    const std::size_t close = s.find('>', pos + 2);
    if (close == std::string_view::npos) throw fail("unterminated generator key");
    Generator g(std::string(s.substr(pos + 2, close - pos - 2)));
    if (g.key().empty()) throw fail("empty generator key");
    pos = close + 1;
    return g;
  };

  std::string_view s = trim(text);
  if (s == "e" || s.empty() || (mode == GroupMode::boolean && s == "{}")) return identity(mode);

  if (mode == GroupMode::boolean) {
    if (s.front() != '{' || s.back() != '}') throw fail("Boolean elements are written {g<k1>,g<k2>}");
    std::vector<Generator> gens;
    std::size_t pos = 1;
    while (true) {
      while (pos < s.size() && s[pos] == ' ') ++pos;
      gens.push_back(read_generator(s, pos));
      while (pos < s.size() && s[pos] == ' ') ++pos;
      if (pos >= s.size()) throw fail("unterminated set");
      if (s[pos] == '}') break;
      if (s[pos] != ',') throw fail("expected ',' between set members");
      ++pos;
    }
    if (pos + 1 != s.size()) throw fail("trailing characters");
    return from_set(std::move(gens));
  }

  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (true) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (s.substr(pos, 1) == "e") {
      ++pos;
    } else {
      Generator g = read_generator(s, pos);
      int exponent = 1;
      if (s.substr(pos, 3) == "^-1") {
        exponent = -1;
        pos += 3;
      } else if (s.substr(pos, 2) == "^1") {
        pos += 2;
      }
      letters.push_back({std::move(g), exponent});
    }
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos == s.size()) break;
    if (s[pos] != '*') throw fail("expected '*' between letters");
    ++pos;
  }
  return from_letters(std::move(letters));
}

GroupElement gmul(const GroupElement& a, const GroupElement& b) {
  require_same_mode(a, b);
  if (a.mode() == GroupMode::boolean) {
    std::vector<Generator> gens = a.members();
    gens.insert(gens.end(), b.members().begin(), b.members().end());
    return GroupElement::from_set(std::move(gens));
  }
  std::vector<Letter> word = a.letters();
  for (const Letter& l : b.letters()) push_reduced(word, l);
  return GroupElement::from_letters(std::move(word));
}

GroupElement ginv(const GroupElement& a) {
  if (a.mode() == GroupMode::boolean) return a;
  std::vector<Letter> word;
  word.reserve(a.letters().size());
  for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) word.push_back({it->gen, -it->exponent});
  return GroupElement::from_letters(std::move(word));
}

GroupElement induced_hom(const GeneratorMap& gen_map, const GroupElement& a) {
  auto image = [&](const Generator& g) {
    std::optional<Generator> out = gen_map(g);
    if (!out) throw GroupError("generator " + g.to_string() + " is not mapped");
    return *out;
  };
  if (a.mode() == GroupMode::boolean) {
    std::vector<Generator> gens;
    for (const Generator& g : a.members()) gens.push_back(image(g));
    return GroupElement::from_set(std::move(gens));
  }
  std::vector<Letter> word;
  for (const Letter& l : a.letters()) word.push_back({image(l.gen), l.exponent});
  return GroupElement::from_letters(std::move(word));
}

GroupElement induced_hom(const std::map<Generator, Generator>& gen_map, const GroupElement& a) {
  return induced_hom(
      [&](const Generator& g) -> std::optional<Generator> {
        auto it = gen_map.find(g);
        if (it == gen_map.end()) return std::nullopt;
        return it->second;
      },
      a);
}

bool pair_membership_functional(const GeneratorMap& projection, const GroupElement& x1,
                                const GroupElement& x2) {
  require_same_mode(x1, x2);
  for (const Generator& g : x2.support()) {
    if (!projection(g)) return false;
  }
  return induced_hom(projection, x2) == x1;
}

bool pair_membership_pairs(const std::vector<std::pair<Generator, Generator>>& pairs,
                           const GroupElement& x1, const GroupElement& x2) {
  require_same_mode(x1, x2);
  if (x1.mode() == GroupMode::boolean) return boolean_pair_membership(pairs, x1, x2);

  std::map<Generator, Generator> projection;
  for (const auto& [left, right] : pairs) {
    auto [it, inserted] = projection.emplace(right, left);
    if (!inserted && it->second != left) {
      throw UndecidableConfiguration(
          "undecidable configuration refused: free-mode linkage is not the graph of a map");
    }
  }
  return pair_membership_functional(
      [&](const Generator& g) -> std::optional<Generator> {
        auto it = projection.find(g);
        if (it == projection.end()) return std::nullopt;
        return it->second;
      },
      x1, x2);
}

bool pair_membership_blocks(const BlockLabel& label_left, const BlockLabel& label_right,
                            const GroupElement& x1, const GroupElement& x2) {
  require_same_mode(x1, x2);
  // Both coordinates map onto the free (or Boolean) group on block labels;
  // the subgroup is exactly the fibre product over that group.
  auto relabel = [](const BlockLabel& label, const GroupElement& x) -> std::optional<GroupElement> {
    std::map<Generator, Generator> to_label;
    for (const Generator& g : x.support()) {
      std::optional<std::string> l = label(g);
      if (!l) return std::nullopt;
      to_label.emplace(g, Generator(*l));
    }
    return induced_hom(to_label, x);
  };
  auto image1 = relabel(label_left, x1);
  if (!image1) return false;
  auto image2 = relabel(label_right, x2);
  if (!image2) return false;
  return *image1 == *image2;
}

}  // namespace efeq
