#include "efeq/parameter.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

namespace efeq {

std::string to_string(TVariant v) { return v == TVariant::uniform ? "uniform" : "zeroFree"; }

TVariant t_variant_from_string(std::string_view text) {
  if (text == "uniform") return TVariant::uniform;
  if (text == "zeroFree" || text == "zero_free") return TVariant::zero_free;
  throw ParameterError("unknown T variant '" + std::string(text) + "'");
}

void ParameterSpec::validate() const {
  if (N < 2) throw ParameterError("N must be at least 2");
  if (effective_h_ceiling() <= N) throw ParameterError("hCeiling must exceed N");
  if (alpha_star.is_zero()) throw ParameterError("alphaStar must be positive");
}

nlohmann::json spec_to_json(const ParameterSpec& spec) {
  return {{"N", spec.N},
          {"alphaStar", spec.alpha_star.to_string()},
          {"mode", to_string(spec.mode)},
          {"variant", to_string(spec.variant)},
          {"hCeiling", spec.effective_h_ceiling()}};
}

ParameterSpec spec_from_json(const nlohmann::json& j) {
  try {
    ParameterSpec spec;
    spec.N = j.at("N").get<std::uint64_t>();
    const auto& a = j.at("alphaStar");
    spec.alpha_star = a.is_number() ? Ordinal(a.get<std::uint64_t>()) : Ordinal::parse(a.get<std::string>());
    spec.mode = group_mode_from_string(j.value("mode", std::string("free")));
    spec.variant = t_variant_from_string(j.value("variant", std::string("uniform")));
    spec.h_ceiling = j.value("hCeiling", std::uint64_t{0});
    if (j.contains("gammaClause")) spec.t_options.gamma_clause = j.at("gammaClause").get<bool>();
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed parameter file: ") + e.what());
  } catch (const GroupError& e) {
    throw ParameterError(e.what());
  } catch (const OrdinalError& e) {
    throw ParameterError(e.what());
  }
}

ParameterSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open parameter file " + path);
  try {
    return spec_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Keys

std::string GeneratorKey::serialize() const {
  std::string out = "u=" + sort_to_string(u) + ";a=" + tag.to_string() + ";g=[";
  for (std::size_t i = 0; i < u.size() && i < g.size(); ++i) {
    if (i > 0) out += ",";
    out += "(" + std::to_string(u[i]) + "," + g[i].to_string() + ")";
  }
  out += "];h=[";
  for (std::size_t i = 0; i < u.size() && i < h.size(); ++i) {
    if (i > 0) out += ",";
    out += "(" + std::to_string(u[i]) + "," + std::to_string(h[i]) + ")";
  }
  return out + "]";
}

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParameterError("malformed generator key '" + std::string(whole) + "'");
  }
  return v;
}

// Splits "[(a,b),(c,d)]" into the pairs' two components.
std::vector<std::pair<std::string_view, std::string_view>> parse_pairs(std::string_view s, std::string_view whole) {
  auto fail = [&] { return ParameterError("malformed generator key '" + std::string(whole) + "'"); };
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw fail();
  s = s.substr(1, s.size() - 2);
  std::vector<std::pair<std::string_view, std::string_view>> out;
  while (!s.empty()) {
    if (s.front() != '(') throw fail();
    const std::size_t close = s.find(')');
    if (close == std::string_view::npos) throw fail();
    std::string_view inner = s.substr(1, close - 1);
    const std::size_t comma = inner.find(',');
    if (comma == std::string_view::npos) throw fail();
    out.emplace_back(inner.substr(0, comma), inner.substr(comma + 1));
    s.remove_prefix(close + 1);
    if (!s.empty()) {
      if (s.front() != ',') throw fail();
      s.remove_prefix(1);
    }
  }
  return out;
}

}  // namespace

GeneratorKey GeneratorKey::parse(std::string_view text) {
  auto fail = [&] { return ParameterError("malformed generator key '" + std::string(text) + "'"); };
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ';') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 4 || parts[0].substr(0, 2) != "u=" || parts[1].substr(0, 2) != "a=" ||
      parts[2].substr(0, 2) != "g=" || parts[3].substr(0, 2) != "h=") {
    throw fail();
  }
  GeneratorKey t;
  try {
    t.u = parse_sort(parts[0].substr(2));
    t.tag = Ordinal::parse(parts[1].substr(2));
    for (const auto& [b, v] : parse_pairs(parts[2].substr(2), text)) {
      if (parse_u64(b, text) != (t.g.size() < t.u.size() ? t.u[t.g.size()] : ~0ULL)) throw fail();
      t.g.push_back(Ordinal::parse(v));
    }
    for (const auto& [b, v] : parse_pairs(parts[3].substr(2), text)) {
      if (parse_u64(b, text) != (t.h.size() < t.u.size() ? t.u[t.h.size()] : ~0ULL)) throw fail();
      t.h.push_back(parse_u64(v, text));
    }
  } catch (const std::invalid_argument&) {
    throw fail();
  } catch (const OrdinalError&) {
    throw fail();
  }
  if (t.g.size() != t.u.size() || t.h.size() != t.u.size()) throw fail();
  if (t.serialize() != text) throw fail();
  return t;
}

std::optional<std::string> j_violation(const ParameterSpec& spec, const GeneratorKey& t) {
  if (t.g.size() != t.u.size() || t.h.size() != t.u.size()) throw ParameterError("key components differ in length");
  if (make_sort(t.u) != t.u) throw ParameterError("key u is not a sorted set");
  for (std::uint64_t b : t.u) {
    if (b >= spec.N) throw ParameterError("key u leaves [0, N): " + std::to_string(b));
  }
  for (std::uint64_t v : t.h) {
    if (v >= spec.effective_h_ceiling()) throw ParameterError("h-value " + std::to_string(v) + " reaches hCeiling");
  }
  if (!(t.tag < spec.alpha_star)) return "tag " + t.tag.to_string() + " is not below alphaStar";
  for (std::size_t i = 0; i < t.u.size(); ++i) {
    if (!(t.g[i] < t.tag)) return "g-value at " + std::to_string(t.u[i]) + " is not below the tag";
    if (i > 0 && t.g[i] < t.g[i - 1]) return "g decreases at " + std::to_string(t.u[i]);
    if (i > 0 && t.h[i] < t.h[i - 1]) return "h decreases at " + std::to_string(t.u[i]);
    if (t.h[i] <= t.u[i]) return "h(" + std::to_string(t.u[i]) + ") is not above " + std::to_string(t.u[i]);
  }
  // g non-decreasing makes equal values contiguous, so neighbours suffice.
  for (std::size_t i = 1; i < t.u.size(); ++i) {
    if (t.g[i] == t.g[i - 1] && t.h[i] != t.h[i - 1]) {
      return "equal g-values at " + std::to_string(t.u[i - 1]) + " and " + std::to_string(t.u[i]) +
             " but different h-values";
    }
  }
  return std::nullopt;
}

bool j_membership(const ParameterSpec& spec, const GeneratorKey& t) { return !j_violation(spec, t); }

namespace {

bool all_zero(const std::vector<Ordinal>& g) {
  return std::all_of(g.begin(), g.end(), [](const Ordinal& v) { return v.is_zero(); });
}

// Values of t on the elements of u1 (a subset of t.u).
template <class V>
std::vector<V> restrict_values(const Sort& u1, const Sort& u, const std::vector<V>& values) {
  std::vector<V> out;
  out.reserve(u1.size());
  std::size_t j = 0;
  for (std::uint64_t b : u1) {
    while (j < u.size() && u[j] < b) ++j;
    out.push_back(values[j]);
  }
  return out;
}

}  // namespace

bool t_membership(const ParameterSpec& spec, const GeneratorKey& t1, const GeneratorKey& t2) {
  if (auto why = j_violation(spec, t1)) throw ParameterError("first key is not in J: " + *why);
  if (auto why = j_violation(spec, t2)) throw ParameterError("second key is not in J: " + *why);
  if (!is_subsort(t1.u, t2.u)) return false;
  if (restrict_values(t1.u, t2.u, t2.g) != t1.g) return false;
  if (spec.t_options.require_h_containment && restrict_values(t1.u, t2.u, t2.h) != t1.h) return false;
  if (spec.t_options.gamma_clause && !t1.u.empty() && !t2.u.empty() && t1.u.back() > t2.u.back()) return false;
  const bool tags_must_agree = spec.variant == TVariant::uniform || !all_zero(t1.g);
  return !tags_must_agree || t1.tag == t2.tag;
}

// ---------------------------------------------------------------------------
// Monotone functions and the keys they determine

TaggedMonotone TaggedMonotone::prefix(std::uint64_t gamma) const {
  TaggedMonotone out;
  out.tag = tag;
  out.values.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(std::min<std::uint64_t>(gamma, domain())));
  return out;
}

void TaggedMonotone::validate() const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] < tag)) throw ParameterError("value at " + std::to_string(i) + " is not below the tag");
    if (i > 0 && values[i] < values[i - 1]) throw ParameterError("g decreases at " + std::to_string(i));
  }
}

std::vector<std::uint64_t> derive_h(const TaggedMonotone& g) {
  const std::uint64_t n = g.domain();
  std::vector<std::uint64_t> h(n, n);
  // Sweep from the right, remembering where the current value block ends.
  std::uint64_t next_larger = n;
  for (std::uint64_t i = n; i-- > 0;) {
    if (i + 1 < n && g.values[i + 1] > g.values[i]) next_larger = i + 1;
    h[i] = next_larger;
  }
  return h;
}

Ordinal key_tag(const ParameterSpec& spec, const Ordinal& g_tag, const std::vector<Ordinal>& g_on_u) {
  if (spec.variant == TVariant::zero_free && all_zero(g_on_u)) return Ordinal(1);
  return g_tag;
}

std::optional<GeneratorKey> key_for(const ParameterSpec& spec, const TaggedMonotone& g,
                                    const std::vector<std::uint64_t>& h_g, const Sort& s) {
  if (s.empty()) return std::nullopt;
  if (s.back() >= g.domain() || s.back() >= spec.N) return std::nullopt;
  GeneratorKey t;
  t.u = s;
  for (std::uint64_t b : s) {
    t.g.push_back(g.values[b]);
    t.h.push_back(h_g[b]);
  }
  t.tag = key_tag(spec, g.tag, t.g);
  for (std::uint64_t v : t.h) {
    if (v >= spec.effective_h_ceiling()) return std::nullopt;
  }
  if (j_violation(spec, t)) return std::nullopt;
  return t;
}

std::optional<GeneratorKey> key_for(const ParameterSpec& spec, const TaggedMonotone& g, const Sort& s) {
  return key_for(spec, g, derive_h(g), s);
}

std::vector<Sort> index_set(const ParameterSpec& spec, const TaggedMonotone& g, const std::vector<Sort>& pool) {
  const std::vector<std::uint64_t> h = derive_h(g);
  std::vector<Sort> out;
  for (const Sort& s : pool) {
    if (key_for(spec, g, h, s)) out.push_back(s);
  }
  return out;
}

Family family_of(const ParameterSpec& spec, const TaggedMonotone& g, const std::vector<Sort>& pool) {
  const std::vector<std::uint64_t> h = derive_h(g);
  Family out;
  for (const Sort& s : pool) {
    if (auto t = key_for(spec, g, h, s)) out.entries.emplace(s, GroupElement::generator(spec.mode, t->generator()));
  }
  return out;
}

GeneratorKey project(const Sort& u1, const GeneratorKey& t) {
  if (!is_subsort(u1, t.u)) throw ParameterError("cannot project onto " + sort_to_string(u1) + ": not a subset of " + sort_to_string(t.u));
  GeneratorKey out;
  out.u = u1;
  out.tag = t.tag;
  out.g = restrict_values(u1, t.u, t.g);
  out.h = restrict_values(u1, t.u, t.h);
  return out;
}

// ---------------------------------------------------------------------------
// Linkage

bool key_extends(const ParameterSpec& spec, const GeneratorKey& t1, const Sort& u2, bool any_tag, bool keep_h) {
  if (!is_subsort(t1.u, u2)) return false;
  for (std::uint64_t b : u2) {
    if (b >= spec.N) return false;
  }
  // Exclusive bound on the values g may take on u2.
  Ordinal bound = t1.tag;
  if (any_tag) bound = spec.alpha_star.is_successor() ? spec.alpha_star.predecessor() : spec.alpha_star;
  const std::uint64_t ceiling = spec.effective_h_ceiling();

  // Enough candidate values: any solution can be moved onto these without
  // changing the order relations among positions and fixed values.
  std::set<Ordinal> gset;
  std::vector<Ordinal> anchors = t1.g;
  anchors.push_back(Ordinal());
  for (const Ordinal& v : anchors) {
    for (std::uint64_t k = 0; k <= u2.size(); ++k) {
      Ordinal c = v + Ordinal(k);
      if (c < bound) gset.insert(c);
    }
  }
  std::set<std::uint64_t> hset;
  if (keep_h) hset.insert(t1.h.begin(), t1.h.end());
  for (std::uint64_t b : u2) hset.insert(b + 1);
  const std::vector<Ordinal> gc(gset.begin(), gset.end());
  std::vector<std::uint64_t> hc;
  for (std::uint64_t v : hset) {
    if (v < ceiling) hc.push_back(v);
  }

  struct State {
    std::size_t g;
    std::size_t h;
  };
  std::vector<State> frontier;
  bool first = true;
  std::size_t fixed_i = 0;
  for (std::uint64_t b : u2) {
    const bool fixed = fixed_i < t1.u.size() && t1.u[fixed_i] == b;
    std::vector<State> next;
    for (std::size_t gi = 0; gi < gc.size(); ++gi) {
      if (fixed && gc[gi] != t1.g[fixed_i]) continue;
      for (std::size_t hi = 0; hi < hc.size(); ++hi) {
        if (hc[hi] <= b) continue;
        if (fixed && keep_h && hc[hi] != t1.h[fixed_i]) continue;
        bool reachable = first;
        for (const State& p : frontier) {
          if (reachable) break;
          if (gc[gi] < gc[p.g] || hc[hi] < hc[p.h]) continue;
          if (gc[gi] == gc[p.g] && hc[hi] != hc[p.h]) continue;
          reachable = true;
        }
        if (reachable) next.push_back({gi, hi});
      }
    }
    if (fixed) ++fixed_i;
    if (next.empty()) return false;
    frontier = std::move(next);
    first = false;
  }
  return true;
}

namespace {

std::string label_of(const ParameterSpec& spec, const Sort& u1, const Ordinal& tag, const std::vector<Ordinal>& g,
                     const std::vector<std::uint64_t>& h) {
  GeneratorKey k;
  k.u = u1;
  k.g = g;
  k.h = spec.t_options.require_h_containment ? h : std::vector<std::uint64_t>(u1.size(), 0);
  const bool tagged = spec.variant == TVariant::uniform || !all_zero(g);
  std::string out = k.serialize();
  return out + (tagged ? "|a=" + tag.to_string() : "|a=*");
}

}  // namespace

std::string linkage_label(const ParameterSpec& spec, const Sort& u1, const GeneratorKey& t) {
  const GeneratorKey p = project(u1, t);
  return label_of(spec, u1, p.tag, p.g, p.h);
}

std::optional<std::string> linkage_label_left(const ParameterSpec& spec, const GeneratorKey& t, const Sort& u2) {
  const bool any_tag = spec.variant == TVariant::zero_free && all_zero(t.g);
  if (!key_extends(spec, t, u2, any_tag, spec.t_options.require_h_containment)) return std::nullopt;
  return label_of(spec, t.u, t.tag, t.g, t.h);
}

bool linkage_is_functional(const ParameterSpec& spec) {
  return spec.variant == TVariant::uniform && spec.t_options.require_h_containment;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Sort> enumerate_sorts(std::uint64_t N, std::size_t max_size) {
  std::vector<Sort> out;
  std::vector<std::uint64_t> current;
  for (std::size_t size = 1; size <= max_size && size <= N; ++size) {
    current.assign(size, 0);
    for (std::size_t i = 0; i < size; ++i) current[i] = i;
    while (true) {
      out.push_back(current);
      std::size_t i = size;
      while (i > 0 && current[i - 1] == N - size + (i - 1)) --i;
      if (i == 0) break;
      ++current[i - 1];
      for (std::size_t j = i; j < size; ++j) current[j] = current[j - 1] + 1;
    }
  }
  return out;
}

namespace {

void enumerate_g(std::size_t n, std::uint64_t tag, std::vector<std::uint64_t>& cur,
                 std::vector<std::vector<std::uint64_t>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  const std::uint64_t lo = cur.empty() ? 0 : cur.back();
  for (std::uint64_t v = lo; v < tag; ++v) {
    cur.push_back(v);
    enumerate_g(n, tag, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<GeneratorKey> enumerate_keys(const ParameterSpec& spec, const Sort& s, std::uint64_t tag_cap,
                                         std::uint64_t h_slack) {
  std::vector<GeneratorKey> out;
  if (s.empty()) return out;
  const std::uint64_t h_max = std::min(s.back() + h_slack, spec.effective_h_ceiling() - 1);
  for (std::uint64_t tag = 1; tag <= tag_cap && Ordinal(tag) < spec.alpha_star; ++tag) {
    std::vector<std::vector<std::uint64_t>> gs;
    std::vector<std::uint64_t> cur;
    enumerate_g(s.size(), tag, cur, gs);
    for (const auto& g : gs) {
      // Blocks of equal g-values share one h-value.
      std::vector<std::pair<std::size_t, std::size_t>> blocks;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == 0 || g[i] != g[i - 1]) blocks.emplace_back(i, i);
        blocks.back().second = i;
      }
      std::vector<std::uint64_t> hv(blocks.size());
      auto rec = [&](auto&& self, std::size_t k, std::uint64_t lo) -> void {
        if (k == blocks.size()) {
          GeneratorKey t;
          t.u = s;
          t.tag = tag;
          for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (std::size_t i = blocks[b].first; i <= blocks[b].second; ++i) {
              t.g.push_back(g[i]);
              t.h.push_back(hv[b]);
            }
          }
          out.push_back(std::move(t));
          return;
        }
        const std::uint64_t need = std::max(lo, s[blocks[k].second] + 1);
        for (std::uint64_t v = need; v <= h_max; ++v) {
          hv[k] = v;
          self(self, k + 1, v);
        }
      };
      rec(rec, 0, 0);
    }
  }
  return out;
}

}  // namespace efeq
