#include <algorithm>
#include <random>
#include <set>

#include "efeq/parameter.hpp"

namespace efeq {

namespace {

constexpr std::size_t kKeptViolations = 8;

ValidationCheck named_check(std::string name) {
  ValidationCheck c;
  c.name = std::move(name);
  return c;
}

void record(ValidationCheck& c, bool ok, const std::string& what) {
  ++c.checked;
  if (ok) return;
  ++c.violation_count;
  if (c.violations.size() < kKeptViolations) c.violations.push_back(what);
}

std::uint64_t finite_tag_cap(const ParameterSpec& spec, std::uint64_t cap) {
  std::uint64_t top = cap;
  if (auto n = spec.alpha_star.as_natural()) top = std::min<std::uint64_t>(cap, *n == 0 ? 0 : *n - 1);
  return top;
}

// Keys agree except possibly in the tag, which the zero-free relation ignores for zero g.
bool expected_link(const ParameterSpec& spec, const GeneratorKey& t1, const GeneratorKey& t2) {
  GeneratorKey p = project(t1.u, t2);
  const bool zero = std::all_of(p.g.begin(), p.g.end(), [](const Ordinal& v) { return v.is_zero(); });
  if (spec.variant == TVariant::zero_free && zero) p.tag = t1.tag;
  return p == t1;
}

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed(); });
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    cs.push_back({{"name", c.name},
                  {"checked", c.checked},
                  {"violation_count", c.violation_count},
                  {"violations", c.violations},
                  {"passed", c.passed()}});
  }
  return {{"checks", cs}, {"notes", notes}, {"all_pass", all_pass()}};
}

ValidationReport validate_full_parameter(const ParameterSpec& spec, const ValidationBound& bound) {
  spec.validate();
  ValidationReport report;
  const std::uint64_t tag_cap = finite_tag_cap(spec, bound.tag_cap);
  const std::vector<Sort> pool = enumerate_sorts(spec.N, bound.max_u_size);

  std::map<Sort, std::vector<GeneratorKey>> keys;
  for (const Sort& s : pool) keys.emplace(s, enumerate_keys(spec, s, tag_cap, bound.h_slack));

  ValidationCheck clause_e = named_check("clause_e");
  ValidationCheck clause_h = named_check("clause_h");
  ValidationCheck linkage = named_check("linkage_graph");

  // Keys are determined by (s, tagged g, h): the serialization is injective and round-trips.
  std::set<std::string> seen;
  for (const auto& [s, ks] : keys) {
    for (const GeneratorKey& t : ks) {
      const std::string text = t.serialize();
      bool ok = seen.insert(text).second;
      ok = ok && GeneratorKey::parse(text) == t && j_membership(spec, t);
      record(clause_h, ok, text);
    }
  }

  std::size_t pairs = 0;
  for (const auto& [u2, ks2] : keys) {
    if (pairs >= bound.pair_budget) break;
    for (const auto& [u1, ks1] : keys) {
      if (pairs >= bound.pair_budget) break;
      if (!is_subsort(u1, u2)) {
        // Keys on incomparable or reversed sorts are never linked.
        if (!ks1.empty() && !ks2.empty()) {
          ++pairs;
          const bool linked = t_membership(spec, ks1.front(), ks2.front());
          record(clause_e, !linked, ks1.front().serialize() + " ~ " + ks2.front().serialize());
        }
        continue;
      }
      for (const GeneratorKey& t2 : ks2) {
        for (const GeneratorKey& t1 : ks1) {
          if (++pairs > bound.pair_budget) break;
          const bool linked = t_membership(spec, t1, t2);
          if (linked) record(clause_e, is_subsort(t1.u, t2.u), t1.serialize() + " ~ " + t2.serialize());
          record(linkage, linked == expected_link(spec, t1, t2),
                 (linked ? "unexpected link " : "missing link ") + t1.serialize() + " ~ " + t2.serialize());
        }
      }
    }
  }

  ValidationCheck closure_ii = named_check("closure_ii");
  ValidationCheck closure_iii = named_check("closure_iii");
  ValidationCheck closure_iv = named_check("closure_iv");
  std::mt19937_64 rng(bound.seed);
  if (tag_cap >= 1) {
    for (std::size_t k = 0; k < bound.g_samples; ++k) {
      TaggedMonotone g;
      g.tag = Ordinal(1 + rng() % tag_cap);
      const std::uint64_t domain = 1 + rng() % spec.N;
      std::uint64_t v = 0;
      const std::uint64_t top = *g.tag.as_natural();
      for (std::uint64_t i = 0; i < domain; ++i) {
        if (rng() % 3 == 0 && v + 1 < top) ++v;
        g.values.push_back(Ordinal(v));
      }
      const std::vector<std::uint64_t> h = derive_h(g);
      std::vector<std::pair<Sort, GeneratorKey>> in_index;
      for (const Sort& s : pool) {
        if (s.back() >= domain) continue;
        auto t = key_for(spec, g, h, s);
        record(closure_ii, t.has_value(), "key of " + sort_to_string(s) + " undefined at domain " + std::to_string(domain));
        if (t) in_index.emplace_back(s, *t);
      }
      for (const auto& [s1, t1] : in_index) {
        for (const auto& [s2, t2] : in_index) {
          if (s1 == s2 || !is_subsort(s1, s2)) continue;
          record(closure_iii, t_membership(spec, t1, t2), t1.serialize() + " !~ " + t2.serialize());
        }
      }
    }
    for (const Sort& s : pool) {
      for (std::uint64_t tag = 1; tag <= tag_cap; ++tag) {
        GeneratorKey t;
        t.u = s;
        t.g.assign(s.size(), Ordinal());
        t.h.assign(s.size(), s.back() + 1);
        t.tag = key_tag(spec, Ordinal(tag), t.g);
        record(closure_iv, j_membership(spec, t), t.serialize());
      }
    }
  } else {
    report.notes.push_back("alphaStar leaves no positive tag; the g-sample checks are vacuous");
  }

  report.notes.push_back("clause (e) checked as (s_t1, s_t2) in S; the literal (s_t1, s_t1) holds trivially");
  if (!linkage_is_functional(spec)) {
    report.notes.push_back("linkage is block-structured, not the graph of a projection");
  }
  report.checks = {clause_e, clause_h, linkage, closure_ii, closure_iii, closure_iv};
  return report;
}

}  // namespace efeq
