#include <algorithm>
#include <random>
#include <set>

#include "efeq/strategy.hpp"

namespace efeq {

namespace {

constexpr std::size_t kKept = 8;
constexpr std::size_t kPoolSample = 40;

void record(ValidationCheck& c, bool ok, const std::string& what) {
  ++c.checked;
  if (ok) return;
  ++c.violation_count;
  if (c.violations.size() < kKept) c.violations.push_back(what);
}

ValidationCheck named(std::string name) {
  ValidationCheck c;
  c.name = std::move(name);
  return c;
}

Sort random_sort(std::mt19937_64& rng, std::uint64_t n, std::size_t max_size) {
  const std::size_t size = 1 + rng() % std::min<std::uint64_t>(max_size, n);
  std::vector<std::uint64_t> v;
  while (v.size() < size) {
    v.push_back(rng() % n);
    v = make_sort(v);
  }
  return v;
}

bool contains_all(const std::vector<Sort>& big, const std::vector<Sort>& small) {
  return std::all_of(small.begin(), small.end(),
                     [&](const Sort& s) { return std::find(big.begin(), big.end(), s) != big.end(); });
}

std::string g_text(const TaggedMonotone& g) {
  std::string out = "[";
  for (std::size_t i = 0; i < g.values.size(); ++i) out += (i ? "," : "") + g.values[i].to_string();
  return out + "]";
}

}  // namespace

ValidationReport check_witness(const Model& model, const WitnessPlan& plan) {
  const ParameterSpec& spec = model.spec();
  ValidationCheck a = named("a_partial_order");
  ValidationCheck b = named("b_index_monotone");
  ValidationCheck c = named("c_levels");
  ValidationCheck d = named("d_family_coherence");
  ValidationCheck e = named("e_chain_bounds");
  ValidationCheck f = named("f_extension");

  const InitResult init = init_state(spec, plan.s_star, plan.alpha);
  const Ordinal moves = symbolic_game_length(plan.alpha);
  std::size_t room = plan.chain_length;
  if (auto n = moves.as_natural()) room = std::min<std::size_t>(room, *n);
  RespondOptions options;
  options.fault_equal_values = plan.fault;

  std::mt19937_64 rng(plan.seed);
  std::vector<TaggedMonotone> seen;
  for (std::size_t k = 0; k < plan.chains; ++k) {
    std::vector<Sort> pool{plan.s_star};
    for (std::size_t i = 0; i < kPoolSample; ++i) pool.push_back(random_sort(rng, spec.N, plan.max_sort_size));
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    std::vector<IsoState> chain{init.state};
    std::vector<std::vector<Sort>> demanded{{}};
    while (chain.size() <= room) {
      std::vector<ModelElement> left;
      std::vector<Sort> ds;
      const std::size_t size = 1 + rng() % plan.mu;
      for (std::size_t i = 0; i < size; ++i) {
        ds.push_back(pool[rng() % pool.size()]);
        left.push_back(ModelElement::identity(spec.mode, ds.back()));
      }
      RespondResult r = respond(model, chain.back(), left, {}, options);
      record(f, !r.stuck, "respond stuck: " + r.reason);
      if (r.stuck) break;
      chain.push_back(std::move(r.state));
      demanded.push_back(std::move(ds));
    }

    std::vector<std::vector<Sort>> index;
    std::vector<Family> fam;
    for (const IsoState& st : chain) {
      index.push_back(index_set(spec, st.g, pool));
      fam.push_back(family_of(spec, st.g, pool));
      seen.push_back(st.g);
    }

    for (std::size_t i = 0; i < chain.size(); ++i) {
      const TaggedMonotone& gi = chain[i].g;
      // (c): g lies in R_beta for the single beta = max value, and beta is the stage.
      const Ordinal level = gi.max_value();
      record(c, level < gi.tag && level == chain[i].round,
             "stage " + std::to_string(i) + " g = " + g_text(gi) + " is at level " + level.to_string());
      // (d): the family is in C and, along the chain, restricts to earlier families.
      record(d, model.membership_C(fam[i]), "family of stage " + std::to_string(i) + " is not in C");
      for (std::size_t j = i; j < chain.size(); ++j) {
        const TaggedMonotone& gj = chain[j].g;
        const bool le = r_leq(gi, gj);
        record(a, le, "stage " + std::to_string(i) + " is not below stage " + std::to_string(j));
        if (i != j) record(a, !r_leq(gj, gi), "antisymmetry fails between stages");
        record(b, !le || contains_all(index[j], index[i]), "index set shrinks from stage " + std::to_string(i));
        record(d, fam[j].restricted_to(index[i]) == fam[i],
               "family of stage " + std::to_string(j) + " does not restrict to stage " + std::to_string(i) + ": " +
                   fam[j].restricted_to(index[i]).to_string() + " vs " + fam[i].to_string());
      }
      for (const Sort& s : demanded[i]) {
        record(f, std::find(index[i].begin(), index[i].end(), s) != index[i].end(),
               "demanded sort " + sort_to_string(s) + " missing from the index set");
      }
    }

    // (e): every prefix has an upper bound at the level of its last stage.
    for (std::size_t len = 1; len <= chain.size(); ++len) {
      std::vector<IsoState> prefix(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(len));
      try {
        IsoState ub = limit_union(prefix);
        bool ok = ub.g.max_value() == prefix.back().g.max_value();
        for (const IsoState& s : prefix) ok = ok && r_leq(s.g, ub.g) && s.map.is_subset_of(ub.map);
        record(e, ok, "union is not an upper bound of a chain of length " + std::to_string(len));
      } catch (const StrategyError& err) {
        record(e, false, err.what());
      }
    }

    // Transitivity across chains: they share g0, so mixed triples are informative.
    if (seen.size() >= 3) {
      for (int t = 0; t < 8; ++t) {
        const TaggedMonotone& x = seen[rng() % seen.size()];
        const TaggedMonotone& y = seen[rng() % seen.size()];
        const TaggedMonotone& z = seen[rng() % seen.size()];
        record(a, !(r_leq(x, y) && r_leq(y, z)) || r_leq(x, z), "transitivity fails");
        record(a, !(r_leq(x, y) && r_leq(y, x)) || x == y, "antisymmetry fails");
      }
    }
  }

  ValidationReport report;
  report.checks = {a, b, c, d, e, f};
  if (plan.fault) report.notes.push_back("fault run: new positions repeat the old maximum");
  return report;
}

}  // namespace efeq
