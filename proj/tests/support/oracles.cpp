#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace oracle {

namespace {

int image(const Pairs& f, int x) {
  for (const auto& [a, b] : f) {
    if (a == x) return b;
  }
  return -1;
}

int preimage(const Pairs& f, int y) {
  for (const auto& [a, b] : f) {
    if (b == y) return a;
  }
  return -1;
}

}  // namespace

bool partial_iso(const efeq::FiniteStructure& a, const efeq::FiniteStructure& b, const Pairs& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (i != j && (f[i].first == f[j].first || f[i].second == f[j].second)) return false;
    }
  }
  const auto& vocab = a.vocabulary();
  for (std::size_t p = 0; p < vocab.predicates().size() && !f.empty(); ++p) {
    const int arity = vocab.predicates()[p].arity;
    // Every tuple over the domain, in both structures.
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    while (true) {
      std::vector<int> left, right;
      for (std::size_t k : idx) {
        left.push_back(f[k].first);
        right.push_back(f[k].second);
      }
      if (a.holds(p, left) != b.holds(p, right)) return false;
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == f.size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  for (std::size_t fn = 0; fn < vocab.functions().size(); ++fn) {
    for (const auto& [x, y] : f) {
      const auto fx = a.apply(fn, x);
      const auto fy = b.apply(fn, y);
      const int fx_img = fx ? image(f, *fx) : -1;
      const int fy_pre = fy ? preimage(f, *fy) : -1;
      if (fx_img >= 0 && (!fy || *fy != fx_img)) return false;
      if (fy_pre >= 0 && (!fx || *fx != fy_pre)) return false;
    }
  }
  for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
    const int ca = a.constant(c), cb = b.constant(c);
    const int ia = image(f, ca), pb = preimage(f, cb);
    if (ia >= 0 && ia != cb) return false;
    if (pb >= 0 && pb != ca) return false;
  }
  return true;
}

bool iso_wins(const efeq::FiniteStructure& a, const efeq::FiniteStructure& b, int rounds, int mu, const Pairs& seed) {
  if (!partial_iso(a, b, seed)) return false;
  if (rounds == 0) return true;
  // Elements tagged: 0..|A|-1 on the left, |A|.. on the right.
  const int na = a.size(), nb = b.size();
  std::vector<std::vector<int>> demands;
  std::vector<int> cur;
  std::function<void(int)> pick = [&](int from) {
    if (!cur.empty()) demands.push_back(cur);
    if (static_cast<int>(cur.size()) == mu) return;
    for (int e = from; e < na + nb; ++e) {
      cur.push_back(e);
      pick(e + 1);
      cur.pop_back();
    }
  };
  pick(0);

  for (const auto& d : demands) {
    std::vector<int> lefts, rights;
    for (int e : d) {
      if (e < na) {
        if (image(seed, e) < 0) lefts.push_back(e);
      } else if (preimage(seed, e - na) < 0) {
        rights.push_back(e - na);
      }
    }
    // ISO answers: any injective choice of partners for the uncovered demands.
    bool answered = false;
    Pairs trial = seed;
    std::function<void(std::size_t)> answer = [&](std::size_t k) {
      if (answered) return;
      if (k == lefts.size() + rights.size()) {
        if (partial_iso(a, b, trial) && iso_wins(a, b, rounds - 1, mu, trial)) answered = true;
        return;
      }
      if (k < lefts.size()) {
        const int x = lefts[k];
        if (image(trial, x) >= 0) return answer(k + 1);
        for (int y = 0; y < nb && !answered; ++y) {
          if (preimage(trial, y) >= 0) continue;
          trial.emplace_back(x, y);
          answer(k + 1);
          trial.pop_back();
        }
      } else {
        const int y = rights[k - lefts.size()];
        if (preimage(trial, y) >= 0) return answer(k + 1);
        for (int x = 0; x < na && !answered; ++x) {
          if (image(trial, x) >= 0) continue;
          trial.emplace_back(x, y);
          answer(k + 1);
          trial.pop_back();
        }
      }
    };
    answer(0);
    if (!answered) return false;
  }
  return true;
}

efeq::FiniteStructure random_structure(std::mt19937_64& rng, int size, bool with_function, bool with_constant) {
  std::vector<efeq::FunctionSymbol> fns;
  if (with_function) fns.push_back({"f", std::nullopt});
  std::vector<std::string> consts;
  if (with_constant) consts.push_back("c");
  efeq::StructureBuilder b(efeq::Vocabulary({{"R", 2}, {"P", 1}}, fns, consts), size);
  for (int x = 0; x < size; ++x) {
    if (rng() % 2) b.add_tuple("P", {x});
    for (int y = 0; y < size; ++y) {
      if (rng() % 3 == 0) b.add_tuple("R", {x, y});
    }
    if (with_function && rng() % 3 != 0) b.set_function("f", x, static_cast<int>(rng() % size));
  }
  if (with_constant) b.set_constant("c", static_cast<int>(rng() % size));
  return b.build();
}

efeq::FiniteStructure perturbed_copy(const efeq::FiniteStructure& a, std::mt19937_64& rng, bool flip) {
  const auto& v = a.vocabulary();
  const int n = a.size();
  std::size_t target = v.predicates().size();
  std::vector<int> where;
  if (flip && !v.predicates().empty()) {
    target = rng() % v.predicates().size();
    for (int i = 0; i < v.predicates()[target].arity; ++i) where.push_back(static_cast<int>(rng() % n));
  }
  efeq::StructureBuilder b(v, n);
  for (std::size_t p = 0; p < v.predicates().size(); ++p) {
    const int arity = v.predicates()[p].arity;
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    while (true) {
      if (a.holds(p, t) != (p == target && t == where)) b.add_tuple(v.predicates()[p].name, t);
      std::size_t pos = 0;
      while (pos < t.size() && ++t[pos] == n) t[pos++] = 0;
      if (pos == t.size()) break;
    }
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    for (int x = 0; x < n; ++x) {
      if (auto y = a.apply(f, x)) b.set_function(v.functions()[f].name, x, *y);
    }
  }
  for (std::size_t c = 0; c < v.constants().size(); ++c) b.set_constant(v.constants()[c], a.constant(c));
  return b.build();
}

std::vector<std::uint64_t> min_formula_h(const std::vector<std::uint64_t>& g) {
  const std::uint64_t n = g.size();
  std::vector<std::uint64_t> h;
  for (std::uint64_t gamma = 0; gamma < n; ++gamma) {
    std::uint64_t best = n;
    for (std::uint64_t b = 0; b <= n; ++b) {
      if (b == n || g[b] > g[gamma]) {
        best = b;
        break;
      }
    }
    h.push_back(best);
  }
  return h;
}

Word reduce_by_scanning(Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].first == w[i + 1].first && w[i].second == -w[i + 1].second) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

int compare_cnf(const Cnf& a, const Cnf& b) {
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    if (i >= a.size()) return -1;
    if (i >= b.size()) return 1;
    if (a[i].first != b[i].first) return a[i].first < b[i].first ? -1 : 1;
    if (a[i].second != b[i].second) return a[i].second < b[i].second ? -1 : 1;
  }
  return 0;
}

Cnf add_cnf(const Cnf& a, const Cnf& b) {
  if (b.empty()) return a;
  const std::uint64_t lead = b.front().first;
  Cnf out;
  for (const auto& t : a) {
    if (t.first > lead) out.push_back(t);
  }
  std::uint64_t carry = 0;
  for (const auto& t : a) {
    if (t.first == lead) carry = t.second;
  }
  out.emplace_back(lead, b.front().second + carry);
  for (std::size_t i = 1; i < b.size(); ++i) out.push_back(b[i]);
  return out;
}

std::set<BoolPair> boolean_subgroup(const std::vector<BoolPair>& gens) {
  auto xor_sets = [](const std::set<std::string>& x, const std::set<std::string>& y) {
    std::set<std::string> out;
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::inserter(out, out.end()));
    return out;
  };
  std::set<BoolPair> all{{{}, {}}};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<BoolPair> snapshot(all.begin(), all.end());
    for (const auto& s : snapshot) {
      for (const auto& g : gens) {
        if (all.insert({xor_sets(s.first, g.first), xor_sets(s.second, g.second)}).second) grew = true;
      }
    }
  }
  return all;
}

}  // namespace oracle
