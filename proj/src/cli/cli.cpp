#include "efeq/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "efeq/campaign.hpp"
#include "efeq/solver.hpp"
#include "efeq/structure_io.hpp"
#include "efeq/transcript_io.hpp"

namespace efeq::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecArgs {
  std::string path;
  std::uint64_t n = 16;
  std::string alpha_star = "5";
  std::string mode = "free";
  std::string variant = "uniform";

  void add(CLI::App* app) {
    app->add_option("--param", path, "parameter file (JSON); overrides the flags below");
    app->add_option("--N", n, "N when no parameter file is given");
    app->add_option("--alpha-star", alpha_star, "alphaStar when no parameter file is given");
    app->add_option("--mode", mode, "free | boolean")->check(CLI::IsMember({"free", "boolean"}));
    app->add_option("--variant", variant, "uniform | zeroFree")->check(CLI::IsMember({"uniform", "zeroFree"}));
  }

  ParameterSpec load() const {
    if (!path.empty()) return load_spec(path);
    ParameterSpec s;
    s.N = n;
    s.alpha_star = Ordinal::parse(alpha_star);
    s.mode = mode == "boolean" ? GroupMode::boolean : GroupMode::free_group;
    s.variant = t_variant_from_string(variant);
    s.validate();
    return s;
  }
};

Sort parse_sort_arg(const std::string& text) {
  try {
    return parse_sort(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<Sort> parse_sort_list(const std::string& text) {
  std::vector<Sort> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(parse_sort_arg(item));
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  return nlohmann::json::parse(f);
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string left, right, seedmap, strategy_out;
  int rounds = 2;
  std::uint64_t mu = 1;
  std::uint64_t budget = 50'000'000;
  bool canonical = false;
};

int cmd_solve(const SolveArgs& a, bool json, std::uint64_t seed, std::ostream& out) {
  const FiniteStructure left = load_structure(a.left);
  const FiniteStructure right = load_structure(a.right);
  if (a.rounds < 0) throw UsageError("--rounds must be non-negative");
  GameConfig cfg;
  cfg.length = Ordinal(static_cast<std::uint64_t>(a.rounds));
  cfg.mu = a.mu;
  if (!a.seedmap.empty()) cfg.seed = map_from_json<ElementId>(read_json(a.seedmap));
  SolveOptions opt;
  opt.node_budget = a.budget;
  opt.canonical_keys = a.canonical;
  const SolveResult r = solve(left, right, cfg, opt);
  if (!a.strategy_out.empty() && r.strategy.valid()) write_text(a.strategy_out, r.strategy.table().dump(2) + "\n");
  if (json) {
    out << nlohmann::json{{"verdict", to_string(r.status)}, {"nodes", r.nodes}, {"rounds", a.rounds}, {"mu", a.mu}, {"seed", seed}}
               .dump(2)
        << "\n";
  } else {
    out << to_string(r.status) << " (rounds " << a.rounds << ", mu " << a.mu << ", nodes " << r.nodes << ")\n";
  }
  switch (r.status) {
    case SolveStatus::iso_wins: return kIsoWins;
    case SolveStatus::ais_wins: return kAisWins;
    default: return kBudgetExceeded;
  }
}

// ---- play -----------------------------------------------------------------

struct PlayArgs {
  SpecArgs spec;
  std::string alpha = "3";
  std::uint64_t mu = 4;
  std::string adversary = "random";
  std::size_t count = 10;
  std::size_t threads = 0;
  std::string s_star = "[0,1]";
  std::string out_path, replay_path, config_path, transcripts_path;
  bool interactive = false;
};

int play_single(const Model& model, const GameOptions& o, AisPlayer<ModelElement>& ais, bool json, std::ostream& out,
                std::ostream& err, const std::string& out_path) {
  InitResult init = init_state(model.spec(), o.s_star, o.alpha);
  SymbolicArena arena(model, init.c1, init.c2);
  ModelGameConfig cfg;
  cfg.length = symbolic_game_length(o.alpha);
  cfg.mu = o.mu;
  cfg.seed = init.state.map;
  CanonicalIsoPlayer iso(model, init.state);
  const ModelTranscript t = play(arena, cfg, iso, ais);
  const VerifyResult v = verify_transcript(arena, cfg, t);
  ElementCodec<ModelElement> codec{model.mode()};
  const nlohmann::json tj = transcript_to_json(t, codec);
  if (!v.ok) {
    err << "verification failed at round " << v.round << ": " << v.failure << "\n" << tj.dump(2) << "\n";
    return kVerificationFailed;
  }
  if (!out_path.empty()) write_text(out_path, tj.dump(2) + "\n");
  const bool complete = t.outcome == PlayOutcome::completed;
  if (json) {
    out << nlohmann::json{{"outcome", to_string(t.outcome)}, {"verified", true}, {"complete", complete}, {"seed", o.seed}}
               .dump(2)
        << "\n";
  } else {
    out << "transcript verified" << (complete ? "" : ", marked incomplete") << " (" << to_string(t.outcome) << ")\n";
  }
  return t.outcome == PlayOutcome::iso_stuck ? kVerificationFailed : 0;
}

int cmd_play(const PlayArgs& a, bool json, std::uint64_t seed, std::istream& in, std::ostream& out, std::ostream& err) {
  const Model model(a.spec.load());
  const Ordinal alpha = Ordinal::parse(a.alpha);
  if (alpha.is_zero()) throw UsageError("--alpha must be at least 1");
  if (a.mu == 0) throw UsageError("--mu must be at least 1");

  GameOptions o;
  o.alpha = alpha;
  o.mu = a.mu;
  o.seed = seed;
  o.s_star = parse_sort_arg(a.s_star);
  if (a.interactive) {
    err << "you play AIS; elements look like ([0,1], g<key>*g<key>^-1)\n";
    InteractiveAdversary ais(model.mode(), in, err);
    return play_single(model, o, ais, json, out, err, a.out_path);
  }
  if (!a.replay_path.empty()) {
    ElementCodec<ModelElement> codec{model.mode()};
    const ModelTranscript t = transcript_from_json<ModelElement>(read_json(a.replay_path), codec);
    ReplayAdversary ais(t);
    return play_single(model, o, ais, json, out, err, a.out_path);
  }

  CampaignConfig c;
  if (!a.config_path.empty()) {
    c = campaign_config_from_json(read_json(a.config_path));
  } else {
    c.alphas = {alpha};
    c.mu = a.mu;
    c.adversaries = {adversary_kind_from_string(a.adversary)};
    c.games = a.count;
    c.s_star = o.s_star;
  }
  c.seed = seed;
  c.threads = a.threads;
  c.keep_records = !a.transcripts_path.empty();
  const CampaignResult r = run_campaign(model, c);
  if (r.first_failure) {
    err << "verification failure; transcript follows\n" << game_to_json(*r.first_failure, model.mode()).dump(2) << "\n";
    return kVerificationFailed;
  }
  nlohmann::json summary = r.to_json(model.mode());
  summary["seed"] = seed;
  summary["config"] = campaign_config_to_json(c);
  if (!a.out_path.empty()) write_text(a.out_path, summary.dump(2) + "\n");
  if (c.keep_records) {
    nlohmann::json games = nlohmann::json::array();
    for (const GameRecord& g : r.records) games.push_back(game_to_json(g, model.mode()));
    write_text(a.transcripts_path, games.dump(2) + "\n");
  }
  if (json) {
    out << summary.dump(2) << "\n";
  } else {
    out << r.passed << "/" << r.games << " verified, " << r.stuck << " stuck, seed " << seed << "\n";
  }
  return r.all_pass() ? 0 : kVerificationFailed;
}

// ---- validate / rigidity / export ----------------------------------------

struct ValidateArgs {
  SpecArgs spec;
  ValidationBound bound;
};

int cmd_validate(const ValidateArgs& a, bool json, std::uint64_t seed, std::ostream& out) {
  ValidationBound b = a.bound;
  b.seed = seed;
  const ValidationReport r = validate_full_parameter(a.spec.load(), b);
  if (json) {
    nlohmann::json j = r.to_json();
    j["seed"] = seed;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& c : r.checks) {
      out << c.name << ": " << (c.passed() ? "pass" : "FAIL") << " (" << c.checked << " checked)\n";
      for (const auto& v : c.violations) out << "  " << v << "\n";
    }
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    out << (r.all_pass() ? "all clauses pass" : "some clauses fail") << "\n";
  }
  return r.all_pass() ? 0 : kChecksFailed;
}

struct RigidityArgs {
  SpecArgs spec;
  std::size_t pool_size = 2;
  std::size_t word_bound = 1;
  bool top = true;
  std::string candidates;
};

int cmd_rigidity(const RigidityArgs& a, bool json, std::uint64_t seed, std::ostream& out) {
  const Model model(a.spec.load());
  std::vector<Sort> pool = enumerate_sorts(model.spec().N, a.pool_size);
  if (a.top) {
    Sort all;
    for (std::uint64_t i = 0; i < model.spec().N; ++i) all.push_back(i);
    if (std::find(pool.begin(), pool.end(), all) == pool.end()) pool.push_back(all);
  }
  const auto found = nontrivial_family_probe(model, pool, a.word_bound);
  nlohmann::json j = {{"seed", seed}, {"poolSize", pool.size()}, {"found", found.has_value()}};
  if (found) j["family"] = found->to_string();
  if (!a.candidates.empty()) {
    nlohmann::json traces = nlohmann::json::array();
    for (const auto& c : read_json(a.candidates)) traces.push_back(obstruction_trace(model.spec(), candidate_from_json(c)));
    j["traces"] = traces;
  }
  if (json) {
    out << j.dump(2) << "\n";
  } else {
    out << (found ? "nontrivial family found (finite-scale divergence documented)" : "no nontrivial family within bounds")
        << "\n";
    if (j.contains("traces")) {
      for (const auto& t : j["traces"]) out << "trace: " << t["verdict"].get<std::string>() << "\n";
    }
  }
  return 0;
}

struct ExportArgs {
  SpecArgs spec;
  std::string sorts = "[0];[0,1]";
  std::size_t word_bound = 1;
  std::size_t random_keys = 2;
  std::string keys_path, out_path;
};

int cmd_export(const ExportArgs& a, std::uint64_t seed, std::ostream& out) {
  const Model model(a.spec.load());
  const std::vector<Sort> sorts = parse_sort_list(a.sorts);
  if (sorts.empty()) throw UsageError("--sorts is empty");
  std::vector<GeneratorKey> keys;
  if (!a.keys_path.empty()) {
    for (const auto& k : read_json(a.keys_path)) keys.push_back(GeneratorKey::parse(k.get<std::string>()));
  } else {
    Sort top;
    for (const Sort& s : sorts) top.insert(top.end(), s.begin(), s.end());
    top = make_sort(top);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < a.random_keys; ++i) keys.push_back(random_key(model.spec(), top, rng));
  }
  const FiniteStructure s = export_fragment(model, sorts, a.word_bound, keys);
  if (a.out_path.empty()) {
    out << structure_to_json(s).dump(2) << "\n";
  } else {
    save_structure(s, a.out_path);
    out << "wrote " << s.size() << " elements to " << a.out_path << " (seed " << seed << ")\n";
  }
  return 0;
}

// ---- repl -----------------------------------------------------------------

int cmd_repl(const SpecArgs& spec_args, std::uint64_t seed, std::istream& in, std::ostream& out) {
  const Model model(spec_args.load());
  out << "efeq repl; commands: check <elem> | q <elem> ; <elem> | family <sort>;<sort>.. | play <alpha> | quit\n";
  std::string line;
  while (out << "> " << std::flush, std::getline(in, line)) {
    std::istringstream words(line);
    std::string cmd;
    words >> cmd;
    std::string rest;
    std::getline(words, rest);
    try {
      if (cmd.empty()) continue;
      if (cmd == "quit" || cmd == "exit") break;
      if (cmd == "check") {
        const ModelElement x = ModelElement::parse(rest, model.mode());
        auto why = model.element_violation(x);
        out << (why ? "invalid: " + *why : "valid") << "\n";
      } else if (cmd == "q") {
        const auto semi = rest.find(';');
        if (semi == std::string::npos) throw UsageError("expected q <elem> ; <elem>");
        const ModelElement x = ModelElement::parse(rest.substr(0, semi), model.mode());
        const ModelElement y = ModelElement::parse(rest.substr(semi + 1), model.mode());
        out << (model.eval_atomic(QAtom{x.sort, y.sort, x, y}) ? "true" : "false") << "\n";
      } else if (cmd == "family") {
        const auto f = nontrivial_family_probe(model, parse_sort_list(rest), 1);
        out << (f ? f->to_string() : "none") << "\n";
      } else if (cmd == "play") {
        GameOptions o;
        o.alpha = Ordinal::parse(rest.empty() ? "3" : rest);
        o.seed = seed;
        InteractiveAdversary ais(model.mode(), in, out);
        play_single(model, o, ais, false, out, out, "");
      } else {
        out << "unknown command '" << cmd << "'\n";
      }
    } catch (const std::exception& e) {
      out << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ehrenfeucht-Fraisse games: finite solver and the symbolic group model"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  std::string format = "text";
  app.add_option("--seed", seed, "seed for every random choice")->capture_default_str();
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "decide the finite game between two structure files");
  solve_cmd->add_option("left", solve_args.left)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("right", solve_args.right)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--rounds,-k", solve_args.rounds)->capture_default_str();
  solve_cmd->add_option("--mu", solve_args.mu)->capture_default_str()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--budget", solve_args.budget, "node cap")->capture_default_str();
  solve_cmd->add_option("--seedmap", solve_args.seedmap, "starting partial map, JSON pairs");
  solve_cmd->add_option("--strategy-out", solve_args.strategy_out);
  solve_cmd->add_flag("--canonical", solve_args.canonical, "memoize positions up to automorphism");

  PlayArgs play_args;
  auto* play_cmd = app.add_subcommand("play", "play the canonical strategy against adversaries");
  play_args.spec.add(play_cmd);
  play_cmd->add_option("--alpha", play_args.alpha)->capture_default_str();
  play_cmd->add_option("--mu", play_args.mu)->capture_default_str();
  play_cmd->add_option("--adversary", play_args.adversary)->check(CLI::IsMember({"random", "boundary"}));
  play_cmd->add_option("--count", play_args.count)->capture_default_str();
  play_cmd->add_option("--threads", play_args.threads);
  play_cmd->add_option("--anchor", play_args.s_star, "anchor sort s*")->capture_default_str();
  play_cmd->add_option("--out", play_args.out_path);
  play_cmd->add_option("--transcripts", play_args.transcripts_path, "write every verified game");
  play_cmd->add_option("--replay", play_args.replay_path, "replay the demands of a transcript");
  play_cmd->add_option("--config", play_args.config_path, "campaign config (JSON)");
  play_cmd->add_flag("--interactive", play_args.interactive, "type AIS demands on stdin");

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "check the parameter clauses on bounded samples");
  validate_args.spec.add(validate_cmd);
  validate_cmd->add_option("--max-u", validate_args.bound.max_u_size)->capture_default_str();
  validate_cmd->add_option("--tag-cap", validate_args.bound.tag_cap)->capture_default_str();
  validate_cmd->add_option("--samples", validate_args.bound.g_samples)->capture_default_str();

  RigidityArgs rigidity_args;
  auto* rigidity_cmd = app.add_subcommand("rigidity", "probe for nontrivial families; replay obstruction traces");
  rigidity_args.spec.add(rigidity_cmd);
  rigidity_cmd->add_option("--pool-size", rigidity_args.pool_size)->capture_default_str();
  rigidity_cmd->add_option("--word-bound", rigidity_args.word_bound)->capture_default_str();
  rigidity_cmd->add_flag("--top,!--no-top", rigidity_args.top, "add the full sort to the pool");
  rigidity_cmd->add_option("--candidates", rigidity_args.candidates, "JSON array of candidates");

  ExportArgs export_args;
  auto* export_cmd = app.add_subcommand("export", "write a finite fragment of the model as a structure file");
  export_args.spec.add(export_cmd);
  export_cmd->add_option("--sorts", export_args.sorts, "e.g. \"[0];[0,1]\"")->capture_default_str();
  export_cmd->add_option("--word-bound", export_args.word_bound)->capture_default_str();
  export_cmd->add_option("--keys", export_args.keys_path, "JSON array of generator keys");
  export_cmd->add_option("--random-keys", export_args.random_keys)->capture_default_str();
  export_cmd->add_option("--out", export_args.out_path);

  SpecArgs repl_spec;
  auto* repl_cmd = app.add_subcommand("repl", "evaluate atoms and play interactively");
  repl_spec.add(repl_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  const bool json = format == "json";
  try {
    if (*solve_cmd) return cmd_solve(solve_args, json, seed, out);
    if (*play_cmd) return cmd_play(play_args, json, seed, in, out, err);
    if (*validate_cmd) return cmd_validate(validate_args, json, seed, out);
    if (*rigidity_cmd) return cmd_rigidity(rigidity_args, json, seed, out);
    if (*export_cmd) return cmd_export(export_args, seed, out);
    if (*repl_cmd) return cmd_repl(repl_spec, seed, in, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const OrdinalError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const StrategyError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kUsage;
}

}  // namespace efeq::cli
