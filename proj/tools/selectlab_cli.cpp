// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 a check failed (violation, losing strategy, broken duality), 3 a search
// budget ran out.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "selectlab/error.hpp"
#include "selectlab/fuzz.hpp"
#include "selectlab/serialize.hpp"

using namespace selectlab;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;
constexpr int kBudget = 3;

struct Common {
  bool json = false;
  std::optional<int> horizon;
  std::uint64_t budget = MarkovOptions{}.node_budget;
  std::size_t max_exhibits = kDefaultMaxExhibits;
};

GameSpec load_game(const std::string& path, const Common& c) {
  return build_game(scenario_from_json(read_json_file(path)), c.horizon);
}

const char* name(Player p) { return p == Player::One ? "One" : "Two"; }

void emit(const Common& c, const Json& j, const std::string& text) {
  if (c.json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

int cmd_solve(const Common& c, const std::string& path) {
  const auto g = load_game(path, c);
  const auto d = solve(g);
  std::ostringstream os;
  os << "winner: " << name(d.winner) << "\nnodes: " << d.nodes_explored << ", memo hits: " << d.memo_hits << "\n";
  emit(c, to_json(d), os.str());
  return kOk;
}

int cmd_synth(const Common& c, const std::string& kind, const std::string& path) {
  const auto g = load_game(path, c);
  std::optional<Strategy> s;
  if (kind == "pre-one") {
    if (auto p = find_predetermined_one(g)) s = *p;
  } else {
    if (auto m = find_markov_two(g, MarkovOptions{c.budget})) s = *m;
  }
  const Json j = {{"found", s.has_value()}, {"strategy", s ? to_json(*s) : Json(nullptr)}};
  emit(c, j, s ? to_json(*s).dump() + "\n" : "none\n");
  return kOk;
}

int cmd_verify(const Common& c, const std::string& path, const std::string& strategy_path) {
  const auto g = load_game(path, c);
  const auto s = strategy_from_json(read_json_file(strategy_path));
  const auto r = verify(g, s, c.max_exhibits);
  std::ostringstream os;
  os << (r.valid ? "winning" : "losing") << " for " << name(r.owner) << ": " << r.losing_plays << " of "
     << r.plays_checked << " plays lost\n";
  for (const auto& p : r.counter_plays) os << "  " << to_json(p).dump() << "\n";
  emit(c, to_json(r), os.str());
  return r.valid ? kOk : kViolation;
}

int cmd_duality(const Common& c, const std::string& path) {
  const Json j = read_json_file(path);
  if (!j.contains("first") || !j.contains("second"))
    throw Error(ErrorCode::ParseError, "duality file needs 'first' and 'second' scenarios");
  const auto g1 = build_game(scenario_from_json(j["first"]), c.horizon);
  const auto g2 = build_game(scenario_from_json(j["second"]), c.horizon);
  const auto r = check_duality(g1, g2);
  std::ostringstream os;
  os << "strategic (One first <=> Two second): " << r.strategic_one_fam << "\n"
     << "strategic (One second <=> Two first): " << r.strategic_one_refl << "\n"
     << "predetermined/Markov (first): " << r.markov_one_fam << "\n"
     << "predetermined/Markov (second): " << r.markov_one_refl << "\n"
     << "all hold: " << r.all_hold << "\n";
  emit(c, to_json(r), os.str());
  return r.all_hold ? kOk : kViolation;
}

int cmd_translate(const Common& c, const std::string& pack_path, const std::string& src_path,
                  const std::string& dst_path, const std::string& direction, const std::string& input_path) {
  const auto pack = pack_from_json(read_json_file(pack_path));
  const auto src = load_game(src_path, c);
  const auto dst = load_game(dst_path, c);
  const Direction d = direction_from_string(direction);
  const bool two_side = d == Direction::MarkTwo || d == Direction::FullTwo;
  std::optional<Strategy> input;
  if (!input_path.empty()) {
    input = strategy_from_json(read_json_file(input_path));
  } else {
    const GameSpec& from = two_side ? src : dst;
    switch (d) {
      case Direction::MarkTwo:
        if (auto m = find_markov_two(from, MarkovOptions{c.budget})) input = *m;
        break;
      case Direction::PreOnePullback:
        if (auto p = find_predetermined_one(from)) input = *p;
        break;
      default: {
        auto s = solve(from);
        if (s.winner == (two_side ? Player::Two : Player::One)) input = s.witness;
      }
    }
    if (!input) throw Error(ErrorCode::InputNotWinning, "no winning input strategy of the required class exists");
  }
  const auto out = apply_translation(pack, src, dst, d, *input);
  const auto v = verify(two_side ? dst : src, out, c.max_exhibits);
  const Json j = {{"strategy", to_json(out)}, {"verification", to_json(v)}};
  emit(c, j, to_json(out).dump() + "\n" + (v.valid ? "verified winning\n" : "NOT winning\n"));
  return v.valid ? kOk : kViolation;
}

int cmd_cofinality(const Common& c, const std::string& path) {
  const auto pair = relpair_from_json(read_json_file(path));
  validate(pair);
  const auto cof = relative_cofinality(pair);
  const auto fam = least_dominating_family(pair);
  Json j = {{"cofinality", cof.to_string()}, {"witness", fam ? Json(*fam) : Json(nullptr)}};
  std::ostringstream os;
  os << "cofinality: " << cof.to_string() << "\n";
  if (fam) {
    os << "witness:";
    for (int i : *fam) os << " " << pair.carrier[static_cast<std::size_t>(i)];
    os << "\n";
  }
  emit(c, j, os.str());
  return kOk;
}

int cmd_fuzz(const Common& c, std::uint64_t seed, int count, const std::vector<std::string>& suites) {
  FuzzOptions o;
  o.seed = seed;
  o.count = count;
  for (const auto& s : suites) {
    std::stringstream ss(s);
    for (std::string id; std::getline(ss, id, ',');)
      if (!id.empty()) o.suites.push_back(id);
  }
  const auto r = run_fuzz(o);
  emit(c, to_json(r), to_text(r));
  return exit_code(r);
}

int cmd_corpus(const Common& c, const std::string& action, const std::string& which) {
  const auto corpus = builtin_corpus();
  Json j = Json::array();
  std::ostringstream os;
  bool matched = false;
  for (const auto& sc : corpus) {
    if (!which.empty() && sc.name != which) continue;
    matched = true;
    if (action == "list") {
      j.push_back(sc.name);
      os << sc.name << " (" << to_string(sc.flavor) << ", horizon " << sc.horizon << ")\n";
    } else if (action == "show") {
      j.push_back(to_json(sc));
      os << to_json(sc).dump(2) << "\n";
    } else {
      const auto d = solve(build_game(sc, c.horizon));
      j.push_back({{"name", sc.name}, {"winner", name(d.winner)}});
      os << sc.name << ": " << name(d.winner) << "\n";
    }
  }
  if (!matched) throw Error(ErrorCode::InvalidArgument, "no corpus scenario named '" + which + "'");
  emit(c, j, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite selection games: solving, synthesis, translation, duality and fuzzing"};
  app.require_subcommand(1);
  // Global flags may also follow the subcommand.
  app.fallthrough();
  Common c;
  app.add_flag("--json", c.json, "Machine-readable output");
  app.add_option("--horizon", c.horizon, "Override the scenario horizon");
  app.add_option("--budget", c.budget, "Node budget for Markov strategy search");
  app.add_option("--max-exhibits", c.max_exhibits, "Counter-plays to report when verification fails");

  std::string path, path2, path3, kind, direction, input, action, which;
  std::uint64_t seed = 0;
  int count = 100;
  std::vector<std::string> suites;

  auto* solve_cmd = app.add_subcommand("solve", "Determine the winner of a scenario");
  solve_cmd->add_option("scenario", path)->required();

  auto* synth = app.add_subcommand("synth", "Synthesize a limited-information winning strategy");
  synth->add_option("kind", kind)->required()->check(CLI::IsMember({"pre-one", "markov-two"}));
  synth->add_option("scenario", path)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check a strategy against every opponent");
  verify_cmd->add_option("scenario", path)->required();
  verify_cmd->add_option("strategy", path2)->required();

  auto* duality = app.add_subcommand("duality", "Check the duality clauses on a scenario pair");
  duality->add_option("pair", path)->required();

  auto* translate = app.add_subcommand("translate", "Transfer a strategy along a translation pack");
  translate->add_option("pack", path)->required();
  translate->add_option("src", path2)->required();
  translate->add_option("dst", path3)->required();
  translate->add_option("--direction", direction)
      ->required()
      ->check(CLI::IsMember({"mark-two", "full-two", "full-one-pullback", "pre-one-pullback"}));
  translate->add_option("--input", input, "Input strategy; synthesized when omitted");

  auto* cof = app.add_subcommand("cofinality", "Relative cofinality of an order pair");
  cof->add_option("pair", path)->required();

  auto* fuzz = app.add_subcommand("fuzz", "Run the seeded property suites");
  fuzz->add_option("--seed", seed);
  fuzz->add_option("--count", count);
  fuzz->add_option("--suite", suites, "Suite ids, comma separated or repeated");

  auto* corpus = app.add_subcommand("corpus", "Built-in scenarios");
  corpus->add_option("action", action)->required()->check(CLI::IsMember({"list", "run", "show"}));
  corpus->add_option("name", which);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(c, path);
    if (*synth) return cmd_synth(c, kind, path);
    if (*verify_cmd) return cmd_verify(c, path, path2);
    if (*duality) return cmd_duality(c, path);
    if (*translate) return cmd_translate(c, path, path2, path3, direction, input);
    if (*cof) return cmd_cofinality(c, path);
    if (*fuzz) return cmd_fuzz(c, seed, count, suites);
    if (*corpus) return cmd_corpus(c, action, which);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BudgetExceeded ? kBudget : kUsage;
  }
  return kUsage;
}
