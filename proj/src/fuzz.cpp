#include <set>
#include <sstream>

#include "fuzz_internal.hpp"
#include "selectlab/error.hpp"

namespace selectlab {

namespace fuzz {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t seed, std::string_view suite, int index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : suite) h = (h ^ c) * 0x100000001b3ULL;
  return splitmix(splitmix(seed) ^ h ^ splitmix(static_cast<std::uint64_t>(index) + 0x51ed27ULL));
}

Json abstract_scenario(const std::string& name, const GameSpec& g) {
  Scenario s;
  s.name = name;
  s.flavor = Flavor::AbstractGame;
  s.horizon = g.horizon();
  s.game = g;
  return to_json(s);
}

}  // namespace fuzz

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {"determinacy", "translation", "duality", "predetermined-closed",
                                               "covering-pre", "refinement", "gamma", "tukey", "ground",
                                               "open-question-gamma-two"};
  return ids;
}

bool is_exploratory(const std::string& suite) { return suite == "open-question-gamma-two"; }

FuzzReport run_fuzz(const FuzzOptions& options) {
  if (options.count < 1) throw Error(ErrorCode::InvalidCount, "count must be at least 1", options.count);
  FuzzReport rep;
  rep.seed = options.seed;
  rep.count = options.count;
  rep.suites = options.suites.empty() ? suite_ids() : options.suites;
  for (const auto& s : rep.suites)
    if (std::find(suite_ids().begin(), suite_ids().end(), s) == suite_ids().end())
      throw Error(ErrorCode::InvalidArgument, "unknown suite '" + s + "'");

  for (const auto& suite : rep.suites) {
    SuiteSummary& summary = rep.summary[suite];
    for (int i = 0; i < options.count; ++i) {
      fuzz::Rng rng(fuzz::instance_seed(options.seed, suite, i));
      fuzz::Sink sink{suite, i, &summary, &rep.violations, &rep.findings, &rep.budget_exceeded};
      if (is_exploratory(suite)) sink.violations = &rep.findings;
      ++summary.instances;
      try {
        if (suite == "determinacy") fuzz::suite_determinacy(rng, sink);
        else if (suite == "translation") fuzz::suite_translation(rng, sink);
        else if (suite == "duality") fuzz::suite_duality(rng, sink);
        else if (suite == "predetermined-closed") fuzz::suite_predetermined_closed(rng, i, sink);
        else if (suite == "covering-pre") fuzz::suite_covering_pre(rng, i, sink);
        else if (suite == "refinement") fuzz::suite_refinement(rng, i, sink);
        else if (suite == "gamma") fuzz::suite_gamma(rng, sink);
        else if (suite == "tukey") fuzz::suite_tukey(rng, sink);
        else if (suite == "ground") fuzz::suite_ground(rng, sink);
        else fuzz::suite_open_question(rng, i, sink);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::BudgetExceeded) {
          sink.budget_exceeded();
        } else {
          sink.violation("unexpected-error", Json{{"error", e.what()}});
        }
      }
    }
  }
  return rep;
}

namespace {

Json entries_to_json(const std::vector<FuzzEntry>& v) {
  Json out = Json::array();
  for (const auto& e : v)
    out.push_back({{"suite", e.suite}, {"property", e.property}, {"instance", e.instance}, {"detail", e.detail}});
  return out;
}

}  // namespace

Json to_json(const FuzzReport& r) {
  Json summary = Json::object();
  for (const auto& [suite, s] : r.summary) {
    Json stats = Json::object();
    for (const auto& [k, v] : s.stats) stats[k] = v;
    summary[suite] = {{"instances", s.instances}, {"skipped", s.skipped}, {"stats", stats}};
  }
  return {{"seed", r.seed},
          {"count", r.count},
          {"suites", r.suites},
          {"summary", summary},
          {"violations", entries_to_json(r.violations)},
          {"findings", entries_to_json(r.findings)},
          {"budget_exceeded", r.budget_exceeded}};
}

std::string to_text(const FuzzReport& r) {
  std::ostringstream os;
  os << "seed " << r.seed << ", count " << r.count << "\n";
  for (const auto& suite : r.suites) {
    const auto& s = r.summary.at(suite);
    std::size_t v = 0, f = 0;
    for (const auto& e : r.violations) v += e.suite == suite;
    for (const auto& e : r.findings) f += e.suite == suite;
    os << "  " << suite << ": " << s.instances << " instances, " << s.skipped << " skipped, " << v << " violations";
    if (f > 0) os << ", " << f << " findings";
    os << "\n";
  }
  for (const auto& e : r.violations) os << "  VIOLATION " << e.suite << "#" << e.instance << " " << e.property << "\n";
  os << "budget exceeded: " << r.budget_exceeded << "\n";
  return os.str();
}

int exit_code(const FuzzReport& r) {
  if (!r.violations.empty()) return 2;
  if (r.budget_exceeded > 0) return 3;
  return 0;
}

std::vector<GroundSpace> all_topologies(int size, std::size_t max_opens) {
  const Mask universe = low_bits(size);
  std::vector<Mask> proper;
  for (Mask s = 1; s < universe; ++s) proper.push_back(s);
  std::vector<std::vector<Mask>> found;
  for (Mask pick = 0; pick < (Mask{1} << proper.size()); ++pick) {
    if (static_cast<std::size_t>(popcount(pick)) + 2 > max_opens) continue;
    std::vector<Mask> opens{0};
    for_each_bit(pick, [&](int i) { opens.push_back(proper[static_cast<std::size_t>(i)]); });
    if (size > 0) opens.push_back(universe);
    std::set<Mask> in(opens.begin(), opens.end());
    bool closed = true;
    for (std::size_t i = 0; i < opens.size() && closed; ++i)
      for (std::size_t j = i + 1; j < opens.size() && closed; ++j)
        closed = in.contains(opens[i] | opens[j]) && in.contains(opens[i] & opens[j]);
    if (closed) found.emplace_back(in.begin(), in.end());
  }
  std::sort(found.begin(), found.end());
  std::vector<GroundSpace> out;
  for (const auto& opens : found) out.push_back(build_topology(size, opens));
  return out;
}

RefinementCensus refinement_census(std::uint64_t seed, int pairs_per_topology) {
  RefinementCensus c;
  int index = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& space : all_topologies(n, 12)) {
      ++c.topologies;
      fuzz::Rng rng(fuzz::instance_seed(seed, "refinement-census", index++));
      for (int p = 0; p < pairs_per_topology; ++p) {
        ++c.pairs;
        std::vector<Mask> a, b;
        for (int k = rng.range(0, 3); k > 0; --k) a.push_back(rng.subset(n));
        for (int k = rng.range(0, 3); k > 0; --k) b.push_back(rng.subset(n));
        const SetFamily fa(space, a), fb(space, b);
        const auto covers = min_covers(space, fb, SIZE_MAX);
        const bool cover_condition = std::all_of(covers.covers.begin(), covers.covers.end(), [&](const auto& cv) {
          return classify_cover(space, fa, cv).is_O;
        });
        if (refines(fa, fb) != cover_condition) {
          ++c.plain_discrepancies;
          if (space.points_closed()) ++c.plain_discrepancies_t1;
          if (c.example.is_null())
            c.example = {{"opens", masks_to_json(space.opens())}, {"a", masks_to_json(fa.members())},
                         {"b", masks_to_json(fb.members())}, {"refines", !cover_condition}};
        }
        if (refines_in(space, fa, fb) != cover_condition) ++c.topological_discrepancies;
      }
    }
  }
  return c;
}

}  // namespace selectlab
