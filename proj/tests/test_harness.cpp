#include <doctest.h>

#include "selectlab/error.hpp"
#include "selectlab/fuzz.hpp"
#include "selectlab/serialize.hpp"

using namespace selectlab;

namespace {

Mask m(std::initializer_list<int> items) { return mask_of(std::vector<int>(items)); }

template <class F>
void expect_error(ErrorCode code, F&& f, int detail = -2) {
  try {
    f();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
    if (detail != -2) CHECK(e.detail() == detail);
  }
}

}  // namespace

TEST_CASE("corpus scenarios round-trip through JSON") {
  for (const auto& sc : builtin_corpus()) {
    CAPTURE(sc.name);
    const auto j = to_json(sc);
    const auto back = scenario_from_json(j);
    CHECK(to_json(back) == j);
    const auto g = build_game(sc), h = build_game(back);
    CHECK(to_json(g) == to_json(h));
    const auto d = solve(g);
    CHECK(d.winner == solve(game_from_json(to_json(g))).winner);
    CHECK(to_json(strategy_from_json(to_json(d.witness))) == to_json(d.witness));
    CHECK(verify(g, strategy_from_json(to_json(d.witness))).valid);
  }
}

TEST_CASE("corpus verdicts") {
  std::map<std::string, Player> expected{
      {"point-open-discrete2-h1", Player::Two},     {"point-open-discrete2-h2", Player::One},
      {"point-open-discrete3-pairs", Player::One},  {"rothberger-discrete2-h1", Player::One},
      {"rothberger-discrete2-h2", Player::Two},     {"abstract-explicit-union", Player::Two},
  };
  for (const auto& sc : builtin_corpus()) {
    if (auto it = expected.find(sc.name); it != expected.end()) {
      CAPTURE(sc.name);
      CHECK(solve(build_game(sc)).winner == it->second);
    }
  }
}

TEST_CASE("builder errors") {
  const auto indiscrete = build_topology(2, std::span<const Mask>{});
  expect_error(ErrorCode::NoNeighborhood,
               [&] { build_point_open(indiscrete, SetFamily(indiscrete, {m({0})}), SetFamily(indiscrete, {}), 1); }, 0);
  expect_error(ErrorCode::NoCovers,
               [&] { build_rothberger(indiscrete, SetFamily(indiscrete, {m({0})}), SetFamily(indiscrete, {}), 1); });

  Scenario sierpinski;
  sierpinski.size = 2;
  sierpinski.subbasis = {m({0})};
  sierpinski.fam_a = {m({0})};
  sierpinski.fam_b = {m({0})};
  sierpinski.horizon = 1;
  expect_error(ErrorCode::NotClosedPoints, [&] { build_game(sierpinski); });
  sierpinski.flavor = Flavor::Rothberger;
  CHECK_NOTHROW(build_game(sierpinski));

  // Nothing to cover: the cover target holds of every play, so One wins.
  const auto d = discrete_space(2);
  CHECK(solve(build_point_open(d, singletons(d), SetFamily(d, {}), 2)).winner == Player::One);
  CHECK(build_game(builtin_corpus().front(), 3).horizon() == 3);
}

TEST_CASE("serialization round-trips") {
  CHECK(mask_to_json(m({0, 3})) == Json::array({0, 3}));
  CHECK(mask_from_json(Json::array({2, 0})) == m({0, 2}));
  CHECK_THROWS_AS(mask_from_json(Json::array({64})), Error);
  CHECK_THROWS_AS(mask_from_json(Json("x")), Error);

  const TranslationPack pack{{{0, 1}}, {{{0, 0}, {1, 1}}}};
  CHECK(pack_from_json(to_json(pack)) == pack);
  for (auto dir : {Direction::MarkTwo, Direction::FullTwo, Direction::FullOnePullback, Direction::PreOnePullback})
    CHECK(direction_from_string(to_string(dir)) == dir);
  expect_error(ErrorCode::ParseError, [] { direction_from_string("sideways"); });

  const auto pair = subset_pair({m({0}), m({0, 1})}, {1}, {0});
  const auto back = relpair_from_json(to_json(pair));
  CHECK(back.carrier == pair.carrier);
  CHECK(back.leq == pair.leq);
  CHECK(back.sub_a == pair.sub_a);
  CHECK(back.sub_b == pair.sub_b);
  const auto inclusion = relpair_from_json(Json::parse(R"({"sets": [[0], [0, 1]], "a": [1], "b": [0]})"));
  CHECK(relative_cofinality(inclusion) == ExtendedNat::finite(1));

  for (const Strategy& s : {Strategy{PreOne{{1, 0}}}, Strategy{MarkovTwo{{{1, 2}}}}, Strategy{FullTwo{{{{0}, 1}}}},
                            Strategy{FullOne{{{{}, 0}, {{1}, 1}}}}})
    CHECK(strategy_from_json(to_json(s)) == s);
  expect_error(ErrorCode::ParseError, [] { strategy_from_json(Json::parse(R"({"type": "mixed"})")); });
  expect_error(ErrorCode::ParseError, [] { scenario_from_json(Json::parse(R"({"flavor": "point-open"})")); });
  expect_error(ErrorCode::ParseError, [] { read_json_file("/nonexistent/scenario.json"); });
}

TEST_CASE("fuzz runs are reproducible") {
  FuzzOptions opts;
  opts.seed = 5;
  opts.count = 20;
  const auto a = to_json(run_fuzz(opts)).dump();
  const auto b = to_json(run_fuzz(opts)).dump();
  CHECK(a == b);
  const auto r = run_fuzz(opts);
  CHECK(r.violations.empty());
  CHECK(exit_code(r) == 0);
  CHECK(r.summary.size() == suite_ids().size());
  CHECK_FALSE(to_text(r).empty());

  // A single suite sees the same instances as it does inside a full run.
  FuzzOptions one = opts;
  one.suites = {"determinacy"};
  const auto solo = run_fuzz(one);
  CHECK(solo.summary.at("determinacy").stats == r.summary.at("determinacy").stats);

  opts.count = 0;
  expect_error(ErrorCode::InvalidCount, [&] { run_fuzz(opts); });
  opts.count = 1;
  opts.suites = {"no-such-suite"};
  expect_error(ErrorCode::InvalidArgument, [&] { run_fuzz(opts); });
  CHECK(is_exploratory("open-question-gamma-two"));
  CHECK_FALSE(is_exploratory("determinacy"));
}

TEST_CASE("fuzz exit codes") {
  FuzzReport r;
  CHECK(exit_code(r) == 0);
  r.budget_exceeded = 1;
  CHECK(exit_code(r) == 3);
  r.violations.push_back({"determinacy", "p", 0, {}});
  CHECK(exit_code(r) == 2);
  r.violations.clear();
  r.budget_exceeded = 0;
  r.findings.push_back({"open-question-gamma-two", "p", 0, {}});
  CHECK(exit_code(r) == 0);
}

TEST_CASE("topology enumeration matches the known counts") {
  // Labelled topologies on 1, 2, 3 and 4 points.
  CHECK(all_topologies(1, 16).size() == 1);
  CHECK(all_topologies(2, 16).size() == 4);
  CHECK(all_topologies(3, 16).size() == 29);
  CHECK(all_topologies(4, 16).size() == 355);
  CHECK(all_topologies(3, 2).size() == 1);
  for (const auto& s : all_topologies(3, 16)) CHECK(s.opens() == build_topology(3, s.opens()).opens());
}
