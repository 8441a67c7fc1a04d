#include <doctest.h>

#include "selectlab/error.hpp"
#include "selectlab/scenario.hpp"
#include "selectlab/solver.hpp"
#include "selectlab/transforms.hpp"

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

GameSpec point_open_discrete2(int h) {
  const auto s = discrete_space(2);
  return build_point_open(s, singletons(s), singletons(s), h);
}

GameSpec rothberger_discrete2(int h) {
  const auto s = discrete_space(2);
  return build_rothberger(s, singletons(s), singletons(s), h);
}

}  // namespace

TEST_CASE("identity pack") {
  const auto g = point_open_discrete2(2);
  const auto pack = lift_phi({{0, 1}, {0, 1}}, g, g);
  CHECK(pack.t_one == std::vector<std::vector<int>>{{0, 1}, {0, 1}});
  CHECK(pack.t_two == std::vector<std::vector<std::vector<int>>>{{{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}});
  const auto ax = check_tr_axioms(pack, g, g);
  CHECK(ax.ok);
  CHECK(ax.tr1);
  CHECK(ax.tr2);

  const auto pre = *find_predetermined_one(g);
  const auto back = apply_translation(pack, g, g, Direction::PreOnePullback, pre);
  CHECK(std::get<PreOne>(back) == pre);
  const auto full = apply_translation(pack, g, g, Direction::FullOnePullback, to_full(g, pre));
  CHECK(verify(g, full).valid);

  const auto g1 = point_open_discrete2(1);
  const auto pack1 = lift_phi({{0, 1}}, g1, g1);
  const auto mk = *find_markov_two(g1);
  CHECK(std::get<MarkovTwo>(apply_translation(pack1, g1, g1, Direction::MarkTwo, mk)) == mk);
  const auto two = apply_translation(pack1, g1, g1, Direction::FullTwo, to_full(g1, mk));
  CHECK(verify(g1, two).valid);
}

TEST_CASE("axiom violations") {
  const auto g = point_open_discrete2(1);
  TranslationPack pack{{{0, 1}}, {{{1, 1}, {1, 1}}}};
  const auto ax = check_tr_axioms(pack, g, g);
  CHECK_FALSE(ax.ok);
  CHECK_FALSE(ax.tr1);
  REQUIRE(ax.tr1_violation.has_value());
  CHECK(*ax.tr1_violation == std::array<int, 3>{0, 0, 0});

  const auto mk = *find_markov_two(g);
  expect_error(ErrorCode::AxiomsFail, [&] { apply_translation(pack, g, g, Direction::MarkTwo, mk); });
  expect_error(ErrorCode::InvalidArgument, [&] { check_tr_axioms(TranslationPack{}, g, g); });
}

TEST_CASE("Tr2 fails when a source win maps to a destination loss") {
  // Source: Two wins on any selection. Destination: Two never wins.
  const auto src = make_game(1, {{m({0})}}, SelectionKind::Single, TargetPredicate::explicit_sets({m({0})}));
  const auto dst = make_game(1, {{m({0})}}, SelectionKind::Single, TargetPredicate::explicit_sets({}));
  const auto pack = lift_phi({{0}}, src, dst);
  const auto ax = check_tr_axioms(pack, src, dst);
  CHECK(ax.tr1);
  CHECK_FALSE(ax.tr2);
  REQUIRE(ax.tr2_violation.has_value());
  CHECK(ax.tr2_violation->first == std::vector<int>{0});
  CHECK(ax.tr2_violation->second == std::vector<int>{0});
}

TEST_CASE("apply_translation input checks") {
  const auto g = point_open_discrete2(2);
  const auto pack = lift_phi({{0, 1}, {0, 1}}, g, g);
  expect_error(ErrorCode::InvalidArgument, [&] { apply_translation(pack, g, g, Direction::MarkTwo, PreOne{{0, 1}}); });
  expect_error(ErrorCode::InvalidArgument,
               [&] { apply_translation(pack, g, g, Direction::PreOnePullback, MarkovTwo{{{1, 2}, {1, 2}}}); });
  expect_error(ErrorCode::InvalidArgument, [&] { apply_translation(pack, g, g, Direction::FullTwo, PreOne{{0, 1}}); });
  expect_error(ErrorCode::InputNotWinning,
               [&] { apply_translation(pack, g, g, Direction::PreOnePullback, PreOne{{0, 0}}); });
  // Two loses at horizon 2, so no Markov strategy for Two can be a valid input.
  expect_error(ErrorCode::InputNotWinning,
               [&] { apply_translation(pack, g, g, Direction::MarkTwo, MarkovTwo{{{1, 2}, {1, 2}}}); });
}

TEST_CASE("swapping the items of a Rothberger game") {
  const auto g = rothberger_discrete2(2);
  REQUIRE(item_sets(g) == std::vector<Mask>{m({0}), m({1})});
  const auto pack = lift_phi({{1, 0}, {1, 0}}, g, g);
  CHECK(check_tr_axioms(pack, g, g).ok);
  const auto mk = *find_markov_two(g);
  CHECK(mk.table == std::vector<std::vector<Mask>>{{bit(0)}, {bit(1)}});
  const auto out = std::get<MarkovTwo>(apply_translation(pack, g, g, Direction::MarkTwo, mk));
  CHECK(out.table == std::vector<std::vector<Mask>>{{bit(1)}, {bit(0)}});
  CHECK(verify(g, out).valid);

  const auto g1 = rothberger_discrete2(1);
  const auto pack1 = lift_phi({{1, 0}}, g1, g1);
  const auto one = solve(g1);
  REQUIRE(one.winner == Player::One);
  const auto back = apply_translation(pack1, g1, g1, Direction::FullOnePullback, one.witness);
  CHECK(verify(g1, back).valid);
}

TEST_CASE("lift_phi errors") {
  const auto g = point_open_discrete2(1);
  // Collapsing both points sends the one Rothberger move {0,1} to {0}, which is no move.
  const auto ro = rothberger_discrete2(2);
  expect_error(ErrorCode::ImageNotMove, [&] { lift_phi({{0, 1}, {0, 0}}, ro, ro); }, 1);
  CHECK_NOTHROW(lift_phi({{0, 0}}, g, g));
  expect_error(ErrorCode::InvalidArgument, [&] { lift_phi({{0, 1}, {0, 1}}, g, g); });
  expect_error(ErrorCode::InvalidArgument, [&] { lift_phi({{0, 5}}, g, g); }, 0);
  const auto finite = make_game(2, g.moves, SelectionKind::Finite, TargetPredicate::explicit_sets({}));
  expect_error(ErrorCode::InvalidArgument, [&] { lift_phi({{0, 1}}, finite, finite); });
}

TEST_CASE("subsequence strengthening") {
  // Filter base, listed with the largest move first.
  const std::vector<Mask> fam{m({0, 1, 2}), m({0, 1}), m({0})};
  const auto never_full = [] {
    std::vector<Mask> v;
    for (Mask u = 0; u < 7; ++u) v.push_back(u);
    return TargetPredicate::explicit_sets(v);
  }();
  const auto game = make_game(3, std::vector<std::vector<Mask>>(3, fam), SelectionKind::Single,
                              TargetPredicate::negation(never_full));
  const auto s = to_full(game, PreOne{{0, 2, 2}});
  const auto out = strengthen_gamma_one(s, game, 1);
  // Every later bound already lies inside {0}, so sigma coincides with s.
  CHECK(out.sigma == s);
  CHECK(verify(out.game, out.sigma).valid);
  CHECK(check_subsequence_closure(game, s, out.sigma).ok);

  // A descending chain of moves is its own strengthening.
  const auto chain = to_full(game, PreOne{{1, 1, 2}});
  const auto out2 = strengthen_gamma_one(chain, game, 2);
  CHECK(out2.sigma == chain);
  CHECK(verify(out2.game, out2.sigma).valid);
  const auto closure = check_subsequence_closure(game, chain, out2.sigma);
  CHECK(closure.ok);
  CHECK(closure.plays == 4);
  CHECK(closure.subsequences == 28);
}

TEST_CASE("subsequence strengthening errors") {
  const auto exactly_zero = TargetPredicate::explicit_sets({m({0})});
  const std::vector<Mask> apart{m({0}), m({1})};
  const auto split = make_game(2, std::vector<std::vector<Mask>>(2, apart), SelectionKind::Single,
                               TargetPredicate::negation(exactly_zero));
  expect_error(ErrorCode::NotFilterBase, [&] { strengthen_gamma_one(to_full(split, PreOne{{0, 0}}), split, 1); });

  const std::vector<Mask> fam{m({0, 1, 2}), m({0})};
  const auto game = make_game(3, std::vector<std::vector<Mask>>(2, fam), SelectionKind::Single,
                              TargetPredicate::negation(exactly_zero));
  expect_error(ErrorCode::NotUniformlyWinning, [&] { strengthen_gamma_one(to_full(game, PreOne{{0, 1}}), game, 1); }, 1);
  CHECK_NOTHROW(strengthen_gamma_one(to_full(game, PreOne{{1, 1}}), game, 1));
  expect_error(ErrorCode::InvalidArgument, [&] { strengthen_gamma_one(to_full(game, PreOne{{1, 1}}), game, 3); });
  const auto plain = make_game(3, std::vector<std::vector<Mask>>(2, fam), SelectionKind::Single, exactly_zero);
  expect_error(ErrorCode::InvalidArgument, [&] { strengthen_gamma_one(to_full(plain, PreOne{{1, 1}}), plain, 1); });
}

TEST_CASE("predetermined intersection") {
  const SetFamily ideal(7, {m({0}), m({1}), m({0, 1}), m({0, 1, 2})});
  CHECK(intersect_predetermined(PreOne{{0, 1, 0}}, ideal).moves == std::vector<int>{0, 2, 2});
  CHECK(intersect_predetermined(PreOne{{3, 0}}, ideal).moves == std::vector<int>{3, 3});
  CHECK(intersect_predetermined(PreOne{}, ideal).moves.empty());

  expect_error(ErrorCode::WitnessMissing, [] { intersect_predetermined(PreOne{{0, 1}}, SetFamily(7, {m({0}), m({1})})); }, 1);
  // Witnesses exist along s, yet {0,1} and {2} have no common upper bound.
  expect_error(ErrorCode::NotIdealBase,
               [] { intersect_predetermined(PreOne{{0, 1}}, SetFamily(7, {m({0}), m({1}), m({0, 1}), m({2})})); });
  expect_error(ErrorCode::InvalidArgument, [&] { intersect_predetermined(PreOne{{9}}, ideal); }, 0);
}

TEST_CASE("block decomposition against the intersected strategy") {
  const auto d = discrete_space(3);
  const SetFamily fam(d, {m({0}), m({1}), m({0, 1})});
  const auto game = build_point_open(d, fam, singletons(d), 4, 2);
  const PreOne s{{0, 1, 0, 1}};
  const auto sigma = intersect_predetermined(s, fam);
  CHECK(sigma.moves == std::vector<int>{0, 2, 2, 2});
  const auto rep = check_block_decomposition(game, s, sigma, 2);
  CHECK(rep.ok);
  CHECK(rep.plays > 0);
  CHECK(rep.blocks == 3 * rep.plays);

  const auto bad = check_block_decomposition(game, s, PreOne{{1, 1, 1, 1}}, 2);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failing_start == 0);
  expect_error(ErrorCode::InvalidArgument, [&] { check_block_decomposition(game, s, sigma, 5); });
}

TEST_CASE("minimal covers suffice in the Rothberger game") {
  const auto d = discrete_space(3);
  const auto singles = singletons(d);
  for (int h = 2; h <= 3; ++h) {
    CAPTURE(h);
    const auto minimal = build_rothberger(d, singles, singles, h);
    const auto& items = item_sets(minimal);
    REQUIRE(items.size() == 6);
    // The same game with every cover of the singletons offered, minimal or not.
    std::vector<Mask> all;
    for (Mask pick = 1; pick < (Mask{1} << items.size()); ++pick) {
      std::vector<Mask> listed;
      for_each_bit(pick, [&](int i) { listed.push_back(items[static_cast<std::size_t>(i)]); });
      if (classify_cover(d, singles, listed).is_O) all.push_back(pick);
    }
    REQUIRE(all.size() > minimal.moves[0].size());
    const auto every = make_game(6, std::vector<std::vector<Mask>>(static_cast<std::size_t>(h), all),
                                 SelectionKind::Single, minimal.target);

    // From the game over every cover to the minimal one: items map to themselves.
    const std::vector<std::vector<int>> identity(static_cast<std::size_t>(h), {0, 1, 2, 3, 4, 5});
    const auto down = lift_phi(identity, every, minimal);
    CHECK(check_tr_axioms(down, every, minimal).ok);

    // Back again: each cover is sent to the least minimal cover inside it.
    TranslationPack up;
    for (int r = 0; r < h; ++r) {
      up.t_one.emplace_back();
      up.t_two.emplace_back();
      for (Mask c : all) {
        const auto& mins = minimal.moves[static_cast<std::size_t>(r)];
        const auto it = std::find_if(mins.begin(), mins.end(), [c](Mask mc) { return is_subset(mc, c); });
        REQUIRE(it != mins.end());
        up.t_one.back().push_back(static_cast<int>(it - mins.begin()));
        up.t_two.back().push_back({0, 1, 2, 3, 4, 5});
      }
    }
    CHECK(check_tr_axioms(up, minimal, every).ok);

    const auto on_minimal = solve(minimal), on_every = solve(every);
    CHECK(on_minimal.winner == on_every.winner);
    CHECK(on_minimal.winner == (h == 2 ? Player::One : Player::Two));
    if (h == 2) {
      CHECK(verify(every, apply_translation(down, every, minimal, Direction::FullOnePullback, on_minimal.witness)).valid);
      CHECK(verify(minimal, apply_translation(up, minimal, every, Direction::FullOnePullback, on_every.witness)).valid);
    } else {
      CHECK(verify(minimal, apply_translation(down, every, minimal, Direction::FullTwo, on_every.witness)).valid);
      CHECK(verify(every, apply_translation(up, minimal, every, Direction::FullTwo, on_minimal.witness)).valid);
    }
  }
}
