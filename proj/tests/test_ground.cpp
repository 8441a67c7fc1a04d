#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "selectlab/error.hpp"
#include "selectlab/ground.hpp"

using namespace selectlab;

namespace {

Mask m(std::initializer_list<int> items) { return mask_of(std::vector<int>(items)); }

template <class F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("build_topology closes a subbasis under union and intersection") {
  const auto s = build_topology(3, {m({0}), m({0, 1})});
  CHECK(s.opens() == std::vector<Mask>{0, m({0}), m({0, 1}), m({0, 1, 2})});
  CHECK(build_topology(2, std::span<const Mask>{}).opens() == std::vector<Mask>{0, 3});
  CHECK(discrete_space(2).opens() == std::vector<Mask>{0, 1, 2, 3});
  CHECK(build_topology(0, std::span<const Mask>{}).opens() == std::vector<Mask>{0});
}

TEST_CASE("build_topology caps") {
  expect_error(ErrorCode::CapExceeded, [] { build_topology(17, std::span<const Mask>{}); });
  expect_error(ErrorCode::TopologyTooLarge, [] { discrete_space(13); });
  CHECK(build_topology(16, std::span<const Mask>{}).opens().size() == 2);
}

TEST_CASE("build_topology agrees with the fixpoint oracle on random subbases") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<Mask> sub;
    for (int k = static_cast<int>(rng() % 5); k > 0; --k) sub.push_back(rng() & low_bits(n));
    const auto s = build_topology(n, sub);
    REQUIRE(s.opens() == oracle::opens(n, sub));
    for (Mask t = 0; t <= s.universe(); ++t) CHECK(s.closure(t) == oracle::closure(n, s.opens(), t));
    // Least fixpoint: every open outside the subbasis is forced by closure.
    for (Mask u : s.opens()) {
      if (u == 0 || u == s.universe() || std::find(sub.begin(), sub.end(), u) != sub.end()) continue;
      std::vector<Mask> rest;
      for (Mask v : s.opens())
        if (v != u) rest.push_back(v);
      bool closed = true;
      for (Mask a : rest)
        for (Mask b : rest)
          closed = closed && std::find(rest.begin(), rest.end(), a | b) != rest.end() &&
                   std::find(rest.begin(), rest.end(), a & b) != rest.end();
      CHECK_FALSE(closed);
    }
  }
}

TEST_CASE("closure_family") {
  const auto s = build_topology(3, {m({0}), m({0, 1})});
  CHECK(closure_family(s, SetFamily(s, {m({0})})).members() == std::vector<Mask>{m({0, 1, 2})});
  CHECK(closure_family(s, SetFamily(s, {m({1})})).members() == std::vector<Mask>{m({1, 2})});
  const auto d = discrete_space(3);
  const SetFamily f(d, {m({0}), m({1, 2})});
  CHECK(closure_family(d, f) == f);
  // {1} and {2} both close to {1,2}; the duplicate is merged.
  CHECK(closure_family(s, SetFamily(s, {m({1}), m({2})})).members() == std::vector<Mask>{m({1, 2}), m({2})});
}

TEST_CASE("family flags") {
  const auto d = discrete_space(3);
  SetFamily f(d, {m({0}), m({1})});
  CHECK_FALSE(f.flags().ideal_base);
  CHECK_FALSE(f.flags().covers_universe);
  CHECK(*f.flags().all_open);
  f.add(m({0, 1}));
  CHECK(f.flags().ideal_base);
  f.add(m({2}));
  CHECK(f.flags().covers_universe);
  CHECK_FALSE(f.flags().ideal_base);
  f.remove(m({2}));
  CHECK(f.flags().ideal_base);
  CHECK(SetFamily(7, {1, 1, 2}).members() == std::vector<Mask>{1, 2});
  expect_error(ErrorCode::InvalidArgument, [] { SetFamily(3, {4}); });
  const auto s = build_topology(3, {m({0}), m({0, 1})});
  CHECK_FALSE(*SetFamily(s, {m({1})}).flags().all_open);
  CHECK(*SetFamily(s, {m({2})}).flags().all_closed);
}

TEST_CASE("both readings of the nonempty-subset family") {
  const auto s = build_topology(2, {m({0})});
  CHECK(nonempty_subsets(s).members() == std::vector<Mask>{1, 2, 3});
  CHECK(nonempty_opens(s).members() == std::vector<Mask>{1, 3});
  CHECK(singletons(s).members() == std::vector<Mask>{1, 2});
}

TEST_CASE("classify_cover") {
  const auto d = discrete_space(3);
  const auto singles = singletons(d);
  const std::vector<Mask> listed{m({0, 1}), m({1, 2})};
  const auto v = classify_cover(d, singles, listed);
  CHECK(v.is_O);
  CHECK(v.lambda_m == 1);
  CHECK(v.gamma_window == 2);

  const std::vector<Mask> with_x{m({0}), d.universe()};
  CHECK_FALSE(classify_cover(d, singles, with_x).is_O);

  const auto empty = classify_cover(d, SetFamily(d, {}), std::vector<Mask>{});
  CHECK(empty.is_O);
  CHECK(empty.lambda_m == 0);
  CHECK(empty.gamma_window == 0);

  const auto s = build_topology(3, {m({0}), m({0, 1})});
  expect_error(ErrorCode::NotOpen, [&] { classify_cover(s, singletons(s), std::vector<Mask>{m({1})}); });

  // Order matters only for the window: {0},{1},{0},{1} has windows of 2, {0},{0},{1},{1} needs 3.
  const SetFamily two(d, {m({0}), m({1})});
  const std::vector<Mask> alt{m({0}), m({1}), m({0}), m({1})};
  const std::vector<Mask> blocked{m({0}), m({0}), m({1}), m({1})};
  const auto va = classify_cover(d, two, alt), vb = classify_cover(d, two, blocked);
  CHECK(va.is_O == vb.is_O);
  CHECK(va.lambda_m == vb.lambda_m);
  CHECK(va.lambda_m == 1);
  CHECK(va.gamma_window == 2);
  CHECK(vb.gamma_window == 3);
}

TEST_CASE("cover verdict invariants on random inputs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const auto d = discrete_space(n);
    std::vector<Mask> fam, listed;
    for (int k = static_cast<int>(rng() % 4); k > 0; --k) fam.push_back(rng() & low_bits(n));
    for (int k = static_cast<int>(rng() % 6); k > 0; --k) listed.push_back(rng() & low_bits(n));
    const auto v = classify_cover(d, SetFamily(d, fam), listed);
    if (!v.is_O) CHECK(v.lambda_m == 0);
    if (v.gamma_window) CHECK(v.is_O);
    auto perm = listed;
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto p = classify_cover(d, SetFamily(d, fam), perm);
    CHECK(p.is_O == v.is_O);
    CHECK(p.lambda_m == v.lambda_m);
  }
}

TEST_CASE("refines") {
  const auto d = discrete_space(3);
  const SetFamily pairs(d, {m({0, 1}), m({1, 2}), m({0, 2})});
  CHECK(refines(singletons(d), pairs));
  CHECK_FALSE(refines(SetFamily(d, {m({0, 1})}), SetFamily(d, {m({0})})));
  CHECK(refines(pairs, pairs));
}

TEST_CASE("refinement and the cover condition on every small topology") {
  std::mt19937_64 rng(3);
  int plain_t1_checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (Mask pick = 0; pick < (Mask{1} << ((1 << n) - 2)); ++pick) {
      std::vector<Mask> sub;
      for (int k = 0; k < (1 << n) - 2; ++k)
        if (pick >> k & 1) sub.push_back(static_cast<Mask>(k + 1));
      const auto s = build_topology(n, sub);
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<Mask> a, b;
        for (int k = static_cast<int>(rng() % 3); k > 0; --k) a.push_back(rng() & low_bits(n));
        for (int k = static_cast<int>(rng() % 3); k > 0; --k) b.push_back(rng() & low_bits(n));
        const SetFamily fa(s, a), fb(s, b);
        const bool expected = oracle::every_cover_transfers(s.opens(), s.universe(), fa.members(), fb.members());
        CHECK(refines_in(s, fa, fb) == expected);
        if (s.points_closed()) {
          CHECK(refines(fa, fb) == expected);
          ++plain_t1_checked;
        }
      }
    }
  }
  CHECK(plain_t1_checked > 0);
}

TEST_CASE("plain refinement differs from the cover condition off T1 spaces") {
  // Opens {0,{0,1},X}: the only proper open containing {1} also contains {0}.
  const auto s = build_topology(3, {m({0, 1})});
  const SetFamily a(s, {m({1})}), b(s, {m({0})});
  CHECK_FALSE(refines(a, b));
  CHECK(refines_in(s, a, b));
  CHECK(oracle::every_cover_transfers(s.opens(), s.universe(), a.members(), b.members()));
}

TEST_CASE("min_covers") {
  const auto d2 = discrete_space(2);
  const auto c = min_covers(d2, singletons(d2), 10);
  REQUIRE(c.covers.size() == 1);
  CHECK(c.covers[0] == std::vector<Mask>{1, 2});
  CHECK_FALSE(c.truncated);

  const auto d3 = discrete_space(3);
  CHECK(min_covers(d3, SetFamily(d3, {m({0}), m({0, 1}), m({0, 1, 2})}), 10).covers.empty());
  const auto none = min_covers(d3, SetFamily(d3, {}), 10);
  REQUIRE(none.covers.size() == 1);
  CHECK(none.covers[0].empty());

  // Singletons of {0,1,2}: covers by proper opens, minimal ones listed in order.
  const auto all = min_covers(d3, singletons(d3), 1000);
  const auto first = min_covers(d3, singletons(d3), 2);
  CHECK(first.truncated);
  REQUIRE(first.covers.size() == 2);
  CHECK(first.covers[0] == all.covers[0]);
  CHECK(first.covers[1] == all.covers[1]);
  CHECK(std::is_sorted(all.covers.begin(), all.covers.end()));
  for (const auto& cover : all.covers) {
    CHECK(classify_cover(d3, singletons(d3), cover).is_O);
    for (std::size_t drop = 0; drop < cover.size(); ++drop) {
      auto smaller = cover;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
      CHECK_FALSE(classify_cover(d3, singletons(d3), smaller).is_O);
    }
  }
}

TEST_CASE("ideal bases covering the universe have no covers") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<Mask> sub;
    for (int k = static_cast<int>(rng() % 4); k > 0; --k) sub.push_back(rng() & low_bits(n));
    const auto s = build_topology(n, sub);
    std::vector<Mask> fam;
    for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) fam.push_back(rng() & low_bits(n));
    const SetFamily f(s, fam);
    if (f.flags().ideal_base && f.flags().covers_universe) CHECK(min_covers(s, f, 4).covers.empty());
  }
}
