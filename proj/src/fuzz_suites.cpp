#include <functional>
#include <set>

#include "fuzz_internal.hpp"
#include "selectlab/error.hpp"

namespace selectlab::fuzz {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::vector<std::vector<Mask>> random_moves(Rng& rng, int items, int horizon, int max_family, int max_bits) {
  std::vector<std::vector<Mask>> moves(at(horizon));
  for (auto& round : moves)
    for (int k = rng.range(1, max_family); k > 0; --k) round.push_back(rng.nonempty_within(low_bits(items), max_bits));
  return moves;
}

std::vector<Mask> random_sets(Rng& rng, int universe_bits, int percent) {
  std::vector<Mask> out;
  for (Mask s = 0; s <= low_bits(universe_bits); ++s)
    if (rng.chance(percent)) out.push_back(s);
  return out;
}

std::shared_ptr<const CoverContext> random_context(Rng& rng, int items) {
  auto ctx = std::make_shared<CoverContext>();
  const int ground = rng.range(2, 4);
  ctx->ground_universe = low_bits(ground);
  for (int i = 0; i < items; ++i) ctx->item_sets.push_back(rng.subset(ground));
  return ctx;
}

TargetPredicate random_target(Rng& rng, int items, int horizon, int depth) {
  const int pick = rng.below(depth > 0 ? 7 : 5);
  if (pick <= 1) return TargetPredicate::explicit_sets(random_sets(rng, items, rng.range(20, 80)));
  if (pick <= 4) {
    auto ctx = random_context(rng, items);
    const int ground = std::bit_width(ctx->ground_universe);
    std::vector<Mask> fam;
    for (int k = rng.range(0, 3); k > 0; --k) fam.push_back(rng.nonempty_subset(ground));
    if (pick == 2) return TargetPredicate::covers_family(ctx, fam);
    if (pick == 3) return TargetPredicate::multi_cover(ctx, fam, rng.range(1, 2));
    return TargetPredicate::window_cover(ctx, fam, rng.range(0, std::max(horizon, 1)));
  }
  const auto inner = random_target(rng, items, horizon, depth - 1);
  if (pick == 5) return TargetPredicate::negation(inner);
  return TargetPredicate::gamma_core(inner, rng.range(1, std::max(horizon, 1)));
}

/// A full-information One strategy defined on every reachable history.
FullOne random_full_one(Rng& rng, const GameSpec& game) {
  FullOne s;
  std::vector<Mask> h;
  std::function<void()> rec = [&] {
    const int r = static_cast<int>(h.size());
    if (r == game.horizon()) return;
    const int mv = rng.below(static_cast<int>(game.moves[at(r)].size()));
    s.table[h] = mv;
    for (Mask c : two_replies(game, r, mv)) {
      h.push_back(c);
      rec();
      h.pop_back();
    }
  };
  rec();
  return s;
}

/// Unions of the selections of every play consistent with s, per length.
void collect_play_unions(const GameSpec& game, const FullOne& s, int lo, int hi, std::set<Mask>& out) {
  std::vector<Mask> h;
  std::function<void(Mask)> rec = [&](Mask u) {
    const int r = static_cast<int>(h.size());
    if (r >= lo && r <= hi) out.insert(u);
    if (r == hi) return;
    const int mv = s.table.at(h);
    for (Mask c : two_replies(game, r, mv)) {
      h.push_back(c);
      rec(u | c);
      h.pop_back();
    }
  };
  rec(0);
}

bool finite_at_most(const ExtendedNat& c, std::int64_t n) { return c.is_finite() && c.value() <= n; }

Scenario point_open_scenario(const std::string& name, int size, const std::vector<Mask>& a, const std::vector<Mask>& b,
                             int horizon) {
  Scenario sc;
  sc.name = name;
  sc.size = size;
  for (int i = 0; i < size; ++i) sc.subbasis.push_back(bit(i));
  sc.fam_a = a;
  sc.fam_b = b;
  sc.horizon = horizon;
  sc.flavor = Flavor::PointOpenO;
  return sc;
}

// Discrete space of 1..4 points with a family of proper subsets and a target family.
struct DiscretePair {
  int size;
  std::vector<Mask> a, b;
};

DiscretePair random_discrete_pair(Rng& rng, int index) {
  DiscretePair p{1 + index % 4, {}, {}};
  const Mask x = low_bits(p.size);
  for (int k = rng.range(1, 4); k > 0; --k) {
    Mask s = rng.subset(p.size);
    while (s == x) s = rng.subset(p.size);
    p.a.push_back(s);
  }
  // Mostly subsets of members, so that the cofinality is usually defined.
  for (int k = rng.range(0, 4); k > 0; --k)
    p.b.push_back(rng.chance(75) ? rng.pick(p.a) & rng.subset(p.size) : rng.subset(p.size));
  return p;
}

}  // namespace

// determinacy -------------------------------------------------------------------

void suite_determinacy(Rng& rng, Sink& out) {
  const int items = rng.range(2, 6);
  const int horizon = rng.range(0, 4);
  const bool finite = rng.chance(30);
  const int max_bits = finite ? (horizon >= 3 ? 2 : 3) : items;
  const int max_family = horizon == 4 ? 3 : 4;
  auto target = random_target(rng, items, horizon, 2);
  GameSpec g;
  try {
    g = make_game(items, random_moves(rng, items, horizon, max_family, max_bits),
                  finite ? SelectionKind::Finite : SelectionKind::Single, target);
  } catch (const Error& e) {
    out.violation("game-construction", Json{{"error", e.what()}});
    return;
  }
  const Json detail = abstract_scenario("determinacy", g);

  const auto d = solve(g);
  out.stat(d.winner == Player::One ? "one-wins" : "two-wins");
  if (owner(d.witness) != d.winner) out.violation("witness-owner", detail);
  const auto vd = verify(g, d.witness, 1);
  if (!vd.valid) out.violation("witness-verifies", detail);

  const auto d2 = solve(g, SolveOptions{2});
  if (d2.winner != d.winner || !(d2.witness == d.witness)) out.violation("thread-independence", detail);

  const auto pre = find_predetermined_one(g);
  if (pre) {
    out.stat("pre-one");
    if (d.winner != Player::One) out.violation("loser-pre-one", detail);
    if (!verify(g, *pre, 1).valid) out.violation("pre-one-verifies", detail);
    if (!verify(g, to_full(g, *pre), 1).valid) out.violation("pre-one-embedding", detail);
  }
  const auto markov = find_markov_two(g);
  if (markov) {
    out.stat("markov-two");
    if (d.winner != Player::Two) out.violation("loser-markov-two", detail);
    if (!verify(g, *markov, 1).valid) out.violation("markov-two-verifies", detail);
    if (!verify(g, to_full(g, *markov), 1).valid) out.violation("markov-two-embedding", detail);
  }
}

// translation -------------------------------------------------------------------

namespace {

struct TranslationInstance {
  GameSpec src, dst;
  TranslationPack pack;
};

/// Largest src winning family for which Tr2 holds against `dst_win`.
std::vector<Mask> pull_back_family(Rng& rng, const std::vector<std::vector<Mask>>& src_moves, int src_items,
                                   const std::vector<std::vector<Mask>>& dst_moves, const TranslationPack& pack,
                                   const std::set<Mask>& dst_win, int thin_percent) {
  std::set<Mask> bad;
  const int h = static_cast<int>(dst_moves.size());
  std::function<void(int, Mask, Mask)> rec = [&](int r, Mask su, Mask du) {
    if (r == h) {
      if (!dst_win.contains(du)) bad.insert(su);
      return;
    }
    for (int j = 0; j < static_cast<int>(dst_moves[at(r)].size()); ++j) {
      const Mask sm = src_moves[at(r)][at(pack.t_one[at(r)][at(j)])];
      for_each_bit(sm, [&](int x) { rec(r + 1, su | bit(x), du | bit(pack.t_two[at(r)][at(j)][at(x)])); });
    }
  };
  rec(0, 0, 0);
  std::vector<Mask> out;
  for (Mask s = 0; s <= low_bits(src_items); ++s)
    if (!bad.contains(s) && !rng.chance(thin_percent)) out.push_back(s);
  return out;
}

TranslationInstance random_translation(Rng& rng, int density) {
  const int h = rng.range(1, 3);
  const int dst_items = rng.range(2, 5);
  const auto dst_moves = random_moves(rng, dst_items, h, 3, 3);
  int src_items = rng.range(2, 5);
  std::vector<std::vector<Mask>> src_moves;
  TranslationPack pack;
  const bool via_phi = rng.chance(50);
  std::vector<std::vector<int>> phi;
  if (via_phi) {
    for (int r = 0; r < h; ++r) {
      std::vector<int> row;
      for (int y = 0; y < dst_items; ++y) row.push_back(rng.below(src_items));
      phi.push_back(row);
      std::vector<Mask> fam;
      for (Mask b : dst_moves[at(r)]) {
        Mask img = 0;
        for_each_bit(b, [&](int y) { img |= bit(row[at(y)]); });
        if (std::find(fam.begin(), fam.end(), img) == fam.end()) fam.push_back(img);
      }
      if (rng.chance(40)) fam.push_back(rng.nonempty_within(low_bits(src_items), 3));
      rng.shuffle(fam);
      src_moves.push_back(fam);
    }
  } else {
    src_moves = random_moves(rng, src_items, h, 3, 3);
    for (int r = 0; r < h; ++r) {
      std::vector<int> t1;
      std::vector<std::vector<int>> t2;
      for (Mask b : dst_moves[at(r)]) {
        const int sm = rng.below(static_cast<int>(src_moves[at(r)].size()));
        t1.push_back(sm);
        const auto dst_pts = bits_of(b);
        std::vector<int> row;
        for (int x = 0; x < src_items; ++x)
          row.push_back((src_moves[at(r)][at(sm)] & bit(x)) ? rng.pick(dst_pts) : rng.below(dst_items));
        t2.push_back(row);
      }
      pack.t_one.push_back(t1);
      pack.t_two.push_back(t2);
    }
  }

  std::set<Mask> dst_win;
  for (Mask s = 0; s <= low_bits(dst_items); ++s)
    if (rng.chance(density)) dst_win.insert(s);
  TranslationInstance inst;
  inst.dst = make_game(dst_items, dst_moves, SelectionKind::Single,
                       TargetPredicate::explicit_sets({dst_win.begin(), dst_win.end()}));
  // Placeholder target; replaced once the pack is known.
  inst.src = make_game(src_items, src_moves, SelectionKind::Single, TargetPredicate());
  if (via_phi) pack = lift_phi(phi, inst.src, inst.dst);
  inst.src = with_target(inst.src, TargetPredicate::explicit_sets(pull_back_family(
                                       rng, src_moves, src_items, dst_moves, pack, dst_win, rng.chance(50) ? 0 : 15)));
  inst.pack = std::move(pack);
  return inst;
}

Json translation_detail(const TranslationInstance& t, Direction d) {
  return {{"direction", to_string(d)},
          {"pack", to_json(t.pack)},
          {"src", abstract_scenario("translation-src", t.src)},
          {"dst", abstract_scenario("translation-dst", t.dst)}};
}

std::optional<Strategy> translation_input(const TranslationInstance& t, Direction d) {
  switch (d) {
    case Direction::MarkTwo:
      if (auto m = find_markov_two(t.src)) return Strategy(*m);
      return std::nullopt;
    case Direction::FullTwo: {
      auto s = solve(t.src);
      if (s.winner == Player::Two) return s.witness;
      return std::nullopt;
    }
    case Direction::FullOnePullback: {
      auto s = solve(t.dst);
      if (s.winner == Player::One) return s.witness;
      return std::nullopt;
    }
    case Direction::PreOnePullback:
      if (auto p = find_predetermined_one(t.dst)) return Strategy(*p);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

void suite_translation(Rng& rng, Sink& out) {
  constexpr int kTries = 12;
  for (Direction d : {Direction::MarkTwo, Direction::FullTwo, Direction::FullOnePullback, Direction::PreOnePullback}) {
    const bool two_side = d == Direction::MarkTwo || d == Direction::FullTwo;
    bool done = false;
    for (int attempt = 0; attempt < kTries && !done; ++attempt) {
      // Density drifts toward the trivial extreme so that an input always exists eventually.
      const int density = two_side ? std::min(100, 55 + 5 * attempt) : std::max(0, 45 - 5 * attempt);
      const auto inst = random_translation(rng, density);
      const auto axioms = check_tr_axioms(inst.pack, inst.src, inst.dst);
      if (!axioms.ok) {
        out.violation("pack-satisfies-axioms", translation_detail(inst, d));
        return;
      }
      const auto input = translation_input(inst, d);
      if (!input) continue;
      const Strategy result = apply_translation(inst.pack, inst.src, inst.dst, d, *input);
      const GameSpec& target_game = two_side ? inst.dst : inst.src;
      const bool class_ok = d == Direction::MarkTwo          ? std::holds_alternative<MarkovTwo>(result)
                            : d == Direction::PreOnePullback ? std::holds_alternative<PreOne>(result)
                                                             : owner(result) == (two_side ? Player::Two : Player::One);
      if (!class_ok) out.violation("output-class-" + to_string(d), translation_detail(inst, d));
      const auto v = verify(target_game, result, 1);
      if (!v.valid) {
        Json detail = translation_detail(inst, d);
        detail["input"] = to_json(*input);
        detail["output"] = to_json(result);
        out.violation("transfer-wins-" + to_string(d), detail);
      }
      out.stat("transferred-" + to_string(d));
      if (density == 0 || density == 100) out.stat("trivial-" + to_string(d));
      done = true;
    }
    if (!done) out.stat("no-input-" + to_string(d));
  }
}

// duality -------------------------------------------------------------------------

void suite_duality(Rng& rng, Sink& out) {
  const int n = rng.range(2, 5);
  const Mask x = low_bits(n);
  std::vector<Mask> refl, fam;
  for (;;) {
    refl.clear();
    for (int k = rng.range(1, 3); k > 0; --k) refl.push_back(rng.nonempty_within(x, 2));
    std::set<Mask> ranges;
    Choice c;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == refl.size()) {
        ranges.insert(choice_range(c));
        return;
      }
      for (int p : bits_of(refl[i])) {
        c.push_back(p);
        rec(i + 1);
        c.pop_back();
      }
    };
    rec(0);
    if (ranges.size() > 6) continue;
    fam.assign(ranges.begin(), ranges.end());
    for (int k = rng.range(0, 2); k > 0 && fam.size() < 6; --k) {
      const Mask s = rng.nonempty_subset(n);
      const bool meets_all = std::all_of(refl.begin(), refl.end(), [&](Mask r) { return (r & s) != 0; });
      if (meets_all && std::find(fam.begin(), fam.end(), s) == fam.end()) fam.push_back(s);
    }
    break;
  }
  rng.shuffle(fam);
  const SetFamily refl_fam(x, refl), fam_fam(x, fam);
  const int h = rng.range(1, std::min(4, kMaxMarkovCells / static_cast<int>(std::max(fam.size(), refl.size()))));
  const auto winning = random_sets(rng, n, rng.range(20, 80));
  const auto target = TargetPredicate::explicit_sets(winning);
  const GameSpec g_fam =
      make_game(n, std::vector<std::vector<Mask>>(at(h), fam_fam.members()), SelectionKind::Single, target);
  const GameSpec g_refl = make_game(n, std::vector<std::vector<Mask>>(at(h), refl_fam.members()),
                                    SelectionKind::Single, TargetPredicate::negation(target));
  const Json detail = {{"fam", abstract_scenario("duality-fam", g_fam)},
                       {"refl", abstract_scenario("duality-refl", g_refl)}};
  if (!is_reflection(refl_fam, fam_fam).is_reflection) {
    out.violation("generator-reflection", detail);
    return;
  }
  const auto rep = check_duality(g_fam, g_refl);
  out.stat(rep.one_wins_fam ? "one-wins-fam" : "two-wins-fam");
  if (rep.one_pre_wins_fam) out.stat("pre-one-fam");
  if (rep.two_markov_wins_fam) out.stat("markov-two-fam");
  if (!rep.all_hold) {
    Json d = detail;
    d["report"] = to_json(rep);
    out.violation("duality", d);
  }
}

// predetermined-closed, covering-pre -------------------------------------------------

void suite_predetermined_closed(Rng& rng, int index, Sink& out) {
  const auto p = random_discrete_pair(rng, index);
  const auto space = discrete_space(p.size);
  const SetFamily a(space, p.a), b(space, p.b);
  const auto cof = relative_cofinality(family_pair(a.members(), b.members()));
  for (int h = 0; h <= 4; ++h) {
    const auto pre = find_predetermined_one(build_point_open(space, a, b, h));
    if (pre.has_value() != finite_at_most(cof, h)) {
      Json d = to_json(point_open_scenario("predetermined-closed", p.size, a.members(), b.members(), h));
      d["cofinality"] = cof.to_string();
      out.violation("pre-one-iff-cofinality", d);
    }
    if (pre) out.stat("pre-one");
  }
  out.stat("cof-" + cof.to_string());
}

void suite_covering_pre(Rng& rng, int index, Sink& out) {
  const auto p = random_discrete_pair(rng, index);
  const auto space = discrete_space(p.size);
  const SetFamily a(space, p.a), b(space, p.b);
  for (int h = 0; h <= 4; ++h) {
    const auto g = build_point_open(space, a, b, h);
    const bool one = solve(g).winner == Player::One;
    const bool pre = find_predetermined_one(g).has_value();
    if (one != pre)
      out.violation("one-wins-iff-pre-one",
                    to_json(point_open_scenario("covering-pre", p.size, a.members(), b.members(), h)));
    out.stat(one ? "one-wins" : "two-wins");
  }
}

// refinement ------------------------------------------------------------------------

void suite_refinement(Rng& rng, int index, Sink& out) {
  static const std::vector<GroundSpace> spaces = [] {
    std::vector<GroundSpace> all;
    for (int n = 1; n <= 4; ++n)
      for (auto& s : all_topologies(n, 12)) all.push_back(std::move(s));
    return all;
  }();
  // Even instances cycle through the discrete spaces, odd ones through every topology.
  const auto space = index % 2 == 0 ? discrete_space(1 + (index / 2) % 4) : spaces[at(index / 2) % spaces.size()];
  const int n = space.size();
  std::vector<Mask> a, b;
  for (int k = rng.range(0, 3); k > 0; --k) a.push_back(rng.subset(n));
  for (int k = rng.range(0, 3); k > 0; --k) b.push_back(rng.subset(n));
  const SetFamily fa(space, a), fb(space, b);
  const auto covers = min_covers(space, fb, SIZE_MAX);
  const bool cover_condition = std::all_of(covers.covers.begin(), covers.covers.end(),
                                           [&](const auto& c) { return classify_cover(space, fa, c).is_O; });
  const Json detail = {{"opens", masks_to_json(space.opens())}, {"a", masks_to_json(fa.members())},
                       {"b", masks_to_json(fb.members())}, {"cover_condition", cover_condition}};
  if (refines_in(space, fa, fb) != cover_condition) out.violation("refines-in-iff-cover-condition", detail);
  if (refines(fa, fb) != cover_condition) {
    if (space.points_closed()) out.violation("refines-iff-cover-condition-t1", detail);
    else out.finding("refines-differs-on-non-t1-space", detail);
  }
  out.stat(space.points_closed() ? "t1-pairs" : "non-t1-pairs");
}

// gamma --------------------------------------------------------------------------------

namespace {

std::optional<std::vector<Mask>> random_filter_base(Rng& rng, int items) {
  const Mask core = rng.nonempty_within(low_bits(items), 2);
  std::set<Mask> fam;
  for (int k = rng.range(1, 3); k > 0; --k) fam.insert(core | rng.subset(items));
  for (bool grew = true; grew;) {
    grew = false;
    for (Mask p : std::vector<Mask>(fam.begin(), fam.end()))
      for (Mask q : std::vector<Mask>(fam.begin(), fam.end())) grew |= fam.insert(p & q).second;
    if (fam.size() > 5) return std::nullopt;
  }
  std::vector<Mask> out(fam.begin(), fam.end());
  rng.shuffle(out);
  return out;
}

void gamma_subsequence(Rng& rng, Sink& out) {
  const int items = rng.range(3, 5);
  std::optional<std::vector<Mask>> fam;
  while (!fam) fam = random_filter_base(rng, items);
  const int n = rng.range(1, 4);
  const int m = rng.range(1, n);
  const std::vector<std::vector<Mask>> moves(at(n), *fam);
  const auto shape = make_game(items, moves, SelectionKind::Single, TargetPredicate());
  const FullOne s = random_full_one(rng, shape);
  std::set<Mask> winning;
  collect_play_unions(shape, s, m, n, winning);
  for (int k = rng.range(0, 2); k > 0; --k) winning.insert(rng.subset(items));
  const auto game = with_target(
      shape, TargetPredicate::negation(TargetPredicate::explicit_sets({winning.begin(), winning.end()})));
  const auto g = strengthen_gamma_one(s, game, m);
  Json detail = abstract_scenario("gamma-strengthening", game);
  detail["m"] = m;
  detail["s"] = to_json(Strategy(s));
  const auto closure = check_subsequence_closure(game, s, g.sigma);
  if (!closure.ok) out.violation("subsequence-closure", detail);
  if (!verify(g.game, g.sigma, 1).valid) out.violation("sigma-wins-gamma-core", detail);
  out.stat("closure-plays", closure.plays);
  out.stat("closure-subsequences", closure.subsequences);
}

void gamma_window(Rng& rng, Sink& out) {
  const int size = rng.range(2, 4);
  const Mask x = low_bits(size);
  const Mask allowed = x & ~bit(rng.below(size));
  std::set<Mask> base;
  for (int k = rng.range(1, 3); k > 0; --k) base.insert(rng.subset(size) & allowed);
  for (bool grew = true; grew;) {
    grew = false;
    for (Mask p : std::vector<Mask>(base.begin(), base.end()))
      for (Mask q : std::vector<Mask>(base.begin(), base.end())) grew |= base.insert(p | q).second;
  }
  std::vector<Mask> a(base.begin(), base.end());
  rng.shuffle(a);
  const int n = rng.range(1, 4);
  const int m = rng.range(1, n);
  std::vector<Mask> b;
  std::vector<Mask> hosts;
  for (int k = rng.range(1, m); k > 0; --k) hosts.push_back(rng.pick(a));
  for (int k = rng.range(1, 3); k > 0; --k) b.push_back(rng.pick(hosts) & rng.subset(size));

  const auto space = discrete_space(size);
  const SetFamily fa(space, a), fb(space, b);
  const auto s_m = find_predetermined_one(build_point_open(space, fa, fb, m));
  const Json scen = to_json(point_open_scenario("gamma-window", size, fa.members(), fb.members(), m));
  if (!s_m) {
    out.violation("pre-one-exists-at-threshold", scen);
    return;
  }
  PreOne s = *s_m;
  while (static_cast<int>(s.moves.size()) < n) s.moves.push_back(rng.below(static_cast<int>(fa.size())));
  const auto sigma = intersect_predetermined(s, fa);
  const auto window_game = build_point_open(space, fa, fb, n, m);
  Json detail = {{"scenario", scen}, {"horizon", n}, {"window", m}, {"s", to_json(Strategy(s))},
                 {"sigma", to_json(Strategy(sigma))}};
  if (!verify(window_game, sigma, 1).valid) out.violation("sigma-wins-window", detail);
  const auto blocks = check_block_decomposition(window_game, s, sigma, m);
  if (!blocks.ok) out.violation("block-decomposition", detail);
  out.stat("window-blocks", blocks.blocks);
}

}  // namespace

void suite_gamma(Rng& rng, Sink& out) {
  gamma_subsequence(rng, out);
  gamma_window(rng, out);
}

// tukey ---------------------------------------------------------------------------------

namespace {

RelPair random_pair(Rng& rng, int size) {
  std::vector<std::vector<char>> leq(at(size), std::vector<char>(at(size), 0));
  std::vector<int> perm(at(size));
  for (int i = 0; i < size; ++i) perm[at(i)] = i;
  rng.shuffle(perm);
  const int density = rng.range(10, 60);
  for (int i = 0; i < size; ++i) {
    leq[at(i)][at(i)] = 1;
    for (int j = i + 1; j < size; ++j)
      if (rng.chance(density)) leq[at(perm[at(i)])][at(perm[at(j)])] = 1;
  }
  for (int k = 0; k < size; ++k)
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        if (leq[at(i)][at(k)] && leq[at(k)][at(j)]) leq[at(i)][at(j)] = 1;
  RelPair p;
  for (int i = 0; i < size; ++i) p.carrier.push_back(std::to_string(i));
  p.leq = std::move(leq);
  for (int i = 0; i < size; ++i) {
    if (rng.chance(50)) p.sub_a.push_back(i);
    if (rng.chance(40)) p.sub_b.push_back(i);
  }
  if (p.sub_a.empty()) p.sub_a.push_back(rng.below(size));
  return p;
}

/// A relabelled copy of `p` with one member of sub_a duplicated, equivalent as a pair.
RelPair equivalent_copy(Rng& rng, const RelPair& p) {
  const int n = p.size();
  const int dup = rng.pick(p.sub_a);
  std::vector<int> perm(at(n + 1));
  for (int i = 0; i <= n; ++i) perm[at(i)] = i;
  rng.shuffle(perm);
  auto orig = [&](int i) { return i == n ? dup : i; };
  RelPair q;
  q.carrier.resize(at(n + 1));
  q.leq.assign(at(n + 1), std::vector<char>(at(n + 1), 0));
  for (int i = 0; i <= n; ++i) {
    q.carrier[at(perm[at(i)])] = std::to_string(i);
    for (int j = 0; j <= n; ++j) q.leq[at(perm[at(i)])][at(perm[at(j)])] = p.le(orig(i), orig(j)) ? 1 : 0;
  }
  for (int a : p.sub_a) q.sub_a.push_back(perm[at(a)]);
  q.sub_a.push_back(perm[at(n)]);
  for (int b : p.sub_b) q.sub_b.push_back(perm[at(b)]);
  std::sort(q.sub_a.begin(), q.sub_a.end());
  std::sort(q.sub_b.begin(), q.sub_b.end());
  return q;
}

std::optional<std::vector<int>> find_tukey_map(const RelPair& src, const RelPair& dst) {
  const std::size_t k = src.sub_a.size();
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    std::vector<int> phi;
    for (std::size_t i = 0; i < k; ++i) phi.push_back(dst.sub_a[idx[i]]);
    if (check_tukey_map(phi, src, dst)) return phi;
    std::size_t i = 0;
    while (i < k && ++idx[i] == dst.sub_a.size()) idx[i++] = 0;
    if (i == k) return std::nullopt;
  }
}

std::optional<int> outside(Rng& rng, const RelPair& p, const std::vector<int>& sub) {
  std::vector<int> free;
  for (int i = 0; i < p.size(); ++i)
    if (std::find(sub.begin(), sub.end(), i) == sub.end()) free.push_back(i);
  if (free.empty()) return std::nullopt;
  return rng.pick(free);
}

}  // namespace

void suite_tukey(Rng& rng, Sink& out) {
  const RelPair src = random_pair(rng, rng.range(1, 10));
  const RelPair dst = rng.chance(30) ? equivalent_copy(rng, src) : random_pair(rng, rng.range(1, 10));
  const Json detail = {{"src", to_json(src)}, {"dst", to_json(dst)}};
  const auto cof_src = relative_cofinality(src);
  const auto cof_dst = relative_cofinality(dst);

  std::vector<int> phi;
  for (std::size_t i = 0; i < src.sub_a.size(); ++i) phi.push_back(rng.pick(dst.sub_a));
  const bool tukey = check_tukey_map(phi, src, dst);
  if (tukey != brute_tukey_oracle(phi, src, dst)) {
    Json d = detail;
    d["phi"] = phi;
    out.violation("tukey-criterion-matches-oracle", d);
  }
  if (tukey) {
    out.stat("tukey-maps");
    if (cof_src.is_finite() && !(cof_dst.is_defined() && cof_dst <= cof_src)) {
      Json d = detail;
      d["phi"] = phi;
      out.violation("tukey-map-bounds-cofinality", d);
    }
  }

  if (src.sub_a.size() <= 5 && dst.sub_a.size() <= 5) {
    const auto forth = find_tukey_map(src, dst);
    const auto back = forth ? find_tukey_map(dst, src) : std::nullopt;
    if (forth && back) {
      out.stat("tukey-equivalent");
      if (cof_src.is_finite() && cof_dst.is_finite() && !(cof_src == cof_dst))
        out.violation("cofinality-invariance", detail);
    }
  }

  std::optional<bool> stable;
  for (int m = 2; m <= 4; ++m) {
    const RelPair prod = product_with_chain(src, m);
    const auto proj = chain_projection(src, m);
    const bool ok = check_tukey_map(proj, prod, src);
    if (prod.sub_a.size() <= static_cast<std::size_t>(kMaxBruteTukey) && ok != brute_tukey_oracle(proj, prod, src))
      out.violation("projection-criterion-matches-oracle", detail);
    if (!ok) out.violation("projection-is-tukey", detail);
    if (stable && *stable != ok) out.violation("projection-stabilizes", detail);
    stable = ok;
  }

  if (auto extra = outside(rng, src, src.sub_a)) {
    RelPair bigger = src;
    bigger.sub_a.push_back(*extra);
    std::sort(bigger.sub_a.begin(), bigger.sub_a.end());
    const auto c = relative_cofinality(bigger);
    if (cof_src.is_defined() && !(c.is_defined() && c <= cof_src)) out.violation("monotone-in-dominating-side", detail);
  }
  if (auto extra = outside(rng, src, src.sub_b)) {
    RelPair bigger = src;
    bigger.sub_b.push_back(*extra);
    std::sort(bigger.sub_b.begin(), bigger.sub_b.end());
    const auto c = relative_cofinality(bigger);
    if (c.is_defined() && !(cof_src.is_defined() && cof_src <= c)) out.violation("monotone-in-dominated-side", detail);
  }
  out.stat("cof-" + cof_src.to_string());
}

// ground -----------------------------------------------------------------------------------

void suite_ground(Rng& rng, Sink& out) {
  const int n = rng.range(1, 6);
  std::vector<Mask> sub;
  for (int k = rng.range(0, 4); k > 0; --k) sub.push_back(rng.subset(n));
  const auto space = build_topology(n, sub);
  const Json where = {{"size", n}, {"subbasis", masks_to_json(sub)}};

  std::vector<Mask> ideal{space.universe()};
  for (int k = rng.range(0, 3); k > 0; --k) ideal.push_back(rng.subset(n));
  rng.shuffle(ideal);
  const SetFamily fi(space, ideal);
  if (!fi.flags().ideal_base || !fi.flags().covers_universe) out.violation("ideal-base-flags", where);
  if (!min_covers(space, fi, 1).covers.empty()) out.violation("ideal-covering-has-no-cover", where);

  std::vector<Mask> fam;
  for (int k = rng.range(1, 3); k > 0; --k) fam.push_back(rng.subset(n));
  const SetFamily ff(space, fam);
  if (ff.flags().ideal_base && ff.flags().covers_universe) {
    out.stat("random-ideal-covering");
    if (!min_covers(space, ff, 1).covers.empty()) out.violation("ideal-covering-has-no-cover", where);
  }

  const auto& opens = space.opens();
  std::vector<Mask> listed;
  for (int k = rng.range(1, 6); k > 0; --k) {
    Mask u = rng.pick(opens);
    if (u == space.universe() && !rng.chance(10)) u = 0;
    listed.push_back(u);
  }
  auto permuted = listed;
  rng.shuffle(permuted);
  const auto v1 = classify_cover(space, ff, listed);
  const auto v2 = classify_cover(space, ff, permuted);
  if (v1.is_O != v2.is_O || v1.lambda_m != v2.lambda_m) {
    Json d = where;
    d["family"] = masks_to_json(ff.members());
    d["listed"] = listed;
    d["permuted"] = permuted;
    out.violation("classify-order-insensitive", d);
  }
  if (v1.gamma_window != v2.gamma_window) out.stat("gamma-window-changed");
  out.stat("classified");
}

// open-question-gamma-two --------------------------------------------------------------------

void suite_open_question(Rng& rng, int index, Sink& out) {
  const int k = 2 + index % 3;
  static constexpr int kMaxH[] = {6, 5, 3};
  const int h = 1 + (index / 3) % kMaxH[k - 2];
  const auto space = discrete_space(k);
  std::vector<Mask> a;
  if (rng.chance(70)) {
    a = singletons(space).members();
  } else {
    const Mask allowed = space.universe() & ~bit(rng.below(k));
    std::set<Mask> base;
    for (int j = rng.range(1, 3); j > 0; --j) base.insert(rng.subset(k) & allowed);
    for (bool grew = true; grew;) {
      grew = false;
      for (Mask p : std::vector<Mask>(base.begin(), base.end()))
        for (Mask q : std::vector<Mask>(base.begin(), base.end())) grew |= base.insert(p | q).second;
    }
    a.assign(base.begin(), base.end());
  }
  const SetFamily fa(space, a), fb = singletons(space);
  const int w = rng.range(1, h);
  const bool two_o = solve(build_point_open(space, fa, fb, h)).winner == Player::Two;
  const bool two_window = solve(build_point_open(space, fa, fb, h, w)).winner == Player::Two;
  out.stat(std::string("two-wins-o-") + (two_o ? "yes" : "no"));
  out.stat(std::string("two-wins-window-") + (two_window ? "yes" : "no"));
  if (two_o && !two_window)
    out.violation("two-o-without-window", to_json(point_open_scenario("open-question", k, fa.members(), fb.members(), h)));
  if (two_window && !two_o) {
    Json d = to_json(point_open_scenario("open-question", k, fa.members(), fb.members(), h));
    d["window"] = w;
    out.finding(fa.flags().ideal_base ? "two-wins-window-only-ideal-base" : "two-wins-window-only", d);
  }
}

}  // namespace selectlab::fuzz
