#include "selectlab/game.hpp"

#include <algorithm>
#include <random>

#include "selectlab/error.hpp"
#include "selectlab/ground.hpp"

namespace selectlab {

TargetPredicate::TargetPredicate() {
  Node n;
  n.hints = {true, false};
  node_ = std::make_shared<const Node>(std::move(n));
}

TargetPredicate TargetPredicate::covers_family(std::shared_ptr<const CoverContext> ctx, std::vector<Mask> fam) {
  if (!ctx) throw Error(ErrorCode::InvalidArgument, "cover target needs a cover context");
  Node n;
  n.body = Body::CoversFamily;
  n.hints = {true, false};
  n.family = std::move(fam);
  if (n.family.size() <= 64) {
    for (Mask s : ctx->item_sets) {
      Mask c = 0;
      for (std::size_t k = 0; k < n.family.size(); ++k)
        if (is_subset(n.family[k], s)) c |= bit(static_cast<int>(k));
      n.item_cover.push_back(c);
      n.item_is_universe.push_back(s == ctx->ground_universe);
    }
  }
  n.ctx = std::move(ctx);
  return TargetPredicate(std::make_shared<const Node>(std::move(n)));
}

TargetPredicate TargetPredicate::multi_cover(std::shared_ptr<const CoverContext> ctx, std::vector<Mask> fam, int m) {
  if (!ctx) throw Error(ErrorCode::InvalidArgument, "cover target needs a cover context");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "multiplicity must be at least 1");
  Node n;
  n.body = Body::MultiCover;
  n.hints = {true, false};
  n.family = std::move(fam);
  n.param = m;
  n.ctx = std::move(ctx);
  return TargetPredicate(std::make_shared<const Node>(std::move(n)));
}

TargetPredicate TargetPredicate::window_cover(std::shared_ptr<const CoverContext> ctx, std::vector<Mask> fam, int w) {
  if (!ctx) throw Error(ErrorCode::InvalidArgument, "cover target needs a cover context");
  if (w < 0) throw Error(ErrorCode::InvalidArgument, "window must be non-negative");
  Node n;
  n.body = Body::WindowCover;
  n.hints = {false, false};
  n.family = std::move(fam);
  n.param = w;
  n.ctx = std::move(ctx);
  return TargetPredicate(std::make_shared<const Node>(std::move(n)));
}

TargetPredicate TargetPredicate::explicit_sets(std::vector<Mask> winning) {
  std::sort(winning.begin(), winning.end());
  winning.erase(std::unique(winning.begin(), winning.end()), winning.end());
  Node n;
  n.body = Body::ExplicitSet;
  n.hints = {true, false};
  n.family = std::move(winning);
  return TargetPredicate(std::make_shared<const Node>(std::move(n)));
}

TargetPredicate TargetPredicate::gamma_core(const TargetPredicate& inner, int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "threshold must be non-negative");
  Node n;
  n.body = Body::GammaCore;
  n.hints = {inner.hints().order_insensitive, false};
  n.param = m;
  n.inner = std::make_shared<const TargetPredicate>(inner);
  return TargetPredicate(std::make_shared<const Node>(std::move(n)));
}

TargetPredicate TargetPredicate::negation(const TargetPredicate& inner) {
  Node n;
  n.body = Body::Not;
  n.hints = {inner.hints().order_insensitive, false};
  n.inner = std::make_shared<const TargetPredicate>(inner);
  return TargetPredicate(std::make_shared<const Node>(std::move(n)));
}

TargetPredicate TargetPredicate::with_hints(TargetHints hints) const {
  Node n = *node_;
  n.hints = hints;
  return TargetPredicate(std::make_shared<const Node>(std::move(n)));
}

const TargetPredicate& TargetPredicate::inner() const {
  if (!node_->inner) throw Error(ErrorCode::InvalidArgument, "target has no inner predicate");
  return *node_->inner;
}

std::shared_ptr<const CoverContext> TargetPredicate::context() const {
  if (node_->ctx) return node_->ctx;
  if (node_->inner) return node_->inner->context();
  return nullptr;
}

std::vector<Mask> TargetPredicate::listed_sets(std::span<const Mask> selection) const {
  std::vector<Mask> listed;
  for (Mask round : selection)
    for_each_bit(round, [&](int i) { listed.push_back(node_->ctx->item_sets.at(static_cast<std::size_t>(i))); });
  return listed;
}

bool TargetPredicate::eval_covers(std::span<const Mask> selection) const {
  const Node& n = *node_;
  if (!n.item_cover.empty() || n.ctx->item_sets.empty()) {
    Mask covered = 0;
    bool universe_hit = false;
    for (Mask round : selection)
      for_each_bit(round, [&](int i) {
        covered |= n.item_cover.at(static_cast<std::size_t>(i));
        universe_hit = universe_hit || n.item_is_universe[static_cast<std::size_t>(i)];
      });
    return !universe_hit && covered == low_bits(static_cast<int>(n.family.size()));
  }
  const auto listed = listed_sets(selection);
  return cover_verdict(n.ctx->ground_universe, n.family, listed).is_O;
}

bool TargetPredicate::evaluate(std::span<const Mask> selection) const {
  const Node& n = *node_;
  switch (n.body) {
    case Body::CoversFamily:
      return eval_covers(selection);
    case Body::MultiCover: {
      const auto listed = listed_sets(selection);
      const auto v = cover_verdict(n.ctx->ground_universe, n.family, listed);
      return v.is_O && (n.family.empty() || v.lambda_m >= n.param);
    }
    case Body::WindowCover: {
      const Mask universe = n.ctx->ground_universe;
      const int rounds = static_cast<int>(selection.size());
      std::vector<std::vector<Mask>> per_round(selection.size());
      for (int r = 0; r < rounds; ++r) {
        for_each_bit(selection[static_cast<std::size_t>(r)], [&](int i) {
          per_round[static_cast<std::size_t>(r)].push_back(n.ctx->item_sets.at(static_cast<std::size_t>(i)));
        });
        for (Mask s : per_round[static_cast<std::size_t>(r)])
          if (s == universe) return false;
      }
      const int w = std::min(n.param, rounds);
      if (w == 0) return n.family.empty();
      for (int start = 0; start + w <= rounds; ++start) {
        for (Mask a : n.family) {
          bool hit = false;
          for (int r = start; r < start + w && !hit; ++r)
            for (Mask s : per_round[static_cast<std::size_t>(r)])
              if (is_subset(a, s)) {
                hit = true;
                break;
              }
          if (!hit) return false;
        }
      }
      return true;
    }
    case Body::ExplicitSet: {
      Mask u = 0;
      for (Mask r : selection) u |= r;
      return std::binary_search(n.family.begin(), n.family.end(), u);
    }
    case Body::GammaCore: {
      const int rounds = static_cast<int>(selection.size());
      std::vector<Mask> sub;
      for (Mask pick = 0; pick < (Mask{1} << rounds); ++pick) {
        if (popcount(pick) < n.param) continue;
        sub.clear();
        for_each_bit(pick, [&](int r) { sub.push_back(selection[static_cast<std::size_t>(r)]); });
        if (!n.inner->evaluate(sub)) return false;
      }
      return true;
    }
    case Body::Not:
      return !n.inner->evaluate(selection);
  }
  return false;
}

namespace {

void check_hints(const GameSpec& g) {
  const TargetHints h = g.target.hints();
  if (!h.order_insensitive && !h.monotone_up) return;
  // Fixed seed: validation must be reproducible.
  std::mt19937_64 rng(0x5e1ec7a1ULL);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  for (int sample = 0; sample < 64; ++sample) {
    std::vector<Mask> sel;
    for (int r = 0; r < g.horizon(); ++r) {
      const auto& fam = g.moves[static_cast<std::size_t>(r)];
      const int move = static_cast<int>(pick(fam.size()));
      const auto replies = two_replies(g, r, move);
      sel.push_back(replies[pick(replies.size())]);
    }
    const bool base = g.target.evaluate(sel);
    if (h.order_insensitive && sel.size() > 1) {
      auto perm = sel;
      std::shuffle(perm.begin(), perm.end(), rng);
      if (g.target.evaluate(perm) != base)
        throw Error(ErrorCode::UnsoundHint, "order_insensitive falsified by a permuted selection");
    }
    if (h.monotone_up && base && !sel.empty()) {
      auto bigger = sel;
      const std::size_t r = pick(bigger.size());
      const auto& fam = g.moves[r];
      bigger[r] |= fam[pick(fam.size())];
      if (!g.target.evaluate(bigger))
        throw Error(ErrorCode::UnsoundHint, "monotone_up falsified by an enlarged selection");
    }
  }
}

}  // namespace

GameSpec make_game(int item_count, std::vector<std::vector<Mask>> moves, SelectionKind kind, TargetPredicate target) {
  if (item_count < 0 || item_count > kMaxItems)
    throw Error(ErrorCode::CapExceeded, "item domain must have at most 64 items", item_count);
  if (static_cast<int>(moves.size()) > kMaxHorizon)
    throw Error(ErrorCode::CapExceeded, "horizon above the hard cap of 8", static_cast<int>(moves.size()));
  const Mask items = low_bits(item_count);
  for (std::size_t r = 0; r < moves.size(); ++r) {
    if (moves[r].empty()) throw Error(ErrorCode::EmptyMove, "round has no moves", static_cast<int>(r));
    for (Mask m : moves[r]) {
      if (m == 0) throw Error(ErrorCode::EmptyMove, "empty move set", static_cast<int>(r));
      if (!is_subset(m, items)) throw Error(ErrorCode::InvalidArgument, "move set outside item domain", static_cast<int>(r));
    }
  }
  if (auto ctx = target.context(); ctx && static_cast<int>(ctx->item_sets.size()) < item_count)
    throw Error(ErrorCode::InvalidArgument, "cover context does not describe every item");
  GameSpec g{item_count, std::move(moves), kind, std::move(target)};
  check_hints(g);
  return g;
}

GameSpec truncate(const GameSpec& game, int horizon) {
  if (horizon < 0 || horizon > game.horizon()) throw Error(ErrorCode::InvalidArgument, "cannot extend a game by truncation");
  GameSpec g = game;
  g.moves.resize(static_cast<std::size_t>(horizon));
  return g;
}

GameSpec with_target(const GameSpec& game, TargetPredicate target) {
  return make_game(game.item_count, game.moves, game.kind, std::move(target));
}

std::vector<Mask> two_replies(const GameSpec& game, int round, int move) {
  const Mask ms = game.moves.at(static_cast<std::size_t>(round)).at(static_cast<std::size_t>(move));
  std::vector<Mask> out;
  if (game.kind == SelectionKind::Single) {
    for_each_bit(ms, [&](int i) { out.push_back(bit(i)); });
  } else if (game.target.hints().monotone_up) {
    out.push_back(ms);
  } else {
    // Nonempty submasks in ascending numeric order.
    for (Mask s = (ms - 1) & ms;; s = (s - 1) & ms) {
      out.push_back(s == 0 ? ms : s);
      if (s == 0) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

bool is_legal_reply(const GameSpec& game, int round, int move, Mask selection) {
  if (round < 0 || round >= game.horizon()) return false;
  const auto& fam = game.moves[static_cast<std::size_t>(round)];
  if (move < 0 || move >= static_cast<int>(fam.size())) return false;
  const Mask ms = fam[static_cast<std::size_t>(move)];
  if (selection == 0 || !is_subset(selection, ms)) return false;
  return game.kind == SelectionKind::Finite || popcount(selection) == 1;
}

Player owner(const Strategy& s) noexcept {
  return std::holds_alternative<FullOne>(s) || std::holds_alternative<PreOne>(s) ? Player::One : Player::Two;
}

namespace {

void collect_histories(const GameSpec& game, const PreOne& pre, SelectionHistory& h, FullOne& out) {
  const int r = static_cast<int>(h.size());
  if (r >= game.horizon()) return;
  const int move = pre.moves.at(static_cast<std::size_t>(r));
  out.table[h] = move;
  for (Mask c : two_replies(game, r, move)) {
    h.push_back(c);
    collect_histories(game, pre, h, out);
    h.pop_back();
  }
}

void collect_move_histories(const GameSpec& game, const MarkovTwo& mk, std::vector<int>& h, FullTwo& out) {
  const int r = static_cast<int>(h.size());
  if (r >= game.horizon()) return;
  const auto& fam = game.moves[static_cast<std::size_t>(r)];
  for (int i = 0; i < static_cast<int>(fam.size()); ++i) {
    h.push_back(i);
    out.table[h] = mk.table.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(i));
    collect_move_histories(game, mk, h, out);
    h.pop_back();
  }
}

}  // namespace

FullOne to_full(const GameSpec& game, const PreOne& pre) {
  FullOne out;
  SelectionHistory h;
  collect_histories(game, pre, h, out);
  return out;
}

FullTwo to_full(const GameSpec& game, const MarkovTwo& markov) {
  FullTwo out;
  std::vector<int> h;
  collect_move_histories(game, markov, h, out);
  return out;
}

FullTwo singleton_embedding(const FullTwo& single) { return single; }

int one_move(const GameSpec& game, const Strategy& one, std::span<const Mask> history) {
  const int r = static_cast<int>(history.size());
  int move = -1;
  if (const auto* pre = std::get_if<PreOne>(&one)) {
    if (r < static_cast<int>(pre->moves.size())) move = pre->moves[static_cast<std::size_t>(r)];
  } else if (const auto* full = std::get_if<FullOne>(&one)) {
    auto it = full->table.find(SelectionHistory(history.begin(), history.end()));
    if (it != full->table.end()) move = it->second;
  } else {
    throw Error(ErrorCode::InvalidArgument, "not a strategy for One");
  }
  if (move < 0 || move >= static_cast<int>(game.moves.at(static_cast<std::size_t>(r)).size()))
    throw Error(ErrorCode::IllegalMove, "One's strategy has no legal move", r);
  return move;
}

Mask two_move(const GameSpec& game, const Strategy& two, std::span<const int> one_moves) {
  const int r = static_cast<int>(one_moves.size()) - 1;
  Mask sel = 0;
  if (const auto* mk = std::get_if<MarkovTwo>(&two)) {
    const auto ur = static_cast<std::size_t>(r);
    const auto um = static_cast<std::size_t>(one_moves.back());
    if (ur < mk->table.size() && um < mk->table[ur].size()) sel = mk->table[ur][um];
  } else if (const auto* full = std::get_if<FullTwo>(&two)) {
    auto it = full->table.find(std::vector<int>(one_moves.begin(), one_moves.end()));
    if (it != full->table.end()) sel = it->second;
  } else {
    throw Error(ErrorCode::InvalidArgument, "not a strategy for Two");
  }
  if (!is_legal_reply(game, r, one_moves.back(), sel))
    throw Error(ErrorCode::IllegalMove, "Two's strategy has no legal selection", r);
  return sel;
}

namespace {

PlayRecord finish(const GameSpec& game, PlayRecord rec) {
  rec.winner = game.target.evaluate(rec.two_selections) ? Player::Two : Player::One;
  return rec;
}

}  // namespace

PlayRecord play(const GameSpec& game, const Strategy& one, const Strategy& two) {
  PlayRecord rec;
  for (int r = 0; r < game.horizon(); ++r) {
    rec.one_moves.push_back(one_move(game, one, rec.two_selections));
    rec.two_selections.push_back(two_move(game, two, rec.one_moves));
  }
  return finish(game, std::move(rec));
}

PlayRecord play(const GameSpec& game, const Strategy& one, std::span<const Mask> two_selections) {
  if (static_cast<int>(two_selections.size()) != game.horizon())
    throw Error(ErrorCode::InvalidArgument, "need one selection per round");
  PlayRecord rec;
  for (int r = 0; r < game.horizon(); ++r) {
    const int move = one_move(game, one, rec.two_selections);
    const Mask sel = two_selections[static_cast<std::size_t>(r)];
    if (!is_legal_reply(game, r, move, sel)) throw Error(ErrorCode::IllegalMove, "fixed selection is illegal", r);
    rec.one_moves.push_back(move);
    rec.two_selections.push_back(sel);
  }
  return finish(game, std::move(rec));
}

}  // namespace selectlab
