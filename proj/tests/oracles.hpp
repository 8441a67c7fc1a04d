#pragma once

// Brute-force reference implementations. Each one follows the defining
// quantifiers literally and shares no code with the library beyond the
// data types, so agreement with the library is meaningful.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "selectlab/game.hpp"
#include "selectlab/ground.hpp"
#include "selectlab/orders.hpp"

namespace oracle {

using selectlab::Mask;

/// Opens generated by the subbasis: repeat pairwise union/intersection until nothing new appears.
inline std::vector<Mask> opens(int size, const std::vector<Mask>& subbasis) {
  std::set<Mask> s(subbasis.begin(), subbasis.end());
  s.insert(0);
  s.insert(selectlab::low_bits(size));
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Mask> cur(s.begin(), s.end());
    for (Mask a : cur)
      for (Mask b : cur) grew |= s.insert(a | b).second | s.insert(a & b).second;
  }
  return {s.begin(), s.end()};
}

/// Intersection of every closed superset.
inline Mask closure(int size, const std::vector<Mask>& opens, Mask s) {
  const Mask x = selectlab::low_bits(size);
  Mask c = x;
  for (Mask u : opens)
    if (selectlab::is_subset(s, x & ~u)) c &= x & ~u;
  return c;
}

/// Two can force the target from history h, by plain minimax with no memo.
inline bool two_wins(const selectlab::GameSpec& g, std::vector<Mask>& h) {
  const int r = static_cast<int>(h.size());
  if (r == g.horizon()) return g.target.evaluate(h);
  for (int i = 0; i < static_cast<int>(g.moves[static_cast<std::size_t>(r)].size()); ++i) {
    const Mask move = g.moves[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
    bool answered = false;
    // Every nonempty submask for Finite kind, every bit for Single kind.
    for (Mask c = move; c != 0 && !answered; c = (c - 1) & move) {
      if (g.kind == selectlab::SelectionKind::Single && selectlab::popcount(c) != 1) continue;
      h.push_back(c);
      answered = two_wins(g, h);
      h.pop_back();
    }
    if (!answered) return false;
  }
  return true;
}

inline selectlab::Player winner(const selectlab::GameSpec& g) {
  std::vector<Mask> h;
  return two_wins(g, h) ? selectlab::Player::Two : selectlab::Player::One;
}

/// All legal selection sequences against a fixed list of One's moves.
inline void for_each_reply_sequence(const selectlab::GameSpec& g, const std::vector<int>& moves,
                                    const std::function<void(const std::vector<Mask>&)>& f) {
  std::vector<Mask> h;
  std::function<void()> rec = [&] {
    const auto r = h.size();
    if (r == moves.size()) return f(h);
    const Mask move = g.moves[r][static_cast<std::size_t>(moves[r])];
    for (Mask c = move; c != 0; c = (c - 1) & move) {
      if (g.kind == selectlab::SelectionKind::Single && selectlab::popcount(c) != 1) continue;
      h.push_back(c);
      rec();
      h.pop_back();
    }
  };
  rec();
}

/// Some tuple of move indices beats every reply sequence.
inline bool pre_one_exists(const selectlab::GameSpec& g) {
  std::vector<int> moves(static_cast<std::size_t>(g.horizon()), 0);
  for (;;) {
    bool wins = true;
    for_each_reply_sequence(g, moves, [&](const std::vector<Mask>& s) { wins = wins && !g.target.evaluate(s); });
    if (wins) return true;
    std::size_t i = 0;
    while (i < moves.size() && ++moves[i] == static_cast<int>(g.moves[i].size())) moves[i++] = 0;
    if (i == moves.size()) return false;
  }
}

/// Some Markov table (one single-item reply per round and move) wins every play.
inline bool markov_two_exists(const selectlab::GameSpec& g) {
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < g.horizon(); ++r)
    for (int i = 0; i < static_cast<int>(g.moves[static_cast<std::size_t>(r)].size()); ++i) cells.emplace_back(r, i);
  std::vector<std::vector<int>> options;
  for (auto [r, i] : cells) options.push_back(selectlab::bits_of(g.moves[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)]));
  std::vector<std::size_t> pick(cells.size(), 0);
  for (;;) {
    auto reply = [&](int r, int i) {
      for (std::size_t k = 0; k < cells.size(); ++k)
        if (cells[k] == std::pair{r, i}) return selectlab::bit(options[k][pick[k]]);
      return Mask{0};
    };
    bool wins = true;
    std::vector<int> moves(static_cast<std::size_t>(g.horizon()), 0);
    for (bool more = true; more && wins;) {
      std::vector<Mask> sel;
      for (int r = 0; r < g.horizon(); ++r) sel.push_back(reply(r, moves[static_cast<std::size_t>(r)]));
      wins = g.target.evaluate(sel);
      std::size_t i = 0;
      while (i < moves.size() && ++moves[i] == static_cast<int>(g.moves[i].size())) moves[i++] = 0;
      more = i < moves.size();
    }
    if (wins) return true;
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
    if (k == pick.size()) return false;
  }
}

/// Least |F| over every subfamily F of sub_a that dominates sub_b; -1 when none does.
inline int cofinality(const selectlab::RelPair& p) {
  const std::size_t n = p.sub_a.size();
  int best = -1;
  for (Mask f = 0; f < (Mask{1} << n); ++f) {
    bool dom = std::all_of(p.sub_b.begin(), p.sub_b.end(), [&](int b) {
      for (std::size_t k = 0; k < n; ++k)
        if ((f >> k & 1) && p.le(b, p.sub_a[k])) return true;
      return false;
    });
    if (dom && (best < 0 || selectlab::popcount(f) < best)) best = selectlab::popcount(f);
  }
  return best;
}

/// Every famB-cover (any subset of proper opens, not only minimal ones) is a famA-cover.
inline bool every_cover_transfers(const std::vector<Mask>& opens, Mask universe, const std::vector<Mask>& fam_a,
                                  const std::vector<Mask>& fam_b) {
  std::vector<Mask> proper;
  for (Mask u : opens)
    if (u != universe) proper.push_back(u);
  auto covers = [](const std::vector<Mask>& fam, const std::vector<Mask>& sets) {
    return std::all_of(fam.begin(), fam.end(), [&](Mask a) {
      return std::any_of(sets.begin(), sets.end(), [&](Mask u) { return selectlab::is_subset(a, u); });
    });
  };
  for (Mask pick = 0; pick < (Mask{1} << proper.size()); ++pick) {
    std::vector<Mask> sets;
    for (std::size_t k = 0; k < proper.size(); ++k)
      if (pick >> k & 1) sets.push_back(proper[k]);
    if (covers(fam_b, sets) && !covers(fam_a, sets)) return false;
  }
  return true;
}

}  // namespace oracle
