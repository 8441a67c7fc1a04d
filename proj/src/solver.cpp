#include "selectlab/solver.hpp"

#include <algorithm>
#include <set>
#include <thread>
#include <unordered_map>

#include "selectlab/error.hpp"

namespace selectlab {

namespace {

struct HistoryHash {
  std::size_t operator()(const std::vector<Mask>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (Mask m : v) {
      h ^= m + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

/// Backward-induction oracle: does Two win from a given selection history?
class Oracle {
 public:
  explicit Oracle(const GameSpec& g) : g_(g), canonical_(g.target.hints().order_insensitive) {
    replies_.resize(static_cast<std::size_t>(g.horizon()));
    for (int r = 0; r < g.horizon(); ++r)
      for (int i = 0; i < move_count(r); ++i) replies_[static_cast<std::size_t>(r)].push_back(two_replies(g, r, i));
  }

  int horizon() const { return g_.horizon(); }
  int move_count(int round) const { return static_cast<int>(g_.moves[static_cast<std::size_t>(round)].size()); }
  const std::vector<Mask>& replies(int round, int move) const {
    return replies_[static_cast<std::size_t>(round)][static_cast<std::size_t>(move)];
  }

  /// Memo key; sorted when the target ignores round order.
  std::vector<Mask> key(std::vector<Mask> h) const {
    if (canonical_) std::sort(h.begin(), h.end());
    return h;
  }

  bool two_wins(std::vector<Mask>& h) {
    ++nodes_;
    const int r = static_cast<int>(h.size());
    if (r == horizon()) return g_.target.evaluate(h);
    auto k = key(h);
    if (auto it = memo_.find(k); it != memo_.end()) {
      ++hits_;
      return it->second;
    }
    bool result = true;
    for (int i = 0; i < move_count(r) && result; ++i) result = two_answers(h, i);
    memo_.emplace(std::move(k), result);
    return result;
  }

  /// Two has a winning reply to One's move `i` after history h.
  bool two_answers(std::vector<Mask>& h, int i) {
    const int r = static_cast<int>(h.size());
    for (Mask c : replies(r, i)) {
      h.push_back(c);
      const bool w = two_wins(h);
      h.pop_back();
      if (w) return true;
    }
    return false;
  }

  bool two_wins_after(const std::vector<Mask>& h, Mask c) {
    std::vector<Mask> next = h;
    next.push_back(c);
    return two_wins(next);
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t hits() const { return hits_; }

 private:
  const GameSpec& g_;
  bool canonical_;
  std::vector<std::vector<std::vector<Mask>>> replies_;
  std::unordered_map<std::vector<Mask>, bool, HistoryHash> memo_;
  std::uint64_t nodes_ = 0, hits_ = 0;
};

void extract_one(Oracle& o, std::vector<Mask>& h, FullOne& out) {
  const int r = static_cast<int>(h.size());
  if (r == o.horizon()) return;
  int move = 0;
  while (o.two_answers(h, move)) ++move;
  out.table.emplace(h, move);
  for (Mask c : o.replies(r, move)) {
    h.push_back(c);
    extract_one(o, h, out);
    h.pop_back();
  }
}

void extract_two(Oracle& o, std::vector<Mask>& h, std::vector<int>& moves, FullTwo& out) {
  const int r = static_cast<int>(h.size());
  if (r == o.horizon()) return;
  for (int i = 0; i < o.move_count(r); ++i) {
    moves.push_back(i);
    for (Mask c : o.replies(r, i)) {
      h.push_back(c);
      if (o.two_wins(h)) {
        out.table.emplace(moves, c);
        extract_two(o, h, moves, out);
        h.pop_back();
        break;
      }
      h.pop_back();
    }
    moves.pop_back();
  }
}

}  // namespace

Determination solve(const GameSpec& game, const SolveOptions& options) {
  Determination d;
  Oracle oracle(game);
  std::vector<Mask> root;
  bool two_wins;
  const int threads = std::max(1, options.threads);
  if (threads > 1 && game.horizon() > 0) {
    // One private oracle per root move; every root move is evaluated so the
    // counters do not depend on which thread finishes first.
    const int n = oracle.move_count(0);
    std::vector<char> answered(static_cast<std::size_t>(n));
    std::vector<std::uint64_t> nodes(static_cast<std::size_t>(n)), hits(static_cast<std::size_t>(n));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < n; i += threads) {
          Oracle local(game);
          std::vector<Mask> h;
          answered[static_cast<std::size_t>(i)] = local.two_answers(h, i);
          nodes[static_cast<std::size_t>(i)] = local.nodes();
          hits[static_cast<std::size_t>(i)] = local.hits();
        }
      });
    }
    for (auto& th : pool) th.join();
    two_wins = std::all_of(answered.begin(), answered.end(), [](char a) { return a != 0; });
    for (int i = 0; i < n; ++i) {
      d.nodes_explored += nodes[static_cast<std::size_t>(i)];
      d.memo_hits += hits[static_cast<std::size_t>(i)];
    }
  } else {
    two_wins = oracle.two_wins(root);
  }

  if (two_wins) {
    d.winner = Player::Two;
    FullTwo w;
    std::vector<int> moves;
    extract_two(oracle, root, moves, w);
    d.witness = std::move(w);
  } else {
    d.winner = Player::One;
    FullOne w;
    extract_one(oracle, root, w);
    d.witness = std::move(w);
  }
  d.nodes_explored += oracle.nodes();
  d.memo_hits += oracle.hits();
  return d;
}

namespace {

using StateSet = std::set<std::vector<Mask>>;

class PreSearch {
 public:
  explicit PreSearch(Oracle& o) : o_(o) {}

  bool dfs(int round, const StateSet& states) {
    if (round == o_.horizon()) return true;
    if (failed_.contains({round, states})) return false;
    for (int i = 0; i < o_.move_count(round); ++i) {
      StateSet next;
      bool dead = false;
      for (const auto& h : states) {
        for (Mask c : o_.replies(round, i)) {
          auto n = h;
          n.push_back(c);
          if (o_.two_wins(n)) {
            dead = true;
            break;
          }
          next.insert(o_.key(std::move(n)));
        }
        if (dead) break;
      }
      if (dead) continue;
      moves_.push_back(i);
      if (dfs(round + 1, next)) return true;
      moves_.pop_back();
    }
    failed_.insert({round, states});
    return false;
  }

  std::vector<int> moves_;

 private:
  Oracle& o_;
  std::set<std::pair<int, StateSet>> failed_;
};

}  // namespace

std::optional<PreOne> find_predetermined_one(const GameSpec& game) {
  Oracle oracle(game);
  std::vector<Mask> root;
  if (oracle.two_wins(root)) return std::nullopt;
  PreSearch search(oracle);
  if (!search.dfs(0, StateSet{root})) return std::nullopt;
  return PreOne{search.moves_};
}

namespace {

class MarkovSearch {
 public:
  MarkovSearch(Oracle& o, std::uint64_t budget) : o_(o), budget_(budget) {
    for (int r = 0; r < o.horizon(); ++r)
      for (int i = 0; i < o.move_count(r); ++i) cells_.emplace_back(r, i);
    table_.resize(static_cast<std::size_t>(o.horizon()));
    for (int r = 0; r < o.horizon(); ++r) table_[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(o.move_count(r)), 0);
    states_.resize(static_cast<std::size_t>(o.horizon()) + 1);
    states_[0].insert(std::vector<Mask>{});
  }

  bool run(std::size_t idx) {
    if (idx == cells_.size()) return true;
    const auto [r, i] = cells_[idx];
    const auto ur = static_cast<std::size_t>(r);
    for (Mask c : o_.replies(r, i)) {
      if (++nodes_ > budget_) throw Error(ErrorCode::BudgetExceeded, "Markov search exhausted its node budget");
      // Every One prefix through this cell must leave Two a full-information win.
      bool ok = true;
      for (const auto& h : states_[ur]) {
        if (!o_.two_wins_after(h, c)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      table_[ur][static_cast<std::size_t>(i)] = c;
      if (i + 1 == o_.move_count(r)) {
        StateSet next;
        for (const auto& h : states_[ur])
          for (Mask sel : table_[ur]) {
            auto n = h;
            n.push_back(sel);
            next.insert(o_.key(std::move(n)));
          }
        states_[ur + 1] = std::move(next);
      }
      if (run(idx + 1)) return true;
    }
    table_[ur][static_cast<std::size_t>(i)] = 0;
    return false;
  }

  std::vector<std::vector<Mask>> table_;

 private:
  Oracle& o_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::pair<int, int>> cells_;
  std::vector<StateSet> states_;
};

}  // namespace

std::optional<MarkovTwo> find_markov_two(const GameSpec& game, const MarkovOptions& options) {
  std::size_t widest = 0;
  for (const auto& fam : game.moves) widest = std::max(widest, fam.size());
  if (widest * static_cast<std::size_t>(game.horizon()) > kMaxMarkovCells)
    throw Error(ErrorCode::CapExceeded, "Markov table larger than 24 cells",
                static_cast<int>(widest * static_cast<std::size_t>(game.horizon())));
  Oracle oracle(game);
  std::vector<Mask> root;
  if (!oracle.two_wins(root)) return std::nullopt;
  MarkovSearch search(oracle, options.node_budget);
  if (!search.run(0)) return std::nullopt;
  return MarkovTwo{search.table_};
}

namespace {

struct Verifier {
  const GameSpec& g;
  const Strategy& s;
  std::size_t max_exhibits;
  VerificationReport report;
  PlayRecord rec;

  void leaf() {
    ++report.plays_checked;
    const bool two_won = g.target.evaluate(rec.two_selections);
    const Player winner = two_won ? Player::Two : Player::One;
    if (winner != report.owner) {
      ++report.losing_plays;
      if (report.counter_plays.size() < max_exhibits) {
        PlayRecord out = rec;
        out.winner = winner;
        report.counter_plays.push_back(std::move(out));
      }
    }
  }

  void as_one(int r) {
    if (r == g.horizon()) return leaf();
    const int i = one_move(g, s, rec.two_selections);
    rec.one_moves.push_back(i);
    for (Mask c : two_replies(g, r, i)) {
      rec.two_selections.push_back(c);
      as_one(r + 1);
      rec.two_selections.pop_back();
    }
    rec.one_moves.pop_back();
  }

  void as_two(int r) {
    if (r == g.horizon()) return leaf();
    for (int i = 0; i < static_cast<int>(g.moves[static_cast<std::size_t>(r)].size()); ++i) {
      rec.one_moves.push_back(i);
      rec.two_selections.push_back(two_move(g, s, rec.one_moves));
      as_two(r + 1);
      rec.two_selections.pop_back();
      rec.one_moves.pop_back();
    }
  }
};

}  // namespace

VerificationReport verify(const GameSpec& game, const Strategy& strategy, std::size_t max_exhibits) {
  Verifier v{game, strategy, max_exhibits, {}, {}};
  v.report.owner = owner(strategy);
  if (v.report.owner == Player::One)
    v.as_one(0);
  else
    v.as_two(0);
  v.report.valid = v.report.losing_plays == 0;
  return std::move(v.report);
}

}  // namespace selectlab
