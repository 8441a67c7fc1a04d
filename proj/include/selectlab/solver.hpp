#pragma once

// Exact winner determination for finite selection games, synthesis of
// limited-information strategies, and exhaustive strategy verification.

#include <cstdint>
#include <optional>
#include <vector>

#include "selectlab/game.hpp"

namespace selectlab {

struct Determination {
  Player winner = Player::One;
  /// FullOne when One wins, FullTwo when Two wins; total on reachable histories.
  Strategy witness;
  std::uint64_t nodes_explored = 0;
  std::uint64_t memo_hits = 0;
};

struct SolveOptions {
  /// Root moves are split across this many threads, each with private memos.
  /// Winner and witness do not depend on the value.
  int threads = 1;
};

Determination solve(const GameSpec& game, const SolveOptions& options = {});

/// Least winning PreOne in lexicographic index order, if any.
std::optional<PreOne> find_predetermined_one(const GameSpec& game);

struct MarkovOptions {
  std::uint64_t node_budget = 10'000'000;
};

inline constexpr int kMaxMarkovCells = 24;

/// A winning MarkovTwo by exact backtracking over table cells, if any.
/// Throws BudgetExceeded when the node budget runs out and CapExceeded when
/// (max family size) * horizon exceeds 24.
std::optional<MarkovTwo> find_markov_two(const GameSpec& game, const MarkovOptions& options = {});

struct VerificationReport {
  bool valid = false;
  Player owner = Player::One;
  std::uint64_t plays_checked = 0;
  std::uint64_t losing_plays = 0;
  /// First losing plays in enumeration order, at most max_exhibits of them.
  std::vector<PlayRecord> counter_plays;
};

inline constexpr std::size_t kDefaultMaxExhibits = 16;

/// Plays `strategy` against every adversary behaviour. Throws IllegalMove.
VerificationReport verify(const GameSpec& game, const Strategy& strategy,
                          std::size_t max_exhibits = kDefaultMaxExhibits);

}  // namespace selectlab
