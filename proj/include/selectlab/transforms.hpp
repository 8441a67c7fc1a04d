#pragma once

// Strategy combinators: translation of strategies between single-selection
// games along a pack of move and selection maps, and the two strengthening
// constructions toward window and subsequence targets.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "selectlab/game.hpp"
#include "selectlab/ground.hpp"

namespace selectlab {

/// Maps from the destination game back to the source game (One's moves) and
/// forward again (Two's selections). Both games are Single kind.
struct TranslationPack {
  /// t_one[round][dst move index] -> src move index.
  std::vector<std::vector<int>> t_one;
  /// t_two[round][dst move index][src item] -> dst item.
  std::vector<std::vector<std::vector<int>>> t_two;

  friend bool operator==(const TranslationPack&, const TranslationPack&) = default;
};

struct TrAxiomReport {
  bool ok = false;
  bool tr1 = false;
  bool tr2 = false;
  /// First (round, dst move, src item) where t_two leaves the dst move set.
  std::optional<std::array<int, 3>> tr1_violation;
  /// First dst move tuple and src item tuple where a src win maps to a dst loss.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> tr2_violation;
};

/// Pack shape must match the games (else InvalidArgument). Tr1: every item
/// x of t_one(B) is sent into B. Tr2: for every tuple of dst moves and items
/// x_r in t_one_r(B_r), a src target hit maps to a dst target hit.
TrAxiomReport check_tr_axioms(const TranslationPack& pack, const GameSpec& src, const GameSpec& dst);

enum class Direction {
  MarkTwo,          // Markov Two in src -> Markov Two in dst
  FullTwo,          // full-information Two in src -> Two in dst
  FullOnePullback,  // full-information One in dst -> One in src
  PreOnePullback,   // predetermined One in dst -> predetermined One in src
};

/// Throws AxiomsFail, InputNotWinning, or InvalidArgument when the input
/// strategy is not of the class the direction consumes.
Strategy apply_translation(const TranslationPack& pack, const GameSpec& src, const GameSpec& dst, Direction direction,
                           const Strategy& input);

/// phi[round][dst item] -> src item. t_one takes the least src move equal to
/// the image of the dst move (ImageNotMove naming the round if none);
/// t_two takes the least preimage inside the dst move, else its least item.
TranslationPack lift_phi(const std::vector<std::vector<int>>& phi, const GameSpec& src, const GameSpec& dst);

// Subsequence strengthening ---------------------------------------------------

struct GammaStrengthening {
  FullOne sigma;
  /// The input game with target Not(GammaCore(inner, m)).
  GameSpec game;
};

/// `game` is Single kind with the same filter-base move family every round
/// and target Not(inner); s wins truncate(game, h) for every h in [m, n],
/// n = horizon. gamma(sub) is the least-index move inside s(p) for every
/// prefix p of sub, the empty prefix included. sigma opens with s(empty) and
/// afterwards plays the least-index move inside gamma of every nonempty
/// subsequence of the history.
/// Throws NotFilterBase, NotUniformlyWinning (detail = failing horizon).
GammaStrengthening strengthen_gamma_one(const FullOne& s, const GameSpec& game, int m);

struct ClosureReport {
  bool ok = true;
  std::uint64_t plays = 0;
  std::uint64_t subsequences = 0;
  std::optional<std::vector<Mask>> failing_play;
  Mask failing_indices = 0;
};

/// Every index subsequence of every sigma-play is an s-play.
ClosureReport check_subsequence_closure(const GameSpec& game, const FullOne& s, const FullOne& sigma);

// Predetermined intersection ----------------------------------------------------

/// sigma(r) is the least (by encoding) member of fam containing the union of
/// s's first r+1 members; indices refer to fam. Throws WitnessMissing naming
/// the round, then NotIdealBase.
PreOne intersect_predetermined(const PreOne& s, const SetFamily& fam);

struct BlockReport {
  bool ok = true;
  std::uint64_t plays = 0;
  std::uint64_t blocks = 0;
  std::optional<std::vector<Mask>> failing_play;
  int failing_start = -1;
};

/// Every contiguous length-m block of every Two counter-play against sigma in
/// `game`, re-indexed from 0, is a legal counter-play against s.
BlockReport check_block_decomposition(const GameSpec& game, const PreOne& s, const PreOne& sigma, int m);

}  // namespace selectlab
