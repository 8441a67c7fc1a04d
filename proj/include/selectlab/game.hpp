#pragma once

// Finite-horizon selection games: One offers a move set each round, Two
// selects from it; Two wins iff the target holds of the selection sequence.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "selectlab/bits.hpp"

namespace selectlab {

inline constexpr int kMaxItems = 64;
inline constexpr int kMaxHorizon = 8;

enum class SelectionKind { Single, Finite };
enum class Player { One, Two };

constexpr Player opponent(Player p) noexcept { return p == Player::One ? Player::Two : Player::One; }

/// Ground-set meaning of game items, needed by the cover-style targets.
struct CoverContext {
  Mask ground_universe = 0;
  std::vector<Mask> item_sets;  // item id -> ground subset
};

struct TargetHints {
  /// Truth is invariant under permuting the rounds of a selection.
  bool order_insensitive = false;
  /// Enlarging any round's selected item set never falsifies the target.
  bool monotone_up = false;

  friend bool operator==(const TargetHints&, const TargetHints&) = default;
};

/// Two's winning condition on a selection sequence (one item mask per round;
/// a single bit per round in Single games).
class TargetPredicate {
 public:
  enum class Body { CoversFamily, MultiCover, WindowCover, ExplicitSet, GammaCore, Not };

  /// Never satisfied (an ExplicitSet with no winning sets).
  TargetPredicate();

  /// O(X,fam): no selected set is the ground universe and every member of
  /// fam lies inside some selected set.
  static TargetPredicate covers_family(std::shared_ptr<const CoverContext> ctx, std::vector<Mask> fam);
  /// Lambda surrogate: covers_family and every member lies inside at least
  /// m distinct selected sets.
  static TargetPredicate multi_cover(std::shared_ptr<const CoverContext> ctx, std::vector<Mask> fam, int m);
  /// Gamma surrogate: covers_family and every run of w consecutive rounds
  /// already covers fam (runs longer than the selection are clipped).
  static TargetPredicate window_cover(std::shared_ptr<const CoverContext> ctx, std::vector<Mask> fam, int w);
  /// The union of selected items is one of `winning`.
  static TargetPredicate explicit_sets(std::vector<Mask> winning);
  /// Every subsequence of rounds of length >= m satisfies `inner`.
  static TargetPredicate gamma_core(const TargetPredicate& inner, int m);
  static TargetPredicate negation(const TargetPredicate& inner);

  TargetPredicate with_hints(TargetHints hints) const;

  bool evaluate(std::span<const Mask> selection) const;

  Body body() const noexcept { return node_->body; }
  const TargetHints& hints() const noexcept { return node_->hints; }
  const std::vector<Mask>& family() const noexcept { return node_->family; }
  const std::vector<Mask>& winning_sets() const noexcept { return node_->family; }
  int param() const noexcept { return node_->param; }
  const TargetPredicate& inner() const;
  /// The cover context of this node or of the first descendant that has one.
  std::shared_ptr<const CoverContext> context() const;

 private:
  struct Node {
    Body body = Body::ExplicitSet;
    TargetHints hints;
    std::vector<Mask> family;  // cover family, or sorted winning sets
    int param = 0;
    std::shared_ptr<const CoverContext> ctx;
    std::shared_ptr<const TargetPredicate> inner;
    // CoversFamily fast path: per item, which family members it contains.
    std::vector<Mask> item_cover;
    std::vector<bool> item_is_universe;
  };
  explicit TargetPredicate(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  bool eval_covers(std::span<const Mask> selection) const;
  std::vector<Mask> listed_sets(std::span<const Mask> selection) const;

  std::shared_ptr<const Node> node_;
};

inline bool evaluate_target(const TargetPredicate& target, std::span<const Mask> selection) {
  return target.evaluate(selection);
}

struct GameSpec {
  int item_count = 0;
  /// moves[round][index] is a MoveSet: a nonempty item mask.
  std::vector<std::vector<Mask>> moves;
  SelectionKind kind = SelectionKind::Single;
  TargetPredicate target;

  int horizon() const noexcept { return static_cast<int>(moves.size()); }
};

/// Validates the structural invariants and spot-checks the target hints on
/// up to 64 random plays. Throws EmptyMove, UnsoundHint, CapExceeded.
GameSpec make_game(int item_count, std::vector<std::vector<Mask>> moves, SelectionKind kind,
                   TargetPredicate target);

/// Same game cut to its first `horizon` rounds.
GameSpec truncate(const GameSpec& game, int horizon);
/// Same moves, different target; hints are re-validated.
GameSpec with_target(const GameSpec& game, TargetPredicate target);

/// Legal replies for Two to `move` in `round`, in canonical order.
std::vector<Mask> two_replies(const GameSpec& game, int round, int move);
bool is_legal_reply(const GameSpec& game, int round, int move, Mask selection);

// Strategies -----------------------------------------------------------------

using SelectionHistory = std::vector<Mask>;

/// One's full-information strategy: Two's selections so far -> move index.
struct FullOne {
  std::map<SelectionHistory, int> table;
  friend bool operator==(const FullOne&, const FullOne&) = default;
};

/// One's predetermined strategy: a move index per round.
struct PreOne {
  std::vector<int> moves;
  friend bool operator==(const PreOne&, const PreOne&) = default;
};

/// Two's full-information strategy: One's moves so far (current included) -> selection.
struct FullTwo {
  std::map<std::vector<int>, Mask> table;
  friend bool operator==(const FullTwo&, const FullTwo&) = default;
};

/// Two's Markov strategy: table[round][move index] -> selection (0 = unset).
struct MarkovTwo {
  std::vector<std::vector<Mask>> table;
  friend bool operator==(const MarkovTwo&, const MarkovTwo&) = default;
};

using Strategy = std::variant<FullOne, PreOne, FullTwo, MarkovTwo>;

Player owner(const Strategy& s) noexcept;

/// Embeddings along the strategy-class hierarchy.
FullOne to_full(const GameSpec& game, const PreOne& pre);
FullTwo to_full(const GameSpec& game, const MarkovTwo& markov);
/// Kind Finite game whose Two selects the same single items as in `single`.
FullTwo singleton_embedding(const FullTwo& single);

/// One's move for the given history; throws IllegalMove naming the round.
int one_move(const GameSpec& game, const Strategy& one, std::span<const Mask> history);
/// Two's reply for the given One-move history; throws IllegalMove naming the round.
Mask two_move(const GameSpec& game, const Strategy& two, std::span<const int> one_moves);

struct PlayRecord {
  std::vector<int> one_moves;
  std::vector<Mask> two_selections;
  Player winner = Player::One;

  friend bool operator==(const PlayRecord&, const PlayRecord&) = default;
};

PlayRecord play(const GameSpec& game, const Strategy& one, const Strategy& two);
/// Two plays a fixed list of selections, one per round.
PlayRecord play(const GameSpec& game, const Strategy& one, std::span<const Mask> two_selections);

}  // namespace selectlab
