#pragma once

// Reflections of set families and finite-horizon duality checks between a
// game and the game played over a reflection.

#include <cstdint>
#include <optional>
#include <vector>

#include "selectlab/game.hpp"
#include "selectlab/ground.hpp"

namespace selectlab {

/// candidate is a subfamily of fam and every member of fam contains one of its members.
bool is_selection_basis(const SetFamily& candidate, const SetFamily& fam);

inline constexpr std::uint64_t kMaxChoiceFunctions = 1'000'000;

/// A choice function on refl: one chosen point per member, in member order.
using Choice = std::vector<int>;

Mask choice_range(const Choice& f);

struct ReflectionReport {
  bool is_reflection = false;
  /// First choice (in enumeration order) whose range is not in fam.
  std::optional<Choice> bad_transversal;
  /// First member of fam containing no transversal range.
  std::optional<Mask> uncovered;
};

/// Choice ranges of refl form a selection basis for fam. Choice functions are
/// enumerated lazily, last member varying fastest, points ascending.
/// Throws ChoiceSpaceTooLarge past 10^6 functions, InvalidArgument on an
/// empty member.
ReflectionReport is_reflection(const SetFamily& refl, const SetFamily& fam);

/// Some choice function on refl has its range inside `a`, by enumeration.
bool transversal_inside_by_enumeration(const SetFamily& refl, Mask a);
/// Same question answered by checking that a meets every member of refl.
bool transversal_inside_by_meeting(const SetFamily& refl, Mask a);

struct DualityReport {
  bool one_wins_fam = false;        // I has a winning strategy in the fam game
  bool two_wins_fam = false;
  bool one_wins_refl = false;
  bool two_wins_refl = false;
  bool one_pre_wins_fam = false;    // I has a winning predetermined strategy
  bool one_pre_wins_refl = false;
  bool two_markov_wins_fam = false; // II has a winning Markov strategy
  bool two_markov_wins_refl = false;

  bool strategic_one_fam = false;   // one_wins_fam  <=> two_wins_refl
  bool strategic_one_refl = false;  // one_wins_refl <=> two_wins_fam
  bool markov_one_fam = false;      // one_pre_wins_fam  <=> two_markov_wins_refl
  bool markov_one_refl = false;     // one_pre_wins_refl <=> two_markov_wins_fam
  bool all_hold = false;
};

/// Solves both games and both synthesis problems on each side. The games
/// must share their horizon. Propagates BudgetExceeded and CapExceeded from
/// the Markov search.
DualityReport check_duality(const GameSpec& game_over_fam, const GameSpec& game_over_refl);

}  // namespace selectlab
