#pragma once

// Scenario descriptions and the builders that turn them into games.

#include <optional>
#include <string>
#include <vector>

#include "selectlab/game.hpp"
#include "selectlab/ground.hpp"

namespace selectlab {

enum class Flavor { PointOpenO, PointOpenWindow, Rothberger, RothbergerLambda, AbstractGame };

/// "point-open", "point-open-window", "rothberger", "rothberger-lambda", "abstract".
std::string to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);

struct Scenario {
  std::string name;
  int size = 0;
  std::vector<Mask> subbasis;
  std::vector<Mask> fam_a;
  std::vector<Mask> fam_b;
  int horizon = 1;
  Flavor flavor = Flavor::PointOpenO;
  /// Window length w (PointOpenWindow) or multiplicity m (RothbergerLambda).
  int param = 0;
  /// The inline game of an AbstractGame scenario.
  std::optional<GameSpec> game;

  GroundSpace space() const { return build_topology(size, subbasis); }
};

/// One picks A from fam_a, answered by a proper open superset of A. Items
/// are the proper opens above some member, ascending by encoding; One's
/// move family is the same every round and indexed like fam_a. Two wins
/// unless the selected opens cover fam_b (or, with `window`, unless every
/// run of `window` rounds does). Throws NoNeighborhood naming the member.
GameSpec build_point_open(const GroundSpace& space, const SetFamily& fam_a, const SetFamily& fam_b, int horizon,
                          std::optional<int> window = std::nullopt);

inline constexpr std::size_t kMaxRothbergerMoves = 64;

/// One picks a minimal cover for fam_a, Two picks a member of it and wins
/// when the selection covers fam_b (with multiplicity `lambda` when set).
/// Items are the opens used by the covers, ascending. Throws NoCovers, and
/// CapExceeded past 64 minimal covers.
GameSpec build_rothberger(const GroundSpace& space, const SetFamily& fam_a, const SetFamily& fam_b, int horizon,
                          std::optional<int> lambda = std::nullopt);

/// Builds the scenario's game; point-open flavors throw NotClosedPoints on
/// spaces with a non-closed singleton. `horizon` overrides the scenario's.
GameSpec build_game(const Scenario& sc, std::optional<int> horizon = std::nullopt);

/// The item meaning (ground subset per item) of a built point-open or
/// Rothberger game.
const std::vector<Mask>& item_sets(const GameSpec& game);

/// Canned scenarios shipped with the tools.
std::vector<Scenario> builtin_corpus();

}  // namespace selectlab
