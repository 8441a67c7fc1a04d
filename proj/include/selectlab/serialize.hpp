#pragma once

// JSON forms of scenarios, games, strategies, packs, order pairs and reports.
// Masks are written as ascending lists of element indices. Parsers throw
// ParseError on malformed input.

#include <string>

#include <json.hpp>

#include "selectlab/duality.hpp"
#include "selectlab/game.hpp"
#include "selectlab/orders.hpp"
#include "selectlab/scenario.hpp"
#include "selectlab/solver.hpp"
#include "selectlab/transforms.hpp"

namespace selectlab {

using Json = nlohmann::json;

Json mask_to_json(Mask m);
Mask mask_from_json(const Json& j);
Json masks_to_json(const std::vector<Mask>& v);
std::vector<Mask> masks_from_json(const Json& j);

Json to_json(const TargetPredicate& t);
/// `ctx` is the game-level cover context, required by cover-style targets.
TargetPredicate target_from_json(const Json& j, const std::shared_ptr<const CoverContext>& ctx);

Json to_json(const GameSpec& g);
GameSpec game_from_json(const Json& j);

Json to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

Json to_json(const Strategy& s);
Strategy strategy_from_json(const Json& j);

Json to_json(const TranslationPack& p);
TranslationPack pack_from_json(const Json& j);
std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

Json to_json(const RelPair& p);
/// Accepts {carrier, leq, a, b} or the inclusion form {sets, a, b}.
RelPair relpair_from_json(const Json& j);

Json to_json(const PlayRecord& r);
Json to_json(const Determination& d);
Json to_json(const VerificationReport& r);
Json to_json(const DualityReport& r);
Json to_json(const TrAxiomReport& r);

/// Parses a file, mapping I/O and syntax failures to ParseError.
Json read_json_file(const std::string& path);

}  // namespace selectlab
