#include "selectlab/scenario.hpp"

#include <algorithm>

#include "selectlab/error.hpp"

namespace selectlab {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::PointOpenO: return "point-open";
    case Flavor::PointOpenWindow: return "point-open-window";
    case Flavor::Rothberger: return "rothberger";
    case Flavor::RothbergerLambda: return "rothberger-lambda";
    case Flavor::AbstractGame: return "abstract";
  }
  return "abstract";
}

Flavor flavor_from_string(const std::string& s) {
  for (Flavor f : {Flavor::PointOpenO, Flavor::PointOpenWindow, Flavor::Rothberger, Flavor::RothbergerLambda,
                   Flavor::AbstractGame})
    if (to_string(f) == s) return f;
  throw Error(ErrorCode::ParseError, "unknown flavor '" + s + "'");
}

namespace {

std::shared_ptr<const CoverContext> context_for(Mask universe, std::vector<Mask> items) {
  auto ctx = std::make_shared<CoverContext>();
  ctx->ground_universe = universe;
  ctx->item_sets = std::move(items);
  return ctx;
}

int index_in(const std::vector<Mask>& sorted, Mask s) {
  return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin());
}

}  // namespace

GameSpec build_point_open(const GroundSpace& space, const SetFamily& fam_a, const SetFamily& fam_b, int horizon,
                          std::optional<int> window) {
  std::vector<std::vector<Mask>> nbhds;
  std::vector<Mask> items;
  for (std::size_t k = 0; k < fam_a.size(); ++k) {
    auto n = space.neighborhoods(fam_a.members()[k]);
    if (n.empty()) throw Error(ErrorCode::NoNeighborhood, "member has no proper open superset", static_cast<int>(k));
    items.insert(items.end(), n.begin(), n.end());
    nbhds.push_back(std::move(n));
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  if (items.size() > static_cast<std::size_t>(kMaxItems))
    throw Error(ErrorCode::CapExceeded, "more than 64 distinct neighbourhoods", static_cast<int>(items.size()));

  std::vector<Mask> family;
  for (const auto& n : nbhds) {
    Mask m = 0;
    for (Mask u : n) m |= bit(index_in(items, u));
    family.push_back(m);
  }
  auto ctx = context_for(space.universe(), items);
  const auto cover = window ? TargetPredicate::window_cover(ctx, fam_b.members(), *window)
                            : TargetPredicate::covers_family(ctx, fam_b.members());
  std::vector<std::vector<Mask>> moves(static_cast<std::size_t>(std::max(horizon, 0)), family);
  return make_game(static_cast<int>(items.size()), std::move(moves), SelectionKind::Single,
                   TargetPredicate::negation(cover));
}

GameSpec build_rothberger(const GroundSpace& space, const SetFamily& fam_a, const SetFamily& fam_b, int horizon,
                          std::optional<int> lambda) {
  const auto covers = min_covers(space, fam_a, kMaxRothbergerMoves);
  if (covers.covers.empty()) throw Error(ErrorCode::NoCovers, "family has no cover by proper open sets");
  if (covers.truncated) throw Error(ErrorCode::CapExceeded, "more than 64 minimal covers");
  std::vector<Mask> items;
  for (const auto& c : covers.covers) items.insert(items.end(), c.begin(), c.end());
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  if (items.size() > static_cast<std::size_t>(kMaxItems))
    throw Error(ErrorCode::CapExceeded, "more than 64 distinct cover members", static_cast<int>(items.size()));

  std::vector<Mask> family;
  for (const auto& c : covers.covers) {
    Mask m = 0;
    for (Mask u : c) m |= bit(index_in(items, u));
    // The empty cover (empty fam_a) offers nothing to select; give it no move.
    if (m != 0) family.push_back(m);
  }
  if (family.empty()) throw Error(ErrorCode::NoCovers, "only the empty cover exists");
  auto ctx = context_for(space.universe(), items);
  const auto target = lambda ? TargetPredicate::multi_cover(ctx, fam_b.members(), *lambda)
                             : TargetPredicate::covers_family(ctx, fam_b.members());
  std::vector<std::vector<Mask>> moves(static_cast<std::size_t>(std::max(horizon, 0)), family);
  return make_game(static_cast<int>(items.size()), std::move(moves), SelectionKind::Single, target);
}

GameSpec build_game(const Scenario& sc, std::optional<int> horizon) {
  const int h = horizon.value_or(sc.horizon);
  if (h < 0 || h > kMaxHorizon) throw Error(ErrorCode::CapExceeded, "horizon outside [0, 8]", h);
  if (sc.flavor == Flavor::AbstractGame) {
    if (!sc.game) throw Error(ErrorCode::InvalidArgument, "abstract scenario without a game");
    if (h > sc.game->horizon()) throw Error(ErrorCode::InvalidArgument, "horizon exceeds the inline game", h);
    return truncate(*sc.game, h);
  }
  const GroundSpace space = sc.space();
  const SetFamily a(space, sc.fam_a), b(space, sc.fam_b);
  switch (sc.flavor) {
    case Flavor::PointOpenO:
    case Flavor::PointOpenWindow:
      if (!space.points_closed()) throw Error(ErrorCode::NotClosedPoints, "point-open scenarios need closed points");
      return build_point_open(space, a, b, h,
                              sc.flavor == Flavor::PointOpenWindow ? std::optional<int>(sc.param) : std::nullopt);
    case Flavor::Rothberger:
      return build_rothberger(space, a, b, h);
    case Flavor::RothbergerLambda:
      return build_rothberger(space, a, b, h, sc.param);
    case Flavor::AbstractGame:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "unhandled flavor");
}

const std::vector<Mask>& item_sets(const GameSpec& game) {
  auto ctx = game.target.context();
  if (!ctx) throw Error(ErrorCode::InvalidArgument, "game has no cover context");
  return ctx->item_sets;
}

namespace {

Scenario point_open(std::string name, int size, std::vector<Mask> sub, std::vector<Mask> a, std::vector<Mask> b, int h) {
  Scenario s;
  s.name = std::move(name);
  s.size = size;
  s.subbasis = std::move(sub);
  s.fam_a = std::move(a);
  s.fam_b = std::move(b);
  s.horizon = h;
  return s;
}

std::vector<Mask> singles(int n) {
  std::vector<Mask> out;
  for (int i = 0; i < n; ++i) out.push_back(bit(i));
  return out;
}

}  // namespace

std::vector<Scenario> builtin_corpus() {
  std::vector<Scenario> out;
  out.push_back(point_open("point-open-discrete2-h1", 2, singles(2), singles(2), singles(2), 1));
  out.push_back(point_open("point-open-discrete2-h2", 2, singles(2), singles(2), singles(2), 2));
  out.push_back(point_open("point-open-discrete3-pairs", 3, singles(3), {0b011, 0b110, 0b101}, singles(3), 2));
  {
    auto s = point_open("point-open-window-discrete3", 3, singles(3), {0b001, 0b010, 0b011}, {0b001, 0b010}, 3);
    s.flavor = Flavor::PointOpenWindow;
    s.param = 2;
    out.push_back(std::move(s));
  }
  {
    auto s = point_open("rothberger-discrete2-h1", 2, singles(2), singles(2), singles(2), 1);
    s.flavor = Flavor::Rothberger;
    out.push_back(std::move(s));
  }
  {
    auto s = point_open("rothberger-discrete2-h2", 2, singles(2), singles(2), singles(2), 2);
    s.flavor = Flavor::Rothberger;
    out.push_back(std::move(s));
  }
  {
    auto s = point_open("rothberger-lambda-discrete3", 3, singles(3), singles(3), singles(3), 4);
    s.flavor = Flavor::RothbergerLambda;
    s.param = 2;
    out.push_back(std::move(s));
  }
  {
    auto s = point_open("rothberger-sierpinski-chain", 3, {0b001, 0b011}, {0b001, 0b010}, {0b001}, 2);
    s.flavor = Flavor::Rothberger;
    out.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "abstract-explicit-union";
    s.flavor = Flavor::AbstractGame;
    s.horizon = 2;
    s.game = make_game(3, {{0b011, 0b110}, {0b011, 0b110}}, SelectionKind::Single,
                       TargetPredicate::explicit_sets({0b011, 0b110, 0b111}));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace selectlab
