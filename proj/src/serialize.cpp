#include "selectlab/serialize.hpp"

#include <fstream>

#include "selectlab/error.hpp"

namespace selectlab {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("bad field '") + key + "': " + e.what());
  }
}

const char* player_name(Player p) { return p == Player::One ? "One" : "Two"; }

}  // namespace

Json mask_to_json(Mask m) {
  Json out = Json::array();
  for (int i : bits_of(m)) out.push_back(i);
  return out;
}

Mask mask_from_json(const Json& j) {
  if (!j.is_array()) fail("set must be a list of indices");
  Mask m = 0;
  for (const auto& e : j) {
    if (!e.is_number_integer()) fail("set element must be an integer");
    const int i = e.get<int>();
    if (i < 0 || i >= 64) fail("set element out of range");
    m |= bit(i);
  }
  return m;
}

Json masks_to_json(const std::vector<Mask>& v) {
  Json out = Json::array();
  for (Mask m : v) out.push_back(mask_to_json(m));
  return out;
}

std::vector<Mask> masks_from_json(const Json& j) {
  if (!j.is_array()) fail("expected a list of sets");
  std::vector<Mask> out;
  for (const auto& e : j) out.push_back(mask_from_json(e));
  return out;
}

// Targets ------------------------------------------------------------------------

Json to_json(const TargetPredicate& t) {
  Json j;
  using B = TargetPredicate::Body;
  switch (t.body()) {
    case B::CoversFamily: j["type"] = "covers"; j["family"] = masks_to_json(t.family()); break;
    case B::MultiCover: j["type"] = "multi-cover"; j["family"] = masks_to_json(t.family()); j["m"] = t.param(); break;
    case B::WindowCover: j["type"] = "window-cover"; j["family"] = masks_to_json(t.family()); j["w"] = t.param(); break;
    case B::ExplicitSet: j["type"] = "explicit"; j["winning"] = masks_to_json(t.winning_sets()); break;
    case B::GammaCore: j["type"] = "gamma-core"; j["m"] = t.param(); j["inner"] = to_json(t.inner()); break;
    case B::Not: j["type"] = "not"; j["inner"] = to_json(t.inner()); break;
  }
  j["hints"] = {{"order_insensitive", t.hints().order_insensitive}, {"monotone_up", t.hints().monotone_up}};
  return j;
}

TargetPredicate target_from_json(const Json& j, const std::shared_ptr<const CoverContext>& ctx) {
  const auto type = get<std::string>(j, "type");
  auto need_ctx = [&] {
    if (!ctx) fail("cover target '" + type + "' needs a game context");
    return ctx;
  };
  TargetPredicate t;
  if (type == "covers")
    t = TargetPredicate::covers_family(need_ctx(), masks_from_json(field(j, "family")));
  else if (type == "multi-cover")
    t = TargetPredicate::multi_cover(need_ctx(), masks_from_json(field(j, "family")), get<int>(j, "m"));
  else if (type == "window-cover")
    t = TargetPredicate::window_cover(need_ctx(), masks_from_json(field(j, "family")), get<int>(j, "w"));
  else if (type == "explicit")
    t = TargetPredicate::explicit_sets(masks_from_json(field(j, "winning")));
  else if (type == "gamma-core")
    t = TargetPredicate::gamma_core(target_from_json(field(j, "inner"), ctx), get<int>(j, "m"));
  else if (type == "not")
    t = TargetPredicate::negation(target_from_json(field(j, "inner"), ctx));
  else
    fail("unknown target type '" + type + "'");
  if (j.contains("hints")) {
    const auto& h = j.at("hints");
    t = t.with_hints({get<bool>(h, "order_insensitive"), get<bool>(h, "monotone_up")});
  }
  return t;
}

// Games ----------------------------------------------------------------------------

Json to_json(const GameSpec& g) {
  Json j;
  j["items"] = g.item_count;
  j["kind"] = g.kind == SelectionKind::Single ? "single" : "finite";
  Json moves = Json::array();
  for (const auto& fam : g.moves) moves.push_back(masks_to_json(fam));
  j["moves"] = moves;
  j["target"] = to_json(g.target);
  if (auto ctx = g.target.context())
    j["context"] = {{"universe", mask_to_json(ctx->ground_universe)}, {"item_sets", masks_to_json(ctx->item_sets)}};
  return j;
}

GameSpec game_from_json(const Json& j) {
  const int items = get<int>(j, "items");
  const auto kind_name = get<std::string>(j, "kind");
  if (kind_name != "single" && kind_name != "finite") fail("kind must be 'single' or 'finite'");
  std::vector<std::vector<Mask>> moves;
  const auto& mj = field(j, "moves");
  if (!mj.is_array()) fail("moves must be a list of rounds");
  for (const auto& round : mj) moves.push_back(masks_from_json(round));
  std::shared_ptr<const CoverContext> ctx;
  if (j.contains("context")) {
    auto c = std::make_shared<CoverContext>();
    c->ground_universe = mask_from_json(field(j.at("context"), "universe"));
    c->item_sets = masks_from_json(field(j.at("context"), "item_sets"));
    ctx = c;
  }
  return make_game(items, std::move(moves), kind_name == "single" ? SelectionKind::Single : SelectionKind::Finite,
                   target_from_json(field(j, "target"), ctx));
}

// Scenarios ------------------------------------------------------------------------

Json to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["space"] = {{"size", s.size}, {"subbasis", masks_to_json(s.subbasis)}};
  j["families"] = {{"a", masks_to_json(s.fam_a)}, {"b", masks_to_json(s.fam_b)}};
  j["horizon"] = s.horizon;
  j["flavor"] = to_string(s.flavor);
  Json params = Json::object();
  if (s.flavor == Flavor::PointOpenWindow) params["w"] = s.param;
  if (s.flavor == Flavor::RothbergerLambda) params["m"] = s.param;
  if (s.flavor == Flavor::AbstractGame && s.game) params["game"] = to_json(*s.game);
  j["params"] = params;
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  s.name = get<std::string>(j, "name");
  s.flavor = flavor_from_string(get<std::string>(j, "flavor"));
  s.horizon = get<int>(j, "horizon");
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (s.flavor == Flavor::AbstractGame) {
    s.game = game_from_json(field(params, "game"));
  }
  if (j.contains("space")) {
    s.size = get<int>(j.at("space"), "size");
    s.subbasis = masks_from_json(field(j.at("space"), "subbasis"));
  } else if (s.flavor != Flavor::AbstractGame) {
    fail("missing field 'space'");
  }
  if (j.contains("families")) {
    s.fam_a = masks_from_json(field(j.at("families"), "a"));
    s.fam_b = masks_from_json(field(j.at("families"), "b"));
  } else if (s.flavor != Flavor::AbstractGame) {
    fail("missing field 'families'");
  }
  if (s.flavor == Flavor::PointOpenWindow) s.param = get<int>(params, "w");
  if (s.flavor == Flavor::RothbergerLambda) s.param = get<int>(params, "m");
  return s;
}

// Strategies -----------------------------------------------------------------------

Json to_json(const Strategy& s) {
  Json j;
  if (const auto* p = std::get_if<PreOne>(&s)) {
    j["type"] = "pre-one";
    j["moves"] = p->moves;
  } else if (const auto* f = std::get_if<FullOne>(&s)) {
    j["type"] = "full-one";
    Json rows = Json::array();
    for (const auto& [h, move] : f->table) rows.push_back({{"history", masks_to_json(h)}, {"move", move}});
    j["table"] = rows;
  } else if (const auto* t = std::get_if<FullTwo>(&s)) {
    j["type"] = "full-two";
    Json rows = Json::array();
    for (const auto& [moves, sel] : t->table) rows.push_back({{"moves", moves}, {"selection", mask_to_json(sel)}});
    j["table"] = rows;
  } else {
    const auto& m = std::get<MarkovTwo>(s);
    j["type"] = "markov-two";
    Json rounds = Json::array();
    for (const auto& row : m.table) rounds.push_back(masks_to_json(row));
    j["table"] = rounds;
  }
  return j;
}

Strategy strategy_from_json(const Json& j) {
  const auto type = get<std::string>(j, "type");
  if (type == "pre-one") return PreOne{get<std::vector<int>>(j, "moves")};
  if (type == "full-one") {
    FullOne f;
    for (const auto& row : field(j, "table")) f.table[masks_from_json(field(row, "history"))] = get<int>(row, "move");
    return f;
  }
  if (type == "full-two") {
    FullTwo t;
    for (const auto& row : field(j, "table"))
      t.table[get<std::vector<int>>(row, "moves")] = mask_from_json(field(row, "selection"));
    return t;
  }
  if (type == "markov-two") {
    MarkovTwo m;
    for (const auto& row : field(j, "table")) m.table.push_back(masks_from_json(row));
    return m;
  }
  fail("unknown strategy type '" + type + "'");
}

// Packs ----------------------------------------------------------------------------

Json to_json(const TranslationPack& p) { return {{"t_one", p.t_one}, {"t_two", p.t_two}}; }

TranslationPack pack_from_json(const Json& j) {
  TranslationPack p;
  p.t_one = get<std::vector<std::vector<int>>>(j, "t_one");
  p.t_two = get<std::vector<std::vector<std::vector<int>>>>(j, "t_two");
  return p;
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::MarkTwo: return "mark-two";
    case Direction::FullTwo: return "full-two";
    case Direction::FullOnePullback: return "full-one-pullback";
    case Direction::PreOnePullback: return "pre-one-pullback";
  }
  return "mark-two";
}

Direction direction_from_string(const std::string& s) {
  for (Direction d : {Direction::MarkTwo, Direction::FullTwo, Direction::FullOnePullback, Direction::PreOnePullback})
    if (to_string(d) == s) return d;
  fail("unknown direction '" + s + "'");
}

// Orders ---------------------------------------------------------------------------

Json to_json(const RelPair& p) {
  Json leq = Json::array();
  for (const auto& row : p.leq) {
    Json r = Json::array();
    for (char c : row) r.push_back(c ? 1 : 0);
    leq.push_back(r);
  }
  return {{"carrier", p.carrier}, {"leq", leq}, {"a", p.sub_a}, {"b", p.sub_b}};
}

RelPair relpair_from_json(const Json& j) {
  const auto a = get<std::vector<int>>(j, "a");
  const auto b = get<std::vector<int>>(j, "b");
  try {
    if (j.contains("sets")) return subset_pair(masks_from_json(j.at("sets")), a, b);
    RelPair p;
    p.carrier = get<std::vector<std::string>>(j, "carrier");
    for (const auto& row : get<std::vector<std::vector<int>>>(j, "leq")) {
      std::vector<char> r;
      for (int v : row) r.push_back(v != 0);
      p.leq.push_back(std::move(r));
    }
    p.sub_a = a;
    p.sub_b = b;
    validate(p);
    return p;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(std::string("invalid order pair: ") + e.what());
  }
}

// Reports --------------------------------------------------------------------------

Json to_json(const PlayRecord& r) {
  return {{"one_moves", r.one_moves}, {"two_selections", masks_to_json(r.two_selections)}, {"winner", player_name(r.winner)}};
}

Json to_json(const Determination& d) {
  return {{"winner", player_name(d.winner)},
          {"witness", to_json(d.witness)},
          {"nodes_explored", d.nodes_explored},
          {"memo_hits", d.memo_hits}};
}

Json to_json(const VerificationReport& r) {
  Json plays = Json::array();
  for (const auto& p : r.counter_plays) plays.push_back(to_json(p));
  return {{"valid", r.valid},
          {"owner", player_name(r.owner)},
          {"plays_checked", r.plays_checked},
          {"losing_plays", r.losing_plays},
          {"counter_plays", plays}};
}

Json to_json(const DualityReport& r) {
  return {{"one_wins_fam", r.one_wins_fam},
          {"two_wins_fam", r.two_wins_fam},
          {"one_wins_refl", r.one_wins_refl},
          {"two_wins_refl", r.two_wins_refl},
          {"one_pre_wins_fam", r.one_pre_wins_fam},
          {"one_pre_wins_refl", r.one_pre_wins_refl},
          {"two_markov_wins_fam", r.two_markov_wins_fam},
          {"two_markov_wins_refl", r.two_markov_wins_refl},
          {"strategic_one_fam", r.strategic_one_fam},
          {"strategic_one_refl", r.strategic_one_refl},
          {"markov_one_fam", r.markov_one_fam},
          {"markov_one_refl", r.markov_one_refl},
          {"all_hold", r.all_hold}};
}

Json to_json(const TrAxiomReport& r) {
  Json j = {{"ok", r.ok}, {"tr1", r.tr1}, {"tr2", r.tr2}};
  if (r.tr1_violation) {
    const auto& v = *r.tr1_violation;
    j["tr1_violation"] = {{"round", v[0]}, {"move", v[1]}, {"item", v[2]}};
  }
  if (r.tr2_violation) j["tr2_violation"] = {{"moves", r.tr2_violation->first}, {"items", r.tr2_violation->second}};
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail("'" + path + "': " + e.what());
  }
}

}  // namespace selectlab
