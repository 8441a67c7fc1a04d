#include "selectlab/transforms.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "selectlab/error.hpp"
#include "selectlab/solver.hpp"

namespace selectlab {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

int item_of(Mask single) { return std::countr_zero(single); }

void require_single(const GameSpec& g, const char* what) {
  if (g.kind != SelectionKind::Single) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a single-selection game");
}

void check_shape(const TranslationPack& pack, const GameSpec& src, const GameSpec& dst) {
  require_single(src, "source");
  require_single(dst, "destination");
  const int n = dst.horizon();
  if (src.horizon() != n) throw Error(ErrorCode::InvalidArgument, "translated games must share their horizon");
  if (static_cast<int>(pack.t_one.size()) != n || static_cast<int>(pack.t_two.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "pack horizon differs from the games");
  for (int r = 0; r < n; ++r) {
    const auto moves = dst.moves[at(r)].size();
    if (pack.t_one[at(r)].size() != moves || pack.t_two[at(r)].size() != moves)
      throw Error(ErrorCode::InvalidArgument, "pack round does not index the destination moves", r);
    for (std::size_t j = 0; j < moves; ++j) {
      const int a = pack.t_one[at(r)][j];
      if (a < 0 || a >= static_cast<int>(src.moves[at(r)].size()))
        throw Error(ErrorCode::InvalidArgument, "t_one names no source move", r);
      if (static_cast<int>(pack.t_two[at(r)][j].size()) != src.item_count)
        throw Error(ErrorCode::InvalidArgument, "t_two row does not cover the source items", r);
      for (int y : pack.t_two[at(r)][j])
        if (y < 0 || y >= dst.item_count) throw Error(ErrorCode::InvalidArgument, "t_two names no destination item", r);
    }
  }
}

struct Tr2Search {
  const TranslationPack& pack;
  const GameSpec& src;
  const GameSpec& dst;
  std::vector<int> moves, items;
  std::vector<Mask> xs, ys;

  bool run(int r) {
    if (r == dst.horizon()) return !src.target.evaluate(xs) || dst.target.evaluate(ys);
    for (int j = 0; j < static_cast<int>(dst.moves[at(r)].size()); ++j) {
      const int a = pack.t_one[at(r)][at(j)];
      bool ok = true;
      for_each_bit(src.moves[at(r)][at(a)], [&](int x) {
        if (!ok) return;
        moves.push_back(j);
        items.push_back(x);
        xs.push_back(bit(x));
        ys.push_back(bit(pack.t_two[at(r)][at(j)][at(x)]));
        ok = run(r + 1);
        if (ok) {
          moves.pop_back();
          items.pop_back();
          xs.pop_back();
          ys.pop_back();
        }
      });
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

TrAxiomReport check_tr_axioms(const TranslationPack& pack, const GameSpec& src, const GameSpec& dst) {
  check_shape(pack, src, dst);
  TrAxiomReport rep;
  rep.tr1 = true;
  for (int r = 0; r < dst.horizon() && rep.tr1; ++r)
    for (int j = 0; j < static_cast<int>(dst.moves[at(r)].size()) && rep.tr1; ++j) {
      const Mask b = dst.moves[at(r)][at(j)];
      for_each_bit(src.moves[at(r)][at(pack.t_one[at(r)][at(j)])], [&](int x) {
        if (rep.tr1 && !(b & bit(pack.t_two[at(r)][at(j)][at(x)]))) {
          rep.tr1 = false;
          rep.tr1_violation = std::array<int, 3>{r, j, x};
        }
      });
    }
  Tr2Search search{pack, src, dst, {}, {}, {}, {}};
  rep.tr2 = search.run(0);
  if (!rep.tr2) rep.tr2_violation = std::make_pair(search.moves, search.items);
  rep.ok = rep.tr1 && rep.tr2;
  return rep;
}

namespace {

void require_winning(const GameSpec& g, const Strategy& s) {
  if (!verify(g, s, 1).valid) throw Error(ErrorCode::InputNotWinning, "input strategy does not win its game");
}

MarkovTwo translate_markov(const TranslationPack& pack, const GameSpec& dst, const MarkovTwo& tau) {
  MarkovTwo out;
  for (int r = 0; r < dst.horizon(); ++r) {
    out.table.emplace_back();
    for (int j = 0; j < static_cast<int>(dst.moves[at(r)].size()); ++j) {
      const int a = pack.t_one[at(r)][at(j)];
      const int x = item_of(tau.table.at(at(r)).at(at(a)));
      out.table.back().push_back(bit(pack.t_two[at(r)][at(j)][at(x)]));
    }
  }
  return out;
}

void translate_full_two(const TranslationPack& pack, const GameSpec& src, const GameSpec& dst, const Strategy& tau,
                        std::vector<int>& dst_moves, std::vector<int>& src_moves, FullTwo& out) {
  const int r = static_cast<int>(dst_moves.size());
  if (r == dst.horizon()) return;
  for (int j = 0; j < static_cast<int>(dst.moves[at(r)].size()); ++j) {
    dst_moves.push_back(j);
    src_moves.push_back(pack.t_one[at(r)][at(j)]);
    const int x = item_of(two_move(src, tau, src_moves));
    out.table.emplace(dst_moves, bit(pack.t_two[at(r)][at(j)][at(x)]));
    translate_full_two(pack, src, dst, tau, dst_moves, src_moves, out);
    src_moves.pop_back();
    dst_moves.pop_back();
  }
}

void pull_back_full_one(const TranslationPack& pack, const GameSpec& src, const GameSpec& dst, const Strategy& sigma,
                        std::vector<Mask>& xs, std::vector<Mask>& ys, FullOne& out) {
  const int r = static_cast<int>(xs.size());
  if (r == src.horizon()) return;
  const int b = one_move(dst, sigma, ys);
  const int a = pack.t_one[at(r)][at(b)];
  out.table.emplace(xs, a);
  for_each_bit(src.moves[at(r)][at(a)], [&](int x) {
    xs.push_back(bit(x));
    ys.push_back(bit(pack.t_two[at(r)][at(b)][at(x)]));
    pull_back_full_one(pack, src, dst, sigma, xs, ys, out);
    ys.pop_back();
    xs.pop_back();
  });
}

}  // namespace

Strategy apply_translation(const TranslationPack& pack, const GameSpec& src, const GameSpec& dst, Direction direction,
                           const Strategy& input) {
  if (!check_tr_axioms(pack, src, dst).ok) throw Error(ErrorCode::AxiomsFail, "pack violates the translation axioms");
  switch (direction) {
    case Direction::MarkTwo: {
      const auto* tau = std::get_if<MarkovTwo>(&input);
      if (!tau) throw Error(ErrorCode::InvalidArgument, "MarkTwo consumes a Markov strategy for Two");
      require_winning(src, input);
      return translate_markov(pack, dst, *tau);
    }
    case Direction::FullTwo: {
      if (owner(input) != Player::Two) throw Error(ErrorCode::InvalidArgument, "FullTwo consumes a strategy for Two");
      require_winning(src, input);
      FullTwo out;
      std::vector<int> dm, sm;
      translate_full_two(pack, src, dst, input, dm, sm, out);
      return out;
    }
    case Direction::FullOnePullback: {
      if (owner(input) != Player::One) throw Error(ErrorCode::InvalidArgument, "FullOnePullback consumes a strategy for One");
      require_winning(dst, input);
      FullOne out;
      std::vector<Mask> xs, ys;
      pull_back_full_one(pack, src, dst, input, xs, ys, out);
      return out;
    }
    case Direction::PreOnePullback: {
      const auto* pre = std::get_if<PreOne>(&input);
      if (!pre) throw Error(ErrorCode::InvalidArgument, "PreOnePullback consumes a predetermined strategy for One");
      require_winning(dst, input);
      PreOne out;
      for (int r = 0; r < dst.horizon(); ++r) out.moves.push_back(pack.t_one[at(r)][at(pre->moves.at(at(r)))]);
      return out;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown direction");
}

TranslationPack lift_phi(const std::vector<std::vector<int>>& phi, const GameSpec& src, const GameSpec& dst) {
  require_single(src, "source");
  require_single(dst, "destination");
  const int n = dst.horizon();
  if (src.horizon() != n || static_cast<int>(phi.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "phi, source and destination must share their horizon");
  TranslationPack pack;
  for (int r = 0; r < n; ++r) {
    const auto& row = phi[at(r)];
    if (static_cast<int>(row.size()) != dst.item_count) throw Error(ErrorCode::InvalidArgument, "phi row does not cover the destination items", r);
    for (int x : row)
      if (x < 0 || x >= src.item_count) throw Error(ErrorCode::InvalidArgument, "phi names no source item", r);
    pack.t_one.emplace_back();
    pack.t_two.emplace_back();
    for (Mask b : dst.moves[at(r)]) {
      Mask image = 0;
      for_each_bit(b, [&](int y) { image |= bit(row[at(y)]); });
      const auto& fam = src.moves[at(r)];
      auto it = std::find(fam.begin(), fam.end(), image);
      if (it == fam.end()) throw Error(ErrorCode::ImageNotMove, "image of a destination move is not a source move", r);
      pack.t_one.back().push_back(static_cast<int>(it - fam.begin()));
      std::vector<int> section(at(src.item_count), item_of(b));
      // Descending scan, so the least preimage is written last.
      const auto ys = bits_of(b);
      for (auto y = ys.rbegin(); y != ys.rend(); ++y) section[at(row[at(*y)])] = *y;
      pack.t_two.back().push_back(std::move(section));
    }
  }
  return pack;
}

// Subsequence strengthening ---------------------------------------------------

namespace {

class GammaBuilder {
 public:
  GammaBuilder(const FullOne& s, const std::vector<Mask>& fam) : s_(s), fam_(fam) {}

  /// Least-index member inside `bound`.
  int least_inside(Mask bound) const {
    for (std::size_t k = 0; k < fam_.size(); ++k)
      if (is_subset(fam_[k], bound)) return static_cast<int>(k);
    throw Error(ErrorCode::NotFilterBase, "no move inside a finite intersection of moves");
  }

  Mask s_move(const std::vector<Mask>& h) const {
    auto it = s_.table.find(h);
    if (it == s_.table.end()) throw std::logic_error("subsequence left the plays of s");
    return fam_.at(at(it->second));
  }

  Mask gamma(const std::vector<Mask>& sub) {
    if (auto it = gamma_.find(sub); it != gamma_.end()) return it->second;
    Mask bound = s_move({});
    std::vector<Mask> prefix;
    for (Mask x : sub) {
      prefix.push_back(x);
      bound &= s_move(prefix);
    }
    const Mask g = fam_[at(least_inside(bound))];
    gamma_.emplace(sub, g);
    return g;
  }

  int sigma_move(const std::vector<Mask>& h) {
    if (h.empty()) return s_.table.at({});
    Mask bound = ~Mask{0};
    const int len = static_cast<int>(h.size());
    std::vector<Mask> sub;
    for (Mask pick = 1; pick < (Mask{1} << len); ++pick) {
      sub.clear();
      for_each_bit(pick, [&](int i) { sub.push_back(h[at(i)]); });
      bound &= gamma(sub);
    }
    return least_inside(bound);
  }

  void build(std::vector<Mask>& h, int horizon, FullOne& out) {
    if (static_cast<int>(h.size()) == horizon) return;
    const int move = sigma_move(h);
    out.table.emplace(h, move);
    for_each_bit(fam_[at(move)], [&](int x) {
      h.push_back(bit(x));
      build(h, horizon, out);
      h.pop_back();
    });
  }

 private:
  const FullOne& s_;
  const std::vector<Mask>& fam_;
  std::map<std::vector<Mask>, Mask> gamma_;
};

const std::vector<Mask>& constant_family(const GameSpec& game) {
  if (game.horizon() == 0) throw Error(ErrorCode::InvalidArgument, "strengthening needs at least one round");
  for (const auto& fam : game.moves)
    if (fam != game.moves.front()) throw Error(ErrorCode::InvalidArgument, "move family must be the same every round");
  return game.moves.front();
}

}  // namespace

GammaStrengthening strengthen_gamma_one(const FullOne& s, const GameSpec& game, int m) {
  require_single(game, "strengthened game");
  const auto& fam = constant_family(game);
  if (game.target.body() != TargetPredicate::Body::Not)
    throw Error(ErrorCode::InvalidArgument, "target must be the negation of One's winning family");
  const int n = game.horizon();
  if (m < 1 || m > n) throw Error(ErrorCode::InvalidArgument, "threshold must lie in [1, horizon]", m);
  for (Mask p : fam)
    for (Mask q : fam)
      if (std::none_of(fam.begin(), fam.end(), [&](Mask r) { return is_subset(r, p & q); }))
        throw Error(ErrorCode::NotFilterBase, "two moves have no move inside their intersection");
  for (int h = m; h <= n; ++h)
    if (!verify(truncate(game, h), s, 1).valid)
      throw Error(ErrorCode::NotUniformlyWinning, "s does not win at horizon " + std::to_string(h), h);

  GammaStrengthening out{{},
                         make_game(game.item_count, game.moves, game.kind,
                                   TargetPredicate::negation(TargetPredicate::gamma_core(game.target.inner(), m)))};
  GammaBuilder builder(s, fam);
  std::vector<Mask> h;
  builder.build(h, n, out.sigma);
  return out;
}

namespace {

bool in_play_of(const GameSpec& game, const FullOne& s, const std::vector<Mask>& seq) {
  std::vector<Mask> prefix;
  for (Mask x : seq) {
    auto it = s.table.find(prefix);
    if (it == s.table.end()) return false;
    if (!(game.moves[at(static_cast<int>(prefix.size()))].at(at(it->second)) & x)) return false;
    prefix.push_back(x);
  }
  return true;
}

struct ClosureWalk {
  const GameSpec& game;
  const FullOne& s;
  const FullOne& sigma;
  ClosureReport rep;
  std::vector<Mask> play;

  void run() {
    const int r = static_cast<int>(play.size());
    if (!rep.ok) return;
    if (r == game.horizon()) return check();
    const int move = one_move(game, sigma, play);
    for (Mask c : two_replies(game, r, move)) {
      play.push_back(c);
      run();
      play.pop_back();
    }
  }

  void check() {
    ++rep.plays;
    const int n = static_cast<int>(play.size());
    std::vector<Mask> sub;
    for (Mask pick = 1; pick < (Mask{1} << n); ++pick) {
      ++rep.subsequences;
      sub.clear();
      for_each_bit(pick, [&](int i) { sub.push_back(play[at(i)]); });
      if (!in_play_of(game, s, sub)) {
        rep.ok = false;
        rep.failing_play = play;
        rep.failing_indices = pick;
        return;
      }
    }
  }
};

}  // namespace

ClosureReport check_subsequence_closure(const GameSpec& game, const FullOne& s, const FullOne& sigma) {
  ClosureWalk walk{game, s, sigma, {}, {}};
  walk.run();
  return walk.rep;
}

// Predetermined intersection ----------------------------------------------------

PreOne intersect_predetermined(const PreOne& s, const SetFamily& fam) {
  PreOne sigma;
  Mask u = 0;
  for (std::size_t r = 0; r < s.moves.size(); ++r) {
    const int i = s.moves[r];
    if (i < 0 || i >= static_cast<int>(fam.size())) throw Error(ErrorCode::InvalidArgument, "move outside the family", static_cast<int>(r));
    u |= fam.members()[at(i)];
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < fam.size(); ++k)
      if (is_subset(u, fam.members()[k]) && (!best || fam.members()[k] < fam.members()[*best])) best = k;
    if (!best) throw Error(ErrorCode::WitnessMissing, "no member contains the union so far", static_cast<int>(r));
    sigma.moves.push_back(static_cast<int>(*best));
  }
  if (!fam.flags().ideal_base) throw Error(ErrorCode::NotIdealBase, "family is not an ideal base");
  return sigma;
}

namespace {

struct BlockWalk {
  const GameSpec& game;
  const PreOne& s;
  const PreOne& sigma;
  int m;
  BlockReport rep;
  std::vector<Mask> play;

  void run() {
    if (!rep.ok) return;
    const int r = static_cast<int>(play.size());
    if (r == game.horizon()) return check();
    for (Mask c : two_replies(game, r, sigma.moves.at(at(r)))) {
      play.push_back(c);
      run();
      play.pop_back();
    }
  }

  void check() {
    ++rep.plays;
    const int n = static_cast<int>(play.size());
    for (int start = 0; start + m <= n; ++start) {
      ++rep.blocks;
      for (int t = 0; t < m; ++t) {
        if (!is_legal_reply(game, t, s.moves.at(at(t)), play[at(start + t)])) {
          rep.ok = false;
          rep.failing_play = play;
          rep.failing_start = start;
          return;
        }
      }
    }
  }
};

}  // namespace

BlockReport check_block_decomposition(const GameSpec& game, const PreOne& s, const PreOne& sigma, int m) {
  if (m < 1 || m > game.horizon()) throw Error(ErrorCode::InvalidArgument, "block length must lie in [1, horizon]", m);
  BlockWalk walk{game, s, sigma, m, {}, {}};
  walk.run();
  return walk.rep;
}

}  // namespace selectlab
