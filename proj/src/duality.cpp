#include "selectlab/duality.hpp"

#include <algorithm>
#include <stdexcept>

#include "selectlab/error.hpp"
#include "selectlab/solver.hpp"

namespace selectlab {

bool is_selection_basis(const SetFamily& candidate, const SetFamily& fam) {
  for (Mask c : candidate.members())
    if (!fam.contains(c)) return false;
  return std::all_of(fam.members().begin(), fam.members().end(), [&](Mask a) {
    return std::any_of(candidate.members().begin(), candidate.members().end(), [a](Mask c) { return is_subset(c, a); });
  });
}

Mask choice_range(const Choice& f) {
  Mask m = 0;
  for (int x : f) m |= bit(x);
  return m;
}

namespace {

/// Odometer over the choice functions of a family.
class ChoiceEnumerator {
 public:
  explicit ChoiceEnumerator(const SetFamily& refl) {
    std::uint64_t total = 1;
    for (Mask r : refl.members()) {
      if (r == 0) throw Error(ErrorCode::InvalidArgument, "reflection member is empty");
      points_.push_back(bits_of(r));
      total *= points_.back().size();
      if (total > kMaxChoiceFunctions) throw Error(ErrorCode::ChoiceSpaceTooLarge, "more than 10^6 choice functions");
    }
    pos_.assign(points_.size(), 0);
  }

  /// Calls f on each choice until f returns true; returns whether it did.
  template <class F>
  bool any(F&& f) {
    std::fill(pos_.begin(), pos_.end(), 0);
    Choice c(points_.size());
    while (true) {
      for (std::size_t i = 0; i < points_.size(); ++i) c[i] = points_[i][pos_[i]];
      if (f(c)) return true;
      std::size_t i = points_.size();
      while (i > 0) {
        --i;
        if (++pos_[i] < points_[i].size()) break;
        pos_[i] = 0;
        if (i == 0) return false;
      }
      if (points_.empty()) return false;
    }
  }

 private:
  std::vector<std::vector<int>> points_;
  std::vector<std::size_t> pos_;
};

}  // namespace

bool transversal_inside_by_enumeration(const SetFamily& refl, Mask a) {
  ChoiceEnumerator e(refl);
  return e.any([a](const Choice& c) { return is_subset(choice_range(c), a); });
}

bool transversal_inside_by_meeting(const SetFamily& refl, Mask a) {
  return std::all_of(refl.members().begin(), refl.members().end(), [a](Mask r) { return (r & a) != 0; });
}

ReflectionReport is_reflection(const SetFamily& refl, const SetFamily& fam) {
  ReflectionReport rep;
  ChoiceEnumerator e(refl);
  e.any([&](const Choice& c) {
    if (fam.contains(choice_range(c))) return false;
    rep.bad_transversal = c;
    return true;
  });

  std::vector<Mask> pending = fam.members();
  e.any([&](const Choice& c) {
    const Mask range = choice_range(c);
    std::erase_if(pending, [range](Mask a) { return is_subset(range, a); });
    return pending.empty();
  });
  for (Mask a : fam.members()) {
    const bool by_enum = std::find(pending.begin(), pending.end(), a) == pending.end();
    if (by_enum != transversal_inside_by_meeting(refl, a))
      throw std::logic_error("transversal criteria disagree");
  }
  if (!pending.empty()) rep.uncovered = pending.front();
  rep.is_reflection = !rep.bad_transversal && !rep.uncovered;
  return rep;
}

DualityReport check_duality(const GameSpec& game_over_fam, const GameSpec& game_over_refl) {
  if (game_over_fam.horizon() != game_over_refl.horizon())
    throw Error(ErrorCode::InvalidArgument, "dual games must share their horizon");
  DualityReport r;
  const auto s_fam = solve(game_over_fam);
  const auto s_refl = solve(game_over_refl);
  r.one_wins_fam = s_fam.winner == Player::One;
  r.two_wins_fam = !r.one_wins_fam;
  r.one_wins_refl = s_refl.winner == Player::One;
  r.two_wins_refl = !r.one_wins_refl;
  r.one_pre_wins_fam = find_predetermined_one(game_over_fam).has_value();
  r.one_pre_wins_refl = find_predetermined_one(game_over_refl).has_value();
  r.two_markov_wins_fam = find_markov_two(game_over_fam).has_value();
  r.two_markov_wins_refl = find_markov_two(game_over_refl).has_value();

  r.strategic_one_fam = r.one_wins_fam == r.two_wins_refl;
  r.strategic_one_refl = r.one_wins_refl == r.two_wins_fam;
  r.markov_one_fam = r.one_pre_wins_fam == r.two_markov_wins_refl;
  r.markov_one_refl = r.one_pre_wins_refl == r.two_markov_wins_fam;
  r.all_hold = r.strategic_one_fam && r.strategic_one_refl && r.markov_one_fam && r.markov_one_refl;
  return r;
}

}  // namespace selectlab
