#include "selectlab/ground.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "selectlab/error.hpp"

namespace selectlab {

GroundSpace build_topology(int size, std::span<const Mask> subbasis) {
  if (size < 0) throw Error(ErrorCode::InvalidArgument, "negative universe size");
  if (size > kMaxGroundSize) throw Error(ErrorCode::CapExceeded, "universe larger than 16 items", size);
  const Mask universe = low_bits(size);

  std::vector<Mask> opens{0};
  if (universe != 0) opens.push_back(universe);
  std::unordered_set<Mask> seen(opens.begin(), opens.end());
  auto push = [&](Mask s) {
    if (!seen.insert(s).second) return;
    if (seen.size() > kMaxOpens) throw Error(ErrorCode::TopologyTooLarge, "more than 4096 open sets");
    opens.push_back(s);
  };
  for (Mask s : subbasis) {
    if (!is_subset(s, universe)) throw Error(ErrorCode::InvalidArgument, "subbasis member outside universe");
    push(s);
  }
  // Worklist fixpoint: every set is combined with every set that precedes it.
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Mask a = opens[i], b = opens[j];
      push(a | b);
      push(a & b);
    }
  }
  std::sort(opens.begin(), opens.end());
  auto data = std::make_shared<GroundSpace::Data>();
  data->size = size;
  data->opens = std::move(opens);
  return GroundSpace(std::move(data));
}

GroundSpace discrete_space(int size) {
  std::vector<Mask> singles;
  for (int i = 0; i < size; ++i) singles.push_back(bit(i));
  return build_topology(size, singles);
}

GroundSpace indiscrete_space(int size) { return build_topology(size, std::span<const Mask>{}); }

bool GroundSpace::is_open(Mask s) const {
  return std::binary_search(opens().begin(), opens().end(), s);
}

Mask GroundSpace::closure(Mask s) const {
  Mask outside = 0;
  for (Mask u : opens())
    if ((u & s) == 0) outside |= u;
  return universe() & ~outside;
}

Mask GroundSpace::open_hull(Mask s) const {
  Mask hull = universe();
  for (Mask u : opens())
    if (is_subset(s, u)) hull &= u;
  return hull;
}

bool GroundSpace::points_closed() const {
  for (int i = 0; i < size(); ++i)
    if (!is_open(universe() & ~bit(i))) return false;
  return true;
}

std::vector<Mask> GroundSpace::neighborhoods(Mask s) const {
  std::vector<Mask> out;
  for (Mask u : opens())
    if (u != universe() && is_subset(s, u)) out.push_back(u);
  return out;
}

SetFamily::SetFamily(Mask universe, std::vector<Mask> members) : universe_(universe), members_(std::move(members)) {
  normalize();
  recompute();
}

SetFamily::SetFamily(const GroundSpace& space, std::vector<Mask> members)
    : universe_(space.universe()), members_(std::move(members)), space_(space) {
  normalize();
  recompute();
}

bool SetFamily::contains(Mask s) const { return index_of(s).has_value(); }

std::optional<std::size_t> SetFamily::index_of(Mask s) const {
  auto it = std::find(members_.begin(), members_.end(), s);
  if (it == members_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

void SetFamily::add(Mask s) {
  if (!is_subset(s, universe_)) throw Error(ErrorCode::InvalidArgument, "family member outside universe");
  if (contains(s)) return;
  members_.push_back(s);
  recompute();
}

void SetFamily::remove(Mask s) {
  auto it = std::find(members_.begin(), members_.end(), s);
  if (it == members_.end()) return;
  members_.erase(it);
  recompute();
}

void SetFamily::normalize() {
  std::vector<Mask> kept;
  std::unordered_set<Mask> seen;
  for (Mask s : members_) {
    if (!is_subset(s, universe_)) throw Error(ErrorCode::InvalidArgument, "family member outside universe");
    if (seen.insert(s).second) kept.push_back(s);
  }
  members_ = std::move(kept);
}

void SetFamily::recompute() {
  FamilyFlags f;
  for (Mask a : members_) {
    for (Mask b : members_) {
      const Mask u = a | b;
      if (std::none_of(members_.begin(), members_.end(), [u](Mask c) { return is_subset(u, c); })) {
        f.ideal_base = false;
        break;
      }
    }
    if (!f.ideal_base) break;
  }
  Mask all = 0;
  for (Mask a : members_) all |= a;
  f.covers_universe = !members_.empty() && all == universe_;
  if (space_) {
    f.all_open = std::all_of(members_.begin(), members_.end(), [&](Mask a) { return space_->is_open(a); });
    f.all_closed = std::all_of(members_.begin(), members_.end(),
                               [&](Mask a) { return space_->is_open(universe_ & ~a); });
  }
  flags_ = f;
}

SetFamily singletons(const GroundSpace& space) {
  std::vector<Mask> m;
  for (int i = 0; i < space.size(); ++i) m.push_back(bit(i));
  return SetFamily(space, std::move(m));
}

SetFamily nonempty_subsets(const GroundSpace& space) {
  std::vector<Mask> m;
  for (Mask s = 1; s <= space.universe() && space.size() > 0; ++s) m.push_back(s);
  return SetFamily(space, std::move(m));
}

SetFamily nonempty_opens(const GroundSpace& space) {
  std::vector<Mask> m;
  for (Mask u : space.opens())
    if (u != 0) m.push_back(u);
  return SetFamily(space, std::move(m));
}

SetFamily closure_family(const GroundSpace& space, const SetFamily& fam) {
  std::vector<Mask> out;
  out.reserve(fam.size());
  for (Mask a : fam.members()) out.push_back(space.closure(a));
  return SetFamily(space, std::move(out));
}

CoverVerdict cover_verdict(Mask universe, std::span<const Mask> fam, std::span<const Mask> listed) {
  CoverVerdict v;
  if (std::find(listed.begin(), listed.end(), universe) != listed.end()) return v;

  std::vector<Mask> distinct(listed.begin(), listed.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  int lambda = -1;
  for (Mask a : fam) {
    const int c = static_cast<int>(
        std::count_if(distinct.begin(), distinct.end(), [a](Mask u) { return is_subset(a, u); }));
    if (c == 0) return v;
    lambda = lambda < 0 ? c : std::min(lambda, c);
  }
  v.is_O = true;
  v.lambda_m = lambda < 0 ? 0 : lambda;

  const int n = static_cast<int>(listed.size());
  auto window_ok = [&](int start, int w) {
    for (Mask a : fam) {
      bool hit = false;
      for (int k = start; k < start + w && !hit; ++k) hit = is_subset(a, listed[static_cast<std::size_t>(k)]);
      if (!hit) return false;
    }
    return true;
  };
  for (int w = 0; w <= n; ++w) {
    bool ok = true;
    for (int start = 0; start + w <= n && ok; ++start) ok = window_ok(start, w);
    if (ok) {
      v.gamma_window = w;
      break;
    }
  }
  return v;
}

CoverVerdict classify_cover(const GroundSpace& space, const SetFamily& fam, std::span<const Mask> listed) {
  for (std::size_t i = 0; i < listed.size(); ++i)
    if (!space.is_open(listed[i]))
      throw Error(ErrorCode::NotOpen, "listed set is not open", static_cast<int>(i));
  return cover_verdict(space.universe(), fam.members(), listed);
}

bool refines(const SetFamily& famA, const SetFamily& famB) {
  return std::all_of(famA.members().begin(), famA.members().end(), [&](Mask a) {
    return std::any_of(famB.members().begin(), famB.members().end(), [a](Mask b) { return is_subset(a, b); });
  });
}

bool refines_in(const GroundSpace& space, const SetFamily& famA, const SetFamily& famB) {
  std::vector<Mask> hulls;
  for (Mask b : famB.members()) hulls.push_back(space.open_hull(b));
  return std::all_of(famA.members().begin(), famA.members().end(), [&](Mask a) {
    return std::any_of(hulls.begin(), hulls.end(),
                       [&](Mask h) { return h == space.universe() || is_subset(a, h); });
  });
}

namespace {

// Minimal transversals of the hypergraph {opens above A : A in fam}.
class MinCoverSearch {
 public:
  MinCoverSearch(const GroundSpace& space, const SetFamily& fam) : fam_(fam.members()) {
    for (Mask u : space.opens())
      if (u != space.universe()) candidates_.push_back(u);
    for (Mask a : fam_) {
      std::vector<int> edge;
      for (int i = 0; i < static_cast<int>(candidates_.size()); ++i)
        if (is_subset(a, candidates_[static_cast<std::size_t>(i)])) edge.push_back(i);
      edges_.push_back(std::move(edge));
    }
  }

  std::set<std::vector<Mask>> run() {
    for (const auto& e : edges_)
      if (e.empty()) return {};
    hits_.assign(edges_.size(), 0);
    recurse();
    return found_;
  }

 private:
  static constexpr std::size_t kInternalCap = 200000;

  bool covers(int cand, std::size_t edge) const { return is_subset(fam_[edge], candidates_[static_cast<std::size_t>(cand)]); }

  bool has_private_edge(int cand) const {
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (hits_[e] == 1 && covers(cand, e)) return true;
    return false;
  }

  void recurse() {
    std::size_t open_edge = edges_.size();
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (hits_[e] == 0) {
        open_edge = e;
        break;
      }
    if (open_edge == edges_.size()) {
      std::vector<Mask> cover;
      for (int c : chosen_) cover.push_back(candidates_[static_cast<std::size_t>(c)]);
      std::sort(cover.begin(), cover.end());
      found_.insert(std::move(cover));
      if (found_.size() > kInternalCap) throw Error(ErrorCode::CapExceeded, "too many minimal covers");
      return;
    }
    for (int c : edges_[open_edge]) {
      if (std::find(chosen_.begin(), chosen_.end(), c) != chosen_.end()) continue;
      for (std::size_t e = 0; e < edges_.size(); ++e)
        if (covers(c, e)) ++hits_[e];
      chosen_.push_back(c);
      // Adding sets only removes private edges, so a member without one is final.
      if (std::all_of(chosen_.begin(), chosen_.end(), [&](int m) { return has_private_edge(m); })) recurse();
      chosen_.pop_back();
      for (std::size_t e = 0; e < edges_.size(); ++e)
        if (covers(c, e)) --hits_[e];
    }
  }

  const std::vector<Mask>& fam_;
  std::vector<Mask> candidates_;
  std::vector<std::vector<int>> edges_;
  std::vector<int> hits_;
  std::vector<int> chosen_;
  std::set<std::vector<Mask>> found_;
};

}  // namespace

CoverList min_covers(const GroundSpace& space, const SetFamily& fam, std::size_t max_count) {
  if (max_count < 1) throw Error(ErrorCode::InvalidArgument, "min_covers bound must be at least 1");
  CoverList out;
  if (fam.empty()) {
    out.covers.push_back({});
    return out;
  }
  auto found = MinCoverSearch(space, fam).run();
  for (auto& c : found) {
    if (out.covers.size() == max_count) {
      out.truncated = true;
      break;
    }
    out.covers.push_back(c);
  }
  return out;
}

}  // namespace selectlab
