#include "selectlab/orders.hpp"

#include <algorithm>
#include <numeric>

#include "selectlab/error.hpp"

namespace selectlab {

void validate(const RelPair& pair) {
  const int n = pair.size();
  if (static_cast<int>(pair.leq.size()) != n) throw Error(ErrorCode::InvalidArgument, "relation matrix has wrong row count");
  for (const auto& row : pair.leq)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::InvalidArgument, "relation matrix is not square");
  for (const auto* side : {&pair.sub_a, &pair.sub_b})
    for (int x : *side)
      if (x < 0 || x >= n) throw Error(ErrorCode::InvalidArgument, "subset index outside carrier", x);
  for (int x = 0; x < n; ++x)
    if (!pair.le(x, x)) throw Error(ErrorCode::InvalidArgument, "relation is not reflexive", x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (pair.le(x, y))
        for (int z = 0; z < n; ++z)
          if (pair.le(y, z) && !pair.le(x, z)) throw Error(ErrorCode::InvalidArgument, "relation is not transitive", x);
}

ExtendedNat ExtendedNat::finite(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative cardinal");
  return ExtendedNat(Kind::Finite, n);
}

std::int64_t ExtendedNat::value() const {
  if (!is_finite()) throw Error(ErrorCode::InvalidArgument, "value of a non-finite cardinal");
  return value_;
}

std::partial_ordering ExtendedNat::operator<=>(const ExtendedNat& o) const noexcept {
  if (kind_ == Kind::Undefined || o.kind_ == Kind::Undefined) return std::partial_ordering::unordered;
  if (kind_ != o.kind_) return kind_ == Kind::Finite ? std::partial_ordering::less : std::partial_ordering::greater;
  return value_ <=> o.value_;
}

std::string ExtendedNat::to_string() const {
  switch (kind_) {
    case Kind::Finite: return std::to_string(value_);
    case Kind::Omega: return "omega";
    case Kind::Undefined: return "undefined";
  }
  return "undefined";
}

namespace {

// Bitset over positions in sub_b.
using Words = std::vector<Mask>;

Words make_words(std::size_t n) { return Words((n + 63) / 64, 0); }
void set_bit(Words& w, std::size_t i) { w[i / 64] |= bit(static_cast<int>(i % 64)); }
std::size_t count(const Words& w) {
  std::size_t c = 0;
  for (Mask m : w) c += static_cast<std::size_t>(popcount(m));
  return c;
}

class CoverSearch {
 public:
  // cover[k]: positions of targets dominated by candidate k.
  CoverSearch(std::vector<Words> cover, std::size_t targets) : cover_(std::move(cover)), targets_(targets) {}

  std::optional<std::vector<int>> run() {
    Words all = make_words(targets_);
    for (const auto& c : cover_)
      for (std::size_t i = 0; i < all.size(); ++i) all[i] |= c[i];
    if (count(all) != targets_) return std::nullopt;
    greedy();
    Words uncovered = make_words(targets_);
    for (std::size_t t = 0; t < targets_; ++t) set_bit(uncovered, t);
    std::vector<int> chosen;
    branch(uncovered, chosen);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void greedy() {
    Words uncovered = make_words(targets_);
    for (std::size_t t = 0; t < targets_; ++t) set_bit(uncovered, t);
    best_.clear();
    while (count(uncovered) > 0) {
      int pick = -1;
      std::size_t gain = 0;
      for (std::size_t k = 0; k < cover_.size(); ++k) {
        std::size_t g = 0;
        for (std::size_t i = 0; i < uncovered.size(); ++i) g += static_cast<std::size_t>(popcount(uncovered[i] & cover_[k][i]));
        if (g > gain) {
          gain = g;
          pick = static_cast<int>(k);
        }
      }
      best_.push_back(pick);
      for (std::size_t i = 0; i < uncovered.size(); ++i) uncovered[i] &= ~cover_[static_cast<std::size_t>(pick)][i];
    }
  }

  void branch(const Words& uncovered, std::vector<int>& chosen) {
    const std::size_t left = count(uncovered);
    if (left == 0) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + 1 >= best_.size()) return;
    // Branch on the uncovered target with the fewest dominators.
    std::size_t pivot = 0, fewest = SIZE_MAX;
    for (std::size_t t = 0; t < targets_; ++t) {
      if (!(uncovered[t / 64] & bit(static_cast<int>(t % 64)))) continue;
      std::size_t d = 0;
      for (const auto& c : cover_) d += (c[t / 64] & bit(static_cast<int>(t % 64))) != 0;
      if (d < fewest) {
        fewest = d;
        pivot = t;
      }
    }
    std::size_t widest = 0;
    for (const auto& c : cover_) {
      std::size_t g = 0;
      for (std::size_t i = 0; i < uncovered.size(); ++i) g += static_cast<std::size_t>(popcount(uncovered[i] & c[i]));
      widest = std::max(widest, g);
    }
    if (chosen.size() + (left + widest - 1) / widest >= best_.size()) return;
    for (std::size_t k = 0; k < cover_.size(); ++k) {
      if (!(cover_[k][pivot / 64] & bit(static_cast<int>(pivot % 64)))) continue;
      Words next = uncovered;
      for (std::size_t i = 0; i < next.size(); ++i) next[i] &= ~cover_[k][i];
      chosen.push_back(static_cast<int>(k));
      branch(next, chosen);
      chosen.pop_back();
    }
  }

  std::vector<Words> cover_;
  std::size_t targets_;
  std::vector<int> best_;
};

std::vector<Words> domination_table(const RelPair& pair, const std::vector<int>& candidates, const std::vector<int>& targets) {
  std::vector<Words> cover;
  for (int a : candidates) {
    Words w = make_words(targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t)
      if (pair.le(targets[t], a)) set_bit(w, t);
    cover.push_back(std::move(w));
  }
  return cover;
}

std::vector<int> distinct(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::optional<std::vector<int>> least_dominating_family(const RelPair& pair) {
  validate(pair);
  const auto cands = distinct(pair.sub_a);
  const auto targets = distinct(pair.sub_b);
  if (targets.empty()) return std::vector<int>{};
  auto picked = CoverSearch(domination_table(pair, cands, targets), targets.size()).run();
  if (!picked) return std::nullopt;
  std::vector<int> out;
  for (int k : *picked) out.push_back(cands[static_cast<std::size_t>(k)]);
  std::sort(out.begin(), out.end());
  return out;
}

ExtendedNat relative_cofinality(const RelPair& pair) {
  auto fam = least_dominating_family(pair);
  if (!fam) return ExtendedNat::undefined();
  return ExtendedNat::finite(static_cast<std::int64_t>(fam->size()));
}

bool dominates(const RelPair& pair, const std::vector<int>& chosen, const std::vector<int>& targets) {
  return std::all_of(targets.begin(), targets.end(), [&](int b) {
    return std::any_of(chosen.begin(), chosen.end(), [&](int a) { return pair.le(b, a); });
  });
}

namespace {

void check_phi(const std::vector<int>& phi, const RelPair& src, const RelPair& dst) {
  validate(src);
  validate(dst);
  if (phi.size() != src.sub_a.size()) throw Error(ErrorCode::InvalidArgument, "map is not total on the source side");
  for (int c : phi)
    if (std::find(dst.sub_a.begin(), dst.sub_a.end(), c) == dst.sub_a.end())
      throw Error(ErrorCode::InvalidArgument, "map image outside the target side", c);
}

}  // namespace

bool check_tukey_map(const std::vector<int>& phi, const RelPair& src, const RelPair& dst) {
  check_phi(phi, src, dst);
  for (int d : dst.sub_b) {
    std::vector<int> avoiding;
    for (std::size_t k = 0; k < phi.size(); ++k)
      if (!dst.le(d, phi[k])) avoiding.push_back(src.sub_a[k]);
    if (dominates(src, avoiding, src.sub_b)) return false;
  }
  return true;
}

bool brute_tukey_oracle(const std::vector<int>& phi, const RelPair& src, const RelPair& dst) {
  check_phi(phi, src, dst);
  const int n = static_cast<int>(src.sub_a.size());
  if (n > kMaxBruteTukey) throw Error(ErrorCode::CarrierTooLarge, "brute-force oracle limited to 12 elements", n);
  for (Mask f = 0; f < (Mask{1} << n); ++f) {
    std::vector<int> fam, image;
    for_each_bit(f, [&](int k) {
      fam.push_back(src.sub_a[static_cast<std::size_t>(k)]);
      image.push_back(phi[static_cast<std::size_t>(k)]);
    });
    if (dominates(src, fam, src.sub_b) && !dominates(dst, image, dst.sub_b)) return false;
  }
  return true;
}

ExtendedNat lift_omega_cof(ExtendedNat base, bool b_empty) {
  if (b_empty) return ExtendedNat::finite(0);
  if (!base.is_defined()) return ExtendedNat::undefined();
  // A finite family tops out at its largest second coordinate; countably many suffice.
  return ExtendedNat::omega();
}

RelPair product_with_chain(const RelPair& pair, int m) {
  validate(pair);
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "negative truncation");
  const int w = m + 1;
  const int n = pair.size() * w;
  RelPair out;
  out.leq.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int p = 0; p < pair.size(); ++p)
    for (int i = 0; i < w; ++i) out.carrier.push_back("(" + pair.carrier[static_cast<std::size_t>(p)] + "," + std::to_string(i) + ")");
  for (int p = 0; p < pair.size(); ++p)
    for (int q = 0; q < pair.size(); ++q)
      if (pair.le(p, q))
        for (int i = 0; i < w; ++i)
          for (int j = i; j < w; ++j) out.leq[static_cast<std::size_t>(p * w + i)][static_cast<std::size_t>(q * w + j)] = 1;
  for (int a : pair.sub_a)
    for (int i = 0; i < w; ++i) out.sub_a.push_back(a * w + i);
  for (int b : pair.sub_b)
    for (int i = 0; i < w; ++i) out.sub_b.push_back(b * w + i);
  return out;
}

std::vector<int> chain_projection(const RelPair& pair, int m) {
  std::vector<int> phi;
  for (int a : pair.sub_a)
    for (int i = 0; i <= m; ++i) phi.push_back(a);
  return phi;
}

RelPair subset_pair(const std::vector<Mask>& sets, const std::vector<int>& a, const std::vector<int>& b) {
  RelPair out;
  const std::size_t n = sets.size();
  out.leq.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    std::string label = "{";
    for (int x : bits_of(sets[i])) label += (label.size() > 1 ? "," : "") + std::to_string(x);
    out.carrier.push_back(label + "}");
    for (std::size_t j = 0; j < n; ++j) out.leq[i][j] = is_subset(sets[i], sets[j]);
  }
  out.sub_a = a;
  out.sub_b = b;
  validate(out);
  return out;
}

RelPair family_pair(const std::vector<Mask>& famA, const std::vector<Mask>& famB) {
  std::vector<Mask> sets(famA);
  sets.insert(sets.end(), famB.begin(), famB.end());
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  auto index = [&](Mask s) { return static_cast<int>(std::lower_bound(sets.begin(), sets.end(), s) - sets.begin()); };
  std::vector<int> a, b;
  for (Mask s : famA) a.push_back(index(s));
  for (Mask s : famB) b.push_back(index(s));
  return subset_pair(sets, distinct(a), distinct(b));
}

}  // namespace selectlab
