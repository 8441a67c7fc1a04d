#pragma once

// Finite topological spaces, set families over them, and the cover
// predicates used as selection-game targets.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "selectlab/bits.hpp"

namespace selectlab {

inline constexpr int kMaxGroundSize = 16;
inline constexpr std::size_t kMaxOpens = 4096;

/// A finite topology on {0..size-1}. Cheap to copy: the open-set table is
/// shared and never mutated after construction.
class GroundSpace {
 public:
  int size() const noexcept { return data_->size; }
  Mask universe() const noexcept { return low_bits(data_->size); }

  /// All open sets, ascending by encoding. Always contains 0 and universe().
  const std::vector<Mask>& opens() const noexcept { return data_->opens; }
  bool is_open(Mask s) const;

  /// Smallest closed superset of `s`.
  Mask closure(Mask s) const;
  /// Smallest open superset of `s` (finite topologies are closed under
  /// arbitrary intersection).
  Mask open_hull(Mask s) const;
  /// True when every singleton is closed (T1). On finite spaces this means discrete.
  bool points_closed() const;

  /// Open sets containing `s`, excluding the whole universe, ascending.
  std::vector<Mask> neighborhoods(Mask s) const;

  friend GroundSpace build_topology(int size, std::span<const Mask> subbasis);

 private:
  struct Data {
    int size = 0;
    std::vector<Mask> opens;
  };
  explicit GroundSpace(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Least topology containing `subbasis`. Throws CapExceeded when size > 16,
/// TopologyTooLarge when the closure exceeds 4096 opens.
GroundSpace build_topology(int size, std::span<const Mask> subbasis);

inline GroundSpace build_topology(int size, std::initializer_list<Mask> subbasis) {
  return build_topology(size, std::span<const Mask>(subbasis.begin(), subbasis.size()));
}

GroundSpace discrete_space(int size);
GroundSpace indiscrete_space(int size);

struct FamilyFlags {
  bool ideal_base = true;
  bool covers_universe = false;
  // Only known when the family is attached to a space.
  std::optional<bool> all_open;
  std::optional<bool> all_closed;
};

/// An ordered list of distinct subsets of a universe. Flags are recomputed
/// on every mutation.
class SetFamily {
 public:
  SetFamily() = default;
  SetFamily(Mask universe, std::vector<Mask> members);
  /// Family attached to a space, so that the open/closed flags are known.
  SetFamily(const GroundSpace& space, std::vector<Mask> members);

  const std::vector<Mask>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  Mask universe() const noexcept { return universe_; }
  const FamilyFlags& flags() const noexcept { return flags_; }
  bool contains(Mask s) const;
  std::optional<std::size_t> index_of(Mask s) const;

  void add(Mask s);
  void remove(Mask s);

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.universe_ == b.universe_ && a.members_ == b.members_;
  }

 private:
  void normalize();
  void recompute();

  Mask universe_ = 0;
  std::vector<Mask> members_;
  std::optional<GroundSpace> space_;
  FamilyFlags flags_;
};

// Common families.
SetFamily singletons(const GroundSpace& space);
/// All nonempty subsets; on a finite space this is also K(X).
SetFamily nonempty_subsets(const GroundSpace& space);
/// Nonempty open sets; the other reading of "nonempty subsets" when used as
/// One's moves in the discrete-selection game.
SetFamily nonempty_opens(const GroundSpace& space);

/// Each member replaced by its closure; duplicates merged, first occurrence kept.
SetFamily closure_family(const GroundSpace& space, const SetFamily& fam);

struct CoverVerdict {
  bool is_O = false;
  int lambda_m = 0;
  std::optional<int> gamma_window;

  friend bool operator==(const CoverVerdict&, const CoverVerdict&) = default;
};

/// Cover classification without the open-set check; `listed` is an ordered
/// list of sets. Shared by classify_cover and the game targets.
CoverVerdict cover_verdict(Mask universe, std::span<const Mask> fam, std::span<const Mask> listed);

/// Throws NotOpen if a listed set is not open in `space`.
CoverVerdict classify_cover(const GroundSpace& space, const SetFamily& fam, std::span<const Mask> listed);

/// Every member of famA lies inside some member of famB. This is the
/// orientation under which "every famB-cover is a famA-cover" on T1 spaces.
bool refines(const SetFamily& famA, const SetFamily& famB);

/// Topology-aware refinement: for every A there is a B whose proper open
/// neighbourhoods all contain A. Equivalent to "every famB-cover is a
/// famA-cover" on any finite space.
bool refines_in(const GroundSpace& space, const SetFamily& famA, const SetFamily& famB);

struct CoverList {
  std::vector<std::vector<Mask>> covers;  // each sorted ascending; list sorted lexicographically
  bool truncated = false;
};

/// Inclusion-minimal O(X,fam)-covers, lexicographically ordered, first
/// `max_count` kept.
CoverList min_covers(const GroundSpace& space, const SetFamily& fam, std::size_t max_count);

}  // namespace selectlab
