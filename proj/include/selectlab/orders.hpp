#pragma once

// Finite preorders with a dominating side and a dominated side, relative
// cofinality, and Tukey-map checks between such pairs.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selectlab/bits.hpp"

namespace selectlab {

/// A finite order on carrier indices 0..size-1 with two distinguished
/// subsets: sub_a (the dominating side) and sub_b (the side to dominate).
struct RelPair {
  std::vector<std::string> carrier;
  std::vector<std::vector<char>> leq;  // leq[x][y]: x <= y
  std::vector<int> sub_a;
  std::vector<int> sub_b;

  int size() const noexcept { return static_cast<int>(carrier.size()); }
  bool le(int x, int y) const { return leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] != 0; }

  friend bool operator==(const RelPair&, const RelPair&) = default;
};

/// Checks dimensions, index ranges, reflexivity and transitivity.
/// Throws InvalidArgument naming the first failure.
void validate(const RelPair& pair);

class ExtendedNat {
 public:
  enum class Kind { Finite, Omega, Undefined };

  static ExtendedNat finite(std::int64_t n);
  static ExtendedNat omega() { return ExtendedNat(Kind::Omega, 0); }
  static ExtendedNat undefined() { return ExtendedNat(Kind::Undefined, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_defined() const noexcept { return kind_ != Kind::Undefined; }
  /// Throws InvalidArgument unless finite.
  std::int64_t value() const;

  /// Defined values are totally ordered with every finite value below OMEGA;
  /// UNDEFINED is unordered against everything, itself included.
  std::partial_ordering operator<=>(const ExtendedNat& o) const noexcept;
  bool operator==(const ExtendedNat& o) const noexcept { return kind_ == o.kind_ && value_ == o.value_; }

  /// "3", "omega" or "undefined".
  std::string to_string() const;

 private:
  ExtendedNat(Kind k, std::int64_t v) : kind_(k), value_(v) {}
  Kind kind_;
  std::int64_t value_;
};

/// Least |F| with F a subset of sub_a such that every member of sub_b lies
/// below some member of F. UNDEFINED when some member of sub_b has no
/// dominator.
ExtendedNat relative_cofinality(const RelPair& pair);

/// A dominating family of least size (indices into the carrier, ascending),
/// or none when the cofinality is undefined.
std::optional<std::vector<int>> least_dominating_family(const RelPair& pair);

/// Whether `chosen` (carrier indices) dominates every member of `targets`.
bool dominates(const RelPair& pair, const std::vector<int>& chosen, const std::vector<int>& targets);

/// phi[k] is the dst carrier index assigned to src.sub_a[k]; every image must
/// lie in dst.sub_a. Tukey when the image of every src-cofinal subfamily is
/// dst-cofinal. Decided per D in dst.sub_b: {A : D not below phi(A)} must not
/// be src-cofinal.
bool check_tukey_map(const std::vector<int>& phi, const RelPair& src, const RelPair& dst);

inline constexpr int kMaxBruteTukey = 12;

/// The defining quantification over all subfamilies of src.sub_a.
/// Throws CarrierTooLarge when |src.sub_a| > 12.
bool brute_tukey_oracle(const std::vector<int>& phi, const RelPair& src, const RelPair& dst);

/// Cofinality of the pair multiplied by the chain omega, from the cofinality
/// of the un-multiplied pair.
ExtendedNat lift_omega_cof(ExtendedNat base, bool b_empty);

/// The product order on carrier x {0..m} with both sides multiplied by the
/// chain. Element (p, n) has index p * (m + 1) + n.
RelPair product_with_chain(const RelPair& pair, int m);

/// First-coordinate projection from product_with_chain(pair, m) back to
/// pair, as a phi table for check_tukey_map.
std::vector<int> chain_projection(const RelPair& pair, int m);

/// Inclusion order on distinct sets; `a` and `b` index into `sets`.
RelPair subset_pair(const std::vector<Mask>& sets, const std::vector<int>& a, const std::vector<int>& b);

/// Inclusion order on the union of two families, with sub_a = famA and
/// sub_b = famB.
RelPair family_pair(const std::vector<Mask>& famA, const std::vector<Mask>& famB);

}  // namespace selectlab
