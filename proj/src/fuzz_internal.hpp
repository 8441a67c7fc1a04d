#pragma once

#include <algorithm>
#include <random>
#include <string_view>

#include "selectlab/fuzz.hpp"

namespace selectlab::fuzz {

/// Deterministic across platforms: only the raw mt19937_64 stream is used,
/// never the implementation-defined standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t next() { return g_(); }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(int percent) { return below(100) < percent; }
  Mask subset(int n) { return next() & low_bits(n); }
  Mask nonempty_subset(int n) {
    Mask m = 0;
    while (m == 0) m = subset(n);
    return m;
  }
  /// Nonempty subset of `within` with at most `max_bits` elements.
  Mask nonempty_within(Mask within, int max_bits) {
    auto pts = bits_of(within);
    shuffle(pts);
    const int k = range(1, std::min<int>(max_bits, static_cast<int>(pts.size())));
    Mask m = 0;
    for (int i = 0; i < k; ++i) m |= bit(pts[static_cast<std::size_t>(i)]);
    return m;
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(below(static_cast<int>(i)))]);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }

 private:
  std::mt19937_64 g_;
};

std::uint64_t instance_seed(std::uint64_t seed, std::string_view suite, int index);

/// Collects one instance's outcome.
struct Sink {
  std::string suite;
  int instance = 0;
  SuiteSummary* summary = nullptr;
  std::vector<FuzzEntry>* violations = nullptr;
  std::vector<FuzzEntry>* findings = nullptr;
  int* budget = nullptr;

  void violation(const std::string& property, Json detail) {
    violations->push_back({suite, property, instance, std::move(detail)});
  }
  void finding(const std::string& property, Json detail) {
    findings->push_back({suite, property, instance, std::move(detail)});
  }
  void stat(const std::string& key, std::uint64_t by = 1) { summary->stats[key] += by; }
  void skip() { ++summary->skipped; }
  void budget_exceeded() { ++*budget; }
};

Json abstract_scenario(const std::string& name, const GameSpec& g);

void suite_determinacy(Rng& rng, Sink& out);
void suite_translation(Rng& rng, Sink& out);
void suite_duality(Rng& rng, Sink& out);
void suite_predetermined_closed(Rng& rng, int index, Sink& out);
void suite_covering_pre(Rng& rng, int index, Sink& out);
void suite_refinement(Rng& rng, int index, Sink& out);
void suite_gamma(Rng& rng, Sink& out);
void suite_tukey(Rng& rng, Sink& out);
void suite_ground(Rng& rng, Sink& out);
void suite_open_question(Rng& rng, int index, Sink& out);

}  // namespace selectlab::fuzz
