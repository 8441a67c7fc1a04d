#pragma once

// Seeded property suites over generated instances, and their reports.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "selectlab/serialize.hpp"

namespace selectlab {

struct FuzzOptions {
  std::uint64_t seed = 0;
  int count = 100;
  /// Suite ids to run; empty means every suite.
  std::vector<std::string> suites;
};

struct FuzzEntry {
  std::string suite;
  std::string property;
  int instance = 0;
  /// Replayable description of the instance (scenario, game, pack, ...).
  Json detail;
};

struct SuiteSummary {
  int instances = 0;
  int skipped = 0;
  std::map<std::string, std::uint64_t> stats;
};

struct FuzzReport {
  std::uint64_t seed = 0;
  int count = 0;
  std::vector<std::string> suites;
  std::map<std::string, SuiteSummary> summary;
  std::vector<FuzzEntry> violations;
  /// Exploratory observations; never affect the exit code.
  std::vector<FuzzEntry> findings;
  int budget_exceeded = 0;
};

/// determinacy, translation, duality, predetermined-closed, covering-pre,
/// refinement, gamma, tukey, ground, open-question-gamma-two.
const std::vector<std::string>& suite_ids();
/// Suites whose results are archived as findings only.
bool is_exploratory(const std::string& suite);

/// Each instance draws from its own generator seeded by (seed, suite,
/// index), so reports do not depend on evaluation order. Throws
/// InvalidCount when count < 1, InvalidArgument on an unknown suite.
FuzzReport run_fuzz(const FuzzOptions& options);

Json to_json(const FuzzReport& r);
std::string to_text(const FuzzReport& r);
/// 0 clean, 2 when violations exist, else 3 when a budget ran out.
int exit_code(const FuzzReport& r);

/// Every topology on `size` points with at most `max_opens` open sets, in
/// ascending order of their sorted open lists.
std::vector<GroundSpace> all_topologies(int size, std::size_t max_opens);

struct RefinementCensus {
  int topologies = 0;
  int pairs = 0;
  /// refines(A,B) disagrees with "every minimal B-cover is an A-cover".
  int plain_discrepancies = 0;
  int plain_discrepancies_t1 = 0;
  /// refines_in(space,A,B) disagrees with the cover condition.
  int topological_discrepancies = 0;
  /// First plain discrepancy, if any.
  Json example;
};

/// For each topology on 1..4 points with at most 12 opens, samples
/// `pairs_per_topology` family pairs and compares both refinement notions
/// with the minimal-cover condition.
RefinementCensus refinement_census(std::uint64_t seed, int pairs_per_topology);

}  // namespace selectlab
