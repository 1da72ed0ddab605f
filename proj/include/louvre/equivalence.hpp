#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "louvre/oracle.hpp"
#include "louvre/random_program.hpp"

namespace louvre {

struct EquivalenceOptions
{
  std::size_t count = 500;
  RandomProgramOptions program;
  std::uint64_t seed = 1;
  std::size_t max_accesses = 15;
  unsigned jobs = 1;
};

struct Divergence
{
  std::string name;
  bool strict_fence_order = true;
  /// Litmus text of the program, ready to re-run.
  std::string reproducer;
  EquivalenceReport report;
};

struct EquivalenceSummary
{
  std::size_t programs = 0;
  std::size_t equal_strict = 0;
  std::size_t unequal_strict = 0;
  std::size_t equal_relaxed = 0;
  std::size_t unequal_relaxed = 0;
  /// Programs whose strict VSR set is not a subset of the relaxed one.
  std::size_t monotonicity_violations = 0;
  std::vector<Divergence> divergences;
};

/// Runs equivalence_report under both strict_fence_order settings on a
/// random corpus.
EquivalenceSummary run_equivalence_corpus(const EquivalenceOptions& options);

/// Same, over a given list of programs.
EquivalenceSummary run_equivalence(const std::vector<Program>& programs, std::size_t max_accesses, unsigned jobs = 1);

}  // namespace louvre
