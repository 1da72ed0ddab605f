#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "louvre/config.hpp"
#include "louvre/litmus.hpp"
#include "louvre/oracle.hpp"
#include "louvre/system.hpp"

namespace louvre {

/// Timing perturbation applied to each repeat of a litmus run.
struct PerturbOptions
{
  std::uint32_t jitter = 24;        // extra miss-path cycles, uniform
  std::uint32_t max_skew = 48;      // per-core start offset, uniform
  double warm_probability = 0.5;    // chance each (core, location) line starts cached
};

struct PerturbedRun
{
  SimConfig config;
  std::vector<Cycle> start_cycles;
  std::vector<WarmLine> warm;
};

/// Deterministic in (program, base, options, seed).
PerturbedRun perturb(const Program& program, const SimConfig& base, const PerturbOptions& options, std::uint64_t seed);

/// Seed of repeat `k` in a run seeded with `seed`.
std::uint64_t repeat_seed(std::uint64_t seed, std::uint64_t k);

enum class Verdict { Pass, ForbiddenObserved, OutsideOracle, SpecConflict, Deadlock, Skipped, ParseError };

std::string_view to_string(Verdict v);
/// Skipped tests do not fail a suite.
bool verdict_ok(Verdict v);

struct LitmusRunOptions
{
  SimConfig config;
  std::uint64_t repeats = 1000;
  std::uint64_t seed = 1;
  PerturbOptions perturb;
  OracleOptions oracle{true, 16};
  unsigned jobs = 1;
};

struct LitmusReport
{
  std::string name;
  std::string path;
  Verdict verdict = Verdict::Pass;
  LitmusTest test;
  bool oracle_checked = false;
  OutcomeSet oracle;
  std::map<Outcome, std::uint64_t> observed;
  std::uint64_t forbidden_hits = 0;
  std::uint64_t deadlocks = 0;
  std::vector<Outcome> outside_oracle;
  std::vector<std::string> notes;
  Stats stats;
};

LitmusReport run_litmus_test(const LitmusTest& test, const LitmusRunOptions& options);
LitmusReport run_litmus_file(const std::filesystem::path& path, const LitmusRunOptions& options);
/// Every *.litmus file under `dir`, sorted by file name.
std::vector<LitmusReport> run_litmus_dir(const std::filesystem::path& dir, const LitmusRunOptions& options);

}  // namespace louvre
