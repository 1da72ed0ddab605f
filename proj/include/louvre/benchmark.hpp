#pragma once

#include <cstdint>
#include <vector>

#include "louvre/config.hpp"
#include "louvre/stats.hpp"
#include "louvre/workload.hpp"

namespace louvre {

struct BenchOptions
{
  SyntheticWorkloadSpec spec;
  std::vector<Mode> modes{Mode::Baseline, Mode::Louvre};
  std::vector<std::uint64_t> seeds{1};
  SimConfig config;
  unsigned jobs = 1;
};

struct SeedRun
{
  std::uint64_t seed = 0;
  Stats stats;
  bool deadlock = false;
};

struct ModeReport
{
  Mode mode = Mode::Louvre;
  std::vector<SeedRun> runs;
  Stats total;  // counters summed over seeds

  double mean_fence_residency() const { return total.mean_fence_residency(); }
  double mean_store_latency() const { return total.mean_store_latency(); }
  double mean_ipc() const;
  bool any_deadlock() const;
};

struct BenchReport
{
  SyntheticWorkloadSpec spec;
  SimConfig config;
  std::vector<ModeReport> modes;

  const ModeReport& mode(Mode m) const;
};

/// Same instruction stream per seed in every mode; only timing differs.
BenchReport run_benchmark(const BenchOptions& options);

/// (after - before) / before; 0 when before is 0.
double relative_change(double before, double after);

}  // namespace louvre
