#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "louvre/core.hpp"
#include "louvre/memory.hpp"

namespace louvre {

/// Relative weights of load-acquire, store-release and full fences.
struct FenceMix
{
  double ldar = 2;
  double stlr = 2;
  double full = 1;
};

struct SyntheticWorkloadSpec
{
  std::string name = "synthetic";
  double load_fraction = 0.4;
  double store_fraction = 0.2;
  double alu_fraction = 0.3;
  double branch_fraction = 0.1;
  /// Fences inserted per load/store.
  double fences_per_mem_op = 0.0;
  FenceMix fence_mix;
  /// Fraction of accesses drawn from a pool far larger than the L3.
  double miss_rate = 0.1;
  double mispredict_rate = 0.05;
  std::uint64_t instructions = 100'000;
  std::uint32_t threads = 1;
  /// Lines in each thread's cache-resident pool (0: a quarter of the L1).
  std::uint32_t hot_lines = 0;
  /// Lines in each thread's streaming pool (0: four times the L3).
  std::uint32_t cold_lines = 0;
  /// Fraction of accesses to a small pool shared by all threads.
  double shared_fraction = 0.0;
  std::uint32_t shared_lines = 64;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument unless the class fractions sum to 1 and
  /// every rate lies in [0, 1].
  void check() const;
};

SyntheticWorkloadSpec parse_workload(const std::string& text);
SyntheticWorkloadSpec load_workload(const std::filesystem::path& path);
std::string dump_workload(const SyntheticWorkloadSpec& spec);

/// One trace per thread. Identical for identical (spec, memory geometry).
std::vector<Trace> generate_traces(const SyntheticWorkloadSpec& spec, const MemoryConfig& memory);

}  // namespace louvre
