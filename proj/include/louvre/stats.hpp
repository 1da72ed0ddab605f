#pragma once

#include <cstdint>

namespace louvre {

struct Stats
{
  std::uint64_t cycles = 0;
  std::uint64_t retired = 0;
  std::uint64_t issued = 0;

  std::uint64_t fences_retired = 0;
  std::uint64_t fence_residency_cycles = 0;  // retire - issue, summed over ldar/stlr/fence
  std::uint64_t issue_stall_cycles = 0;
  std::uint64_t fence_stall_cycles = 0;  // issue stalls while the head waits on an ordering rule
  std::uint64_t sb_full_stall_cycles = 0;
  std::uint64_t overflow_stall_cycles = 0;

  std::uint64_t stores_performed = 0;
  std::uint64_t store_latency_cycles = 0;  // issue -> perform
  std::uint64_t early_completions = 0;
  std::uint64_t write_combines = 0;

  std::uint64_t loads_retired = 0;
  std::uint64_t loads_forwarded = 0;
  std::uint64_t invalidations_received = 0;
  std::uint64_t squashes = 0;
  std::uint64_t avoided_squashes = 0;
  std::uint64_t squashed_instructions = 0;
  std::uint64_t branch_mispredicts = 0;
  std::uint64_t version_resets = 0;

  std::uint64_t min_register_checks = 0;
  std::uint64_t min_register_failures = 0;

  /// FNV-1a over each core's retired trace indices, folded across cores.
  std::uint64_t commit_hash = 0;

  double ipc() const { return cycles ? static_cast<double>(retired) / static_cast<double>(cycles) : 0.0; }
  double mean_fence_residency() const
  {
    return fences_retired ? static_cast<double>(fence_residency_cycles) / static_cast<double>(fences_retired) : 0.0;
  }
  double mean_store_latency() const
  {
    return stores_performed ? static_cast<double>(store_latency_cycles) / static_cast<double>(stores_performed) : 0.0;
  }

  /// Sums counters; cycles takes the maximum (cores run concurrently).
  Stats& operator+=(const Stats& o)
  {
    cycles = cycles > o.cycles ? cycles : o.cycles;
    retired += o.retired;
    issued += o.issued;
    fences_retired += o.fences_retired;
    fence_residency_cycles += o.fence_residency_cycles;
    issue_stall_cycles += o.issue_stall_cycles;
    fence_stall_cycles += o.fence_stall_cycles;
    sb_full_stall_cycles += o.sb_full_stall_cycles;
    overflow_stall_cycles += o.overflow_stall_cycles;
    stores_performed += o.stores_performed;
    store_latency_cycles += o.store_latency_cycles;
    early_completions += o.early_completions;
    write_combines += o.write_combines;
    loads_retired += o.loads_retired;
    loads_forwarded += o.loads_forwarded;
    invalidations_received += o.invalidations_received;
    squashes += o.squashes;
    avoided_squashes += o.avoided_squashes;
    squashed_instructions += o.squashed_instructions;
    branch_mispredicts += o.branch_mispredicts;
    version_resets += o.version_resets;
    min_register_checks += o.min_register_checks;
    min_register_failures += o.min_register_failures;
    commit_hash = (commit_hash ^ o.commit_hash) * 0x100000001b3ull;
    return *this;
  }
};

}  // namespace louvre
