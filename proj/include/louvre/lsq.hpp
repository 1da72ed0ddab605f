#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "louvre/config.hpp"
#include "louvre/memory.hpp"
#include "louvre/version.hpp"

namespace louvre {

/// A retired store waiting to complete. Kept oldest first.
struct SbEntry
{
  Location address = 0;
  LineId line = 0;
  Value value = 0;
  Version version;
  std::uint64_t age = 0;
  bool is_release = false;
  bool cache_ready = false;
  /// Selected for completion; resident until the write performs.
  bool completed = false;
  Cycle ready_cycle = 0;
  Cycle issue_cycle = 0;
  Cycle retire_cycle = 0;
  std::uint64_t ticket = 0;
  std::uint32_t slot = 0;
  std::size_t trace_index = 0;
};

/// std::nullopt stands for the +infinity sentinel of an empty structure.
using MinVersion = std::optional<Version>;

struct MinVersionRegisters
{
  MinVersion sb;
  MinVersion lsq;

  friend bool operator==(const MinVersionRegisters&, const MinVersionRegisters&) = default;
};

bool version_le(Version v, MinVersion bound);
MinVersion min_of(MinVersion a, MinVersion b);

/// Pairwise comparator-tree reduction over a fixed slot array.
MinVersion comparator_tree_min(const std::vector<MinVersion>& leaves);
/// Number of two-input comparators a tree over `leaves` inputs uses.
std::size_t comparator_count(std::size_t leaves);
MinVersion brute_force_min(const std::vector<MinVersion>& values);

struct LoadRetireQuery
{
  MemOpKind kind = MemOpKind::Load;
  std::optional<Version> version;
  bool satisfied = true;
  /// A release-flagged store buffer entry is live.
  bool release_in_sb = false;
};

bool can_retire_load(const LoadRetireQuery& load, const MinVersionRegisters& regs, Mode mode, bool strict_fence_order);

/// StoreRelease and FullFence at the ROB head (LoadAcquire goes through can_retire_load).
bool can_retire_fence(MemOpKind kind, Mode mode, bool sb_empty);

/// Index into `sb` of the entry to complete this cycle, if any.
///   louvre:   the oldest entry if its line is ready, else the oldest ready entry
///             whose version is the minimum over all live entries
///   baseline: the oldest ready entry
/// In both modes an entry waits for every older same-address entry, and a
/// release waits for every older release of the same version.
std::optional<std::size_t> select_store_to_complete(const std::vector<SbEntry>& sb, Mode mode);

struct PendingStore
{
  std::uint64_t seq = 0;
  Location address = 0;
  Value value = 0;
};

/// Youngest po-before in-flight store to `address` (lsq_stores in po order,
/// all older than the load), else the youngest store buffer entry.
std::optional<Value> forward_store_to_load(const std::vector<PendingStore>& lsq_stores, const std::vector<SbEntry>& sb,
                                           Location address);

struct SquashQuery
{
  MemOpKind kind = MemOpKind::Load;
  std::optional<Version> version;
  /// An ORQ entry precedes the load in program order.
  bool fence_before = false;
  /// A po-before StoreRelease is still in the LSQ or the store buffer.
  bool release_before = false;
};

/// Whether a satisfied speculative load hit by an invalidation must squash.
bool should_squash(const SquashQuery& load, const MinVersionRegisters& regs, Mode mode, bool strict_fence_order);

}  // namespace louvre
