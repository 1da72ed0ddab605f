#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "louvre/program.hpp"

namespace louvre {

using Cycle = std::uint64_t;
using CoreId = std::uint32_t;
using LineId = std::uint32_t;

enum class Mesi : std::uint8_t { I, S, E, M };

char mesi_letter(Mesi m);

enum class HitLevel : std::uint8_t { L1, L2, L3, Memory };

struct MemoryConfig
{
  std::uint32_t l1_lat = 2;
  std::uint32_t l2_lat = 10;
  std::uint32_t l3_lat = 25;
  std::uint32_t mem_lat = 100;
  std::uint32_t inv_delay = 1;
  std::uint32_t l1_kb = 64;
  std::uint32_t l2_kb = 512;
  std::uint32_t l3_mb = 8;
  std::uint32_t line_bytes = 64;
  std::uint32_t cores_per_cluster = 4;
  /// Uniform extra cycles [0, jitter] added to every miss-path latency.
  std::uint32_t jitter = 0;
  std::uint64_t seed = 0;
  /// Locations listed here share one cache line with the mapped location.
  std::map<Location, Location> false_sharing_map;

  /// Throws std::invalid_argument unless l1 < l2 < l3 < mem and sizes are positive.
  void check() const;
};

struct ReadResult
{
  Cycle ready_cycle = 0;
  HitLevel level = HitLevel::L1;
};

struct WriteTicket
{
  Cycle perform_cycle = 0;
  std::uint64_t id = 0;
};

struct PerformedWrite
{
  std::uint64_t id = 0;
  CoreId core = 0;
  Location location = 0;
  LineId line = 0;
  Value value = 0;
  Cycle cycle = 0;
  /// Cores that held a valid copy, i.e. invalidation messages sent.
  std::uint32_t invalidations = 0;
};

struct LineSnapshot
{
  LineId line = 0;
  std::vector<Mesi> states;  // per core
  friend bool operator==(const LineSnapshot&, const LineSnapshot&) = default;
};

/// Fully associative LRU presence set.
class LruSet
{
public:
  explicit LruSet(std::size_t capacity = 0) : capacity_(capacity) {}

  bool contains(LineId line) const { return index_.contains(line); }
  /// Marks most recent; returns the evicted line, if any.
  std::optional<LineId> touch(LineId line);
  void erase(LineId line);
  std::size_t size() const { return index_.size(); }

private:
  std::size_t capacity_;
  std::list<LineId> order_;  // front = most recent
  std::unordered_map<LineId, std::list<LineId>::iterator> index_;
};

/// Single coherence domain: private L1 per core, L2 per cluster, shared L3,
/// one global value per location.
class MemorySystem
{
public:
  MemorySystem(std::size_t cores, MemoryConfig config, std::map<Location, Value> initial = {});

  std::size_t cores() const { return l1_.size(); }
  const MemoryConfig& config() const { return config_; }
  LineId line_of(Location loc) const;

  /// Data arrival time for a load issued at `cycle`; installs the line in S
  /// (E when no other core holds it). The value itself is sampled with value()
  /// when the data arrives.
  ReadResult read(CoreId core, Location loc, Cycle cycle);

  /// Cycle at which `core` holds write permission for `loc`'s line.
  Cycle ownership_ready(CoreId core, Location loc, Cycle cycle);

  /// Schedules a store. It performs, updates the value and invalidates every
  /// other copy atomically at perform_cycle = cycle + inv_delay.
  WriteTicket write(CoreId core, Location loc, Value value, Cycle cycle);

  /// Performs every write due at or before `cycle`, in scheduling order.
  std::vector<PerformedWrite> perform_due(Cycle cycle);
  bool writes_pending() const { return !pending_.empty(); }

  /// Preloads a line into a core's L1 (and the shared levels).
  void warm(CoreId core, Location loc, bool exclusive = false);

  Value value(Location loc) const;
  Mesi state(CoreId core, Location loc) const;
  /// Empty iff the single-writer/multiple-reader invariant holds for every line.
  std::vector<std::string> check_swmr() const;
  std::vector<LineSnapshot> snapshot() const;
  const std::unordered_map<Location, Value>& values() const { return values_; }

private:
  struct Pending
  {
    std::uint64_t id;
    CoreId core;
    Location loc;
    Value value;
    Cycle perform;
  };

  std::uint32_t jitter();
  std::vector<Mesi>& states_of(LineId line);
  void install_l1(CoreId core, LineId line, Mesi state);
  void fill_shared(CoreId core, LineId line);
  std::size_t cluster_of(CoreId core) const { return core / config_.cores_per_cluster; }
  HitLevel locate(CoreId core, LineId line);

  MemoryConfig config_;
  std::vector<LruSet> l1_;
  std::vector<LruSet> l2_;
  LruSet l3_;
  std::unordered_map<LineId, std::vector<Mesi>> lines_;
  std::unordered_map<Location, Value> values_;
  std::vector<Pending> pending_;
  std::uint64_t next_write_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace louvre
