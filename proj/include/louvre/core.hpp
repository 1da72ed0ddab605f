#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "louvre/config.hpp"
#include "louvre/event_log.hpp"
#include "louvre/lsq.hpp"
#include "louvre/memory.hpp"
#include "louvre/program.hpp"
#include "louvre/stats.hpp"
#include "louvre/version.hpp"

namespace louvre {

enum class TraceKind : std::uint8_t { Mem, Alu, Branch };

struct TraceOp
{
  TraceKind kind = TraceKind::Mem;
  MemOpKind op = MemOpKind::Load;
  Location address = 0;
  Value value = 0;
  std::optional<RegisterId> dest;
  bool mispredict = false;

  friend bool operator==(const TraceOp&, const TraceOp&) = default;
};

using Trace = std::vector<TraceOp>;

Trace trace_of(const std::vector<Instruction>& thread);

enum class EntryState : std::uint8_t { Issued, Executing, Done };
enum class ValueSource : std::uint8_t { None, Cache, ForwardLsq, ForwardSb };

struct RobEntry
{
  std::uint64_t seq = 0;
  TraceOp op;
  std::size_t trace_index = 0;
  bool wrong_path = false;
  std::optional<Version> version;
  Version vr_before;
  Version lfvr_before;
  EntryState state = EntryState::Issued;
  Cycle issue_cycle = 0;
  Cycle ready_cycle = 0;
  Cycle satisfy_cycle = 0;
  Value value = 0;
  ValueSource source = ValueSource::None;
  LineId line = 0;
  std::optional<std::uint32_t> lsq_slot;

  bool is_mem() const { return op.kind == TraceKind::Mem; }
  bool is_access() const { return is_mem() && louvre::is_access(op.op); }
  bool is_load() const { return is_mem() && louvre::is_load(op.op); }
  bool is_store() const { return is_mem() && louvre::is_store(op.op); }
};

/// One out-of-order core. The system calls the phase methods once per cycle
/// in a fixed order: deliver_invalidation / on_write_performed, execute,
/// retire, complete_stores, issue, end_cycle.
class Core
{
public:
  Core(CoreId id, Trace trace, const SimConfig& config, MemorySystem& memory, EventLog& log, Cycle start = 0);

  void on_write_performed(const PerformedWrite& write, Cycle cycle);
  void deliver_invalidation(LineId line, Cycle cycle);
  void execute(Cycle cycle);
  void retire(Cycle cycle);
  void complete_stores(Cycle cycle);
  void issue(Cycle cycle);
  void end_cycle(Cycle cycle);

  bool finished() const;
  CoreId id() const { return id_; }
  const Stats& stats() const { return stats_; }
  const std::map<RegisterId, Value>& registers() const { return registers_; }

  /// Comparator-tree view over the slot arrays.
  MinVersionRegisters min_registers() const;
  /// Direct minimum over the live entries.
  MinVersionRegisters brute_force_min_registers() const;

  const std::deque<RobEntry>& rob() const { return rob_; }
  const std::vector<SbEntry>& store_buffer() const { return sb_; }
  const std::deque<std::uint64_t>& orq() const { return orq_; }
  const VersionEngine& versions() const { return engine_; }
  std::size_t lsq_occupancy() const { return lsq_used_; }
  bool overflow_pending() const { return overflow_pending_; }

private:
  bool versioned() const { return config_.mode == Mode::Louvre; }
  std::optional<TraceOp> peek_fetch() const;
  void advance_fetch();
  void start_execution(std::size_t index, Cycle cycle);
  /// Drops rob_[index..]; does not touch versions or the fetch pointer.
  void drop_tail(std::size_t index);
  void squash_from(std::size_t index, Cycle cycle);
  void resolve_branch(std::size_t index, Cycle cycle);
  bool retire_head(Cycle cycle);
  void insert_store(const RobEntry& e, Cycle cycle);
  std::uint32_t allocate_slot(std::vector<bool>& used);
  bool release_in_sb() const;
  void log(Cycle cycle, const char* kind, const RobEntry& e);

  CoreId id_;
  Trace trace_;
  const SimConfig& config_;
  MemorySystem& memory_;
  EventLog& log_;
  Cycle start_;

  VersionEngine engine_;
  std::deque<RobEntry> rob_;
  std::deque<std::uint64_t> orq_;
  std::vector<SbEntry> sb_;
  std::vector<bool> lsq_slots_;
  std::vector<bool> sb_slots_;
  std::vector<MinVersion> lsq_leaves_;
  std::vector<MinVersion> sb_leaves_;
  std::size_t lsq_used_ = 0;

  std::size_t fetch_index_ = 0;
  bool on_wrong_path_ = false;
  std::size_t wrong_path_base_ = 0;
  std::uint32_t wrong_path_left_ = 0;
  std::uint32_t wrong_path_emitted_ = 0;

  std::uint64_t next_seq_ = 0;
  std::uint64_t next_age_ = 0;
  bool overflow_pending_ = false;
  bool head_ordering_block_ = false;

  std::map<RegisterId, Value> registers_;
  Stats stats_;
};

}  // namespace louvre
