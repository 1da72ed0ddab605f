#pragma once

#include <map>
#include <memory>
#include <vector>

#include "louvre/config.hpp"
#include "louvre/core.hpp"
#include "louvre/event_log.hpp"
#include "louvre/memory.hpp"
#include "louvre/program.hpp"
#include "louvre/stats.hpp"

namespace louvre {

struct WarmLine
{
  CoreId core = 0;
  Location location = 0;
  bool exclusive = false;
};

struct SystemSetup
{
  std::vector<Trace> traces;
  std::map<Location, Value> initial_memory;
  std::vector<Cycle> start_cycles;  // per core, default 0
  std::vector<WarmLine> warm;
};

/// Traces and initial memory of a straight-line program.
SystemSetup setup_from_program(const Program& program);

struct SimResult
{
  Outcome outcome;
  Stats total;
  std::vector<Stats> per_core;
  EventLog log;
  Cycle cycles = 0;
  bool deadlock = false;
  std::vector<std::string> swmr_violations;
};

/// The multicore machine: cores stepped in id order within each cycle,
/// phase by phase.
class System
{
public:
  System(SystemSetup setup, SimConfig config);
  System(const System&) = delete;
  System& operator=(const System&) = delete;

  /// Runs one cycle: perform due writes and deliver invalidations, execute,
  /// retire, complete stores, issue.
  void step();
  bool finished() const;
  SimResult run();

  Cycle cycle() const { return cycle_; }
  const Core& core(std::size_t i) const { return *cores_.at(i); }
  std::size_t core_count() const { return cores_.size(); }
  const MemorySystem& memory() const { return memory_; }
  const SimConfig& config() const { return config_; }

private:
  SimConfig config_;
  std::map<Location, Value> initial_;
  MemorySystem memory_;
  EventLog log_;
  std::vector<std::unique_ptr<Core>> cores_;
  Cycle cycle_ = 0;
};

/// Simulates `program` once and returns the architectural outcome with stats.
SimResult simulate(const Program& program, const SimConfig& config, const std::vector<Cycle>& start_cycles = {},
                   const std::vector<WarmLine>& warm = {});

}  // namespace louvre
