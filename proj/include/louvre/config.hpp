#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "louvre/memory.hpp"
#include "louvre/version.hpp"

namespace louvre {

enum class Mode { Baseline, Louvre };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct SimConfig
{
  Mode mode = Mode::Louvre;
  std::uint32_t rob_entries = 192;
  std::uint32_t lsq_entries = 64;
  std::uint32_t sb_entries = 16;
  std::uint32_t retire_width = 4;
  std::uint32_t fetch_width = 6;
  std::uint32_t mem_ops_per_cycle = 2;
  std::uint32_t sb_drain_width = 1;
  unsigned version_bits = kDefaultVersionBits;
  bool strict_fence_order = true;
  bool write_combining = false;
  std::uint64_t seed = 0;
  /// Cycles from issue to resolution for branches in synthetic traces.
  std::uint32_t branch_latency = 8;
  /// Wrong-path instructions fetched behind a mispredicted branch.
  std::uint32_t wrong_path_ops = 8;
  bool check_min_registers = false;
  bool record_events = false;
  /// Safety net against simulator livelock.
  Cycle max_cycles = 50'000'000;
  MemoryConfig memory;

  /// Throws std::invalid_argument for out-of-range values.
  void check() const;
};

/// Applies one `key=value` setting. Unknown keys throw std::invalid_argument.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/// Parses a key=value file ('#' comments, blank lines ignored).
SimConfig parse_config(const std::string& text, SimConfig base = {});
SimConfig load_config(const std::filesystem::path& path, SimConfig base = {});

/// Every key with its current value, one `key=value` per line.
std::string dump_config(const SimConfig& config);

}  // namespace louvre
