#include "louvre/lsq.hpp"

#include <algorithm>
#include <stdexcept>

namespace louvre {

bool version_le(Version v, MinVersion bound) { return !bound || v <= *bound; }

MinVersion min_of(MinVersion a, MinVersion b)
{
  if (!a)
    return b;
  if (!b)
    return a;
  return std::min(*a, *b);
}

MinVersion comparator_tree_min(const std::vector<MinVersion>& leaves)
{
  if (leaves.empty())
    return std::nullopt;
  std::vector<MinVersion> level = leaves;
  while (level.size() > 1) {
    std::vector<MinVersion> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = 2 * i + 1 < level.size() ? min_of(level[2 * i], level[2 * i + 1]) : level[2 * i];
    level = std::move(next);
  }
  return level.front();
}

std::size_t comparator_count(std::size_t leaves) { return leaves ? leaves - 1 : 0; }

MinVersion brute_force_min(const std::vector<MinVersion>& values)
{
  MinVersion m;
  for (const auto& v : values)
    if (v && (!m || *v < *m))
      m = v;
  return m;
}

bool can_retire_load(const LoadRetireQuery& load, const MinVersionRegisters& regs, Mode mode, bool strict_fence_order)
{
  if (!is_load(load.kind))
    throw std::invalid_argument("can_retire_load on a non-load");
  if (!load.satisfied)
    return false;
  if (strict_fence_order && load.kind == MemOpKind::LoadAcquire && load.release_in_sb)
    return false;
  if (mode == Mode::Baseline)
    return true;
  if (!load.version)
    throw std::invalid_argument("louvre load without a version");
  return version_le(*load.version, regs.sb);
}

bool can_retire_fence(MemOpKind kind, Mode mode, bool sb_empty)
{
  if (kind != MemOpKind::StoreRelease && kind != MemOpKind::FullFence)
    throw std::invalid_argument("can_retire_fence expects StoreRelease or FullFence");
  return mode == Mode::Louvre || sb_empty;
}

std::optional<std::size_t> select_store_to_complete(const std::vector<SbEntry>& sb, Mode mode)
{
  if (sb.empty())
    return std::nullopt;
  auto blocked = [&](std::size_t i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (sb[j].address == sb[i].address)
        return true;
      if (sb[i].is_release && sb[j].is_release && sb[j].version == sb[i].version)
        return true;
    }
    return false;
  };
  auto eligible = [&](std::size_t i) { return !sb[i].completed && sb[i].cache_ready && !blocked(i); };

  if (mode == Mode::Baseline) {
    for (std::size_t i = 0; i < sb.size(); ++i)
      if (eligible(i))
        return i;
    return std::nullopt;
  }
  if (eligible(0))
    return 0;
  Version lowest = sb[0].version;
  for (const auto& e : sb)
    lowest = std::min(lowest, e.version);
  for (std::size_t i = 1; i < sb.size(); ++i)
    if (sb[i].version == lowest && eligible(i))
      return i;
  return std::nullopt;
}

std::optional<Value> forward_store_to_load(const std::vector<PendingStore>& lsq_stores, const std::vector<SbEntry>& sb,
                                           Location address)
{
  for (auto it = lsq_stores.rbegin(); it != lsq_stores.rend(); ++it)
    if (it->address == address)
      return it->value;
  for (auto it = sb.rbegin(); it != sb.rend(); ++it)
    if (it->address == address)
      return it->value;
  return std::nullopt;
}

bool should_squash(const SquashQuery& load, const MinVersionRegisters& regs, Mode mode, bool strict_fence_order)
{
  if (mode == Mode::Baseline)
    return true;
  if (!load.version)
    throw std::invalid_argument("louvre load without a version");
  if (!version_le(*load.version, min_of(regs.sb, regs.lsq)))
    return true;
  if (load.fence_before)
    return true;
  return strict_fence_order && load.kind == MemOpKind::LoadAcquire && load.release_before;
}

}  // namespace louvre
