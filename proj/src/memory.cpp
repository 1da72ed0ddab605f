#include "louvre/memory.hpp"

#include <algorithm>
#include <stdexcept>

namespace louvre {

char mesi_letter(Mesi m)
{
  switch (m) {
    case Mesi::I: return 'I';
    case Mesi::S: return 'S';
    case Mesi::E: return 'E';
    case Mesi::M: return 'M';
  }
  return '?';
}

void MemoryConfig::check() const
{
  if (!(l1_lat < l2_lat && l2_lat < l3_lat && l3_lat < mem_lat))
    throw std::invalid_argument("latencies must satisfy l1 < l2 < l3 < mem");
  if (l1_kb == 0 || l2_kb == 0 || l3_mb == 0 || line_bytes == 0 || cores_per_cluster == 0)
    throw std::invalid_argument("cache sizes must be positive");
}

std::optional<LineId> LruSet::touch(LineId line)
{
  if (auto it = index_.find(line); it != index_.end()) {
    order_.splice(order_.begin(), order_, it->second);
    return std::nullopt;
  }
  order_.push_front(line);
  index_[line] = order_.begin();
  if (capacity_ && index_.size() > capacity_) {
    LineId victim = order_.back();
    order_.pop_back();
    index_.erase(victim);
    return victim;
  }
  return std::nullopt;
}

void LruSet::erase(LineId line)
{
  if (auto it = index_.find(line); it != index_.end()) {
    order_.erase(it->second);
    index_.erase(it);
  }
}

MemorySystem::MemorySystem(std::size_t cores, MemoryConfig config, std::map<Location, Value> initial)
  : config_(std::move(config)), l3_(std::size_t{config_.l3_mb} * 1024 * 1024 / config_.line_bytes), rng_(config_.seed)
{
  config_.check();
  if (cores == 0)
    throw std::invalid_argument("memory system needs at least one core");
  const std::size_t l1_lines = std::size_t{config_.l1_kb} * 1024 / config_.line_bytes;
  const std::size_t l2_lines = std::size_t{config_.l2_kb} * 1024 / config_.line_bytes;
  l1_.assign(cores, LruSet(l1_lines));
  l2_.assign((cores + config_.cores_per_cluster - 1) / config_.cores_per_cluster, LruSet(l2_lines));
  for (const auto& [loc, v] : initial)
    values_[loc] = v;
}

LineId MemorySystem::line_of(Location loc) const
{
  if (auto it = config_.false_sharing_map.find(loc); it != config_.false_sharing_map.end())
    return it->second;
  return loc;
}

std::uint32_t MemorySystem::jitter()
{
  if (config_.jitter == 0)
    return 0;
  return std::uniform_int_distribution<std::uint32_t>(0, config_.jitter)(rng_);
}

std::vector<Mesi>& MemorySystem::states_of(LineId line)
{
  auto& s = lines_[line];
  if (s.empty())
    s.assign(l1_.size(), Mesi::I);
  return s;
}

void MemorySystem::install_l1(CoreId core, LineId line, Mesi state)
{
  states_of(line)[core] = state;
  if (auto victim = l1_[core].touch(line))
    states_of(*victim)[core] = Mesi::I;
}

void MemorySystem::fill_shared(CoreId core, LineId line)
{
  l2_[cluster_of(core)].touch(line);
  l3_.touch(line);
}

HitLevel MemorySystem::locate(CoreId core, LineId line)
{
  if (auto it = lines_.find(line); it != lines_.end() && it->second[core] != Mesi::I)
    return HitLevel::L1;
  if (l2_[cluster_of(core)].contains(line))
    return HitLevel::L2;
  if (l3_.contains(line))
    return HitLevel::L3;
  return HitLevel::Memory;
}

ReadResult MemorySystem::read(CoreId core, Location loc, Cycle cycle)
{
  const LineId line = line_of(loc);
  const HitLevel level = locate(core, line);
  std::uint32_t lat = config_.l1_lat;
  switch (level) {
    case HitLevel::L1: lat = config_.l1_lat; break;
    case HitLevel::L2: lat = config_.l2_lat + jitter(); break;
    case HitLevel::L3: lat = config_.l3_lat + jitter(); break;
    case HitLevel::Memory: lat = config_.mem_lat + jitter(); break;
  }
  auto& states = states_of(line);
  if (level == HitLevel::L1) {
    l1_[core].touch(line);
  } else {
    bool others = false;
    for (std::size_t c = 0; c < states.size(); ++c) {
      if (c == core || states[c] == Mesi::I)
        continue;
      others = true;
      states[c] = Mesi::S;
    }
    install_l1(core, line, others ? Mesi::S : Mesi::E);
  }
  fill_shared(core, line);
  return {cycle + lat, level};
}

Cycle MemorySystem::ownership_ready(CoreId core, Location loc, Cycle cycle)
{
  const LineId line = line_of(loc);
  auto it = lines_.find(line);
  const Mesi mine = it == lines_.end() ? Mesi::I : it->second[core];
  if (mine == Mesi::M || mine == Mesi::E)
    return cycle + config_.l1_lat;
  if (mine == Mesi::S)
    return cycle + config_.l2_lat + jitter();
  switch (locate(core, line)) {
    case HitLevel::L1:
    case HitLevel::L2: return cycle + config_.l2_lat + jitter();
    case HitLevel::L3: return cycle + config_.l3_lat + jitter();
    case HitLevel::Memory: break;
  }
  return cycle + config_.mem_lat + jitter();
}

WriteTicket MemorySystem::write(CoreId core, Location loc, Value value, Cycle cycle)
{
  if (core >= l1_.size())
    throw std::out_of_range("write from unknown core");
  const Cycle perform = cycle + config_.inv_delay;
  pending_.push_back({next_write_, core, loc, value, perform});
  return {perform, next_write_++};
}

std::vector<PerformedWrite> MemorySystem::perform_due(Cycle cycle)
{
  std::vector<PerformedWrite> out;
  if (pending_.empty())
    return out;
  std::vector<Pending> keep;
  for (const auto& p : pending_) {
    if (p.perform > cycle) {
      keep.push_back(p);
      continue;
    }
    const LineId line = line_of(p.loc);
    auto& states = states_of(line);
    std::uint32_t sent = 0;
    for (std::size_t c = 0; c < states.size(); ++c) {
      if (c == p.core)
        continue;
      if (states[c] != Mesi::I) {
        ++sent;
        states[c] = Mesi::I;
        l1_[c].erase(line);
      }
    }
    for (std::size_t k = 0; k < l2_.size(); ++k)
      if (k != cluster_of(p.core))
        l2_[k].erase(line);
    install_l1(p.core, line, Mesi::M);
    fill_shared(p.core, line);
    values_[p.loc] = p.value;
    out.push_back({p.id, p.core, p.loc, line, p.value, cycle, sent});
  }
  pending_ = std::move(keep);
  return out;
}

void MemorySystem::warm(CoreId core, Location loc, bool exclusive)
{
  if (core >= l1_.size())
    throw std::out_of_range("warm for unknown core");
  const LineId line = line_of(loc);
  auto& states = states_of(line);
  bool others = false;
  for (std::size_t c = 0; c < states.size(); ++c) {
    if (c == core || states[c] == Mesi::I)
      continue;
    if (exclusive) {
      states[c] = Mesi::I;
      l1_[c].erase(line);
    } else {
      states[c] = Mesi::S;
      others = true;
    }
  }
  install_l1(core, line, others ? Mesi::S : Mesi::E);
  fill_shared(core, line);
}

Value MemorySystem::value(Location loc) const
{
  auto it = values_.find(loc);
  return it == values_.end() ? 0 : it->second;
}

Mesi MemorySystem::state(CoreId core, Location loc) const
{
  auto it = lines_.find(line_of(loc));
  return it == lines_.end() ? Mesi::I : it->second.at(core);
}

std::vector<std::string> MemorySystem::check_swmr() const
{
  std::vector<std::string> out;
  for (const auto& [line, states] : lines_) {
    std::size_t owners = 0, valid = 0;
    for (auto s : states) {
      owners += s == Mesi::M || s == Mesi::E;
      valid += s != Mesi::I;
    }
    if (owners > 1 || (owners == 1 && valid > 1))
      out.push_back("line " + std::to_string(line) + " violates single-writer/multiple-reader");
  }
  return out;
}

std::vector<LineSnapshot> MemorySystem::snapshot() const
{
  std::vector<LineSnapshot> out;
  for (const auto& [line, states] : lines_)
    out.push_back({line, states});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.line < b.line; });
  return out;
}

}  // namespace louvre
