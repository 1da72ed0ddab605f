#include "louvre/version.hpp"

#include <algorithm>
#include <string>

namespace louvre {

VersionState make_version_state(unsigned bits)
{
  if (bits == 0 || bits > kMaxVersionBits)
    throw std::invalid_argument("version_bits must be in [1, " + std::to_string(kMaxVersionBits) + "]");
  VersionState s;
  s.bits = bits;
  return s;
}

VersionAssignment assign_version(MemOpKind kind, const VersionState& state)
{
  VersionAssignment out{std::nullopt, state};
  auto& s = out.state;
  const auto max = s.max_value();
  auto bump_lfvr = [&] {
    if (s.lfvr.value >= max)
      throw VersionOverflow("lfvr would exceed " + std::to_string(max));
    ++s.lfvr.value;
  };
  switch (kind) {
    case MemOpKind::Load:
    case MemOpKind::Store:
      out.assigned = s.vr;
      break;
    case MemOpKind::LoadAcquire:
      bump_lfvr();
      out.assigned = s.vr;
      break;
    case MemOpKind::StoreRelease:
      if (s.vr.value >= max)
        throw VersionOverflow("store-release version would exceed " + std::to_string(max));
      bump_lfvr();
      out.assigned = Version{s.vr.value + 1};
      break;
    case MemOpKind::FullFence:
      bump_lfvr();
      s.vr = s.lfvr;
      break;
  }
  return out;
}

bool check_overflow(const VersionState& state, std::uint32_t lookahead)
{
  return std::uint64_t{state.lfvr.value} + lookahead > state.max_value();
}

VersionState reset(const VersionState& state)
{
  VersionState s;
  s.bits = state.bits;
  return s;
}

VersionState checkpoint(const VersionState& state, std::uint64_t spec_id)
{
  VersionState s = state;
  s.checkpoints.push_back({spec_id, s.vr, s.lfvr});
  return s;
}

VersionState restore(const VersionState& state, std::uint64_t spec_id)
{
  auto it = std::find_if(state.checkpoints.begin(), state.checkpoints.end(),
                         [&](const VersionCheckpoint& c) { return c.spec_id == spec_id; });
  if (it == state.checkpoints.end())
    throw std::logic_error("restore: unknown speculation id " + std::to_string(spec_id));
  VersionState s = state;
  s.vr = it->vr;
  s.lfvr = it->lfvr;
  s.checkpoints.erase(s.checkpoints.begin() + (it - state.checkpoints.begin()), s.checkpoints.end());
  return s;
}

VersionEngine::VersionEngine(unsigned bits) : state_(make_version_state(bits)) {}

std::optional<Version> VersionEngine::assign(MemOpKind kind)
{
  // Plain accesses never touch the registers; skip the copy.
  if (kind == MemOpKind::Load || kind == MemOpKind::Store)
    return state_.vr;
  auto checkpoints = std::move(state_.checkpoints);
  state_.checkpoints.clear();
  VersionAssignment a;
  try {
    a = assign_version(kind, state_);
  } catch (...) {
    state_.checkpoints = std::move(checkpoints);
    throw;
  }
  state_.vr = a.state.vr;
  state_.lfvr = a.state.lfvr;
  state_.checkpoints = std::move(checkpoints);
  return a.assigned;
}

void VersionEngine::reset() { state_ = louvre::reset(state_); }

void VersionEngine::checkpoint(std::uint64_t spec_id) { state_.checkpoints.push_back({spec_id, state_.vr, state_.lfvr}); }

void VersionEngine::restore(std::uint64_t spec_id) { state_ = louvre::restore(state_, spec_id); }

void VersionEngine::commit(std::uint64_t spec_id)
{
  auto& cps = state_.checkpoints;
  auto it = std::find_if(cps.begin(), cps.end(), [&](const VersionCheckpoint& c) { return c.spec_id == spec_id; });
  if (it != cps.end())
    cps.erase(it);
}

void VersionEngine::discard_from(std::uint64_t spec_id)
{
  auto& cps = state_.checkpoints;
  std::erase_if(cps, [&](const VersionCheckpoint& c) { return c.spec_id >= spec_id; });
}

void VersionEngine::rewind(Version vr, Version lfvr)
{
  state_.vr = vr;
  state_.lfvr = lfvr;
}

}  // namespace louvre
