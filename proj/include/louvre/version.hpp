#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "louvre/program.hpp"

namespace louvre {

/// Ordering tag carried by every in-flight load and store.
struct Version
{
  std::uint32_t value = 0;

  friend auto operator<=>(const Version&, const Version&) = default;
};

inline constexpr unsigned kDefaultVersionBits = 10;
inline constexpr unsigned kMaxVersionBits = 31;

class VersionOverflow : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct VersionCheckpoint
{
  std::uint64_t spec_id = 0;
  Version vr;
  Version lfvr;

  friend bool operator==(const VersionCheckpoint&, const VersionCheckpoint&) = default;
};

/// The per-core register pair plus its branch checkpoints.
///
/// Invariant: lfvr >= vr. vr only ever moves to lfvr; lfvr only grows
/// (until a drain-and-reset).
struct VersionState
{
  Version vr;
  Version lfvr;
  std::vector<VersionCheckpoint> checkpoints;  // oldest first
  unsigned bits = kDefaultVersionBits;

  std::uint32_t max_value() const { return (std::uint32_t{1} << bits) - 1; }

  friend bool operator==(const VersionState&, const VersionState&) = default;
};

VersionState make_version_state(unsigned bits = kDefaultVersionBits);

struct VersionAssignment
{
  std::optional<Version> assigned;  // none for a full fence
  VersionState state;
};

/// Issue-time version assignment and register update:
///
///   load / store    version = vr          registers unchanged
///   load-acquire    version = vr          lfvr += 1
///   store-release   version = vr + 1      lfvr += 1
///   full fence      (none)                lfvr += 1, then vr = lfvr
///
/// Throws VersionOverflow if a produced value would exceed the register width.
VersionAssignment assign_version(MemOpKind kind, const VersionState& state);

/// True iff issuing `lookahead` more fences would push lfvr past its maximum.
bool check_overflow(const VersionState& state, std::uint32_t lookahead);

/// Clears both registers and all checkpoints. Caller guarantees the pipeline is drained.
VersionState reset(const VersionState& state);

VersionState checkpoint(const VersionState& state, std::uint64_t spec_id);

/// Re-installs the pair saved for `spec_id` and drops it together with every
/// younger checkpoint. Unknown ids are a simulator bug (std::logic_error).
VersionState restore(const VersionState& state, std::uint64_t spec_id);

/// In-place form used by the pipeline, which issues every cycle and does not
/// want to copy the checkpoint stack per instruction.
class VersionEngine
{
public:
  explicit VersionEngine(unsigned bits = kDefaultVersionBits);

  std::optional<Version> assign(MemOpKind kind);
  bool would_overflow(std::uint32_t lookahead) const { return check_overflow(state_, lookahead); }
  void reset();

  void checkpoint(std::uint64_t spec_id);
  void restore(std::uint64_t spec_id);
  /// Drops the checkpoint of a branch that retired.
  void commit(std::uint64_t spec_id);
  /// Drops every checkpoint with id >= spec_id (pipeline flush).
  void discard_from(std::uint64_t spec_id);
  /// Returns the registers to a previously observed pair (squash replay).
  void rewind(Version vr, Version lfvr);

  const VersionState& state() const { return state_; }
  Version vr() const { return state_.vr; }
  Version lfvr() const { return state_.lfvr; }

private:
  VersionState state_;
};

}  // namespace louvre
