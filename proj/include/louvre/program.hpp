#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace louvre {

using Location = std::uint32_t;
using Value = std::int64_t;
using ThreadId = std::uint32_t;
using RegisterId = std::uint32_t;

/// Hardware thread limit of the modelled machine (8 cores).
inline constexpr std::size_t kMaxThreads = 8;

enum class MemOpKind : std::uint8_t { Load, Store, LoadAcquire, StoreRelease, FullFence };

constexpr bool is_load(MemOpKind k) { return k == MemOpKind::Load || k == MemOpKind::LoadAcquire; }
constexpr bool is_store(MemOpKind k) { return k == MemOpKind::Store || k == MemOpKind::StoreRelease; }
constexpr bool is_access(MemOpKind k) { return k != MemOpKind::FullFence; }

/// Load-acquire, store-release and full fence: the instructions kept in
/// sequential order with respect to each other.
constexpr bool is_ordering(MemOpKind k)
{
  return k == MemOpKind::LoadAcquire || k == MemOpKind::StoreRelease || k == MemOpKind::FullFence;
}

std::string_view mnemonic(MemOpKind kind);

struct Instruction
{
  ThreadId thread = 0;
  std::uint32_t po_index = 0;
  MemOpKind kind = MemOpKind::Load;
  std::optional<Location> address;   // absent only for FullFence
  Value value = 0;                   // stores only
  std::optional<RegisterId> dest;    // loads only

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// (thread, po-index) names one instruction of a program.
struct InstrRef
{
  ThreadId thread = 0;
  std::uint32_t po_index = 0;

  friend auto operator<=>(const InstrRef&, const InstrRef&) = default;
};

struct Program
{
  std::string name;
  std::vector<std::vector<Instruction>> threads;
  std::map<Location, Value> initial_memory;
  /// Display names, indexed by Location id.
  std::vector<std::string> location_names;

  const Instruction& at(InstrRef ref) const { return threads.at(ref.thread).at(ref.po_index); }
  std::size_t instruction_count() const;
  std::size_t access_count() const;
  std::string location_name(Location loc) const;

  /// Returns the id for `name`, adding it if unknown.
  Location intern(std::string_view name);
  std::optional<Location> find_location(std::string_view name) const;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Adds a zero initial value for every referenced location that has none.
void normalize(Program& program);

struct Diagnostic
{
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Empty iff every Program and Instruction invariant holds.
std::vector<Diagnostic> validate(const Program& program);

struct RegisterKey
{
  ThreadId thread = 0;
  RegisterId reg = 0;

  friend auto operator<=>(const RegisterKey&, const RegisterKey&) = default;
};

struct Outcome
{
  std::map<RegisterKey, Value> registers;
  std::map<Location, Value> memory;

  friend auto operator<=>(const Outcome&, const Outcome&) = default;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

std::string to_string(const Outcome& outcome, const Program& program);

/// One `T1:r0=1` or `A=1` term of a predicate.
struct Term
{
  std::variant<RegisterKey, Location> target;
  Value value = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Conjunction of terms; a partial outcome.
struct Predicate
{
  std::vector<Term> terms;

  bool matches(const Outcome& outcome) const;
  /// True iff some fully specified outcome satisfies both predicates.
  bool compatible_with(const Predicate& other) const;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct LitmusTest
{
  Program program;
  std::vector<Predicate> forbidden;
  std::vector<Predicate> allowed;

  friend bool operator==(const LitmusTest&, const LitmusTest&) = default;
};

}  // namespace louvre
