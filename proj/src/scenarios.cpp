#include "louvre/scenarios.hpp"

namespace louvre {
namespace {

Instruction make(ThreadId t, MemOpKind kind, std::optional<Location> loc, Value value = 0,
                 std::optional<RegisterId> dest = std::nullopt)
{
  Instruction i;
  i.thread = t;
  i.kind = kind;
  i.address = loc;
  i.value = value;
  i.dest = dest;
  return i;
}

void push(Program& p, Instruction i)
{
  i.po_index = static_cast<std::uint32_t>(p.threads[i.thread].size());
  p.threads[i.thread].push_back(i);
}

std::uint64_t count(const EventLog& log, CoreId core, std::string_view kind, std::string_view detail)
{
  std::uint64_t n = 0;
  for (const auto& e : log.events())
    n += e.core == core && e.kind == kind && e.detail == detail;
  return n;
}

}  // namespace

Program early_completion_program()
{
  Program p;
  p.name = "early-completion";
  const auto a = p.intern("A"), b = p.intern("B"), c = p.intern("C");
  p.initial_memory = {{a, 0}, {b, 0}, {c, 0}};
  p.threads.resize(1);
  push(p, make(0, MemOpKind::Store, a, 1));
  push(p, make(0, MemOpKind::StoreRelease, b, 1));
  push(p, make(0, MemOpKind::Store, c, 1));
  return p;
}

EarlyCompletion run_early_completion(Mode mode, SimConfig base)
{
  const auto p = early_completion_program();
  base.mode = mode;
  base.record_events = true;
  base.memory.jitter = 0;
  EarlyCompletion out;
  out.result = simulate(p, base, {}, {{0, *p.find_location("B"), true}, {0, *p.find_location("C"), true}});
  const auto& log = out.result.log;
  out.s1_complete = log.first(0, "complete", "op0");
  out.s2_complete = log.first(0, "complete", "op1");
  out.s3_complete = log.first(0, "complete", "op2");
  out.s1_perform = log.first(0, "perform", "op0");
  out.s3_retire = log.first(0, "retire", "op2");
  return out;
}

Program squash_program(Value core1_value)
{
  Program p;
  p.name = "squash-avoidance";
  const auto x = p.intern("X"), f = p.intern("F"), a1 = p.intern("A1"), a2 = p.intern("A2");
  p.initial_memory = {{x, 0}, {f, 0}, {a1, 0}, {a2, 0}};
  p.threads.resize(2);
  push(p, make(0, MemOpKind::Store, x, 1));
  push(p, make(0, MemOpKind::StoreRelease, f, 1));
  push(p, make(0, MemOpKind::Load, a1, 0, 0));
  push(p, make(0, MemOpKind::Load, a2, 0, 1));
  push(p, make(1, MemOpKind::Store, a2, core1_value));
  return p;
}

SquashScenario run_squash_scenario(Mode mode, Value core1_value, SimConfig base)
{
  const auto p = squash_program(core1_value);
  base.mode = mode;
  base.record_events = true;
  base.memory.jitter = 0;
  const Location f = *p.find_location("F"), a2 = *p.find_location("A2");
  SquashScenario out;
  // Core 0 holds F and A2; core 1 shares A2 through the cluster L2 so its
  // ownership arrives after I3 is satisfied and well before I2's miss returns.
  out.result = simulate(p, base, {0, 4}, {{0, f, true}, {1, a2, false}, {0, a2, false}});
  out.i3_squashes = count(out.result.log, 0, "squash", "op3");
  out.i3_avoided = count(out.result.log, 0, "avoid_squash", "op3");
  return out;
}

Program overflow_program(std::size_t fences_per_gap)
{
  Program p;
  p.name = "overflow-mp";
  const auto x = p.intern("X"), y = p.intern("Y"), f = p.intern("F");
  p.initial_memory = {{x, 0}, {y, 0}, {f, 0}};
  p.threads.resize(2);
  push(p, make(0, MemOpKind::Store, x, 1));
  for (std::size_t i = 0; i < fences_per_gap; ++i)
    push(p, make(0, MemOpKind::FullFence, std::nullopt));
  push(p, make(0, MemOpKind::Store, y, 1));
  for (std::size_t i = 0; i < fences_per_gap; ++i)
    push(p, make(0, MemOpKind::FullFence, std::nullopt));
  push(p, make(0, MemOpKind::StoreRelease, f, 1));
  push(p, make(1, MemOpKind::LoadAcquire, f, 0, 0));
  push(p, make(1, MemOpKind::Load, y, 0, 1));
  push(p, make(1, MemOpKind::FullFence, std::nullopt));
  push(p, make(1, MemOpKind::Load, x, 0, 2));
  return p;
}

}  // namespace louvre
