#include "louvre/system.hpp"

#include <stdexcept>

namespace louvre {
namespace {

MemoryConfig seeded(MemoryConfig m, std::uint64_t seed)
{
  m.seed ^= seed * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull;
  return m;
}

}  // namespace

SystemSetup setup_from_program(const Program& program)
{
  Program p = program;
  normalize(p);
  SystemSetup s;
  for (const auto& t : p.threads)
    s.traces.push_back(trace_of(t));
  s.initial_memory = p.initial_memory;
  return s;
}

System::System(SystemSetup setup, SimConfig config)
  : config_(std::move(config)), initial_(setup.initial_memory),
    memory_(std::max<std::size_t>(setup.traces.size(), 1), seeded(config_.memory, config_.seed), setup.initial_memory),
    log_(config_.record_events)
{
  config_.check();
  if (setup.traces.size() > kMaxThreads)
    throw std::invalid_argument("at most 8 cores");
  for (const auto& w : setup.warm)
    memory_.warm(w.core, w.location, w.exclusive);
  for (std::size_t i = 0; i < setup.traces.size(); ++i) {
    const Cycle start = i < setup.start_cycles.size() ? setup.start_cycles[i] : 0;
    cores_.push_back(
      std::make_unique<Core>(static_cast<CoreId>(i), std::move(setup.traces[i]), config_, memory_, log_, start));
  }
}

bool System::finished() const
{
  if (memory_.writes_pending())
    return false;
  for (const auto& c : cores_)
    if (!c->finished())
      return false;
  return true;
}

void System::step()
{
  for (const auto& w : memory_.perform_due(cycle_)) {
    for (auto& c : cores_) {
      if (c->id() == w.core)
        c->on_write_performed(w, cycle_);
      else
        c->deliver_invalidation(w.line, cycle_);
    }
  }
  for (auto& c : cores_)
    c->execute(cycle_);
  for (auto& c : cores_)
    c->retire(cycle_);
  for (auto& c : cores_)
    c->complete_stores(cycle_);
  for (auto& c : cores_)
    c->issue(cycle_);
  for (auto& c : cores_)
    c->end_cycle(cycle_);
  ++cycle_;
}

SimResult System::run()
{
  SimResult r;
  while (!finished()) {
    if (cycle_ >= config_.max_cycles) {
      r.deadlock = true;
      break;
    }
    step();
  }
  r.cycles = cycle_;
  for (const auto& c : cores_) {
    Stats s = c->stats();
    s.cycles = cycle_;
    r.per_core.push_back(s);
    r.total += s;
    for (const auto& [reg, v] : c->registers())
      r.outcome.registers[{c->id(), reg}] = v;
  }
  r.total.cycles = cycle_;
  for (const auto& [loc, v] : initial_)
    r.outcome.memory[loc] = memory_.value(loc);
  r.swmr_violations = memory_.check_swmr();
  r.log = log_;
  return r;
}

SimResult simulate(const Program& program, const SimConfig& config, const std::vector<Cycle>& start_cycles,
                   const std::vector<WarmLine>& warm)
{
  auto setup = setup_from_program(program);
  setup.start_cycles = start_cycles;
  setup.warm = warm;
  System sys(std::move(setup), config);
  return sys.run();
}

}  // namespace louvre
