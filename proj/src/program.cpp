#include "louvre/program.hpp"

#include <set>
#include <sstream>

namespace louvre {

std::string_view mnemonic(MemOpKind kind)
{
  switch (kind) {
    case MemOpKind::Load: return "ld";
    case MemOpKind::Store: return "st";
    case MemOpKind::LoadAcquire: return "ldar";
    case MemOpKind::StoreRelease: return "stlr";
    case MemOpKind::FullFence: return "fence";
  }
  return "?";
}

std::size_t Program::instruction_count() const
{
  std::size_t n = 0;
  for (const auto& t : threads)
    n += t.size();
  return n;
}

std::size_t Program::access_count() const
{
  std::size_t n = 0;
  for (const auto& t : threads)
    for (const auto& i : t)
      if (is_access(i.kind))
        ++n;
  return n;
}

std::string Program::location_name(Location loc) const
{
  if (loc < location_names.size())
    return location_names[loc];
  return "L" + std::to_string(loc);
}

Location Program::intern(std::string_view name)
{
  if (auto found = find_location(name))
    return *found;
  location_names.emplace_back(name);
  return static_cast<Location>(location_names.size() - 1);
}

std::optional<Location> Program::find_location(std::string_view name) const
{
  for (std::size_t i = 0; i < location_names.size(); ++i)
    if (location_names[i] == name)
      return static_cast<Location>(i);
  return std::nullopt;
}

void normalize(Program& program)
{
  for (const auto& t : program.threads)
    for (const auto& i : t)
      if (i.address)
        program.initial_memory.try_emplace(*i.address, 0);
}

std::vector<Diagnostic> validate(const Program& program)
{
  std::vector<Diagnostic> out;
  auto report = [&](std::string msg) { out.push_back({std::move(msg)}); };

  if (program.threads.size() > kMaxThreads)
    report("thread count exceeds " + std::to_string(kMaxThreads));

  std::set<InstrRef> seen;
  for (std::size_t t = 0; t < program.threads.size(); ++t) {
    const auto& thread = program.threads[t];
    std::set<RegisterId> regs;
    bool contiguous = true;
    for (std::size_t k = 0; k < thread.size(); ++k) {
      const auto& inst = thread[k];
      const std::string where = "T" + std::to_string(t) + "[" + std::to_string(k) + "]: ";
      if (inst.thread != t)
        report(where + "thread id mismatch");
      if (inst.po_index != k)
        contiguous = false;
      if (!seen.insert({inst.thread, inst.po_index}).second)
        report(where + "duplicate (thread, po-index)");
      if (inst.kind == MemOpKind::FullFence) {
        if (inst.address)
          report(where + "fence with address");
        if (inst.dest)
          report(where + "fence with destination register");
        if (inst.value != 0)
          report(where + "fence with value");
      } else {
        if (!inst.address)
          report(where + "memory access without address");
        else if (!program.initial_memory.contains(*inst.address))
          report(where + "address missing from initial memory");
      }
      if (is_load(inst.kind)) {
        if (!inst.dest)
          report(where + "load without destination register");
        else if (!regs.insert(*inst.dest).second)
          report(where + "register r" + std::to_string(*inst.dest) + " written by more than one load");
      } else if (inst.dest) {
        report(where + "destination register on non-load");
      }
      if (!is_store(inst.kind) && inst.kind != MemOpKind::FullFence && inst.value != 0)
        report(where + "value on non-store");
    }
    if (!contiguous)
      report("T" + std::to_string(t) + ": non-contiguous program order");
  }
  return out;
}

std::string to_string(const Outcome& outcome, const Program& program)
{
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, value] : outcome.registers) {
    os << (first ? "" : " ") << "T" << key.thread << ":r" << key.reg << "=" << value;
    first = false;
  }
  for (const auto& [loc, value] : outcome.memory) {
    os << (first ? "" : " ") << program.location_name(loc) << "=" << value;
    first = false;
  }
  return os.str();
}

bool Predicate::matches(const Outcome& outcome) const
{
  for (const auto& term : terms) {
    if (const auto* reg = std::get_if<RegisterKey>(&term.target)) {
      auto it = outcome.registers.find(*reg);
      if (it == outcome.registers.end() || it->second != term.value)
        return false;
    } else {
      auto loc = std::get<Location>(term.target);
      auto it = outcome.memory.find(loc);
      if (it == outcome.memory.end() || it->second != term.value)
        return false;
    }
  }
  return true;
}

bool Predicate::compatible_with(const Predicate& other) const
{
  for (const auto& a : terms)
    for (const auto& b : other.terms)
      if (a.target == b.target && a.value != b.value)
        return false;
  return true;
}

}  // namespace louvre
