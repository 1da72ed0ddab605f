#include "louvre/oracle.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

namespace louvre {
namespace {

bool same_location_stores(const Instruction& x, const Instruction& y)
{
  return is_store(x.kind) && is_store(y.kind) && x.address == y.address;
}

/// RC1-RC5 plus write-write coherence for a po-ordered pair.
bool rcsc_requires(const Instruction& x, const Instruction& y)
{
  using K = MemOpKind;
  return x.kind == K::FullFence || y.kind == K::FullFence || x.kind == K::LoadAcquire || y.kind == K::StoreRelease ||
         (is_ordering(x.kind) && is_ordering(y.kind)) || same_location_stores(x, y);
}

bool vsr_requires(const Instruction& x, Version vx, const Instruction& y, Version vy, bool strict)
{
  using K = MemOpKind;
  if (vx < vy)
    return true;
  if (x.kind == K::LoadAcquire && vx == vy)
    return true;
  if (x.kind == K::StoreRelease && y.kind == K::StoreRelease && vx == vy)
    return true;
  if (strict && x.kind == K::StoreRelease && y.kind == K::LoadAcquire)
    return true;
  return same_location_stores(x, y);
}

/// Position of every instruction; validates the permutation.
std::vector<std::vector<std::size_t>> positions(const Program& program, const GlobalOrder& order)
{
  if (order.size() != program.instruction_count())
    throw std::invalid_argument("global order has " + std::to_string(order.size()) + " entries, program has " +
                                std::to_string(program.instruction_count()));
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> pos(program.threads.size());
  for (std::size_t t = 0; t < program.threads.size(); ++t)
    pos[t].assign(program.threads[t].size(), unset);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto r = order[i];
    if (r.thread >= pos.size() || r.po_index >= pos[r.thread].size())
      throw std::invalid_argument("global order names an unknown instruction");
    if (pos[r.thread][r.po_index] != unset)
      throw std::invalid_argument("global order repeats an instruction");
    pos[r.thread][r.po_index] = i;
  }
  return pos;
}

template <typename Requires>
bool po_pairs_hold(const Program& program, const std::vector<std::vector<std::size_t>>& pos, Requires&& requires_order)
{
  for (std::size_t t = 0; t < program.threads.size(); ++t) {
    const auto& th = program.threads[t];
    for (std::size_t a = 0; a < th.size(); ++a)
      for (std::size_t b = a + 1; b < th.size(); ++b)
        if (requires_order(th[a], th[b]) && pos[t][a] > pos[t][b])
          return false;
  }
  return true;
}

class Enumerator
{
public:
  Enumerator(const Program& program, const AccessOrder& order) : program_(program), order_(order)
  {
    n_ = order.accesses.size();
    for (const auto& [loc, v] : program.initial_memory) {
      loc_index_[loc] = static_cast<int>(locs_.size());
      locs_.push_back(loc);
      init_.push_back(v);
    }
    nodes_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& inst = program.at(order.accesses[i]);
      auto& node = nodes_[i];
      node.store = is_store(inst.kind);
      node.loc = loc_index_.at(*inst.address);
      node.value = inst.value;
      if (!node.store) {
        node.load_slot = static_cast<int>(load_keys_.size());
        load_keys_.push_back({inst.thread, *inst.dest});
      }
      // po-latest same-location store before this access in its thread
      for (std::size_t j = 0; j < i; ++j) {
        const auto& other = program.at(order.accesses[j]);
        if (other.thread == inst.thread && is_store(other.kind) && other.address == inst.address)
          node.last_po_store = static_cast<int>(j);
      }
    }
  }

  OutcomeSet run()
  {
    std::vector<Value> mem = init_;
    std::vector<Value> regs(load_keys_.size(), 0);
    dfs(0, mem, regs);
    return std::move(result_);
  }

private:
  struct Node
  {
    bool store = false;
    int loc = 0;
    Value value = 0;
    int load_slot = -1;
    int last_po_store = -1;
  };

  struct KeyHash
  {
    std::size_t operator()(const std::vector<Value>& k) const noexcept
    {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (auto v : k)
        h = (h ^ static_cast<std::uint64_t>(v)) * 0x100000001b3ull + (h >> 29);
      return static_cast<std::size_t>(h);
    }
  };

  void dfs(std::uint64_t placed, std::vector<Value>& mem, std::vector<Value>& regs)
  {
    if (placed == full_mask()) {
      Outcome out;
      for (std::size_t i = 0; i < load_keys_.size(); ++i)
        out.registers[load_keys_[i]] = regs[i];
      for (std::size_t i = 0; i < locs_.size(); ++i)
        out.memory[locs_[i]] = mem[i];
      result_.insert(std::move(out));
      return;
    }
    std::vector<Value> key;
    key.reserve(1 + mem.size() + regs.size());
    key.push_back(static_cast<Value>(placed));
    key.insert(key.end(), mem.begin(), mem.end());
    key.insert(key.end(), regs.begin(), regs.end());
    if (!visited_.insert(std::move(key)).second)
      return;

    for (std::size_t i = 0; i < n_; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((placed & bit) || (order_.predecessors[i] & ~placed))
        continue;
      const auto& node = nodes_[i];
      if (node.store) {
        const Value saved = mem[node.loc];
        mem[node.loc] = node.value;
        dfs(placed | bit, mem, regs);
        mem[node.loc] = saved;
      } else {
        // With same-location stores ordered in po, the <m-latest candidate is
        // the po-latest earlier own store if it is still unplaced, otherwise
        // whatever memory holds now.
        Value v = mem[node.loc];
        if (node.last_po_store >= 0 && !(placed & (std::uint64_t{1} << node.last_po_store)))
          v = nodes_[node.last_po_store].value;
        regs[node.load_slot] = v;
        dfs(placed | bit, mem, regs);
        regs[node.load_slot] = 0;
      }
    }
  }

  std::uint64_t full_mask() const { return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1; }

  const Program& program_;
  const AccessOrder& order_;
  std::size_t n_ = 0;
  std::map<Location, int> loc_index_;
  std::vector<Location> locs_;
  std::vector<Value> init_;
  std::vector<Node> nodes_;
  std::vector<RegisterKey> load_keys_;
  std::unordered_set<std::vector<Value>, KeyHash> visited_;
  OutcomeSet result_;
};

}  // namespace

OracleBoundExceeded::OracleBoundExceeded(std::size_t accesses, std::size_t bound)
  : std::runtime_error("program has " + std::to_string(accesses) + " memory accesses; enumeration bound is " +
                       std::to_string(bound)),
    accesses_(accesses)
{}

bool check_rcsc(const Program& program, const GlobalOrder& order)
{
  const auto pos = positions(program, order);
  return po_pairs_hold(program, pos, rcsc_requires);
}

bool check_rcsc(const Program& program, const GlobalOrder& order, const Outcome& observed)
{
  if (!check_rcsc(program, order))
    return false;
  const auto expected = outcome_of(program, order);
  for (const auto& [key, value] : expected.registers) {
    auto it = observed.registers.find(key);
    if (it == observed.registers.end() || it->second != value)
      return false;
  }
  return true;
}

Outcome outcome_of(const Program& program, const GlobalOrder& order)
{
  const auto pos = positions(program, order);
  Outcome out;
  out.memory = program.initial_memory;
  std::map<Location, std::size_t> last_store_pos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& inst = program.at(order[i]);
    if (is_store(inst.kind)) {
      out.memory[*inst.address] = inst.value;
      last_store_pos[*inst.address] = i;
    }
  }
  for (std::size_t t = 0; t < program.threads.size(); ++t) {
    const auto& th = program.threads[t];
    for (std::size_t k = 0; k < th.size(); ++k) {
      const auto& load = th[k];
      if (!is_load(load.kind))
        continue;
      const std::size_t load_pos = pos[t][k];
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& s = program.at(order[i]);
        if (!is_store(s.kind) || s.address != load.address)
          continue;
        const bool po_before = s.thread == load.thread && s.po_index < load.po_index;
        if (po_before || i < load_pos)
          best = i;  // order is scanned by position, so the last hit is the <m-max
      }
      auto init = program.initial_memory.find(*load.address);
      out.registers[{load.thread, *load.dest}] =
        best ? program.at(order[*best]).value : (init == program.initial_memory.end() ? 0 : init->second);
    }
  }
  return out;
}

VersionMap assign_program_versions(const Program& program)
{
  VersionMap map(program.threads.size());
  for (std::size_t t = 0; t < program.threads.size(); ++t) {
    VersionEngine engine(kMaxVersionBits);
    for (const auto& inst : program.threads[t])
      map[t].push_back(engine.assign(inst.kind));
  }
  return map;
}

bool check_vsr(const Program& program, const VersionMap& versions, const GlobalOrder& order, VsrOptions options)
{
  const auto pos = positions(program, order);
  if (versions.size() != program.threads.size())
    throw std::invalid_argument("version map does not cover every thread");
  for (std::size_t t = 0; t < program.threads.size(); ++t) {
    const auto& th = program.threads[t];
    if (versions[t].size() != th.size())
      throw std::invalid_argument("version map does not cover thread " + std::to_string(t));
    for (std::size_t k = 0; k < th.size(); ++k)
      if (is_access(th[k].kind) && !versions[t][k])
        throw std::invalid_argument("version map missing T" + std::to_string(t) + "[" + std::to_string(k) + "]");
  }
  for (std::size_t t = 0; t < program.threads.size(); ++t) {
    const auto& th = program.threads[t];
    for (std::size_t a = 0; a < th.size(); ++a) {
      if (!is_access(th[a].kind))
        continue;
      for (std::size_t b = a + 1; b < th.size(); ++b) {
        if (!is_access(th[b].kind))
          continue;
        if (vsr_requires(th[a], *versions[t][a], th[b], *versions[t][b], options.strict_fence_order) &&
            pos[t][a] > pos[t][b])
          return false;
      }
    }
  }
  return true;
}

AccessOrder access_order(const Program& program, Semantics semantics, bool strict_fence_order)
{
  AccessOrder out;
  std::vector<std::vector<int>> index(program.threads.size());
  for (std::size_t t = 0; t < program.threads.size(); ++t)
    for (const auto& inst : program.threads[t]) {
      index[t].push_back(is_access(inst.kind) ? static_cast<int>(out.accesses.size()) : -1);
      if (is_access(inst.kind))
        out.accesses.push_back({inst.thread, inst.po_index});
    }
  if (out.accesses.size() > 64)
    throw OracleBoundExceeded(out.accesses.size(), 64);
  out.predecessors.assign(out.accesses.size(), 0);

  const VersionMap versions = semantics == Semantics::VSR ? assign_program_versions(program) : VersionMap{};
  for (std::size_t t = 0; t < program.threads.size(); ++t) {
    const auto& th = program.threads[t];
    for (std::size_t a = 0; a < th.size(); ++a) {
      if (!is_access(th[a].kind))
        continue;
      bool fence_between = false;
      for (std::size_t b = a + 1; b < th.size(); ++b) {
        if (th[b].kind == MemOpKind::FullFence) {
          fence_between = true;
          continue;
        }
        bool required = false;
        if (semantics == Semantics::RCSC)
          required = fence_between || rcsc_requires(th[a], th[b]);
        else
          required = vsr_requires(th[a], *versions[t][a], th[b], *versions[t][b], strict_fence_order);
        if (required)
          out.predecessors[index[t][b]] |= std::uint64_t{1} << index[t][a];
      }
    }
  }
  return out;
}

OutcomeSet enumerate_outcomes(const Program& program, Semantics semantics, const OracleOptions& options)
{
  const auto accesses = program.access_count();
  if (accesses > options.max_accesses)
    throw OracleBoundExceeded(accesses, options.max_accesses);
  Program normalized = program;
  normalize(normalized);
  const auto order = access_order(normalized, semantics, options.strict_fence_order);
  return Enumerator(normalized, order).run();
}

EquivalenceReport equivalence_report(const Program& program, const OracleOptions& options)
{
  const auto rcsc = enumerate_outcomes(program, Semantics::RCSC, options);
  const auto vsr = enumerate_outcomes(program, Semantics::VSR, options);
  EquivalenceReport r;
  std::set_difference(rcsc.begin(), rcsc.end(), vsr.begin(), vsr.end(), std::inserter(r.rcsc_only, r.rcsc_only.end()));
  std::set_difference(vsr.begin(), vsr.end(), rcsc.begin(), rcsc.end(), std::inserter(r.vsr_only, r.vsr_only.end()));
  r.equal = r.rcsc_only.empty() && r.vsr_only.empty();
  return r;
}

}  // namespace louvre
