#include "louvre/core.hpp"

#include <stdexcept>
#include <string>

namespace louvre {

Trace trace_of(const std::vector<Instruction>& thread)
{
  Trace t;
  t.reserve(thread.size());
  for (const auto& i : thread) {
    TraceOp op;
    op.kind = TraceKind::Mem;
    op.op = i.kind;
    op.address = i.address.value_or(0);
    op.value = i.value;
    op.dest = i.dest;
    t.push_back(op);
  }
  return t;
}

Core::Core(CoreId id, Trace trace, const SimConfig& config, MemorySystem& memory, EventLog& log, Cycle start)
  : id_(id), trace_(std::move(trace)), config_(config), memory_(memory), log_(log), start_(start),
    engine_(config.version_bits), lsq_slots_(config.lsq_entries, false), sb_slots_(config.sb_entries, false),
    lsq_leaves_(config.lsq_entries), sb_leaves_(config.sb_entries)
{
  stats_.commit_hash = 0xcbf29ce484222325ull;
}

void Core::log(Cycle cycle, const char* kind, const RobEntry& e)
{
  if (log_.enabled())
    log_.record(cycle, id_, kind, "op" + std::to_string(e.trace_index) + (e.wrong_path ? "w" : ""));
}

std::uint32_t Core::allocate_slot(std::vector<bool>& used)
{
  for (std::uint32_t i = 0; i < used.size(); ++i)
    if (!used[i]) {
      used[i] = true;
      return i;
    }
  throw std::logic_error("no free slot");
}

bool Core::release_in_sb() const
{
  for (const auto& s : sb_)
    if (s.is_release)
      return true;
  return false;
}

MinVersionRegisters Core::min_registers() const
{
  if (!versioned())
    return {};
  return {comparator_tree_min(sb_leaves_), comparator_tree_min(lsq_leaves_)};
}

MinVersionRegisters Core::brute_force_min_registers() const
{
  if (!versioned())
    return {};
  std::vector<MinVersion> sb, lsq;
  for (const auto& s : sb_)
    sb.push_back(s.version);
  for (const auto& e : rob_)
    if (e.is_access())
      lsq.push_back(e.version);
  return {brute_force_min(sb), brute_force_min(lsq)};
}

std::optional<TraceOp> Core::peek_fetch() const
{
  if (on_wrong_path_) {
    if (wrong_path_left_ == 0 || trace_.empty())
      return std::nullopt;
    TraceOp op = trace_[(wrong_path_base_ + wrong_path_emitted_) % trace_.size()];
    if (op.kind == TraceKind::Branch) {
      op.kind = TraceKind::Alu;
      op.mispredict = false;
    }
    return op;
  }
  if (fetch_index_ >= trace_.size())
    return std::nullopt;
  return trace_[fetch_index_];
}

void Core::advance_fetch()
{
  if (on_wrong_path_) {
    --wrong_path_left_;
    ++wrong_path_emitted_;
  } else {
    ++fetch_index_;
  }
}

void Core::drop_tail(std::size_t index)
{
  if (index >= rob_.size())
    return;
  const std::uint64_t first_seq = rob_[index].seq;
  for (std::size_t j = index; j < rob_.size(); ++j) {
    auto& e = rob_[j];
    if (e.lsq_slot) {
      lsq_slots_[*e.lsq_slot] = false;
      lsq_leaves_[*e.lsq_slot] = std::nullopt;
      --lsq_used_;
    }
    ++stats_.squashed_instructions;
  }
  while (!orq_.empty() && orq_.back() >= first_seq)
    orq_.pop_back();
  rob_.erase(rob_.begin() + static_cast<std::ptrdiff_t>(index), rob_.end());
}

void Core::squash_from(std::size_t index, Cycle cycle)
{
  const RobEntry first = rob_[index];
  ++stats_.squashes;
  log(cycle, "squash", first);
  drop_tail(index);
  if (versioned()) {
    engine_.rewind(first.vr_before, first.lfvr_before);
    engine_.discard_from(first.seq);
  }
  on_wrong_path_ = false;
  wrong_path_left_ = 0;
  fetch_index_ = first.trace_index;
}

void Core::resolve_branch(std::size_t index, Cycle cycle)
{
  ++stats_.branch_mispredicts;
  log(cycle, "mispredict", rob_[index]);
  drop_tail(index + 1);
  if (versioned())
    engine_.restore(rob_[index].seq);
  on_wrong_path_ = false;
  wrong_path_left_ = 0;
  fetch_index_ = rob_[index].trace_index + 1;
}

void Core::on_write_performed(const PerformedWrite& write, Cycle cycle)
{
  for (std::size_t i = 0; i < sb_.size(); ++i) {
    auto& s = sb_[i];
    if (!s.completed || s.ticket != write.id)
      continue;
    ++stats_.stores_performed;
    stats_.store_latency_cycles += cycle - s.issue_cycle;
    if (log_.enabled())
      log_.record(cycle, id_, "perform", "op" + std::to_string(s.trace_index));
    sb_slots_[s.slot] = false;
    sb_leaves_[s.slot] = std::nullopt;
    sb_.erase(sb_.begin() + static_cast<std::ptrdiff_t>(i));
    return;
  }
  throw std::logic_error("performed write has no store buffer entry");
}

void Core::deliver_invalidation(LineId line, Cycle cycle)
{
  ++stats_.invalidations_received;
  if (log_.enabled())
    log_.record(cycle, id_, "invalidate", "line" + std::to_string(line));

  for (auto& s : sb_)
    if (s.line == line && !s.completed) {
      s.cache_ready = false;
      s.ready_cycle = memory_.ownership_ready(id_, s.address, cycle);
    }

  const auto regs = min_registers();
  bool release_seen = release_in_sb();
  for (std::size_t i = 0; i < rob_.size(); ++i) {
    const auto& e = rob_[i];
    if (e.is_mem() && e.op.op == MemOpKind::StoreRelease)
      release_seen = true;
    if (!e.is_load() || e.state != EntryState::Done || e.line != line)
      continue;
    if (e.wrong_path)
      break;  // everything younger is wrong-path too and will be flushed
    SquashQuery q;
    q.kind = e.op.op;
    q.version = e.version;
    q.fence_before = !orq_.empty() && orq_.front() < e.seq;
    q.release_before = release_seen;
    if (should_squash(q, regs, config_.mode, config_.strict_fence_order)) {
      squash_from(i, cycle);
      return;
    }
    ++stats_.avoided_squashes;
    log(cycle, "avoid_squash", e);
  }
}

void Core::start_execution(std::size_t index, Cycle cycle)
{
  auto& e = rob_[index];
  switch (e.op.kind) {
    case TraceKind::Alu: e.state = EntryState::Done; return;
    case TraceKind::Branch:
      e.state = EntryState::Executing;
      e.ready_cycle = e.issue_cycle + config_.branch_latency;
      return;
    case TraceKind::Mem: break;
  }
  if (!e.is_load()) {
    e.state = EntryState::Done;
    return;
  }
  std::optional<Value> forwarded;
  ValueSource source = ValueSource::ForwardLsq;
  for (std::size_t j = index; j-- > 0;) {
    const auto& older = rob_[j];
    if (older.is_store() && older.op.address == e.op.address) {
      forwarded = older.op.value;
      break;
    }
  }
  if (!forwarded) {
    forwarded = forward_store_to_load({}, sb_, e.op.address);
    source = ValueSource::ForwardSb;
  }
  if (forwarded) {
    e.value = *forwarded;
    e.source = source;
    e.state = EntryState::Done;
    e.satisfy_cycle = cycle;
    ++stats_.loads_forwarded;
    log(cycle, "forward", e);
    return;
  }
  const auto r = memory_.read(id_, e.op.address, cycle);
  e.source = ValueSource::Cache;
  e.state = EntryState::Executing;
  e.ready_cycle = r.ready_cycle;
}

void Core::execute(Cycle cycle)
{
  for (std::size_t i = 0; i < rob_.size(); ++i) {
    auto& e = rob_[i];
    if (e.state == EntryState::Issued && e.issue_cycle < cycle)
      start_execution(i, cycle);
    if (e.state != EntryState::Executing || e.ready_cycle > cycle)
      continue;
    e.state = EntryState::Done;
    if (e.is_load()) {
      e.value = memory_.value(e.op.address);
      e.satisfy_cycle = cycle;
      log(cycle, "satisfy", e);
    } else if (e.op.kind == TraceKind::Branch && e.op.mispredict && !e.wrong_path) {
      resolve_branch(i, cycle);
      break;
    }
  }
}

void Core::insert_store(const RobEntry& e, Cycle cycle)
{
  SbEntry s;
  s.address = e.op.address;
  s.line = e.line;
  s.value = e.op.value;
  s.version = e.version.value_or(Version{});
  s.age = next_age_++;
  s.is_release = e.op.op == MemOpKind::StoreRelease;
  s.issue_cycle = e.issue_cycle;
  s.retire_cycle = cycle;
  s.trace_index = e.trace_index;
  s.slot = allocate_slot(sb_slots_);
  s.ready_cycle = memory_.ownership_ready(id_, s.address, cycle);
  if (versioned())
    sb_leaves_[s.slot] = s.version;
  sb_.push_back(s);
}

bool Core::retire_head(Cycle cycle)
{
  auto& e = rob_.front();
  if (e.wrong_path)
    throw std::logic_error("wrong-path instruction reached the ROB head");
  if (e.state != EntryState::Done)
    return false;

  switch (e.op.kind) {
    case TraceKind::Alu: break;
    case TraceKind::Branch:
      if (versioned())
        engine_.commit(e.seq);
      break;
    case TraceKind::Mem:
      switch (e.op.op) {
        case MemOpKind::Load:
        case MemOpKind::LoadAcquire: {
          LoadRetireQuery q{e.op.op, e.version, true, release_in_sb()};
          if (!can_retire_load(q, min_registers(), config_.mode, config_.strict_fence_order)) {
            head_ordering_block_ = true;
            return false;
          }
          if (e.op.dest)
            registers_[*e.op.dest] = e.value;
          ++stats_.loads_retired;
          if (e.op.op == MemOpKind::LoadAcquire) {
            if (orq_.empty() || orq_.front() != e.seq)
              throw std::logic_error("ORQ out of sync at load-acquire retirement");
            orq_.pop_front();
          }
          break;
        }
        case MemOpKind::Store:
        case MemOpKind::StoreRelease: {
          const bool release = e.op.op == MemOpKind::StoreRelease;
          if (release && !can_retire_fence(MemOpKind::StoreRelease, config_.mode, sb_.empty())) {
            head_ordering_block_ = true;
            return false;
          }
          SbEntry* combine = nullptr;
          if (config_.write_combining && !release) {
            for (auto it = sb_.rbegin(); it != sb_.rend(); ++it)
              if (it->address == e.op.address) {
                if (!it->completed && !it->is_release && it->version == e.version.value_or(Version{}))
                  combine = &*it;
                break;
              }
          }
          if (combine) {
            combine->value = e.op.value;
            ++stats_.write_combines;
            log(cycle, "combine", e);
          } else {
            if (sb_.size() >= config_.sb_entries) {
              ++stats_.sb_full_stall_cycles;
              return false;
            }
            insert_store(e, cycle);
          }
          break;
        }
        case MemOpKind::FullFence:
          if (!can_retire_fence(MemOpKind::FullFence, config_.mode, sb_.empty())) {
            head_ordering_block_ = true;
            return false;
          }
          if (orq_.empty() || orq_.front() != e.seq)
            throw std::logic_error("ORQ out of sync at fence retirement");
          orq_.pop_front();
          break;
      }
      if (is_ordering(e.op.op)) {
        ++stats_.fences_retired;
        stats_.fence_residency_cycles += cycle - e.issue_cycle;
      }
      break;
  }
  if (e.lsq_slot) {
    lsq_slots_[*e.lsq_slot] = false;
    lsq_leaves_[*e.lsq_slot] = std::nullopt;
    --lsq_used_;
  }
  stats_.commit_hash = (stats_.commit_hash ^ e.trace_index) * 0x100000001b3ull;
  ++stats_.retired;
  log(cycle, "retire", e);
  rob_.pop_front();
  return true;
}

void Core::retire(Cycle cycle)
{
  head_ordering_block_ = false;
  for (std::uint32_t k = 0; k < config_.retire_width && !rob_.empty(); ++k)
    if (!retire_head(cycle))
      break;
}

void Core::complete_stores(Cycle cycle)
{
  for (auto& s : sb_)
    if (!s.completed)
      s.cache_ready = s.ready_cycle <= cycle;
  for (std::uint32_t w = 0; w < config_.sb_drain_width; ++w) {
    auto idx = select_store_to_complete(sb_, config_.mode);
    if (!idx)
      break;
    auto& s = sb_[*idx];
    s.completed = true;
    for (std::size_t j = 0; j < *idx; ++j)
      if (sb_[j].is_release) {
        ++stats_.early_completions;
        if (log_.enabled())
          log_.record(cycle, id_, "early_complete", "op" + std::to_string(s.trace_index));
        break;
      }
    s.ticket = memory_.write(id_, s.address, s.value, cycle).id;
    if (log_.enabled())
      log_.record(cycle, id_, "complete", "op" + std::to_string(s.trace_index));
  }
}

void Core::issue(Cycle cycle)
{
  if (cycle < start_)
    return;
  if (overflow_pending_) {
    if (!rob_.empty() || !sb_.empty()) {
      ++stats_.issue_stall_cycles;
      ++stats_.fence_stall_cycles;
      ++stats_.overflow_stall_cycles;
      return;
    }
    engine_.reset();
    overflow_pending_ = false;
    ++stats_.version_resets;
    if (log_.enabled())
      log_.record(cycle, id_, "version_reset", "");
  }

  std::uint32_t issued = 0, mem_ops = 0;
  bool stalled = false;
  while (issued < config_.fetch_width) {
    auto op = peek_fetch();
    if (!op)
      break;
    const bool access = op->kind == TraceKind::Mem && is_access(op->op);
    if (rob_.size() >= config_.rob_entries || (access && lsq_used_ >= config_.lsq_entries)) {
      stalled = true;
      break;
    }
    if (access && mem_ops >= config_.mem_ops_per_cycle)
      break;
    if (versioned() && op->kind == TraceKind::Mem && is_ordering(op->op) && engine_.would_overflow(1)) {
      overflow_pending_ = true;
      stalled = true;
      if (log_.enabled())
        log_.record(cycle, id_, "version_overflow", "");
      break;
    }

    RobEntry e;
    e.seq = next_seq_++;
    e.op = *op;
    e.wrong_path = on_wrong_path_;
    e.trace_index = on_wrong_path_ ? wrong_path_base_ - 1 : fetch_index_;
    e.vr_before = engine_.vr();
    e.lfvr_before = engine_.lfvr();
    e.issue_cycle = cycle;
    e.line = memory_.line_of(op->address);
    if (versioned() && op->kind == TraceKind::Mem)
      e.version = engine_.assign(op->op);
    if (access) {
      e.lsq_slot = allocate_slot(lsq_slots_);
      lsq_leaves_[*e.lsq_slot] = e.version;
      ++lsq_used_;
    }
    if (op->kind == TraceKind::Mem && (op->op == MemOpKind::LoadAcquire || op->op == MemOpKind::FullFence))
      orq_.push_back(e.seq);
    if (op->kind == TraceKind::Branch && versioned())
      engine_.checkpoint(e.seq);
    const bool mispredicted = op->kind == TraceKind::Branch && op->mispredict && !on_wrong_path_;
    advance_fetch();
    if (mispredicted) {
      on_wrong_path_ = true;
      wrong_path_base_ = fetch_index_;
      wrong_path_left_ = config_.wrong_path_ops;
      wrong_path_emitted_ = 0;
    }
    ++stats_.issued;
    log(cycle, "issue", e);
    rob_.push_back(std::move(e));
    ++issued;
    if (access)
      ++mem_ops;
  }
  if (issued == 0 && stalled) {
    ++stats_.issue_stall_cycles;
    if (head_ordering_block_ || overflow_pending_)
      ++stats_.fence_stall_cycles;
    if (overflow_pending_)
      ++stats_.overflow_stall_cycles;
  }
}

void Core::end_cycle(Cycle)
{
  if (config_.check_min_registers && versioned()) {
    ++stats_.min_register_checks;
    if (min_registers() != brute_force_min_registers())
      ++stats_.min_register_failures;
  }
}

bool Core::finished() const
{
  return fetch_index_ >= trace_.size() && !on_wrong_path_ && rob_.empty() && sb_.empty();
}

}  // namespace louvre
