#include "louvre/random_program.hpp"

#include <stdexcept>

namespace louvre {

Program random_program(const RandomProgramOptions& o, std::mt19937_64& rng)
{
  if (o.min_threads == 0 || o.min_threads > o.max_threads || o.max_threads > kMaxThreads)
    throw std::invalid_argument("thread bounds must satisfy 1 <= min <= max <= 8");
  if (o.min_ops > o.max_ops || o.locations == 0)
    throw std::invalid_argument("invalid op or location bounds");
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };

  Program p;
  p.name = "random";
  for (std::uint32_t l = 0; l < o.locations; ++l)
    p.initial_memory[p.intern(std::string(1, static_cast<char>('A' + l % 26)) + (l >= 26 ? std::to_string(l) : ""))] =
      0;
  const std::uint32_t threads = pick(o.min_threads, o.max_threads);
  Value next_value = 1;
  p.threads.resize(threads);
  for (std::uint32_t t = 0; t < threads; ++t) {
    std::vector<Instruction> body;
    const std::uint32_t ops = pick(o.min_ops, o.max_ops);
    RegisterId reg = 0;
    for (std::uint32_t k = 0; k < ops; ++k) {
      Instruction i;
      i.address = static_cast<Location>(pick(0, o.locations - 1));
      if (pick(0, 1)) {
        i.kind = MemOpKind::Store;
        i.value = next_value++;
      } else {
        i.kind = MemOpKind::Load;
        i.dest = reg++;
      }
      body.push_back(i);
    }
    const std::uint32_t fences = o.max_fences ? pick(0, o.max_fences) : 0;
    for (std::uint32_t f = 0; f < fences; ++f) {
      const auto kind = pick(0, 2);
      std::vector<std::size_t> candidates;
      for (std::size_t k = 0; k < body.size(); ++k)
        if ((kind == 0 && body[k].kind == MemOpKind::Load) || (kind == 1 && body[k].kind == MemOpKind::Store))
          candidates.push_back(k);
      if (kind != 2 && !candidates.empty()) {
        auto& target = body[candidates[pick(0, static_cast<std::uint32_t>(candidates.size() - 1))]];
        target.kind = kind == 0 ? MemOpKind::LoadAcquire : MemOpKind::StoreRelease;
      } else {
        Instruction fence;
        fence.kind = MemOpKind::FullFence;
        body.insert(body.begin() + pick(0, static_cast<std::uint32_t>(body.size())), fence);
      }
    }
    for (std::size_t k = 0; k < body.size(); ++k) {
      body[k].thread = t;
      body[k].po_index = static_cast<std::uint32_t>(k);
    }
    p.threads[t] = std::move(body);
  }
  return p;
}

std::vector<Program> random_corpus(std::size_t count, const RandomProgramOptions& options, std::uint64_t seed)
{
  std::vector<Program> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + i);
    auto p = random_program(options, rng);
    p.name = "random-" + std::to_string(seed) + "-" + std::to_string(i);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace louvre
