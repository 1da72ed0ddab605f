#include "louvre/workload.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace louvre {
namespace {

constexpr Location kHotBase = 1u << 20;
constexpr Location kRegion = 1u << 20;
constexpr Location kColdBase = 1u << 24;
constexpr Location kColdRegion = 1u << 22;

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view v)
{
  try {
    std::size_t used = 0;
    std::string s(v);
    double d = std::stod(s, &used);
    if (used != s.size())
      throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid number '" + std::string(v) + "' for " + std::string(key));
  }
}

template <typename T>
T to_uint(std::string_view key, std::string_view v)
{
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("invalid integer '" + std::string(v) + "' for " + std::string(key));
  return out;
}

void apply(SyntheticWorkloadSpec& s, std::string_view key, std::string_view v)
{
  if (key == "name")
    s.name = std::string(v);
  else if (key == "load_fraction")
    s.load_fraction = to_double(key, v);
  else if (key == "store_fraction")
    s.store_fraction = to_double(key, v);
  else if (key == "alu_fraction")
    s.alu_fraction = to_double(key, v);
  else if (key == "branch_fraction")
    s.branch_fraction = to_double(key, v);
  else if (key == "fences_per_mem_op")
    s.fences_per_mem_op = to_double(key, v);
  else if (key == "fence_mix") {
    // ldar:stlr:full
    auto a = v.find(':');
    auto b = a == std::string_view::npos ? a : v.find(':', a + 1);
    if (b == std::string_view::npos)
      throw std::invalid_argument("fence_mix must be LDAR:STLR:FULL");
    s.fence_mix = {to_double(key, v.substr(0, a)), to_double(key, v.substr(a + 1, b - a - 1)),
                   to_double(key, v.substr(b + 1))};
  } else if (key == "miss_rate")
    s.miss_rate = to_double(key, v);
  else if (key == "mispredict_rate")
    s.mispredict_rate = to_double(key, v);
  else if (key == "instructions")
    s.instructions = to_uint<std::uint64_t>(key, v);
  else if (key == "threads")
    s.threads = to_uint<std::uint32_t>(key, v);
  else if (key == "hot_lines")
    s.hot_lines = to_uint<std::uint32_t>(key, v);
  else if (key == "cold_lines")
    s.cold_lines = to_uint<std::uint32_t>(key, v);
  else if (key == "shared_fraction")
    s.shared_fraction = to_double(key, v);
  else if (key == "shared_lines")
    s.shared_lines = to_uint<std::uint32_t>(key, v);
  else if (key == "seed")
    s.seed = to_uint<std::uint64_t>(key, v);
  else
    throw std::invalid_argument("unknown workload key '" + std::string(key) + "'");
}

}  // namespace

void SyntheticWorkloadSpec::check() const
{
  auto rate = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  };
  rate(load_fraction, "load_fraction");
  rate(store_fraction, "store_fraction");
  rate(alu_fraction, "alu_fraction");
  rate(branch_fraction, "branch_fraction");
  rate(miss_rate, "miss_rate");
  rate(mispredict_rate, "mispredict_rate");
  rate(shared_fraction, "shared_fraction");
  if (std::abs(load_fraction + store_fraction + alu_fraction + branch_fraction - 1.0) > 1e-9)
    throw std::invalid_argument("instruction class fractions must sum to 1");
  if (fences_per_mem_op < 0.0 || fences_per_mem_op > 1.0)
    throw std::invalid_argument("fences_per_mem_op must lie in [0, 1]");
  if (fence_mix.ldar < 0 || fence_mix.stlr < 0 || fence_mix.full < 0 ||
      fence_mix.ldar + fence_mix.stlr + fence_mix.full <= 0)
    throw std::invalid_argument("fence_mix weights must be non-negative and not all zero");
  if (threads == 0 || threads > kMaxThreads)
    throw std::invalid_argument("threads must be in [1, 8]");
  if (hot_lines >= kRegion || cold_lines >= kColdRegion)
    throw std::invalid_argument("address pool too large");
  if (shared_fraction > 0 && shared_lines == 0)
    throw std::invalid_argument("shared_lines must be positive when shared_fraction > 0");
}

SyntheticWorkloadSpec parse_workload(const std::string& text)
{
  SyntheticWorkloadSpec s;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view v = raw;
    if (auto hash = v.find('#'); hash != std::string_view::npos)
      v = v.substr(0, hash);
    v = trim(v);
    if (v.empty())
      continue;
    auto eq = v.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("line " + std::to_string(line) + ": expected key=value");
    try {
      apply(s, trim(v.substr(0, eq)), trim(v.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line) + ": " + e.what());
    }
  }
  s.check();
  return s;
}

SyntheticWorkloadSpec load_workload(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workload(ss.str());
}

std::string dump_workload(const SyntheticWorkloadSpec& s)
{
  std::ostringstream os;
  os << "name=" << s.name << "\nload_fraction=" << s.load_fraction << "\nstore_fraction=" << s.store_fraction
     << "\nalu_fraction=" << s.alu_fraction << "\nbranch_fraction=" << s.branch_fraction
     << "\nfences_per_mem_op=" << s.fences_per_mem_op << "\nfence_mix=" << s.fence_mix.ldar << ":"
     << s.fence_mix.stlr << ":" << s.fence_mix.full << "\nmiss_rate=" << s.miss_rate
     << "\nmispredict_rate=" << s.mispredict_rate << "\ninstructions=" << s.instructions
     << "\nthreads=" << s.threads << "\nhot_lines=" << s.hot_lines << "\ncold_lines=" << s.cold_lines
     << "\nshared_fraction=" << s.shared_fraction << "\nshared_lines=" << s.shared_lines << "\nseed=" << s.seed
     << "\n";
  return os.str();
}

std::vector<Trace> generate_traces(const SyntheticWorkloadSpec& spec, const MemoryConfig& memory)
{
  spec.check();
  const std::uint32_t l1_lines = memory.l1_kb * 1024 / memory.line_bytes;
  const std::uint64_t l3_lines = std::uint64_t{memory.l3_mb} * 1024 * 1024 / memory.line_bytes;
  const std::uint32_t hot = spec.hot_lines ? spec.hot_lines : std::max<std::uint32_t>(1, l1_lines / 4);
  const std::uint32_t cold =
    spec.cold_lines ? spec.cold_lines : static_cast<std::uint32_t>(std::min<std::uint64_t>(4 * l3_lines, kColdRegion - 1));

  std::vector<Trace> out;
  for (std::uint32_t t = 0; t < spec.threads; ++t) {
    std::mt19937_64 rng(spec.seed * 0x9e3779b97f4a7c15ull + t + 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::discrete_distribution<int> fence_kind({spec.fence_mix.ldar, spec.fence_mix.stlr, spec.fence_mix.full});
    auto pick_address = [&]() -> Location {
      const double r = u(rng);
      if (r < spec.shared_fraction)
        return static_cast<Location>(rng() % spec.shared_lines);
      if (u(rng) < spec.miss_rate)
        return kColdBase + t * kColdRegion + static_cast<Location>(rng() % cold);
      return kHotBase + t * kRegion + static_cast<Location>(rng() % hot);
    };
    Trace trace;
    trace.reserve(spec.instructions);
    Value next_value = 1;
    RegisterId next_reg = 0;
    while (trace.size() < spec.instructions) {
      const double r = u(rng);
      TraceOp op;
      bool mem = false;
      if (r < spec.load_fraction) {
        op.op = MemOpKind::Load;
        op.address = pick_address();
        op.dest = next_reg++ % 32;
        mem = true;
      } else if (r < spec.load_fraction + spec.store_fraction) {
        op.op = MemOpKind::Store;
        op.address = pick_address();
        op.value = next_value++;
        mem = true;
      } else if (r < spec.load_fraction + spec.store_fraction + spec.alu_fraction) {
        op.kind = TraceKind::Alu;
      } else {
        op.kind = TraceKind::Branch;
        op.mispredict = u(rng) < spec.mispredict_rate;
      }
      trace.push_back(op);
      if (mem && trace.size() < spec.instructions && u(rng) < spec.fences_per_mem_op) {
        TraceOp f;
        switch (fence_kind(rng)) {
          case 0:
            f.op = MemOpKind::LoadAcquire;
            f.address = pick_address();
            f.dest = next_reg++ % 32;
            break;
          case 1:
            f.op = MemOpKind::StoreRelease;
            f.address = pick_address();
            f.value = next_value++;
            break;
          default: f.op = MemOpKind::FullFence; break;
        }
        trace.push_back(f);
      }
    }
    out.push_back(std::move(trace));
  }
  return out;
}

}  // namespace louvre
