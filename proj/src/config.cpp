#include "louvre/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace louvre {
namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text)
{
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("invalid value '" + std::string(text) + "' for " + std::string(key));
  return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
  if (text == "on" || text == "true" || text == "1" || text == "yes")
    return true;
  if (text == "off" || text == "false" || text == "0" || text == "no")
    return false;
  throw std::invalid_argument("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

std::string on_off(bool b) { return b ? "on" : "off"; }

using Setter = std::function<void(SimConfig&, std::string_view, std::string_view)>;
using Getter = std::function<std::string(const SimConfig&)>;

struct Field
{
  Setter set;
  Getter get;
};

template <typename T, typename Member>
Field number_field(Member member)
{
  return {[member](SimConfig& c, std::string_view k, std::string_view v) { c.*member = parse_number<T>(k, v); },
          [member](const SimConfig& c) { return std::to_string(c.*member); }};
}

template <typename T, typename Member>
Field memory_field(Member member)
{
  return {[member](SimConfig& c, std::string_view k, std::string_view v) { c.memory.*member = parse_number<T>(k, v); },
          [member](const SimConfig& c) { return std::to_string(c.memory.*member); }};
}

template <typename Member>
Field bool_field(Member member)
{
  return {[member](SimConfig& c, std::string_view k, std::string_view v) { c.*member = parse_bool(k, v); },
          [member](const SimConfig& c) { return on_off(c.*member); }};
}

const std::map<std::string, Field, std::less<>>& fields()
{
  static const std::map<std::string, Field, std::less<>> table = {
    {"mode", {[](SimConfig& c, std::string_view, std::string_view v) { c.mode = parse_mode(v); },
              [](const SimConfig& c) { return std::string(to_string(c.mode)); }}},
    {"rob_entries", number_field<std::uint32_t>(&SimConfig::rob_entries)},
    {"lsq_entries", number_field<std::uint32_t>(&SimConfig::lsq_entries)},
    {"sb_entries", number_field<std::uint32_t>(&SimConfig::sb_entries)},
    {"retire_width", number_field<std::uint32_t>(&SimConfig::retire_width)},
    {"fetch_width", number_field<std::uint32_t>(&SimConfig::fetch_width)},
    {"mem_ops_per_cycle", number_field<std::uint32_t>(&SimConfig::mem_ops_per_cycle)},
    {"sb_drain_width", number_field<std::uint32_t>(&SimConfig::sb_drain_width)},
    {"version_bits", number_field<unsigned>(&SimConfig::version_bits)},
    {"strict_fence_order", bool_field(&SimConfig::strict_fence_order)},
    {"write_combining", bool_field(&SimConfig::write_combining)},
    {"seed", number_field<std::uint64_t>(&SimConfig::seed)},
    {"branch_latency", number_field<std::uint32_t>(&SimConfig::branch_latency)},
    {"wrong_path_ops", number_field<std::uint32_t>(&SimConfig::wrong_path_ops)},
    {"check_min_registers", bool_field(&SimConfig::check_min_registers)},
    {"record_events", bool_field(&SimConfig::record_events)},
    {"max_cycles", number_field<Cycle>(&SimConfig::max_cycles)},
    {"l1_lat", memory_field<std::uint32_t>(&MemoryConfig::l1_lat)},
    {"l2_lat", memory_field<std::uint32_t>(&MemoryConfig::l2_lat)},
    {"l3_lat", memory_field<std::uint32_t>(&MemoryConfig::l3_lat)},
    {"mem_lat", memory_field<std::uint32_t>(&MemoryConfig::mem_lat)},
    {"inv_delay", memory_field<std::uint32_t>(&MemoryConfig::inv_delay)},
    {"l1_kb", memory_field<std::uint32_t>(&MemoryConfig::l1_kb)},
    {"l2_kb", memory_field<std::uint32_t>(&MemoryConfig::l2_kb)},
    {"l3_mb", memory_field<std::uint32_t>(&MemoryConfig::l3_mb)},
    {"jitter", memory_field<std::uint32_t>(&MemoryConfig::jitter)},
    // false_sharing=3:1,4:1 maps location 3 and 4 onto line 1
    {"false_sharing",
     {[](SimConfig& c, std::string_view k, std::string_view v) {
        c.memory.false_sharing_map.clear();
        while (!v.empty()) {
          auto comma = v.find(',');
          auto item = trim(v.substr(0, comma));
          auto colon = item.find(':');
          if (colon == std::string_view::npos)
            throw std::invalid_argument("false_sharing entries must be LOC:LINE");
          c.memory.false_sharing_map[parse_number<Location>(k, item.substr(0, colon))] =
            parse_number<Location>(k, item.substr(colon + 1));
          if (comma == std::string_view::npos)
            break;
          v = v.substr(comma + 1);
        }
      },
      [](const SimConfig& c) {
        std::string out;
        for (const auto& [loc, line] : c.memory.false_sharing_map)
          out += (out.empty() ? "" : ",") + std::to_string(loc) + ":" + std::to_string(line);
        return out;
      }}},
  };
  return table;
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::Baseline ? "baseline" : "louvre"; }

Mode parse_mode(std::string_view text)
{
  if (text == "baseline")
    return Mode::Baseline;
  if (text == "louvre")
    return Mode::Louvre;
  throw std::invalid_argument("mode must be baseline or louvre, got '" + std::string(text) + "'");
}

void SimConfig::check() const
{
  auto positive = [](std::uint64_t v, const char* name) {
    if (v == 0)
      throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(rob_entries, "rob_entries");
  positive(lsq_entries, "lsq_entries");
  positive(sb_entries, "sb_entries");
  positive(retire_width, "retire_width");
  positive(fetch_width, "fetch_width");
  positive(mem_ops_per_cycle, "mem_ops_per_cycle");
  positive(sb_drain_width, "sb_drain_width");
  positive(branch_latency, "branch_latency");
  if (version_bits == 0 || version_bits > kMaxVersionBits)
    throw std::invalid_argument("version_bits must be in [1, 31]");
  memory.check();
}

void apply_setting(SimConfig& config, std::string_view key, std::string_view value)
{
  auto it = fields().find(key);
  if (it == fields().end())
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  it->second.set(config, key, trim(value));
}

SimConfig parse_config(const std::string& text, SimConfig base)
{
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (auto hash = s.find('#'); hash != std::string_view::npos)
      s = s.substr(0, hash);
    s = trim(s);
    if (s.empty())
      continue;
    auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("line " + std::to_string(line) + ": expected key=value");
    try {
      apply_setting(base, trim(s.substr(0, eq)), s.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line) + ": " + e.what());
    }
  }
  base.check();
  return base;
}

SimConfig load_config(const std::filesystem::path& path, SimConfig base)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string dump_config(const SimConfig& config)
{
  std::string out;
  for (const auto& [key, field] : fields())
    out += key + "=" + field.get(config) + "\n";
  return out;
}

}  // namespace louvre
