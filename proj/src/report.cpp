#include "louvre/report.hpp"

#include <cstdio>
#include <sstream>

namespace louvre {
namespace {

std::string fixed(double v, int digits = 2)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width)
{
  if (s.size() < width)
    s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

nlohmann::ordered_json outcome_json(const Outcome& outcome, const Program& program)
{
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, v] : outcome.registers)
    j["T" + std::to_string(key.thread) + ":r" + std::to_string(key.reg)] = v;
  for (const auto& [loc, v] : outcome.memory)
    j[program.location_name(loc)] = v;
  return j;
}

nlohmann::ordered_json outcomes_json(const OutcomeSet& outcomes, const Program& program)
{
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& o : outcomes)
    a.push_back(outcome_json(o, program));
  return a;
}

nlohmann::ordered_json stats_json(const Stats& s)
{
  return {
    {"cycles", s.cycles},
    {"retired", s.retired},
    {"ipc", s.ipc()},
    {"fences_retired", s.fences_retired},
    {"mean_fence_residency", s.fences_retired ? nlohmann::ordered_json(s.mean_fence_residency()) : nullptr},
    {"fence_stall_cycles", s.fence_stall_cycles},
    {"issue_stall_cycles", s.issue_stall_cycles},
    {"sb_full_stall_cycles", s.sb_full_stall_cycles},
    {"overflow_stall_cycles", s.overflow_stall_cycles},
    {"stores_performed", s.stores_performed},
    {"mean_store_latency", s.stores_performed ? nlohmann::ordered_json(s.mean_store_latency()) : nullptr},
    {"early_completions", s.early_completions},
    {"write_combines", s.write_combines},
    {"loads_retired", s.loads_retired},
    {"loads_forwarded", s.loads_forwarded},
    {"invalidations_received", s.invalidations_received},
    {"squashes", s.squashes},
    {"avoided_squashes", s.avoided_squashes},
    {"squashed_instructions", s.squashed_instructions},
    {"branch_mispredicts", s.branch_mispredicts},
    {"version_resets", s.version_resets},
    {"min_register_checks", s.min_register_checks},
    {"min_register_failures", s.min_register_failures},
  };
}

nlohmann::ordered_json bench_json(const BenchReport& report)
{
  nlohmann::ordered_json j;
  j["workload"] = dump_workload(report.spec);
  j["config"] = dump_config(report.config);
  j["modes"] = nlohmann::ordered_json::array();
  for (const auto& m : report.modes) {
    nlohmann::ordered_json mj;
    mj["mode"] = to_string(m.mode);
    mj["mean_ipc"] = m.mean_ipc();
    mj["total"] = stats_json(m.total);
    mj["runs"] = nlohmann::ordered_json::array();
    for (const auto& r : m.runs)
      mj["runs"].push_back({{"seed", r.seed}, {"deadlock", r.deadlock}, {"stats", stats_json(r.stats)}});
    j["modes"].push_back(mj);
  }
  if (report.modes.size() == 2) {
    const auto& a = report.modes[0];
    const auto& b = report.modes[1];
    j["delta"] = {
      {"from", to_string(a.mode)},
      {"to", to_string(b.mode)},
      {"fence_residency", relative_change(a.mean_fence_residency(), b.mean_fence_residency())},
      {"fence_stall_cycles", relative_change(static_cast<double>(a.total.fence_stall_cycles),
                                             static_cast<double>(b.total.fence_stall_cycles))},
      {"store_latency", relative_change(a.mean_store_latency(), b.mean_store_latency())},
      {"ipc", relative_change(a.mean_ipc(), b.mean_ipc())},
    };
  }
  return j;
}

const std::vector<std::string> kBenchCsvColumns = {
  "mode",          "seed",           "cycles",           "retired",           "ipc",
  "fences",        "fence_residency", "fence_stall_cycles", "issue_stall_cycles", "sb_full_stall_cycles",
  "store_latency", "squashes",       "avoided_squashes", "early_completions", "version_resets",
  "deadlock"};

std::string bench_csv(const BenchReport& report)
{
  std::ostringstream os;
  for (std::size_t i = 0; i < kBenchCsvColumns.size(); ++i)
    os << (i ? "," : "") << kBenchCsvColumns[i];
  os << "\n";
  for (const auto& m : report.modes)
    for (const auto& r : m.runs) {
      const auto& s = r.stats;
      os << to_string(m.mode) << "," << r.seed << "," << s.cycles << "," << s.retired << "," << fixed(s.ipc(), 4)
         << "," << s.fences_retired << "," << fixed(s.mean_fence_residency()) << "," << s.fence_stall_cycles << ","
         << s.issue_stall_cycles << "," << s.sb_full_stall_cycles << "," << fixed(s.mean_store_latency()) << ","
         << s.squashes << "," << s.avoided_squashes << "," << s.early_completions << "," << s.version_resets << ","
         << (r.deadlock ? 1 : 0) << "\n";
    }
  return os.str();
}

std::string bench_table(const BenchReport& report)
{
  std::ostringstream os;
  os << "workload " << report.spec.name << ", " << report.spec.instructions << " instructions x "
     << report.spec.threads << " threads, " << (report.modes.empty() ? 0 : report.modes[0].runs.size())
     << " seeds\n";
  os << pad("mode", 10) << pad("ipc", 9) << pad("fence-res", 11) << pad("fence-stall", 13) << pad("store-lat", 11)
     << pad("squash", 9) << pad("avoided", 9) << pad("sb-full", 10) << pad("early", 8) << "resets\n";
  for (const auto& m : report.modes) {
    const auto& s = m.total;
    os << pad(std::string(to_string(m.mode)), 10) << pad(fixed(m.mean_ipc(), 3), 9)
       << pad(s.fences_retired ? fixed(s.mean_fence_residency(), 1) : "-", 11)
       << pad(std::to_string(s.fence_stall_cycles), 13) << pad(fixed(s.mean_store_latency(), 1), 11)
       << pad(std::to_string(s.squashes), 9) << pad(std::to_string(s.avoided_squashes), 9)
       << pad(std::to_string(s.sb_full_stall_cycles), 10) << pad(std::to_string(s.early_completions), 8)
       << s.version_resets << "\n";
  }
  if (report.modes.size() == 2) {
    const auto& a = report.modes[0];
    const auto& b = report.modes[1];
    os << "delta " << to_string(b.mode) << " vs " << to_string(a.mode) << ": residency "
       << fixed(100 * relative_change(a.mean_fence_residency(), b.mean_fence_residency()), 1) << "%, fence stalls "
       << fixed(100 * relative_change(static_cast<double>(a.total.fence_stall_cycles),
                                      static_cast<double>(b.total.fence_stall_cycles)),
                1)
       << "%, store latency " << fixed(100 * relative_change(a.mean_store_latency(), b.mean_store_latency()), 1)
       << "%, ipc " << fixed(100 * relative_change(a.mean_ipc(), b.mean_ipc()), 1) << "%\n";
  }
  return os.str();
}

nlohmann::ordered_json litmus_json(const std::vector<LitmusReport>& reports)
{
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["path"] = r.path;
    j["verdict"] = to_string(r.verdict);
    j["oracle_checked"] = r.oracle_checked;
    j["oracle"] = outcomes_json(r.oracle, r.test.program);
    nlohmann::ordered_json obs = nlohmann::ordered_json::array();
    for (const auto& [o, n] : r.observed)
      obs.push_back({{"outcome", outcome_json(o, r.test.program)}, {"count", n}});
    j["observed"] = obs;
    j["forbidden_hits"] = r.forbidden_hits;
    j["deadlocks"] = r.deadlocks;
    j["notes"] = r.notes;
    a.push_back(j);
  }
  return a;
}

std::string litmus_table(const std::vector<LitmusReport>& reports)
{
  std::ostringstream os;
  os << pad("test", 24) << pad("verdict", 30) << pad("observed", 10) << pad("oracle", 8) << "forbidden-hits\n";
  for (const auto& r : reports) {
    os << pad(r.name, 24) << pad(std::string(to_string(r.verdict)), 30) << pad(std::to_string(r.observed.size()), 10)
       << pad(r.oracle_checked ? std::to_string(r.oracle.size()) : "-", 8) << r.forbidden_hits << "\n";
    for (const auto& [o, n] : r.observed)
      os << "    " << n << "x " << to_string(o, r.test.program) << "\n";
    for (const auto& note : r.notes)
      os << "    note: " << note << "\n";
    for (const auto& o : r.outside_oracle)
      os << "    outside oracle: " << to_string(o, r.test.program) << "\n";
  }
  return os.str();
}

nlohmann::ordered_json equivalence_json(const EquivalenceSummary& s)
{
  nlohmann::ordered_json j;
  j["programs"] = s.programs;
  j["strict"] = {{"equal", s.equal_strict}, {"unequal", s.unequal_strict}};
  j["relaxed"] = {{"equal", s.equal_relaxed}, {"unequal", s.unequal_relaxed}};
  j["monotonicity_violations"] = s.monotonicity_violations;
  j["divergences"] = nlohmann::ordered_json::array();
  for (const auto& d : s.divergences) {
    LitmusTest t = parse_litmus(d.reproducer);
    j["divergences"].push_back({{"name", d.name},
                                {"strict_fence_order", d.strict_fence_order},
                                {"program", d.reproducer},
                                {"rcsc_only", outcomes_json(d.report.rcsc_only, t.program)},
                                {"vsr_only", outcomes_json(d.report.vsr_only, t.program)}});
  }
  return j;
}

std::string equivalence_text(const EquivalenceSummary& s)
{
  std::ostringstream os;
  os << "programs: " << s.programs << "\n";
  os << "strict_fence_order=on:  equal " << s.equal_strict << ", unequal " << s.unequal_strict << "\n";
  os << "strict_fence_order=off: equal " << s.equal_relaxed << ", unequal " << s.unequal_relaxed << "\n";
  os << "strict subset of relaxed violated: " << s.monotonicity_violations << "\n";
  for (const auto& d : s.divergences) {
    LitmusTest t = parse_litmus(d.reproducer);
    os << "--- divergence (" << d.name << ", strict_fence_order=" << (d.strict_fence_order ? "on" : "off") << ")\n"
       << d.reproducer;
    for (const auto& o : d.report.rcsc_only)
      os << "  rcsc only: " << to_string(o, t.program) << "\n";
    for (const auto& o : d.report.vsr_only)
      os << "  vsr only:  " << to_string(o, t.program) << "\n";
  }
  return os.str();
}

}  // namespace louvre
