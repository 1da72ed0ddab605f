#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "louvre/benchmark.hpp"
#include "louvre/config.hpp"
#include "louvre/equivalence.hpp"
#include "louvre/litmus.hpp"
#include "louvre/litmus_runner.hpp"
#include "louvre/oracle.hpp"
#include "louvre/report.hpp"
#include "louvre/system.hpp"

using namespace louvre;

namespace {

bool parse_on_off(const std::string& s)
{
  if (s == "on")
    return true;
  if (s == "off")
    return false;
  throw CLI::ValidationError("expected on or off, got " + s);
}

SimConfig base_config(const std::string& path, const std::vector<std::string>& sets)
{
  SimConfig c = path.empty() ? SimConfig{} : load_config(path);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value");
    apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  c.check();
  return c;
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<Mode> parse_modes(const std::string& text)
{
  std::vector<Mode> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_mode(item));
  return out;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Cycle-level multicore pipeline simulator with baseline and versioned fence handling"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  unsigned jobs = 1;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--set", sets, "override one config key (key=value), repeatable");
  app.add_option("--jobs", jobs, "worker threads (0 = all hardware threads)");

  // litmus
  auto* litmus = app.add_subcommand("litmus", "run a directory (or file) of litmus tests");
  std::string litmus_dir, litmus_mode = "louvre", litmus_json_path;
  std::uint64_t repeats = 1000, seed = 1;
  litmus->add_option("dir", litmus_dir, "directory of .litmus files or one file")->required();
  litmus->add_option("--mode", litmus_mode, "baseline, louvre or both");
  litmus->add_option("--repeats", repeats, "perturbed runs per test");
  litmus->add_option("--seed", seed, "base seed");
  litmus->add_option("--json", litmus_json_path, "write the report as JSON");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "enumerate the outcomes a litmus program allows");
  std::string oracle_file, semantics = "rcsc", oracle_strict = "on";
  std::size_t max_accesses = 16;
  oracle->add_option("file", oracle_file)->required();
  oracle->add_option("--semantics", semantics, "rcsc or vsr");
  oracle->add_option("--strict-fence-order", oracle_strict, "on or off");
  oracle->add_option("--max-accesses", max_accesses, "enumeration bound");

  // equiv
  auto* equiv = app.add_subcommand("equiv", "compare both oracles on a random corpus");
  EquivalenceOptions eq;
  std::uint32_t min_threads = 0;
  std::string equiv_json;
  equiv->add_option("--count", eq.count);
  equiv->add_option("--threads", eq.program.max_threads, "maximum threads per program");
  equiv->add_option("--min-threads", min_threads, "minimum threads (default: --threads)");
  equiv->add_option("--ops", eq.program.max_ops, "maximum memory accesses per thread");
  equiv->add_option("--fences", eq.program.max_fences, "maximum ordering instructions per thread");
  equiv->add_option("--locations", eq.program.locations);
  equiv->add_option("--seed", eq.seed);
  equiv->add_option("--max-accesses", eq.max_accesses);
  equiv->add_option("--json", equiv_json);

  // bench
  auto* bench = app.add_subcommand("bench", "run a synthetic workload in each mode");
  std::string spec_path, modes_text = "baseline,louvre", out_json, out_csv;
  std::uint64_t seeds = 1, first_seed = 1;
  std::uint64_t instructions = 0;
  bench->add_option("--spec", spec_path, "workload spec file")->required();
  bench->add_option("--modes", modes_text);
  bench->add_option("--seeds", seeds, "number of seeds");
  bench->add_option("--first-seed", first_seed);
  bench->add_option("--instructions", instructions, "override the workload instruction count");
  bench->add_option("--out", out_json, "JSON report path");
  bench->add_option("--csv", out_csv, "CSV report path");

  // run
  auto* run = app.add_subcommand("run", "simulate one litmus program once");
  std::string run_file, run_mode = "louvre", events_path;
  std::uint64_t run_seed = 1;
  run->add_option("file", run_file)->required();
  run->add_option("--mode", run_mode);
  run->add_option("--seed", run_seed);
  run->add_option("--events", events_path, "write the cycle,core,event,detail log");

  auto* show = app.add_subcommand("config", "print every config key with its effective value");

  CLI11_PARSE(app, argc, argv);

  try {
    SimConfig config = base_config(config_path, sets);

    if (*show) {
      std::cout << dump_config(config);
      return 0;
    }

    if (*litmus) {
      std::vector<Mode> modes =
        litmus_mode == "both" ? std::vector<Mode>{Mode::Baseline, Mode::Louvre} : parse_modes(litmus_mode);
      bool ok = true;
      nlohmann::ordered_json all = nlohmann::ordered_json::object();
      for (Mode m : modes) {
        LitmusRunOptions o;
        o.config = config;
        o.config.mode = m;
        o.repeats = repeats;
        o.seed = seed;
        o.jobs = jobs;
        auto reports = run_litmus_dir(litmus_dir, o);
        std::cout << "== mode " << to_string(m) << ", " << repeats << " repeats\n" << litmus_table(reports);
        for (const auto& r : reports)
          ok = ok && verdict_ok(r.verdict);
        all[std::string(to_string(m))] = litmus_json(reports);
      }
      if (!litmus_json_path.empty())
        write_file(litmus_json_path, all.dump(2) + "\n");
      std::cout << (ok ? "all verdicts pass\n" : "FAILED verdicts present\n");
      return ok ? 0 : 1;
    }

    if (*oracle) {
      auto test = load_litmus(oracle_file);
      Semantics sem = semantics == "rcsc" ? Semantics::RCSC
                      : semantics == "vsr" ? Semantics::VSR
                                           : throw std::invalid_argument("semantics must be rcsc or vsr");
      OracleOptions opts{parse_on_off(oracle_strict), max_accesses};
      auto set = enumerate_outcomes(test.program, sem, opts);
      std::cout << outcomes_json(set, test.program).dump(2) << "\n";
      return 0;
    }

    if (*equiv) {
      eq.program.min_threads = min_threads ? min_threads : eq.program.max_threads;
      eq.jobs = jobs;
      auto summary = run_equivalence_corpus(eq);
      std::cout << equivalence_text(summary);
      if (!equiv_json.empty())
        write_file(equiv_json, equivalence_json(summary).dump(2) + "\n");
      return summary.unequal_strict == 0 ? 0 : 1;
    }

    if (*bench) {
      BenchOptions o;
      o.spec = load_workload(spec_path);
      if (instructions)
        o.spec.instructions = instructions;
      o.modes = parse_modes(modes_text);
      o.seeds.clear();
      for (std::uint64_t s = 0; s < seeds; ++s)
        o.seeds.push_back(first_seed + s);
      o.config = config;
      o.jobs = jobs;
      auto report = run_benchmark(o);
      std::cout << bench_table(report);
      if (!out_json.empty())
        write_file(out_json, bench_json(report).dump(2) + "\n");
      if (!out_csv.empty())
        write_file(out_csv, bench_csv(report));
      for (const auto& m : report.modes)
        if (m.any_deadlock())
          return 1;
      return 0;
    }

    if (*run) {
      auto test = load_litmus(run_file);
      config.mode = parse_mode(run_mode);
      config.seed = run_seed;
      config.record_events = !events_path.empty();
      auto res = simulate(test.program, config);
      std::cout << "outcome: " << to_string(res.outcome, test.program) << "\n"
                << "cycles: " << res.cycles << (res.deadlock ? " (deadlock)" : "") << "\n"
                << stats_json(res.total).dump(2) << "\n";
      if (!events_path.empty())
        write_file(events_path, res.log.to_csv());
      bool forbidden = false;
      for (const auto& f : test.forbidden)
        forbidden = forbidden || f.matches(res.outcome);
      return res.deadlock || forbidden ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
