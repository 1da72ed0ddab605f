#include "louvre/litmus_runner.hpp"

#include <algorithm>
#include <random>

#include "louvre/parallel.hpp"

namespace louvre {

std::uint64_t repeat_seed(std::uint64_t seed, std::uint64_t k)
{
  // splitmix64
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

PerturbedRun perturb(const Program& program, const SimConfig& base, const PerturbOptions& options, std::uint64_t seed)
{
  PerturbedRun run;
  run.config = base;
  run.config.seed = seed;
  run.config.memory.jitter = options.jitter;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> skew(0, options.max_skew);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t t = 0; t < program.threads.size(); ++t)
    run.start_cycles.push_back(skew(rng));
  Program p = program;
  normalize(p);
  for (std::size_t t = 0; t < program.threads.size(); ++t)
    for (const auto& [loc, v] : p.initial_memory)
      if (u(rng) < options.warm_probability)
        run.warm.push_back({static_cast<CoreId>(t), loc, false});
  return run;
}

std::string_view to_string(Verdict v)
{
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::ForbiddenObserved: return "forbidden-observed";
    case Verdict::OutsideOracle: return "outside-oracle";
    case Verdict::SpecConflict: return "test-specification conflict";
    case Verdict::Deadlock: return "deadlock";
    case Verdict::Skipped: return "skipped";
    case Verdict::ParseError: return "parse-error";
  }
  return "?";
}

bool verdict_ok(Verdict v) { return v == Verdict::Pass || v == Verdict::Skipped; }

LitmusReport run_litmus_test(const LitmusTest& test, const LitmusRunOptions& options)
{
  LitmusReport r;
  r.name = test.program.name;
  r.test = test;
  try {
    r.oracle = enumerate_outcomes(test.program, Semantics::RCSC, options.oracle);
    r.oracle_checked = true;
  } catch (const OracleBoundExceeded& e) {
    r.notes.push_back(std::string("oracle skipped: ") + e.what());
  }
  if (r.oracle_checked) {
    for (const auto& f : test.forbidden)
      for (const auto& o : r.oracle)
        if (f.matches(o)) {
          r.verdict = Verdict::SpecConflict;
          r.notes.push_back("forbidden predicate " + format_predicate(f, test.program) +
                            " is allowed by the oracle: " + to_string(o, test.program));
          return r;
        }
    for (const auto& a : test.allowed)
      if (std::none_of(r.oracle.begin(), r.oracle.end(), [&](const Outcome& o) { return a.matches(o); })) {
        r.verdict = Verdict::SpecConflict;
        r.notes.push_back("allowed predicate " + format_predicate(a, test.program) + " has no oracle outcome");
        return r;
      }
  }

  struct One
  {
    Outcome outcome;
    Stats stats;
    bool deadlock = false;
  };
  auto runs = parallel_map(options.repeats, options.jobs, [&](std::size_t k) {
    const auto p = perturb(test.program, options.config, options.perturb, repeat_seed(options.seed, k));
    auto res = simulate(test.program, p.config, p.start_cycles, p.warm);
    return One{std::move(res.outcome), res.total, res.deadlock};
  });
  for (auto& one : runs) {
    if (one.deadlock) {
      ++r.deadlocks;
      continue;
    }
    r.stats += one.stats;
    ++r.observed[one.outcome];
  }
  for (const auto& [o, n] : r.observed) {
    for (const auto& f : test.forbidden)
      if (f.matches(o)) {
        r.forbidden_hits += n;
        break;
      }
    if (r.oracle_checked && !r.oracle.contains(o))
      r.outside_oracle.push_back(o);
  }
  if (r.deadlocks)
    r.verdict = Verdict::Deadlock;
  else if (r.forbidden_hits)
    r.verdict = Verdict::ForbiddenObserved;
  else if (!r.outside_oracle.empty())
    r.verdict = Verdict::OutsideOracle;
  else if (!r.oracle_checked)
    r.verdict = Verdict::Skipped;
  return r;
}

LitmusReport run_litmus_file(const std::filesystem::path& path, const LitmusRunOptions& options)
{
  LitmusReport r;
  try {
    auto test = load_litmus(path);
    r = run_litmus_test(test, options);
  } catch (const ParseError& e) {
    r.name = path.stem().string();
    r.verdict = Verdict::ParseError;
    r.notes.push_back(e.what());
  }
  r.path = path.string();
  if (r.name.empty())
    r.name = path.stem().string();
  return r;
}

std::vector<LitmusReport> run_litmus_dir(const std::filesystem::path& dir, const LitmusRunOptions& options)
{
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_regular_file(dir)) {
    files.push_back(dir);
  } else {
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".litmus")
        files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LitmusReport> out;
  for (const auto& f : files)
    out.push_back(run_litmus_file(f, options));
  return out;
}

}  // namespace louvre
