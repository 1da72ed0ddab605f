#include "louvre/benchmark.hpp"

#include <stdexcept>

#include "louvre/parallel.hpp"
#include "louvre/system.hpp"

namespace louvre {

double ModeReport::mean_ipc() const
{
  if (runs.empty())
    return 0.0;
  double sum = 0;
  for (const auto& r : runs)
    sum += r.stats.ipc();
  return sum / static_cast<double>(runs.size());
}

bool ModeReport::any_deadlock() const
{
  for (const auto& r : runs)
    if (r.deadlock)
      return true;
  return false;
}

const ModeReport& BenchReport::mode(Mode m) const
{
  for (const auto& r : modes)
    if (r.mode == m)
      return r;
  throw std::out_of_range("mode not part of this benchmark");
}

double relative_change(double before, double after) { return before == 0.0 ? 0.0 : (after - before) / before; }

BenchReport run_benchmark(const BenchOptions& options)
{
  options.spec.check();
  BenchReport report;
  report.spec = options.spec;
  report.config = options.config;

  const std::size_t n_seeds = options.seeds.size();
  const std::size_t jobs = options.modes.size() * n_seeds;
  auto runs = parallel_map(jobs, options.jobs, [&](std::size_t k) {
    const Mode mode = options.modes[k / n_seeds];
    const std::uint64_t seed = options.seeds[k % n_seeds];
    SyntheticWorkloadSpec spec = options.spec;
    spec.seed = seed;
    SimConfig config = options.config;
    config.mode = mode;
    config.seed = seed;
    SystemSetup setup;
    setup.traces = generate_traces(spec, config.memory);
    System sys(std::move(setup), config);
    auto res = sys.run();
    return SeedRun{seed, res.total, res.deadlock};
  });
  for (std::size_t m = 0; m < options.modes.size(); ++m) {
    ModeReport mr;
    mr.mode = options.modes[m];
    for (std::size_t s = 0; s < n_seeds; ++s) {
      const auto& run = runs[m * n_seeds + s];
      mr.runs.push_back(run);
      Stats st = run.stats;
      mr.total.cycles += st.cycles;  // summed so pooled ipc stays meaningful
      st.cycles = 0;
      mr.total += st;
    }
    report.modes.push_back(std::move(mr));
  }
  return report;
}

}  // namespace louvre
