#include "louvre/equivalence.hpp"

#include <algorithm>

#include "louvre/litmus.hpp"
#include "louvre/parallel.hpp"

namespace louvre {

EquivalenceSummary run_equivalence(const std::vector<Program>& programs, std::size_t max_accesses, unsigned jobs)
{
  struct Result
  {
    EquivalenceReport strict;
    EquivalenceReport relaxed;
    bool monotone = true;
  };
  auto results = parallel_map(programs.size(), jobs, [&](std::size_t i) {
    const auto& p = programs[i];
    Result r;
    OracleOptions strict{true, max_accesses};
    OracleOptions relaxed{false, max_accesses};
    r.strict = equivalence_report(p, strict);
    r.relaxed = equivalence_report(p, relaxed);
    const auto vs = enumerate_outcomes(p, Semantics::VSR, strict);
    const auto vr = enumerate_outcomes(p, Semantics::VSR, relaxed);
    r.monotone = std::includes(vr.begin(), vr.end(), vs.begin(), vs.end());
    return r;
  });

  EquivalenceSummary s;
  s.programs = programs.size();
  for (std::size_t i = 0; i < programs.size(); ++i) {
    const auto& r = results[i];
    auto note = [&](const EquivalenceReport& rep, bool strict) {
      LitmusTest t;
      t.program = programs[i];
      s.divergences.push_back({programs[i].name, strict, serialize_litmus(t), rep});
    };
    if (r.strict.equal) {
      ++s.equal_strict;
    } else {
      ++s.unequal_strict;
      note(r.strict, true);
    }
    if (r.relaxed.equal) {
      ++s.equal_relaxed;
    } else {
      ++s.unequal_relaxed;
      note(r.relaxed, false);
    }
    if (!r.monotone)
      ++s.monotonicity_violations;
  }
  return s;
}

EquivalenceSummary run_equivalence_corpus(const EquivalenceOptions& options)
{
  return run_equivalence(random_corpus(options.count, options.program, options.seed), options.max_accesses,
                         options.jobs);
}

}  // namespace louvre
