#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "louvre/benchmark.hpp"
#include "louvre/equivalence.hpp"
#include "louvre/litmus_runner.hpp"
#include "louvre/oracle.hpp"
#include "louvre/stats.hpp"

namespace louvre {

/// {"T0:r0": 1, "A": 0, ...}
nlohmann::ordered_json outcome_json(const Outcome& outcome, const Program& program);
/// Sorted array in OutcomeSet order.
nlohmann::ordered_json outcomes_json(const OutcomeSet& outcomes, const Program& program);

nlohmann::ordered_json stats_json(const Stats& stats);
nlohmann::ordered_json bench_json(const BenchReport& report);
nlohmann::ordered_json litmus_json(const std::vector<LitmusReport>& reports);
nlohmann::ordered_json equivalence_json(const EquivalenceSummary& summary);

/// Column order of bench_csv, one row per (mode, seed).
extern const std::vector<std::string> kBenchCsvColumns;
std::string bench_csv(const BenchReport& report);

std::string bench_table(const BenchReport& report);
std::string litmus_table(const std::vector<LitmusReport>& reports);
std::string equivalence_text(const EquivalenceSummary& summary);

}  // namespace louvre
