#pragma once

#include <cstdint>

#include "louvre/config.hpp"
#include "louvre/program.hpp"
#include "louvre/system.hpp"

namespace louvre {

/// T0: S1 = st [A] 1 (line cold), S2 = stlr [B] 1, S3 = st [C] 1 (lines warm).
Program early_completion_program();

struct EarlyCompletion
{
  SimResult result;
  Cycle s1_complete = 0, s2_complete = 0, s3_complete = 0;
  Cycle s1_perform = 0, s3_retire = 0;
};

EarlyCompletion run_early_completion(Mode mode, SimConfig base = {});

/// Core 0: st [X] 1 (cold), stlr I1 [F] 1, ld I2 [A1] (cold), ld I3 [A2] (warm).
/// Core 1: st [A2] `value`, timed to land while I3 is satisfied but speculative.
Program squash_program(Value core1_value = 0);

struct SquashScenario
{
  SimResult result;
  std::uint64_t i3_squashes = 0;
  std::uint64_t i3_avoided = 0;
};

SquashScenario run_squash_scenario(Mode mode, Value core1_value = 0, SimConfig base = {});

/// Message passing with `fences_per_gap` full fences between each pair of
/// T0's accesses: T0 st X; fences; st Y; fences; stlr F. T1 ldar F; ld Y; fence; ld X.
Program overflow_program(std::size_t fences_per_gap);

}  // namespace louvre
