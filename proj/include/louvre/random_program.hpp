#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "louvre/program.hpp"

namespace louvre {

struct RandomProgramOptions
{
  std::uint32_t min_threads = 2;
  std::uint32_t max_threads = 2;
  std::uint32_t min_ops = 1;
  /// Memory accesses per thread (load-acquires and store-releases included).
  std::uint32_t max_ops = 5;
  /// Ordering instructions per thread: accesses turned into ldar/stlr plus
  /// inserted full fences.
  std::uint32_t max_fences = 2;
  std::uint32_t locations = 2;
};

/// A valid straight-line program; every store writes a distinct value.
Program random_program(const RandomProgramOptions& options, std::mt19937_64& rng);

/// `count` programs from one seed; program i depends only on (seed, i).
std::vector<Program> random_corpus(std::size_t count, const RandomProgramOptions& options, std::uint64_t seed);

}  // namespace louvre
