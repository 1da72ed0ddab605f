#include <doctest.h>

#include <random>

#include "louvre/lsq.hpp"

using namespace louvre;
using K = MemOpKind;

namespace {

SbEntry entry(Location a, std::uint32_t v, bool ready, bool release = false)
{
  static std::uint64_t age = 0;
  SbEntry e;
  e.address = a;
  e.line = a;
  e.version = {v};
  e.cache_ready = ready;
  e.is_release = release;
  e.age = age++;
  return e;
}

MinVersionRegisters regs(MinVersion sb, MinVersion lsq = std::nullopt) { return {sb, lsq}; }

}  // namespace

TEST_CASE("store completion selection")
{
  std::vector<SbEntry> sb{entry(1, 0, false), entry(2, 1, true, true), entry(3, 0, true)};
  CHECK(select_store_to_complete(sb, Mode::Louvre) == 2u);
  CHECK(select_store_to_complete(sb, Mode::Baseline) == 1u);

  CHECK(select_store_to_complete({entry(1, 0, true)}, Mode::Louvre) == 0u);
  CHECK(select_store_to_complete({entry(1, 5, true), entry(2, 0, false)}, Mode::Louvre) == 0u);
  CHECK_FALSE(select_store_to_complete({}, Mode::Louvre).has_value());
  CHECK_FALSE(select_store_to_complete({entry(1, 0, false)}, Mode::Baseline).has_value());

  // same address waits for the older entry
  std::vector<SbEntry> same{entry(1, 0, false), entry(1, 0, true)};
  CHECK_FALSE(select_store_to_complete(same, Mode::Louvre).has_value());
  CHECK_FALSE(select_store_to_complete(same, Mode::Baseline).has_value());

  // same-version releases stay in age order
  std::vector<SbEntry> rel{entry(1, 0, false), entry(2, 1, false, true), entry(3, 1, true, true)};
  CHECK_FALSE(select_store_to_complete(rel, Mode::Louvre).has_value());
  CHECK_FALSE(select_store_to_complete(rel, Mode::Baseline).has_value());

  // a completed entry is waiting to perform and is not picked again
  std::vector<SbEntry> busy{entry(1, 0, true), entry(2, 0, true)};
  busy[0].completed = true;
  CHECK(select_store_to_complete(busy, Mode::Louvre) == 1u);
  // ...but it still holds the minimum version
  std::vector<SbEntry> held{entry(1, 0, true), entry(2, 1, true)};
  held[0].completed = true;
  CHECK_FALSE(select_store_to_complete(held, Mode::Louvre).has_value());
}

TEST_CASE("load retirement")
{
  LoadRetireQuery q{K::Load, Version{2}, true, false};
  CHECK_FALSE(can_retire_load(q, regs(Version{1}), Mode::Louvre, true));
  CHECK(can_retire_load(q, regs(Version{1}), Mode::Baseline, true));
  q.version = Version{0};
  CHECK(can_retire_load(q, regs(std::nullopt), Mode::Louvre, true));
  CHECK(can_retire_load(q, regs(Version{0}), Mode::Louvre, true));
  q.satisfied = false;
  CHECK_FALSE(can_retire_load(q, regs(std::nullopt), Mode::Louvre, true));

  LoadRetireQuery acq{K::LoadAcquire, Version{0}, true, true};
  CHECK_FALSE(can_retire_load(acq, regs(Version{1}), Mode::Louvre, true));
  CHECK(can_retire_load(acq, regs(Version{1}), Mode::Louvre, false));
  CHECK_FALSE(can_retire_load(acq, regs(Version{1}), Mode::Baseline, true));
  acq.release_in_sb = false;
  CHECK(can_retire_load(acq, regs(Version{1}), Mode::Baseline, true));

  CHECK_THROWS_AS(can_retire_load({K::Store, Version{0}}, regs(std::nullopt), Mode::Louvre, true),
                  std::invalid_argument);
}

TEST_CASE("fence retirement")
{
  CHECK_FALSE(can_retire_fence(K::StoreRelease, Mode::Baseline, false));
  CHECK(can_retire_fence(K::StoreRelease, Mode::Baseline, true));
  CHECK(can_retire_fence(K::StoreRelease, Mode::Louvre, false));
  CHECK(can_retire_fence(K::FullFence, Mode::Louvre, false));
  CHECK_FALSE(can_retire_fence(K::FullFence, Mode::Baseline, false));
  CHECK_THROWS_AS(can_retire_fence(K::Load, Mode::Louvre, true), std::invalid_argument);
}

TEST_CASE("store to load forwarding")
{
  std::vector<SbEntry> sb{entry(7, 0, true)};
  sb[0].value = 1;
  std::vector<PendingStore> lsq{{7, 7, 2}};
  CHECK(forward_store_to_load(lsq, sb, 7) == 2);
  CHECK(forward_store_to_load({}, sb, 7) == 1);
  CHECK_FALSE(forward_store_to_load(lsq, sb, 8).has_value());

  std::vector<SbEntry> two{entry(7, 0, true), entry(7, 0, true)};
  two[0].value = 1;
  two[1].value = 3;
  CHECK(forward_store_to_load({}, two, 7) == 3);
  std::vector<PendingStore> po{{1, 7, 4}, {2, 9, 5}, {3, 7, 6}};
  CHECK(forward_store_to_load(po, two, 7) == 6);
}

TEST_CASE("invalidation squash decision")
{
  SquashQuery q{K::Load, Version{0}, false, false};
  CHECK_FALSE(should_squash(q, regs(Version{1}), Mode::Louvre, true));
  CHECK(should_squash(q, regs(Version{1}), Mode::Baseline, true));
  q.fence_before = true;
  CHECK(should_squash(q, regs(Version{1}), Mode::Louvre, true));
  q.fence_before = false;
  q.version = Version{2};
  CHECK(should_squash(q, regs(Version{1}), Mode::Louvre, true));
  CHECK(should_squash(q, regs(std::nullopt, Version{1}), Mode::Louvre, true));
  CHECK_FALSE(should_squash(q, regs(std::nullopt, Version{2}), Mode::Louvre, true));
  CHECK_FALSE(should_squash(q, regs(std::nullopt, std::nullopt), Mode::Louvre, true));

  SquashQuery acq{K::LoadAcquire, Version{0}, false, true};
  CHECK(should_squash(acq, regs(std::nullopt), Mode::Louvre, true));
  CHECK_FALSE(should_squash(acq, regs(std::nullopt), Mode::Louvre, false));
}

TEST_CASE("comparator tree minimum")
{
  CHECK_FALSE(comparator_tree_min({}).has_value());
  CHECK(comparator_tree_min({Version{4}}) == Version{4});
  CHECK(comparator_tree_min({std::nullopt, Version{3}, std::nullopt}) == Version{3});
  CHECK(comparator_count(16) == 15);
  CHECK(comparator_count(64) == 63);
  CHECK(comparator_count(0) == 0);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<MinVersion> leaves(1 + rng() % 70);
    for (auto& l : leaves)
      if (rng() % 3)
        l = Version{static_cast<std::uint32_t>(rng() % 1024)};
    CHECK(comparator_tree_min(leaves) == brute_force_min(leaves));
  }
  CHECK(version_le(Version{1000}, std::nullopt));
  CHECK(min_of(std::nullopt, Version{2}) == Version{2});
}
