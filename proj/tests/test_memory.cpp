#include <doctest.h>

#include <random>
#include <stdexcept>

#include "louvre/memory.hpp"

using namespace louvre;

TEST_CASE("read latencies by level")
{
  MemorySystem m(8, {}, {{0, 7}});
  auto miss = m.read(0, 0, 10);
  CHECK(miss.level == HitLevel::Memory);
  CHECK(miss.ready_cycle == 110);
  CHECK(m.state(0, 0) == Mesi::E);

  auto hit = m.read(0, 0, 200);
  CHECK(hit.level == HitLevel::L1);
  CHECK(hit.ready_cycle == 202);

  // same cluster, line now in L2
  auto l2 = m.read(1, 0, 0);
  CHECK(l2.level == HitLevel::L2);
  CHECK(l2.ready_cycle == 10);
  CHECK(m.state(0, 0) == Mesi::S);
  CHECK(m.state(1, 0) == Mesi::S);

  // other cluster, only the shared L3 has it
  auto l3 = m.read(4, 0, 0);
  CHECK(l3.level == HitLevel::L3);
  CHECK(l3.ready_cycle == 25);
  CHECK(m.value(0) == 7);
  CHECK(m.check_swmr().empty());
}

TEST_CASE("write invalidates every other copy")
{
  MemorySystem m(4, {}, {{0, 0}});
  m.read(1, 0, 0);
  m.read(2, 0, 0);
  auto t = m.write(0, 0, 5, 3);
  CHECK(t.perform_cycle == 4);
  CHECK(m.perform_due(3).empty());
  CHECK(m.value(0) == 0);
  auto done = m.perform_due(4);
  REQUIRE(done.size() == 1);
  CHECK(done[0].invalidations == 2);
  CHECK(done[0].value == 5);
  CHECK(m.value(0) == 5);
  CHECK(m.state(0, 0) == Mesi::M);
  CHECK(m.state(1, 0) == Mesi::I);
  CHECK(m.state(2, 0) == Mesi::I);
  CHECK(m.check_swmr().empty());

  m.write(0, 0, 6, 10);
  auto again = m.perform_due(20);
  REQUIRE(again.size() == 1);
  CHECK(again[0].invalidations == 0);
  CHECK_FALSE(m.writes_pending());
}

TEST_CASE("ownership latency follows the local state")
{
  MemorySystem m(2, {}, {{0, 0}, {1, 0}});
  CHECK(m.ownership_ready(0, 0, 0) == 100);
  m.warm(0, 0, true);
  CHECK(m.state(0, 0) == Mesi::E);
  CHECK(m.ownership_ready(0, 0, 0) == 2);
  m.warm(1, 0);
  CHECK(m.state(0, 0) == Mesi::S);
  CHECK(m.ownership_ready(0, 0, 0) == 10);
  m.warm(1, 0, true);
  CHECK(m.state(0, 0) == Mesi::I);
  CHECK(m.state(1, 0) == Mesi::E);
}

TEST_CASE("L1 capacity evicts least recently used")
{
  MemoryConfig cfg;
  cfg.l1_kb = 1;  // 16 lines
  MemorySystem m(1, cfg);
  for (Location l = 0; l < 16; ++l)
    m.read(0, l, 0);
  m.read(0, 0, 0);
  m.read(0, 16, 0);
  CHECK(m.state(0, 1) == Mesi::I);
  CHECK(m.read(0, 0, 0).level == HitLevel::L1);
  CHECK(m.read(0, 1, 0).level == HitLevel::L2);
}

TEST_CASE("false sharing maps locations onto one line")
{
  MemoryConfig cfg;
  cfg.false_sharing_map = {{1, 0}};
  MemorySystem m(2, cfg);
  CHECK(m.line_of(1) == 0);
  m.read(1, 0, 0);
  m.write(0, 1, 3, 0);
  auto done = m.perform_due(5);
  REQUIRE(done.size() == 1);
  CHECK(done[0].invalidations == 1);
  CHECK(m.value(0) == 0);
  CHECK(m.value(1) == 3);
}

TEST_CASE("config checks")
{
  MemoryConfig cfg;
  CHECK_NOTHROW(cfg.check());
  cfg.l2_lat = 1;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg = {};
  cfg.l1_kb = 0;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
}

TEST_CASE("random traffic keeps single writer and one value per location")
{
  std::mt19937_64 rng(11);
  MemorySystem m(8, {});
  std::map<Location, Value> last;
  for (Cycle c = 0; c < 5000; ++c) {
    CoreId core = rng() % 8;
    Location loc = rng() % 6;
    switch (rng() % 3) {
      case 0: m.read(core, loc, c); break;
      case 1: m.write(core, loc, Value(c), c); break;
      default: m.warm(core, loc, rng() % 2); break;
    }
    for (const auto& w : m.perform_due(c)) {
      last[w.location] = w.value;
      CHECK(m.state(w.core, w.location) == Mesi::M);
    }
    REQUIRE(m.check_swmr().empty());
    for (const auto& [l, v] : last)
      CHECK(m.value(l) == v);
  }
}
