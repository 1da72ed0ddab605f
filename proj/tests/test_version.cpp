#include <doctest.h>

#include <random>

#include "louvre/version.hpp"

using namespace louvre;

namespace {

VersionState at(std::uint32_t vr, std::uint32_t lfvr, unsigned bits = kDefaultVersionBits)
{
  auto s = make_version_state(bits);
  s.vr = {vr};
  s.lfvr = {lfvr};
  return s;
}

}  // namespace

TEST_CASE("assignment table rows")
{
  auto r = assign_version(MemOpKind::Load, at(0, 0));
  CHECK(r.assigned == Version{0});
  CHECK(r.state.vr.value == 0);
  CHECK(r.state.lfvr.value == 0);

  r = assign_version(MemOpKind::StoreRelease, at(0, 1));
  CHECK(r.assigned == Version{1});
  CHECK(r.state.vr.value == 0);
  CHECK(r.state.lfvr.value == 2);

  r = assign_version(MemOpKind::FullFence, at(0, 2));
  CHECK_FALSE(r.assigned.has_value());
  CHECK(r.state.vr.value == 3);
  CHECK(r.state.lfvr.value == 3);

  r = assign_version(MemOpKind::LoadAcquire, at(0, 0));
  CHECK(r.assigned == Version{0});
  CHECK(r.state.vr.value == 0);
  CHECK(r.state.lfvr.value == 1);

  r = assign_version(MemOpKind::Store, at(4, 9));
  CHECK(r.assigned == Version{4});
  CHECK(r.state == at(4, 9));
}

TEST_CASE("seven-instruction sequence")
{
  const MemOpKind seq[] = {MemOpKind::Load,  MemOpKind::LoadAcquire, MemOpKind::Load,     MemOpKind::StoreRelease,
                           MemOpKind::Store, MemOpKind::FullFence,   MemOpKind::Load};
  const std::optional<std::uint32_t> versions[] = {0, 0, 0, 1, 0, std::nullopt, 3};
  const std::uint32_t lfvr[] = {0, 1, 1, 2, 2, 3, 3};
  const std::uint32_t vr[] = {0, 0, 0, 0, 0, 3, 3};

  auto s = make_version_state();
  VersionEngine engine;
  for (int i = 0; i < 7; ++i) {
    CAPTURE(i);
    auto r = assign_version(seq[i], s);
    s = r.state;
    auto e = engine.assign(seq[i]);
    CHECK(r.assigned.has_value() == versions[i].has_value());
    if (versions[i])
      CHECK(r.assigned->value == *versions[i]);
    CHECK(e == r.assigned);
    CHECK(s.lfvr.value == lfvr[i]);
    CHECK(s.vr.value == vr[i]);
    CHECK(engine.state() == s);
  }
}

TEST_CASE("overflow boundaries")
{
  CHECK(check_overflow(at(0, 1023), 1));
  CHECK_FALSE(check_overflow(at(0, 1022), 1));
  CHECK_FALSE(check_overflow(at(0, 0), 1));
  CHECK(check_overflow(at(0, 1020), 4));
  CHECK(check_overflow(at(0, 15, 4), 1));
  CHECK_FALSE(check_overflow(at(0, 14, 4), 1));

  CHECK_THROWS_AS(assign_version(MemOpKind::FullFence, at(1023, 1023)), VersionOverflow);
  CHECK_THROWS_AS(assign_version(MemOpKind::LoadAcquire, at(0, 1023)), VersionOverflow);
  CHECK_THROWS_AS(assign_version(MemOpKind::StoreRelease, at(1023, 1023)), VersionOverflow);
  CHECK_NOTHROW(assign_version(MemOpKind::Load, at(1023, 1023)));
  CHECK_THROWS_AS(make_version_state(0), std::invalid_argument);
  CHECK_THROWS_AS(make_version_state(32), std::invalid_argument);
}

TEST_CASE("reset")
{
  CHECK(reset(at(900, 1020)) == at(0, 0));
  CHECK(reset(at(0, 0)) == at(0, 0));
  auto cp = checkpoint(at(3, 4), 7);
  CHECK(reset(cp).checkpoints.empty());

  VersionEngine e;
  for (int i = 0; i < 1023; ++i)
    e.assign(MemOpKind::FullFence);
  CHECK(e.would_overflow(1));
  e.reset();
  CHECK(e.assign(MemOpKind::Load) == Version{0});
}

TEST_CASE("checkpoint and restore")
{
  auto s = checkpoint(at(2, 5), 1);
  s = assign_version(MemOpKind::FullFence, s).state;
  CHECK(s.vr.value == 6);
  CHECK(s.lfvr.value == 6);
  s = restore(s, 1);
  CHECK(s == at(2, 5));

  CHECK(restore(checkpoint(at(2, 5), 1), 1) == at(2, 5));

  auto n = checkpoint(at(1, 1), 10);
  n = assign_version(MemOpKind::StoreRelease, n).state;
  n = checkpoint(n, 11);
  n = assign_version(MemOpKind::FullFence, n).state;
  n = restore(n, 10);
  CHECK(n == at(1, 1));
  CHECK_THROWS_AS(restore(n, 11), std::logic_error);
  CHECK_THROWS_AS(restore(at(0, 0), 3), std::logic_error);
}

TEST_CASE("engine commit, discard and rewind")
{
  VersionEngine e;
  e.checkpoint(1);
  e.assign(MemOpKind::LoadAcquire);
  e.checkpoint(2);
  e.assign(MemOpKind::StoreRelease);
  e.checkpoint(3);
  e.commit(1);
  CHECK(e.state().checkpoints.size() == 2);
  e.discard_from(3);
  CHECK(e.state().checkpoints.size() == 1);
  e.restore(2);
  CHECK(e.lfvr().value == 1);
  e.rewind({0}, {0});
  CHECK(e.vr().value == 0);
  CHECK(e.lfvr().value == 0);
}

TEST_CASE("random sequences keep the register invariants")
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = make_version_state();
    std::optional<Version> last_plain;
    auto last = s;
    for (int i = 0; i < 60; ++i) {
      auto kind = static_cast<MemOpKind>(rng() % 5);
      auto r = assign_version(kind, s);
      CHECK(r.state.lfvr >= r.state.vr);
      CHECK(r.state.lfvr >= last.lfvr);
      CHECK(r.state.vr >= last.vr);
      if (kind == MemOpKind::FullFence)
        CHECK(r.state.vr == r.state.lfvr);
      else if (kind == MemOpKind::StoreRelease)
        CHECK(r.assigned->value == s.vr.value + 1);
      else
        CHECK(r.assigned == s.vr);
      if (r.assigned && kind != MemOpKind::StoreRelease) {
        if (last_plain)
          CHECK(*r.assigned >= *last_plain);
        last_plain = r.assigned;
      }
      last = s;
      s = r.state;
    }
  }
}
