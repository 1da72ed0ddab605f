#include <doctest.h>

#include <algorithm>
#include <random>

#include "louvre/litmus.hpp"
#include "louvre/oracle.hpp"
#include "louvre/random_program.hpp"

using namespace louvre;
using K = MemOpKind;

namespace {

Program prog(const std::string& body) { return parse_litmus(body).program; }

GlobalOrder all_refs(const Program& p)
{
  GlobalOrder out;
  for (ThreadId t = 0; t < p.threads.size(); ++t)
    for (std::uint32_t k = 0; k < p.threads[t].size(); ++k)
      out.push_back({t, k});
  return out;
}

Outcome regs(std::initializer_list<std::tuple<ThreadId, RegisterId, Value>> r, std::map<Location, Value> mem)
{
  Outcome o;
  for (auto [t, reg, v] : r)
    o.registers[{t, reg}] = v;
  o.memory = std::move(mem);
  return o;
}

// Reference model: axioms written out pair by pair over a full permutation.
std::vector<std::uint32_t> ref_versions(const std::vector<Instruction>& thread, std::vector<bool>& has)
{
  std::uint32_t vr = 0, lfvr = 0;
  std::vector<std::uint32_t> out;
  for (const auto& i : thread) {
    has.push_back(i.kind != K::FullFence);
    switch (i.kind) {
    case K::Load:
    case K::Store: out.push_back(vr); break;
    case K::LoadAcquire: out.push_back(vr); ++lfvr; break;
    case K::StoreRelease: out.push_back(vr + 1); ++lfvr; break;
    case K::FullFence: ++lfvr; vr = lfvr; out.push_back(0); break;
    }
  }
  return out;
}

bool ordering(K k) { return k == K::LoadAcquire || k == K::StoreRelease || k == K::FullFence; }
bool store(K k) { return k == K::Store || k == K::StoreRelease; }
bool load(K k) { return k == K::Load || k == K::LoadAcquire; }

bool ref_ok(const Program& p, const GlobalOrder& order, bool vsr, bool strict)
{
  std::map<InstrRef, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i)
    pos[order[i]] = i;
  for (ThreadId t = 0; t < p.threads.size(); ++t) {
    const auto& th = p.threads[t];
    std::vector<bool> has;
    auto v = ref_versions(th, has);
    for (std::uint32_t a = 0; a < th.size(); ++a)
      for (std::uint32_t b = a + 1; b < th.size(); ++b) {
        const auto& x = th[a];
        const auto& y = th[b];
        bool need = store(x.kind) && store(y.kind) && x.address == y.address;
        if (!vsr) {
          need = need || x.kind == K::FullFence || y.kind == K::FullFence || x.kind == K::LoadAcquire ||
                 y.kind == K::StoreRelease || (ordering(x.kind) && ordering(y.kind));
        } else if (has[a] && has[b]) {
          need = need || v[a] < v[b] || (x.kind == K::LoadAcquire && v[a] == v[b]) ||
                 (x.kind == K::StoreRelease && y.kind == K::StoreRelease && v[a] == v[b]) ||
                 (strict && x.kind == K::StoreRelease && y.kind == K::LoadAcquire);
        }
        if (need && pos[{t, a}] > pos[{t, b}])
          return false;
      }
  }
  return true;
}

Outcome ref_outcome(const Program& p, const GlobalOrder& order)
{
  std::map<InstrRef, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i)
    pos[order[i]] = i;
  Outcome o;
  o.memory = p.initial_memory;
  for (ThreadId t = 0; t < p.threads.size(); ++t)
    for (std::uint32_t k = 0; k < p.threads[t].size(); ++k) {
      const auto& l = p.threads[t][k];
      if (!load(l.kind))
        continue;
      std::optional<InstrRef> best;
      for (ThreadId u = 0; u < p.threads.size(); ++u)
        for (std::uint32_t j = 0; j < p.threads[u].size(); ++j) {
          const auto& s = p.threads[u][j];
          if (!store(s.kind) || s.address != l.address)
            continue;
          bool visible = (u == t && j < k) || pos[{u, j}] < pos[{t, k}];
          if (visible && (!best || pos[*best] < pos[{u, j}]))
            best = InstrRef{u, j};
        }
      o.registers[{t, *l.dest}] = best ? p.at(*best).value : p.initial_memory.at(*l.address);
    }
  for (auto ref : order) {
    const auto& s = p.at(ref);
    if (store(s.kind))
      o.memory[*s.address] = s.value;
  }
  return o;
}

OutcomeSet brute_force(const Program& p, bool vsr, bool strict)
{
  OutcomeSet out;
  auto order = all_refs(p);
  std::sort(order.begin(), order.end());
  do {
    if (ref_ok(p, order, vsr, strict))
      out.insert(ref_outcome(p, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

const char* kMp = "init: A1=0 F=0\nT0:\n st [A1] 1\n stlr [F] 1\nT1:\n ldar r0 [F]\n ld r1 [A1]\n";
const char* kSb = "init: A=0 B=0\nT0:\n st [A] 1\n ld r0 [B]\nT1:\n st [B] 1\n ld r1 [A]\n";

}  // namespace

TEST_CASE("check_rcsc examples")
{
  auto p = prog("T0:\n st [A] 1\n fence\n st [B] 1\n");
  CHECK_FALSE(check_rcsc(p, {{0, 2}, {0, 1}, {0, 0}}));
  CHECK_FALSE(check_rcsc(p, {{0, 2}, {0, 0}, {0, 1}}));
  CHECK(check_rcsc(p, {{0, 0}, {0, 1}, {0, 2}}));

  auto mp = prog(kMp);
  // ldar F reads 1 before st A1 while ld A1 reads 0
  GlobalOrder bad{{0, 1}, {1, 0}, {1, 1}, {0, 0}};
  CHECK_FALSE(check_rcsc(mp, bad));
  GlobalOrder stlr_first{{0, 1}, {0, 0}, {1, 0}, {1, 1}};
  CHECK_FALSE(check_rcsc(mp, stlr_first));
  auto observed = regs({{1, 0, 1}, {1, 1, 0}}, {});
  CHECK_FALSE(check_rcsc(mp, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, observed));
  CHECK(check_rcsc(mp, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, regs({{1, 0, 1}, {1, 1, 1}}, {})));

  // every interleaving consistent with po
  auto sb = prog(kSb);
  auto order = all_refs(sb);
  std::sort(order.begin(), order.end());
  std::size_t sc = 0;
  do {
    bool po = true;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j)
        if (order[i].thread == order[j].thread && order[i].po_index > order[j].po_index)
          po = false;
    if (po) {
      ++sc;
      CHECK(check_rcsc(sb, order));
    }
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(sc == 6);

  CHECK_THROWS_AS(check_rcsc(p, {{0, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(check_rcsc(p, {{0, 0}, {0, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(check_rcsc(p, {{0, 0}, {0, 1}, {0, 9}}), std::invalid_argument);
}

TEST_CASE("check_vsr examples")
{
  auto a = prog("T0:\n st [A] 1\n stlr [B] 1\n");
  auto va = assign_program_versions(a);
  CHECK(va[0][0] == Version{0});
  CHECK(va[0][1] == Version{1});
  CHECK_FALSE(check_vsr(a, va, {{0, 1}, {0, 0}}));
  CHECK(check_vsr(a, va, {{0, 0}, {0, 1}}));

  auto b = prog("T0:\n ldar r0 [F]\n ld r1 [A]\n");
  auto vb = assign_program_versions(b);
  CHECK(vb[0][0] == vb[0][1]);
  CHECK_FALSE(check_vsr(b, vb, {{0, 1}, {0, 0}}));

  auto c = prog("T0:\n st [A] 1\n st [B] 1\n");
  auto vc = assign_program_versions(c);
  CHECK(check_vsr(c, vc, {{0, 1}, {0, 0}}));
  CHECK(check_vsr(c, vc, {{0, 0}, {0, 1}}));

  VersionMap missing{{Version{0}}};
  CHECK_THROWS_AS(check_vsr(c, missing, {{0, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(check_vsr(c, VersionMap{}, {{0, 0}, {0, 1}}), std::invalid_argument);

  auto d = prog("T0:\n stlr [A] 1\n ldar r0 [B]\n");
  auto vd = assign_program_versions(d);
  CHECK_FALSE(check_vsr(d, vd, {{0, 1}, {0, 0}}, {true}));
  CHECK(check_vsr(d, vd, {{0, 1}, {0, 0}}, {false}));
}

TEST_CASE("outcome sets of small programs")
{
  auto one = prog("T0:\n st [A] 1\n ld r0 [A]\n");
  for (auto sem : {Semantics::RCSC, Semantics::VSR}) {
    auto s = enumerate_outcomes(one, sem);
    REQUIRE(s.size() == 1);
    CHECK(s.begin()->registers.at({0, 0}) == 1);
  }

  auto mp = prog(kMp);
  for (auto sem : {Semantics::RCSC, Semantics::VSR}) {
    std::set<std::pair<Value, Value>> rs;
    for (const auto& o : enumerate_outcomes(mp, sem))
      rs.insert({o.registers.at({1, 0}), o.registers.at({1, 1})});
    CHECK(rs == std::set<std::pair<Value, Value>>{{0, 0}, {0, 1}, {1, 1}});
  }
  CHECK(equivalence_report(mp).equal);

  auto sb = prog(kSb);
  for (auto sem : {Semantics::RCSC, Semantics::VSR}) {
    std::set<std::pair<Value, Value>> rs;
    for (const auto& o : enumerate_outcomes(sb, sem))
      rs.insert({o.registers.at({0, 0}), o.registers.at({1, 1})});
    CHECK(rs.size() == 4);
  }
}

TEST_CASE("enumeration bound")
{
  Program p;
  p.threads.resize(1);
  for (std::uint32_t k = 0; k < 13; ++k)
    p.threads[0].push_back({0, k, K::Store, Location{0}, Value(k + 1), std::nullopt});
  normalize(p);
  CHECK_THROWS_AS(enumerate_outcomes(p, Semantics::RCSC), OracleBoundExceeded);
  try {
    enumerate_outcomes(p, Semantics::VSR, {true, 12});
  } catch (const OracleBoundExceeded& e) {
    CHECK(e.accesses() == 13);
  }
  CHECK(enumerate_outcomes(p, Semantics::RCSC, {true, 13}).size() == 1);
}

TEST_CASE("enumerator agrees with reference permutation search")
{
  RandomProgramOptions opts;
  opts.max_threads = 3;
  opts.max_ops = 3;
  opts.max_fences = 2;
  opts.locations = 2;
  std::size_t checked = 0;
  for (const auto& p : random_corpus(400, opts, 17)) {
    if (p.instruction_count() > 8)
      continue;
    ++checked;
    CAPTURE(serialize_litmus({p, {}, {}}));
    CHECK(enumerate_outcomes(p, Semantics::RCSC) == brute_force(p, false, true));
    CHECK(enumerate_outcomes(p, Semantics::VSR, {true, 12}) == brute_force(p, true, true));
    CHECK(enumerate_outcomes(p, Semantics::VSR, {false, 12}) == brute_force(p, true, false));

    auto order = all_refs(p);
    std::shuffle(order.begin(), order.end(), std::mt19937_64(checked));
    CHECK(check_rcsc(p, order) == ref_ok(p, order, false, true));
    CHECK(outcome_of(p, order) == ref_outcome(p, order));
    CHECK(check_vsr(p, assign_program_versions(p), order) == ref_ok(p, order, true, true));
  }
  CHECK(checked > 100);
}

TEST_CASE("properties")
{
  RandomProgramOptions opts;
  opts.max_threads = 2;
  opts.max_ops = 4;
  auto corpus = random_corpus(80, opts, 3);
  for (const auto& p : corpus) {
    auto strict = enumerate_outcomes(p, Semantics::VSR, {true, 12});
    auto relaxed = enumerate_outcomes(p, Semantics::VSR, {false, 12});
    CHECK(std::includes(relaxed.begin(), relaxed.end(), strict.begin(), strict.end()));
    CHECK(enumerate_outcomes(p, Semantics::RCSC) == enumerate_outcomes(p, Semantics::RCSC));
  }

  RandomProgramOptions single = opts;
  single.min_threads = single.max_threads = 1;
  single.max_ops = 6;
  for (const auto& p : random_corpus(50, single, 4))
    CHECK(equivalence_report(p).equal);

  // no fences: every different-address reordering is possible
  RandomProgramOptions plain = opts;
  plain.max_fences = 0;
  for (const auto& p : random_corpus(40, plain, 5)) {
    if (p.instruction_count() > 8)
      continue;
    auto all = brute_force(p, false, true);
    CHECK(enumerate_outcomes(p, Semantics::RCSC) == all);
    CHECK(enumerate_outcomes(p, Semantics::VSR) == all);
  }
}

TEST_CASE("single store value rule")
{
  auto p = prog("T0:\n ld r0 [A]\n st [A] 5\n ld r1 [A]\nT1:\n ld r2 [A]\n fence\n ld r3 [A]\n");
  auto order = all_refs(p);
  std::sort(order.begin(), order.end());
  do {
    if (!check_rcsc(p, order))
      continue;
    auto o = outcome_of(p, order);
    auto pos = [&](InstrRef r) { return std::find(order.begin(), order.end(), r) - order.begin(); };
    const InstrRef st{0, 1};
    for (auto [ref, reg] : {std::pair{InstrRef{0, 0}, 0u}, {InstrRef{0, 2}, 1u}, {InstrRef{1, 0}, 2u},
                            {InstrRef{1, 2}, 3u}}) {
      bool sees = pos(st) < pos(ref) || (ref.thread == 0 && ref.po_index > 1);
      CHECK(o.registers.at({ref.thread, reg}) == (sees ? 5 : 0));
    }
  } while (std::next_permutation(order.begin(), order.end()));
}
