#include <doctest.h>

#include <random>

#include "louvre/litmus.hpp"
#include "louvre/random_program.hpp"

using namespace louvre;

namespace {

const char* kMp = R"(name: MP
init: A1=0 F=0
T0:
  st [A1] 1
  stlr [F] 1
T1:
  ldar r0 [F]
  ld r1 [A1]
forbidden: T1:r0=1 & T1:r1=0
)";

bool has_message(const std::vector<Diagnostic>& diags, const std::string& needle)
{
  for (const auto& d : diags)
    if (d.message.find(needle) != std::string::npos)
      return true;
  return false;
}

}  // namespace

TEST_CASE("empty thread block parses to one empty thread")
{
  auto t = parse_litmus("T0 {}\n");
  REQUIRE(t.program.threads.size() == 1);
  CHECK(t.program.threads[0].empty());
  CHECK(t.program.instruction_count() == 0);
}

TEST_CASE("message passing text parses")
{
  auto t = parse_litmus(kMp);
  CHECK(t.program.name == "MP");
  REQUIRE(t.program.threads.size() == 2);
  CHECK(t.program.instruction_count() == 4);
  CHECK(t.program.threads[0][1].kind == MemOpKind::StoreRelease);
  CHECK(t.program.threads[1][0].kind == MemOpKind::LoadAcquire);
  CHECK(t.program.threads[1][1].po_index == 1);
  REQUIRE(t.forbidden.size() == 1);

  Outcome bad;
  bad.registers[{1, 0}] = 1;
  bad.registers[{1, 1}] = 0;
  CHECK(t.forbidden[0].matches(bad));
  bad.registers[{1, 1}] = 1;
  CHECK_FALSE(t.forbidden[0].matches(bad));
  CHECK(validate(t.program).empty());
}

TEST_CASE("parse errors carry line numbers")
{
  try {
    parse_litmus("T0:\n  st [A] 1\n  fence [A3]\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("fence with address") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_litmus("T0:\n  ld [A]\n"), ParseError);
  CHECK_THROWS_AS(parse_litmus("T0:\n  st [A] 1\nT0:\n  st [A] 2\n"), ParseError);
  CHECK_THROWS_AS(parse_litmus("T0:\n  frob [A]\n"), ParseError);
  CHECK_THROWS_AS(parse_litmus("T0:\n  ld r0 [A]\n  ld r0 [B]\n"), ParseError);
  CHECK_THROWS_AS(parse_litmus(std::string(kMp) + "forbidden: T1:r9=0\n"), ParseError);
}

TEST_CASE("validate")
{
  auto mp = parse_litmus(kMp).program;
  CHECK(validate(mp).empty());

  SUBCASE("nine threads")
  {
    Program p;
    p.threads.resize(9);
    CHECK(has_message(validate(p), "thread count exceeds 8"));
  }
  SUBCASE("gap in program order")
  {
    Program p = mp;
    p.threads[0][1].po_index = 2;
    CHECK(has_message(validate(p), "non-contiguous program order"));
  }
  SUBCASE("fence with address")
  {
    Program p = mp;
    p.threads[0].push_back({0, 2, MemOpKind::FullFence, Location{0}, 0, std::nullopt});
    CHECK(has_message(validate(p), "fence with address"));
  }
  SUBCASE("unknown location")
  {
    Program p = mp;
    p.threads[0][0].address = 77;
    CHECK(has_message(validate(p), "address missing"));
  }
}

TEST_CASE("serialize then parse is the identity")
{
  auto mp = parse_litmus(kMp);
  CHECK(parse_litmus(serialize_litmus(mp)) == mp);

  RandomProgramOptions opts;
  opts.max_threads = 3;
  opts.locations = 3;
  for (const auto& p : random_corpus(200, opts, 99)) {
    LitmusTest t{p, {}, {}};
    auto back = parse_litmus(serialize_litmus(t));
    CHECK(back == t);
    CHECK(validate(back.program).empty());
  }
}

TEST_CASE("predicate compatibility")
{
  auto t = parse_litmus(kMp);
  Predicate a = t.forbidden[0];
  Predicate b = a;
  CHECK(a.compatible_with(b));
  b.terms[0].value = 0;
  CHECK_FALSE(a.compatible_with(b));
  Predicate empty;
  CHECK(a.compatible_with(empty));
}

TEST_CASE("every shipped litmus file parses and validates")
{
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(LOUVRE_SOURCE_DIR) / "litmus")) {
    if (e.path().extension() != ".litmus")
      continue;
    ++files;
    auto t = load_litmus(e.path());
    CHECK(validate(t.program).empty());
    CHECK(parse_litmus(serialize_litmus(t)) == t);
  }
  CHECK(files >= 12);
}
