#include "louvre/litmus.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace louvre {
namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_identifier(std::string_view s)
{
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

class Parser
{
public:
  explicit Parser(const std::string& text) : text_(text) {}

  LitmusTest run()
  {
    std::istringstream in(text_);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      std::string_view s = raw;
      if (auto hash = s.find('#'); hash != std::string_view::npos)
        s = s.substr(0, hash);
      s = trim(s);
      if (s.empty())
        continue;
      handle(s);
    }
    finish();
    return std::move(test_);
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  Value parse_value(std::string_view s) const
  {
    Value v = 0;
    const char* first = s.data();
    if (!s.empty() && s[0] == '+')
      ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || first == s.data() + s.size())
      fail("invalid integer '" + std::string(s) + "'");
    return v;
  }

  std::uint32_t parse_index(std::string_view s, char prefix, const char* what) const
  {
    if (s.size() < 2 || s[0] != prefix)
      fail(std::string("expected ") + what + ", got '" + std::string(s) + "'");
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      fail(std::string("invalid ") + what + " '" + std::string(s) + "'");
    return v;
  }

  Location parse_address(std::string_view s)
  {
    if (s.size() < 3 || s.front() != '[' || s.back() != ']')
      fail("expected [location], got '" + std::string(s) + "'");
    auto name = s.substr(1, s.size() - 2);
    if (!is_identifier(name))
      fail("invalid location name '" + std::string(name) + "'");
    return test_.program.intern(name);
  }

  void handle(std::string_view s)
  {
    if (starts_with(s, "name:")) {
      test_.program.name = std::string(trim(s.substr(5)));
      current_.reset();
      return;
    }
    if (starts_with(s, "init:")) {
      current_.reset();
      for (auto tok : split_ws(s.substr(5))) {
        auto eq = tok.find('=');
        if (eq == std::string_view::npos)
          fail("init entry must be LOC=VALUE");
        auto name = tok.substr(0, eq);
        if (!is_identifier(name))
          fail("invalid location name '" + std::string(name) + "'");
        Location loc = test_.program.intern(name);
        if (test_.program.initial_memory.contains(loc))
          fail("duplicate init for " + std::string(name));
        test_.program.initial_memory[loc] = parse_value(tok.substr(eq + 1));
      }
      return;
    }
    if (starts_with(s, "forbidden:")) {
      current_.reset();
      pending_forbidden_.push_back({line_, std::string(trim(s.substr(10)))});
      return;
    }
    if (starts_with(s, "allowed:")) {
      current_.reset();
      pending_allowed_.push_back({line_, std::string(trim(s.substr(8)))});
      return;
    }
    if (s[0] == 'T' && s.size() >= 2 && std::isdigit(static_cast<unsigned char>(s[1]))) {
      std::size_t end = 1;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
        ++end;
      auto rest = trim(s.substr(end));
      bool empty_block = false;
      if (rest == ":") {
      } else if (rest == "{}" || rest == ": {}") {
        empty_block = true;
      } else {
        fail("expected 'T<n>:' or 'T<n> {}'");
      }
      auto id = parse_index(s.substr(0, end), 'T', "thread id");
      if (!thread_ids_.insert(id).second)
        fail("duplicate thread id T" + std::to_string(id));
      if (id >= test_.program.threads.size())
        test_.program.threads.resize(id + 1);
      current_ = empty_block ? std::nullopt : std::optional<ThreadId>(id);
      return;
    }
    if (!current_)
      fail("instruction outside a thread block");
    parse_instruction(s);
  }

  void parse_instruction(std::string_view s)
  {
    auto toks = split_ws(s);
    auto& thread = test_.program.threads[*current_];
    Instruction inst;
    inst.thread = *current_;
    inst.po_index = static_cast<std::uint32_t>(thread.size());
    const auto op = toks[0];
    if (op == "fence") {
      if (toks.size() != 1)
        fail(toks.size() >= 2 && toks[1].front() == '[' ? "fence with address" : "fence takes no operands");
      inst.kind = MemOpKind::FullFence;
    } else if (op == "ld" || op == "ldar") {
      inst.kind = op == "ld" ? MemOpKind::Load : MemOpKind::LoadAcquire;
      if (toks.size() == 2 && toks[1].front() == '[')
        fail("load without destination register");
      if (toks.size() != 3)
        fail(std::string(op) + " expects: r<n> [location]");
      inst.dest = parse_index(toks[1], 'r', "register");
      inst.address = parse_address(toks[2]);
    } else if (op == "st" || op == "stlr") {
      inst.kind = op == "st" ? MemOpKind::Store : MemOpKind::StoreRelease;
      if (toks.size() != 3)
        fail(std::string(op) + " expects: [location] value");
      inst.address = parse_address(toks[1]);
      inst.value = parse_value(toks[2]);
    } else {
      fail("unknown mnemonic '" + std::string(op) + "'");
    }
    thread.push_back(inst);
  }

  Predicate parse_predicate(std::size_t line, const std::string& text)
  {
    line_ = line;
    Predicate p;
    std::string_view rest = text;
    while (true) {
      auto amp = rest.find('&');
      auto term = trim(rest.substr(0, amp));
      if (term.empty())
        fail("empty predicate term");
      auto eq = term.find('=');
      if (eq == std::string_view::npos)
        fail("predicate term must be TARGET=VALUE");
      auto target = trim(term.substr(0, eq));
      Value v = parse_value(trim(term.substr(eq + 1)));
      if (auto colon = target.find(':'); colon != std::string_view::npos) {
        RegisterKey key{parse_index(target.substr(0, colon), 'T', "thread id"),
                        parse_index(target.substr(colon + 1), 'r', "register")};
        if (!register_exists(key))
          fail("predicate names unknown register " + std::string(target));
        p.terms.push_back({key, v});
      } else {
        auto loc = test_.program.find_location(target);
        if (!loc)
          fail("predicate names unknown location " + std::string(target));
        p.terms.push_back({*loc, v});
      }
      if (amp == std::string_view::npos)
        break;
      rest = rest.substr(amp + 1);
    }
    return p;
  }

  bool register_exists(RegisterKey key) const
  {
    if (key.thread >= test_.program.threads.size())
      return false;
    for (const auto& i : test_.program.threads[key.thread])
      if (is_load(i.kind) && i.dest == key.reg)
        return true;
    return false;
  }

  void finish()
  {
    auto& prog = test_.program;
    for (std::size_t t = 0; t < prog.threads.size(); ++t)
      if (!thread_ids_.contains(static_cast<ThreadId>(t)))
        throw ParseError(line_, "thread ids must be contiguous from T0 (missing T" + std::to_string(t) + ")");
    normalize(prog);
    std::size_t last = line_;
    for (const auto& [line, text] : pending_forbidden_)
      test_.forbidden.push_back(parse_predicate(line, text));
    for (const auto& [line, text] : pending_allowed_)
      test_.allowed.push_back(parse_predicate(line, text));
    line_ = last;
    if (auto diags = validate(prog); !diags.empty())
      throw ParseError(line_, diags.front().message);
    for (const auto& f : test_.forbidden)
      for (const auto& a : test_.allowed)
        if (f.compatible_with(a))
          throw ParseError(line_, "forbidden and allowed predicates overlap");
  }

  const std::string& text_;
  std::size_t line_ = 0;
  LitmusTest test_;
  std::optional<ThreadId> current_;
  std::set<ThreadId> thread_ids_;
  std::vector<std::pair<std::size_t, std::string>> pending_forbidden_;
  std::vector<std::pair<std::size_t, std::string>> pending_allowed_;
};

}  // namespace

LitmusTest parse_litmus(const std::string& text) { return Parser(text).run(); }

LitmusTest load_litmus(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_litmus(ss.str());
}

std::string format_predicate(const Predicate& predicate, const Program& program)
{
  std::string out;
  for (std::size_t i = 0; i < predicate.terms.size(); ++i) {
    const auto& term = predicate.terms[i];
    if (i)
      out += " & ";
    if (const auto* reg = std::get_if<RegisterKey>(&term.target))
      out += "T" + std::to_string(reg->thread) + ":r" + std::to_string(reg->reg);
    else
      out += program.location_name(std::get<Location>(term.target));
    out += "=" + std::to_string(term.value);
  }
  return out;
}

std::string serialize_litmus(const LitmusTest& test)
{
  const auto& prog = test.program;
  std::ostringstream os;
  if (!prog.name.empty())
    os << "name: " << prog.name << "\n";
  // Locations are emitted in id order so that re-parsing interns the same ids.
  os << "init:";
  for (std::size_t loc = 0; loc < prog.location_names.size(); ++loc) {
    auto it = prog.initial_memory.find(static_cast<Location>(loc));
    os << " " << prog.location_names[loc] << "=" << (it == prog.initial_memory.end() ? 0 : it->second);
  }
  os << "\n";
  for (std::size_t t = 0; t < prog.threads.size(); ++t) {
    if (prog.threads[t].empty()) {
      os << "T" << t << " {}\n";
      continue;
    }
    os << "T" << t << ":\n";
    for (const auto& i : prog.threads[t]) {
      os << "  " << mnemonic(i.kind);
      if (is_load(i.kind))
        os << " r" << *i.dest << " [" << prog.location_name(*i.address) << "]";
      else if (is_store(i.kind))
        os << " [" << prog.location_name(*i.address) << "] " << i.value;
      os << "\n";
    }
  }
  for (const auto& p : test.forbidden)
    os << "forbidden: " << format_predicate(p, prog) << "\n";
  for (const auto& p : test.allowed)
    os << "allowed: " << format_predicate(p, prog) << "\n";
  return os.str();
}

}  // namespace louvre
