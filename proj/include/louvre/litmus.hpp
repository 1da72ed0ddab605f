#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "louvre/program.hpp"

namespace louvre {

class ParseError : public std::runtime_error
{
public:
  ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
  {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Parses the line-oriented litmus format:
///
///     name: MP-release-acquire
///     init: A1=0 F=0
///     T0:
///       st [A1] 1
///       stlr [F] 1
///     T1:
///       ldar r0 [F]
///       ld r1 [A1]
///     forbidden: T1:r0=1 & T1:r1=0
///
/// `#` starts a comment. `T<n> {}` declares an empty thread. The result is
/// normalized and validated; any diagnostic is reported as a ParseError.
LitmusTest parse_litmus(const std::string& text);

LitmusTest load_litmus(const std::filesystem::path& path);

/// Canonical text form; parse_litmus(serialize_litmus(t)) == t.
std::string serialize_litmus(const LitmusTest& test);

std::string format_predicate(const Predicate& predicate, const Program& program);

}  // namespace louvre
