#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "louvre/program.hpp"
#include "louvre/version.hpp"

namespace louvre {

/// A candidate global memory order: every instruction of the program exactly
/// once, full fences included as barrier markers.
using GlobalOrder = std::vector<InstrRef>;

using OutcomeSet = std::set<Outcome>;

/// Versions per thread, indexed by po-index; empty for full fences.
using VersionMap = std::vector<std::vector<std::optional<Version>>>;

enum class Semantics { RCSC, VSR };

struct OracleOptions
{
  bool strict_fence_order = true;
  std::size_t max_accesses = 12;
};

struct VsrOptions
{
  bool strict_fence_order = true;
};

class OracleBoundExceeded : public std::runtime_error
{
public:
  OracleBoundExceeded(std::size_t accesses, std::size_t bound);
  std::size_t accesses() const { return accesses_; }

private:
  std::size_t accesses_;
};

/// Ordering axioms of RC_sc over a full order:
///   RC1  FF(X), X <p Y        => X <m Y
///   RC2  FF(Y), X <p Y        => X <m Y
///   RC3  LDAR(X), X <p Y      => X <m Y
///   RC4  STRL(Y), X <p Y      => X <m Y
///   RC5  X, Y ordering, X <p Y => X <m Y
/// plus same-thread same-location store order. The load-value rule RC6 then
/// determines the outcome (outcome_of). Throws std::invalid_argument on a
/// malformed permutation.
bool check_rcsc(const Program& program, const GlobalOrder& order);

/// As above, and additionally requires every load in `observed` to hold the
/// value the load-value rule gives for `order`.
bool check_rcsc(const Program& program, const GlobalOrder& order, const Outcome& observed);

/// Applies the load-value rule literally: a load reads the <m-latest
/// same-location store among those po-before it or <m-before it, or the
/// initial value. Final memory is the <m-last store per location.
Outcome outcome_of(const Program& program, const GlobalOrder& order);

/// Versions each thread would receive at issue (no overflow, 31-bit registers).
VersionMap assign_program_versions(const Program& program);

/// Versioning semantic rules:
///   VSR1  X <p Y, v_x < v_y           => X <m Y
///   VSR2  LDAR(X), X <p Y, v_x == v_y => X <m Y
/// plus the completion-side guarantees of the store buffer (same-version
/// store-releases complete in age order; same-location stores in po order)
/// and, when strict, STRL(X) <p LDAR(Y) => X <m Y. Full-fence markers are
/// unconstrained. The load-value rule (VSR3) is the same as RC6.
bool check_vsr(const Program& program, const VersionMap& versions, const GlobalOrder& order, VsrOptions options = {});

/// Every outcome of a global order accepted by the chosen checker.
/// Throws OracleBoundExceeded if the program has more than max_accesses accesses.
OutcomeSet enumerate_outcomes(const Program& program, Semantics semantics, const OracleOptions& options = {});

struct EquivalenceReport
{
  bool equal = true;
  OutcomeSet rcsc_only;
  OutcomeSet vsr_only;
};

EquivalenceReport equivalence_report(const Program& program, const OracleOptions& options = {});

/// The pairwise "must precede" relation used by the enumerator, over accesses
/// only (fences folded in). Exposed for tests.
struct AccessOrder
{
  std::vector<InstrRef> accesses;          // flattened, thread-major
  std::vector<std::uint64_t> predecessors;  // bitmask over access indices
};

AccessOrder access_order(const Program& program, Semantics semantics, bool strict_fence_order);

}  // namespace louvre
