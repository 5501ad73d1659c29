#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rlab/step1d.hpp"

namespace rlab {

enum class Suite { Cavalieri, HardyLittlewood, Contraction, Polarization, LatticeFixedPoint };

std::string to_string(Suite suite);
// Accepts the CLI names; "all" expands to every suite.
std::vector<Suite> parse_suites(std::string_view text);

struct CaseFailure {
  Suite suite;
  std::uint64_t case_index;
  std::string detail;
  std::string inputs;  // the offending inputs in their file formats
};

struct SuiteTally {
  Suite suite;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
};

struct CheckReport {
  std::vector<SuiteTally> tallies;
  std::vector<CaseFailure> failures;

  bool passed() const { return failures.empty(); }
};

struct CheckOptions {
  std::uint64_t cases = 1000;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  // Extra case run first through every step1d suite.
  std::optional<StepFunction> fixture;
};

// Case k of every suite draws its inputs from case_rng(seed, k), so the
// report does not depend on the thread count.
CheckReport run_checks(std::span<const Suite> suites, const CheckOptions& options);

void write_report(std::ostream& out, const CheckReport& report);

}  // namespace rlab
