#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rlab {

struct ConvergenceRecord {
  std::uint64_t n = 0;
  double lp_error = 0.0;           // ||u_n - u*||_p
  double weighted_mass = 0.0;      // integral of u_n * w
  double sup_error = 0.0;          // sup |u_n - u*|
  double deviation_measure = 0.0;  // measure{|u_n - u*| > eps}
  double lp_norm = 0.0;            // ||u_n||_p; not part of the CSV
};

struct ConvergenceSeries {
  std::vector<ConvergenceRecord> records;

  const ConvergenceRecord& final() const { return records.back(); }
};

// Describes the first record where ||u_n||_p drifts from ||u_0||_p by more
// than norm_tolerance, or (when mass_monotone) where the weighted mass drops
// by more than mass_tolerance. Empty when the series is clean.
std::optional<std::string> find_invariant_violation(const ConvergenceSeries& series, double norm_tolerance,
                                                    double mass_tolerance, bool mass_monotone = true);

// Header `n,lp_error,weighted_mass,sup_error,deviation_measure`, one row per record.
void write_series_csv(std::ostream& out, const ConvergenceSeries& series);

}  // namespace rlab
