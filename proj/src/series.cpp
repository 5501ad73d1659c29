#include "rlab/series.hpp"

#include <cmath>

#include "rlab/number_format.hpp"

namespace rlab {

std::optional<std::string> find_invariant_violation(const ConvergenceSeries& series, double norm_tolerance,
                                                    double mass_tolerance, bool mass_monotone) {
  if (series.records.empty()) return std::nullopt;
  const double norm0 = series.records.front().lp_norm;
  for (std::size_t k = 1; k < series.records.size(); ++k) {
    const auto& r = series.records[k];
    if (std::abs(r.lp_norm - norm0) > norm_tolerance) {
      return "norm drift at n=" + std::to_string(r.n) + ": " + format_double(r.lp_norm) + " vs " +
             format_double(norm0);
    }
    const double prev = series.records[k - 1].weighted_mass;
    if (mass_monotone && r.weighted_mass < prev - mass_tolerance) {
      return "weighted mass decreased at n=" + std::to_string(r.n) + ": " + format_double(r.weighted_mass) +
             " < " + format_double(prev);
    }
  }
  return std::nullopt;
}

void write_series_csv(std::ostream& out, const ConvergenceSeries& series) {
  out << "n,lp_error,weighted_mass,sup_error,deviation_measure\n";
  for (const auto& r : series.records) {
    out << r.n << ',' << format_double(r.lp_error) << ',' << format_double(r.weighted_mass) << ','
        << format_double(r.sup_error) << ',' << format_double(r.deviation_measure) << '\n';
  }
}

}  // namespace rlab
