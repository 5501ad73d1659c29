#pragma once

#include <span>
#include <vector>

#include "rlab/halfspace.hpp"

namespace rlab {

/// Nonnegative piecewise-constant function on the line with bounded support.
///
/// Pieces are half-open: the value values()[i] holds on
/// [breakpoints()[i], breakpoints()[i+1]) and the function vanishes outside
/// [front, back). Instances are always canonical: adjacent values differ, the
/// first and last pieces are nonzero, and the zero function has no pieces.
class StepFunction {
 public:
  StepFunction() = default;

  // Validates (strictly increasing finite breakpoints, finite values >= 0,
  // one fewer value than breakpoints) and canonicalizes. Throws
  // std::invalid_argument otherwise.
  static StepFunction from_pieces(std::vector<double> breakpoints, std::vector<double> values);
  static StepFunction indicator(double a, double b, double height = 1.0);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t piece_count() const noexcept { return values_.size(); }
  bool is_zero() const noexcept { return values_.empty(); }

  double operator()(double x) const noexcept;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

inline double evaluate(const StepFunction& u, double x) { return u(x); }

// Calls f(a, b, u_value, v_value) for every interval [a, b) of the merged
// breakpoint grid of u and v, left to right.
template <class F>
void for_each_common_piece(const StepFunction& u, const StepFunction& v, F&& f) {
  const auto bu = u.breakpoints();
  const auto bv = v.breakpoints();
  std::vector<double> grid;
  grid.reserve(bu.size() + bv.size());
  std::size_t i = 0, j = 0;
  while (i < bu.size() || j < bv.size()) {
    double next;
    if (j == bv.size() || (i < bu.size() && bu[i] < bv[j])) {
      next = bu[i++];
    } else if (i == bu.size() || bv[j] < bu[i]) {
      next = bv[j++];
    } else {
      next = bu[i++];
      ++j;
    }
    grid.push_back(next);
  }
  // Walk both piece lists alongside the merged grid.
  std::size_t pu = 0, pv = 0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double a = grid[k];
    const double b = grid[k + 1];
    while (pu < bu.size() && bu[pu] <= a) ++pu;
    while (pv < bv.size() && bv[pv] <= a) ++pv;
    // pu is the first breakpoint > a; the piece is pu-1 when in range.
    const double uval = (pu >= 1 && pu < bu.size()) ? u.values()[pu - 1] : 0.0;
    const double vval = (pv >= 1 && pv < bv.size()) ? v.values()[pv - 1] : 0.0;
    f(a, b, uval, vval);
  }
}

StepFunction polarize(const StepFunction& u, const Halfspace& h);

// Symmetric decreasing rearrangement via the layer-cake construction.
StepFunction rearrange(const StepFunction& u);

// Lebesgue measure of {u > lambda}.
double superlevel_measure(const StepFunction& u, double lambda);

// |x|^p with exact products for p in {1, 2, 3}.
double abs_pow(double x, double p);

// Integral of |u - v|^p; p >= 1.
double lp_distance_pow(const StepFunction& u, const StepFunction& v, double p);
double lp_distance(const StepFunction& u, const StepFunction& v, double p);
double lp_norm_pow(const StepFunction& u, double p);
double lp_norm(const StepFunction& u, double p);

double sup_distance(const StepFunction& u, const StepFunction& v);

// Integral of u * v.
double inner_product(const StepFunction& u, const StepFunction& v);

}  // namespace rlab
