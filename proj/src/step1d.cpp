#include "rlab/step1d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace rlab {

StepFunction StepFunction::from_pieces(std::vector<double> breakpoints, std::vector<double> values) {
  if (breakpoints.empty() && values.empty()) return {};
  if (breakpoints.size() != values.size() + 1)
    throw std::invalid_argument("step function needs exactly one more breakpoint than values");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i])) throw std::invalid_argument("step function breakpoints must be finite");
    if (i > 0 && !(breakpoints[i - 1] < breakpoints[i]))
      throw std::invalid_argument("step function breakpoints must be strictly increasing");
  }
  for (double v : values) {
    if (!std::isfinite(v) || v < 0) throw std::invalid_argument("step function values must be finite and >= 0");
  }

  std::size_t first = 0;
  while (first < values.size() && values[first] == 0) ++first;
  if (first == values.size()) return {};
  std::size_t last = values.size() - 1;
  while (values[last] == 0) --last;

  StepFunction out;
  out.breakpoints_.push_back(breakpoints[first]);
  double current = values[first];
  for (std::size_t i = first + 1; i <= last; ++i) {
    const double v = values[i] == 0 ? 0.0 : values[i];  // folds -0
    if (v != current) {
      out.values_.push_back(current);
      out.breakpoints_.push_back(breakpoints[i]);
      current = v;
    }
  }
  out.values_.push_back(current);
  out.breakpoints_.push_back(breakpoints[last + 1]);
  return out;
}

StepFunction StepFunction::indicator(double a, double b, double height) {
  return from_pieces({a, b}, {height});
}

double StepFunction::operator()(double x) const noexcept {
  if (values_.empty() || x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

StepFunction polarize(const StepFunction& u, const Halfspace& h) {
  const double c = h.boundary_point();
  if (u.is_zero()) return u;
  const bool keeps_left = h.sign() > 0;  // H = {x <= c} or {x >= c}

  std::vector<double> grid;
  grid.reserve(2 * u.breakpoints().size() + 1);
  for (double b : u.breakpoints()) {
    grid.push_back(b);
    grid.push_back(2.0 * c - b);
  }
  grid.push_back(c);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> values(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double mid = 0.5 * (grid[i] + grid[i + 1]);
    const double here = u(mid);
    const double there = u(2.0 * c - mid);
    const bool inside = keeps_left ? mid < c : mid > c;
    values[i] = inside ? std::max(here, there) : std::min(here, there);
  }
  return StepFunction::from_pieces(std::move(grid), std::move(values));
}

StepFunction rearrange(const StepFunction& u) {
  if (u.is_zero()) return u;
  std::map<double, double, std::greater<>> level_mass;
  const auto b = u.breakpoints();
  const auto v = u.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 0) level_mass[v[i]] += b[i + 1] - b[i];
  }

  // Half-widths M_j / 2 of the nested superlevel intervals, innermost first.
  std::vector<double> radii;
  std::vector<double> levels;
  double cumulative = 0.0;
  for (const auto& [value, mass] : level_mass) {
    cumulative += mass;
    radii.push_back(0.5 * cumulative);
    levels.push_back(value);
  }

  const std::size_t k = levels.size();
  std::vector<double> breakpoints;
  std::vector<double> values;
  breakpoints.reserve(2 * k);
  values.reserve(2 * k - 1);
  for (std::size_t j = k; j-- > 0;) breakpoints.push_back(-radii[j]);
  for (std::size_t j = 0; j < k; ++j) breakpoints.push_back(radii[j]);
  for (std::size_t j = k; j-- > 1;) values.push_back(levels[j]);
  for (std::size_t j = 0; j < k; ++j) values.push_back(levels[j]);
  return StepFunction::from_pieces(std::move(breakpoints), std::move(values));
}

double superlevel_measure(const StepFunction& u, double lambda) {
  double total = 0.0;
  const auto b = u.breakpoints();
  const auto v = u.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > lambda) total += b[i + 1] - b[i];
  }
  return total;
}

double abs_pow(double x, double p) {
  x = std::abs(x);
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  if (p == 3.0) return x * x * x;
  return std::pow(x, p);
}

namespace {

void require_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("L^p exponent must satisfy p >= 1");
}

}  // namespace

double lp_distance_pow(const StepFunction& u, const StepFunction& v, double p) {
  require_exponent(p);
  double total = 0.0;
  for_each_common_piece(u, v, [&](double a, double b, double x, double y) {
    if (x != y) total += abs_pow(x - y, p) * (b - a);
  });
  return total;
}

double lp_distance(const StepFunction& u, const StepFunction& v, double p) {
  const double s = lp_distance_pow(u, v, p);
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

double lp_norm_pow(const StepFunction& u, double p) {
  require_exponent(p);
  double total = 0.0;
  const auto b = u.breakpoints();
  const auto v = u.values();
  for (std::size_t i = 0; i < v.size(); ++i) total += abs_pow(v[i], p) * (b[i + 1] - b[i]);
  return total;
}

double lp_norm(const StepFunction& u, double p) {
  const double s = lp_norm_pow(u, p);
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

double sup_distance(const StepFunction& u, const StepFunction& v) {
  double best = 0.0;
  for_each_common_piece(u, v, [&](double, double, double x, double y) { best = std::max(best, std::abs(x - y)); });
  return best;
}

double inner_product(const StepFunction& u, const StepFunction& v) {
  double total = 0.0;
  for_each_common_piece(u, v, [&](double a, double b, double x, double y) { total += x * y * (b - a); });
  return total;
}

}  // namespace rlab
