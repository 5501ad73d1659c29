#include "rlab/grid2d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <tuple>

#include "rlab/analysis.hpp"
#include "rlab/step1d.hpp"

namespace rlab {

namespace {

constexpr double kSnap = 1e-9;

double snap(double x) {
  const double r = std::nearbyint(x);
  return std::abs(x - r) < kSnap ? r : x;
}

}  // namespace

GridFunction::GridFunction(int half_width, double cell_size) : m_(half_width), h_(cell_size) {
  if (half_width < 0) throw std::invalid_argument("grid half-width must be >= 0");
  if (!(cell_size > 0) || !std::isfinite(cell_size)) throw std::invalid_argument("grid cell size must be > 0");
  values_.assign(static_cast<std::size_t>(side()) * static_cast<std::size_t>(side()), 0.0);
}

GridFunction GridFunction::from_values(int half_width, double cell_size, std::vector<double> values) {
  GridFunction out(half_width, cell_size);
  if (values.size() != out.values_.size()) throw std::invalid_argument("grid values must have (2m+1)^2 entries");
  for (double v : values) {
    if (!std::isfinite(v) || v < 0) throw std::invalid_argument("grid values must be finite and >= 0");
  }
  out.values_ = std::move(values);
  return out;
}

void GridFunction::set(int i, int j, double value) {
  if (!in_range(i, j)) throw std::out_of_range("grid index outside [-m, m]^2");
  if (!std::isfinite(value) || value < 0) throw std::invalid_argument("grid values must be finite and >= 0");
  values_[index(i, j)] = value;
}

std::vector<double> GridFunction::sorted_values() const {
  std::vector<double> out = values_;
  std::sort(out.begin(), out.end());
  return out;
}

LatticeHyperplane::LatticeHyperplane(LatticeDirection direction, double offset) : direction_(direction) {
  const double doubled = 2.0 * offset;
  if (!std::isfinite(offset) || doubled != std::nearbyint(doubled) || std::abs(doubled) > 1e9)
    throw std::invalid_argument("lattice hyperplane offset must be a multiple of 1/2");
  doubled_ = static_cast<int>(doubled);
  const bool diagonal = direction == LatticeDirection::DiagUp || direction == LatticeDirection::DiagDown;
  if (diagonal && doubled_ % 2 != 0) throw std::invalid_argument("diagonal hyperplane offset must be an integer");
}

bool LatticeHyperplane::contains(int i, int j) const noexcept {
  switch (direction_) {
    case LatticeDirection::X: return 2 * i <= doubled_;
    case LatticeDirection::Y: return 2 * j <= doubled_;
    case LatticeDirection::DiagUp: return 2 * (i + j) <= doubled_;
    case LatticeDirection::DiagDown: return 2 * (i - j) <= doubled_;
  }
  return false;
}

std::pair<int, int> LatticeHyperplane::reflect(int i, int j) const noexcept {
  const int s = doubled_ / 2;
  switch (direction_) {
    case LatticeDirection::X: return {doubled_ - i, j};
    case LatticeDirection::Y: return {i, doubled_ - j};
    case LatticeDirection::DiagUp: return {s - j, s - i};
    case LatticeDirection::DiagDown: return {j + s, i - s};
  }
  return {i, j};
}

Halfspace LatticeHyperplane::to_halfspace(double cell_size) const {
  const double s = offset() * cell_size;
  switch (direction_) {
    case LatticeDirection::X: return Halfspace::in_plane(0.0, s);
    case LatticeDirection::Y: return Halfspace::in_plane(std::numbers::pi / 2, s);
    case LatticeDirection::DiagUp: return Halfspace::in_plane(std::numbers::pi / 4, s / std::numbers::sqrt2);
    case LatticeDirection::DiagDown: return Halfspace::in_plane(-std::numbers::pi / 4, s / std::numbers::sqrt2);
  }
  throw std::logic_error("unknown lattice direction");
}

GridFunction polarize_grid_exact(const GridFunction& u, const LatticeHyperplane& plane) {
  const int m = u.half_width();
  int lo_i = m + 1, hi_i = -m - 1, lo_j = m + 1, hi_j = -m - 1;
  for (int j = -m; j <= m; ++j) {
    for (int i = -m; i <= m; ++i) {
      if (u.at(i, j) > 0) {
        lo_i = std::min(lo_i, i);
        hi_i = std::max(hi_i, i);
        lo_j = std::min(lo_j, j);
        hi_j = std::max(hi_j, j);
      }
    }
  }
  if (lo_i > hi_i) return u;
  // Reflections map boxes to boxes, so the corners decide the fit.
  for (auto [ci, cj] : {std::pair{lo_i, lo_j}, {lo_i, hi_j}, {hi_i, lo_j}, {hi_i, hi_j}}) {
    const auto [ri, rj] = plane.reflect(ci, cj);
    if (!u.in_range(ri, rj)) throw GridFitError("reflected support leaves the grid; enlarge the half-width");
  }

  GridFunction out = u;
  for (int j = -m; j <= m; ++j) {
    for (int i = -m; i <= m; ++i) {
      const auto [ri, rj] = plane.reflect(i, j);
      if ((ri == i && rj == j) || !plane.contains(i, j)) continue;
      const double here = u.at(i, j);
      const double there = u.at(ri, rj);
      if (here >= there) continue;
      out.set(i, j, there);
      if (u.in_range(ri, rj)) out.set(ri, rj, here);
    }
  }
  return out;
}

double interpolate(const GridFunction& u, double fi, double fj) {
  fi = snap(fi);
  fj = snap(fj);
  const double i0 = std::floor(fi);
  const double j0 = std::floor(fj);
  const double m = u.half_width();
  if (i0 < -m - 1 || i0 > m || j0 < -m - 1 || j0 > m) return 0.0;
  const double ti = fi - i0;
  const double tj = fj - j0;
  const int a = static_cast<int>(i0);
  const int b = static_cast<int>(j0);
  double value = (1 - ti) * (1 - tj) * u.at(a, b);
  if (ti > 0) value += ti * (1 - tj) * u.at(a + 1, b);
  if (tj > 0) value += (1 - ti) * tj * u.at(a, b + 1);
  if (ti > 0 && tj > 0) value += ti * tj * u.at(a + 1, b + 1);
  return value;
}

GridFunction polarize_grid_interp(const GridFunction& u, const Halfspace& h) {
  if (h.dimension() != 2) throw DimensionError("polarize_grid_interp needs a planar halfspace");
  // Work in index coordinates.
  const Halfspace scaled = Halfspace::in_plane(h.angle(), h.offset() / u.cell_size());
  const int m = u.half_width();
  GridFunction out(m, u.cell_size());
  for (int j = -m; j <= m; ++j) {
    for (int i = -m; i <= m; ++i) {
      const Point2 x{double(i), double(j)};
      const Point2 r = reflect(scaled, x);
      const double here = u.at(i, j);
      const double there = interpolate(u, r[0], r[1]);
      out.set(i, j, scaled.contains(x) ? std::max(here, there) : std::min(here, there));
    }
  }
  return out;
}

GridFunction rearrange_grid(const GridFunction& u) {
  const int m = u.half_width();
  std::vector<std::tuple<long, int, int>> cells;
  cells.reserve(u.values().size());
  for (int j = -m; j <= m; ++j)
    for (int i = -m; i <= m; ++i) cells.emplace_back(long(i) * i + long(j) * j, i, j);
  std::sort(cells.begin(), cells.end());
  auto values = u.sorted_values();
  std::reverse(values.begin(), values.end());
  GridFunction out(m, u.cell_size());
  for (std::size_t k = 0; k < cells.size(); ++k) out.set(std::get<1>(cells[k]), std::get<2>(cells[k]), values[k]);
  return out;
}

GridFunction steiner_rows(const GridFunction& u, SteinerAxis axis) {
  const int m = u.half_width();
  GridFunction out(m, u.cell_size());
  std::vector<double> line(static_cast<std::size_t>(u.side()));
  for (int fixed = -m; fixed <= m; ++fixed) {
    for (int t = -m; t <= m; ++t)
      line[static_cast<std::size_t>(t + m)] = axis == SteinerAxis::Y ? u.at(t, fixed) : u.at(fixed, t);
    std::sort(line.begin(), line.end(), std::greater<>());
    // Order 0, -1, 1, -2, 2, ... along the line, the same tie rule as rearrange_grid.
    for (std::size_t r = 0; r < line.size(); ++r) {
      const int t = r % 2 == 1 ? -int((r + 1) / 2) : int(r / 2);
      if (axis == SteinerAxis::Y) out.set(t, fixed, line[r]);
      else out.set(fixed, t, line[r]);
    }
  }
  return out;
}

GridFunction apply_step(const GridFunction& u, const MixedStep& step) {
  if (const auto* plane = std::get_if<LatticeHyperplane>(&step)) return polarize_grid_exact(u, *plane);
  return steiner_rows(u, std::get<SteinerAxis>(step));
}

namespace {

void require_same_shape(const GridFunction& u, const GridFunction& v) {
  if (u.half_width() != v.half_width() || u.cell_size() != v.cell_size())
    throw std::invalid_argument("grid functions have different shapes");
}

}  // namespace

double lp_distance(const GridFunction& u, const GridFunction& v, double p) {
  require_same_shape(u, v);
  if (!(p >= 1.0)) throw std::invalid_argument("l^p exponent must satisfy p >= 1");
  const double area = u.cell_size() * u.cell_size();
  double total = 0.0;
  for (std::size_t k = 0; k < u.values().size(); ++k) total += abs_pow(u.values()[k] - v.values()[k], p);
  total *= area;
  return p == 1.0 ? total : std::pow(total, 1.0 / p);
}

double lp_norm(const GridFunction& u, double p) { return lp_distance(u, GridFunction(u.half_width(), u.cell_size()), p); }

double sup_distance(const GridFunction& u, const GridFunction& v) {
  require_same_shape(u, v);
  double best = 0.0;
  for (std::size_t k = 0; k < u.values().size(); ++k) best = std::max(best, std::abs(u.values()[k] - v.values()[k]));
  return best;
}

double deviation_measure(const GridFunction& u, const GridFunction& v, double eps) {
  require_same_shape(u, v);
  double count = 0.0;
  for (std::size_t k = 0; k < u.values().size(); ++k)
    if (std::abs(u.values()[k] - v.values()[k]) > eps) count += 1.0;
  return count * u.cell_size() * u.cell_size();
}

double weighted_mass(const GridFunction& u, const RadialWeight& w) {
  const int m = u.half_width();
  const double h = u.cell_size();
  double total = 0.0;
  for (int j = -m; j <= m; ++j)
    for (int i = -m; i <= m; ++i)
      if (const double v = u.at(i, j); v > 0) total += v * w(h * std::hypot(double(i), double(j)));
  return total * h * h;
}

ConvergenceSeries mixed_schedule(const GridFunction& u, std::span<const MixedStep> steps, std::uint64_t n_max,
                                 double p, const RadialWeight& w, double eps) {
  if (steps.empty() && n_max > 0) throw std::invalid_argument("mixed_schedule: no steps");
  const GridFunction target = rearrange_grid(u);
  ConvergenceSeries series;
  auto record = [&](std::uint64_t n, const GridFunction& current) {
    series.records.push_back({n, lp_distance(current, target, p), weighted_mass(current, w),
                              sup_distance(current, target), deviation_measure(current, target, eps),
                              lp_norm(current, p)});
  };
  GridFunction current = u;
  record(0, current);
  for (std::uint64_t n = 0; n < n_max; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) current = apply_step(current, steps[k % steps.size()]);
    record(n + 1, current);
  }
  return series;
}

}  // namespace rlab
