#include "rlab/generators.hpp"

#include <algorithm>
#include <numbers>
#include <set>
#include <vector>

namespace rlab {

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

StepFunction random_step_function(Rng& rng, int max_pieces) {
  const int pieces = uniform_int(rng, 1, max_pieces);
  std::set<int> ticks;
  while (static_cast<int>(ticks.size()) < pieces + 1) ticks.insert(uniform_int(rng, 0, 1024));
  std::vector<double> breakpoints;
  for (int t : ticks) breakpoints.push_back(-8.0 + t / 64.0);
  std::vector<double> values;
  for (int k = 0; k < pieces; ++k) {
    const bool interior = k > 0 && k + 1 < pieces;
    if (interior && uniform_int(rng, 0, 3) == 0) values.push_back(0.0);
    else values.push_back(uniform_int(rng, 1, 640) / 64.0);
  }
  return StepFunction::from_pieces(std::move(breakpoints), std::move(values));
}

Halfspace random_halfspace_1d(Rng& rng, OffsetRange range) {
  const int sign = uniform_int(rng, 0, 1) == 0 ? 1 : -1;
  int tick = 0;
  switch (range) {
    case OffsetRange::Any: tick = uniform_int(rng, -128, 128); break;
    case OffsetRange::NonNegative: tick = uniform_int(rng, 0, 128); break;
    case OffsetRange::Positive: tick = uniform_int(rng, 1, 128); break;
  }
  return Halfspace::on_line(sign, tick / 64.0);
}

Halfspace random_halfspace_2d(Rng& rng, double rho) {
  const double angle = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
  double offset = 0.0;
  while (offset == 0.0) offset = rho * (1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  return Halfspace::in_plane(angle, offset);
}

LatticeFunction random_lattice_function(Rng& rng, std::size_t max_support, int max_value, Site site_radius) {
  const auto size = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(max_support)));
  std::map<Site, double> values;
  std::uniform_int_distribution<Site> site(-site_radius, site_radius);
  while (values.size() < size) values.emplace(site(rng), double(uniform_int(rng, 1, max_value)));
  return LatticeFunction::from_map(std::move(values));
}

GridFunction random_grid_function(Rng& rng, int half_width, double cell_size) {
  GridFunction u(half_width, cell_size);
  for (int j = -half_width; j <= half_width; ++j)
    for (int i = -half_width; i <= half_width; ++i)
      if (uniform_int(rng, 0, 1) == 0) u.set(i, j, uniform_int(rng, 1, 128) / 16.0);
  return u;
}

LatticeHyperplane random_lattice_hyperplane(Rng& rng, int limit) {
  const auto direction = static_cast<LatticeDirection>(uniform_int(rng, 0, 3));
  if (direction == LatticeDirection::X || direction == LatticeDirection::Y)
    return LatticeHyperplane(direction, uniform_int(rng, -2 * limit, 2 * limit) / 2.0);
  return LatticeHyperplane(direction, uniform_int(rng, -limit, limit));
}

}  // namespace rlab
