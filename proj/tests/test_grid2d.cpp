#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "oracles.hpp"
#include "rlab/analysis.hpp"
#include "rlab/generators.hpp"
#include "rlab/grid2d.hpp"

using namespace rlab;

namespace {

// Random values confined to [-r, r]^2 inside a grid of half-width m.
GridFunction confined(Rng& rng, int m, int r, double h) {
  const auto small = random_grid_function(rng, r, h);
  GridFunction u(m, h);
  for (int j = -r; j <= r; ++j)
    for (int i = -r; i <= r; ++i) u.set(i, j, small.at(i, j));
  return u;
}

using Reflect = std::function<std::pair<int, int>(int, int)>;
using Inside = std::function<bool(int, int)>;

// Reflections written out from the hyperplane definitions.
std::pair<Reflect, Inside> explicit_plane(LatticeDirection dir, int s) {
  switch (dir) {
    case LatticeDirection::X:
      return {[s](int i, int j) { return std::pair{2 * s - i, j}; }, [s](int i, int) { return i <= s; }};
    case LatticeDirection::Y:
      return {[s](int i, int j) { return std::pair{i, 2 * s - j}; }, [s](int, int j) { return j <= s; }};
    case LatticeDirection::DiagUp:
      return {[s](int i, int j) { return std::pair{s - j, s - i}; }, [s](int i, int j) { return i + j <= s; }};
    case LatticeDirection::DiagDown:
      return {[s](int i, int j) { return std::pair{j + s, i - s}; }, [s](int i, int j) { return i - j <= s; }};
  }
  return {};
}

// Per-line sort, placing values by (t^2, t).
oracle::Cells steiner_oracle(const oracle::Cells& u, int m, bool rows) {
  std::vector<int> order;
  for (int t = -m; t <= m; ++t) order.push_back(t);
  std::sort(order.begin(), order.end(), [](int a, int b) {
    return std::pair{a * a, a} < std::pair{b * b, b};
  });
  oracle::Cells out;
  for (int fixed = -m; fixed <= m; ++fixed) {
    std::vector<double> line;
    for (int t = -m; t <= m; ++t) {
      const auto key = rows ? std::pair{t, fixed} : std::pair{fixed, t};
      auto it = u.find(key);
      line.push_back(it == u.end() ? 0.0 : it->second);
    }
    std::sort(line.rbegin(), line.rend());
    for (std::size_t r = 0; r < line.size(); ++r)
      if (line[r] > 0) out[rows ? std::pair{order[r], fixed} : std::pair{fixed, order[r]}] = line[r];
  }
  return out;
}

}  // namespace

TEST_CASE("grid construction and validation") {
  GridFunction u(2, 0.5);
  CHECK(u.side() == 5);
  CHECK(u.at(3, 0) == 0.0);
  u.set(-2, 1, 4.0);
  CHECK(u.at(-2, 1) == 4.0);
  CHECK(u.values()[(1 + 2) * 5 + 0] == 4.0);
  CHECK_THROWS_AS(u.set(0, 0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(u.set(3, 0, 1.0), std::out_of_range);
  CHECK_THROWS_AS(GridFunction(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction::from_values(1, 1.0, {1, 2}), std::invalid_argument);
}

TEST_CASE("lattice hyperplane offsets") {
  CHECK_NOTHROW(LatticeHyperplane(LatticeDirection::X, 0.5));
  CHECK_THROWS_AS(LatticeHyperplane(LatticeDirection::X, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(LatticeHyperplane(LatticeDirection::DiagUp, 0.5), std::invalid_argument);
  CHECK(LatticeHyperplane(LatticeDirection::Y, 0).contains_origin());
  CHECK_FALSE(LatticeHyperplane(LatticeDirection::DiagDown, -1).contains_origin());
}

TEST_CASE("lattice reflections are involutions matching the explicit maps") {
  for (auto dir : {LatticeDirection::X, LatticeDirection::Y, LatticeDirection::DiagUp, LatticeDirection::DiagDown}) {
    for (int s = -3; s <= 3; ++s) {
      const LatticeHyperplane plane(dir, s);
      const auto [reflect, inside] = explicit_plane(dir, s);
      for (int i = -5; i <= 5; ++i) {
        for (int j = -5; j <= 5; ++j) {
          const auto r = plane.reflect(i, j);
          CHECK(r == reflect(i, j));
          CHECK(plane.reflect(r.first, r.second) == std::pair{i, j});
          CHECK(plane.contains(i, j) == inside(i, j));
        }
      }
    }
  }
  const LatticeHyperplane half(LatticeDirection::X, 0.5);
  CHECK(half.reflect(0, 2) == std::pair{1, 2});
}

TEST_CASE("to_halfspace agrees with index membership") {
  const double h = 0.25;
  for (auto dir : {LatticeDirection::X, LatticeDirection::Y, LatticeDirection::DiagUp, LatticeDirection::DiagDown}) {
    for (int s = -2; s <= 2; ++s) {
      const LatticeHyperplane plane(dir, s);
      const auto hs = plane.to_halfspace(h);
      for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j) {
          const Point2 x{i * h, j * h};
          const double side = hs.normal()[0] * x[0] + hs.normal()[1] * x[1] - hs.offset();
          if (std::abs(side) > 1e-9) CHECK(hs.contains(x) == plane.contains(i, j));
          const auto r = reflect(hs, x);
          const auto ri = plane.reflect(i, j);
          CHECK(r[0] == doctest::Approx(ri.first * h));
          CHECK(r[1] == doctest::Approx(ri.second * h));
        }
    }
  }
}

TEST_CASE("polarize_grid_exact examples") {
  GridFunction u(3, 1.0);
  u.set(1, 1, 4.0);
  GridFunction expect(3, 1.0);
  expect.set(-1, -1, 4.0);
  CHECK(polarize_grid_exact(u, {LatticeDirection::DiagUp, 0}) == expect);

  // Symmetric decreasing about the origin in both axes.
  GridFunction sym(3, 1.0);
  sym.set(0, 0, 3);
  sym.set(1, 0, 2);
  sym.set(-1, 0, 2);
  sym.set(0, 1, 2);
  sym.set(0, -1, 2);
  CHECK(polarize_grid_exact(sym, {LatticeDirection::X, 0.5}) == sym);

  GridFunction pair(3, 1.0);
  pair.set(2, 0, 1.0);
  pair.set(-2, 0, 3.0);
  CHECK(polarize_grid_exact(pair, {LatticeDirection::X, 0}) == pair);
}

TEST_CASE("polarize_grid_exact matches the orbit-swap oracle") {
  Rng rng(12);
  for (int k = 0; k < 300; ++k) {
    const int m = 6;
    const auto u = confined(rng, m, 2, 0.5);
    const auto plane = random_lattice_hyperplane(rng, 2);
    if (plane.offset() != std::floor(plane.offset())) continue;  // the oracle map uses integer s
    const auto [reflect, inside] = explicit_plane(plane.direction(), int(plane.offset()));
    CHECK(oracle::to_cells(polarize_grid_exact(u, plane)) == oracle::polarize_cells(oracle::to_cells(u), m, reflect, inside));
  }
}

TEST_CASE("polarize_grid_exact preserves values, is idempotent and concentrates mass") {
  Rng rng(13);
  const auto w = RadialWeight::gaussian();
  for (int k = 0; k < 1000; ++k) {
    const auto u = confined(rng, 8, 3, 0.3);
    const auto plane = random_lattice_hyperplane(rng, 2);
    const auto v = polarize_grid_exact(u, plane);
    CHECK(v.sorted_values() == u.sorted_values());
    CHECK(polarize_grid_exact(v, plane) == v);
    if (plane.contains_origin()) CHECK(weighted_mass(v, w) >= weighted_mass(u, w) - 1e-12);
  }
}

TEST_CASE("grid weighted mass uses exp(-(i^2+j^2) h^2) times cell area") {
  GridFunction u(2, 0.5);
  u.set(1, 2, 3.0);
  CHECK(weighted_mass(u, RadialWeight::gaussian()) == doctest::Approx(3.0 * std::exp(-5 * 0.25) * 0.25));
}

TEST_CASE("polarization that does not fit the grid is an error") {
  GridFunction u(2, 1.0);
  u.set(2, 0, 1.0);
  CHECK_THROWS_AS(polarize_grid_exact(u, {LatticeDirection::X, -1}), GridFitError);
  CHECK_NOTHROW(polarize_grid_exact(u, {LatticeDirection::X, 1}));
}

TEST_CASE("interpolated polarization reduces to exact mode on lattice hyperplanes") {
  Rng rng(14);
  for (int k = 0; k < 300; ++k) {
    const double h = 0.3;
    const auto u = confined(rng, 8, 3, h);
    const auto plane = random_lattice_hyperplane(rng, 2);
    CHECK(sup_distance(polarize_grid_interp(u, plane.to_halfspace(h)), polarize_grid_exact(u, plane)) == 0.0);
  }
}

TEST_CASE("interpolation") {
  GridFunction u(1, 1.0);
  u.set(0, 0, 4.0);
  CHECK(interpolate(u, 0, 0) == 4.0);
  CHECK(interpolate(u, 0.5, 0) == 2.0);
  CHECK(interpolate(u, 0.5, 0.5) == 1.0);
  CHECK(interpolate(u, 1.5, 0) == 0.0);
}

TEST_CASE("constant radial function is unchanged by aligned interpolated polarization") {
  GridFunction u(6, 0.5);
  for (int j = -6; j <= 6; ++j)
    for (int i = -6; i <= 6; ++i)
      if (i * i + j * j <= 9) u.set(i, j, 2.0);
  for (const LatticeHyperplane plane :
       {LatticeHyperplane(LatticeDirection::X, 0.5), LatticeHyperplane(LatticeDirection::Y, 1),
        LatticeHyperplane(LatticeDirection::DiagUp, 0), LatticeHyperplane(LatticeDirection::DiagDown, 2)})
    CHECK(sup_distance(polarize_grid_interp(u, plane.to_halfspace(0.5)), u) < 1e-12);
}

TEST_CASE("interpolated polarization of an off-axis bump stays within the O(h) bound") {
  const int m = 30;
  const double h = 0.1;
  GridFunction u(m, h);
  const int ci = 6, cj = 3, rad = 5;
  for (int j = -m; j <= m; ++j)
    for (int i = -m; i <= m; ++i)
      if ((i - ci) * (i - ci) + (j - cj) * (j - cj) <= rad * rad) u.set(i, j, 1.0);
  const auto hs = Halfspace::in_plane(0.7, 0.13);
  const auto v = polarize_grid_interp(u, hs);

  // Continuous oracle: u as cell-constant function, polarized pointwise on a 4x finer grid.
  auto cell_value = [&](double x, double y) { return u.at(int(std::lround(x / h)), int(std::lround(y / h))); };
  const int fine = 4;
  const double fh = h / fine;
  double discrepancy = 0.0;
  for (int b = -m * fine - fine / 2; b < (m + 1) * fine - fine / 2; ++b) {
    for (int a = -m * fine - fine / 2; a < (m + 1) * fine - fine / 2; ++a) {
      const Point2 x{(a + 0.5) * fh, (b + 0.5) * fh};
      const Point2 r = reflect(hs, x);
      const double p = cell_value(x[0], x[1]);
      const double q = cell_value(r[0], r[1]);
      const double exact = hs.contains(x) ? std::max(p, q) : std::min(p, q);
      discrepancy += std::abs(exact - v.at(int(std::lround(x[0] / h)), int(std::lround(x[1] / h)))) * fh * fh;
    }
  }
  const double perimeter = 2 * std::numbers::pi * rad * h;
  CHECK(discrepancy < 2 * h * perimeter);
}

TEST_CASE("rearrange_grid") {
  GridFunction u(2, 1.0);
  u.set(1, 1, 9.0);
  u.set(-1, 0, 5.0);
  GridFunction expect(2, 1.0);
  expect.set(0, 0, 9.0);
  expect.set(-1, 0, 5.0);
  CHECK(rearrange_grid(u) == expect);
  CHECK(rearrange_grid(expect) == expect);

  const auto constant = GridFunction::from_values(1, 1.0, std::vector<double>(9, 2.5));
  CHECK(rearrange_grid(constant) == constant);

  Rng rng(15);
  for (int k = 0; k < 100; ++k) {
    const auto v = rearrange_grid(random_grid_function(rng, 4, 0.5));
    std::vector<std::tuple<int, int, int>> order;
    for (int j = -4; j <= 4; ++j)
      for (int i = -4; i <= 4; ++i) order.emplace_back(i * i + j * j, i, j);
    std::sort(order.begin(), order.end());
    for (std::size_t c = 0; c + 1 < order.size(); ++c)
      CHECK(v.at(std::get<1>(order[c]), std::get<2>(order[c])) >=
            v.at(std::get<1>(order[c + 1]), std::get<2>(order[c + 1])));
  }
}

TEST_CASE("steiner_rows") {
  GridFunction u(3, 1.0);
  u.set(2, 1, 3.0);
  GridFunction expect(3, 1.0);
  expect.set(0, 1, 3.0);
  CHECK(steiner_rows(u, SteinerAxis::Y) == expect);
  CHECK(steiner_rows(expect, SteinerAxis::Y) == expect);
  CHECK(steiner_rows(GridFunction(3, 1.0), SteinerAxis::X) == GridFunction(3, 1.0));

  Rng rng(16);
  for (int k = 0; k < 200; ++k) {
    const auto v = random_grid_function(rng, 4, 0.5);
    for (bool rows : {true, false}) {
      const auto s = steiner_rows(v, rows ? SteinerAxis::Y : SteinerAxis::X);
      CHECK(s.sorted_values() == v.sorted_values());
      CHECK(oracle::to_cells(s) == steiner_oracle(oracle::to_cells(v), 4, rows));
      CHECK(steiner_rows(s, rows ? SteinerAxis::Y : SteinerAxis::X) == s);
      const auto r = rearrange_grid(v);
      CHECK(steiner_rows(r, rows ? SteinerAxis::Y : SteinerAxis::X) == r);
    }
  }
}

TEST_CASE("grid metrics use cell area") {
  GridFunction u(1, 0.5), v(1, 0.5);
  u.set(0, 0, 2.0);
  v.set(1, 0, 1.0);
  CHECK(lp_distance(u, v, 1) == 0.75);
  CHECK(lp_norm(u, 2) == doctest::Approx(1.0));
  CHECK(sup_distance(u, v) == 2.0);
  CHECK(deviation_measure(u, v, 1.5) == 0.25);
  CHECK_THROWS_AS(lp_distance(u, GridFunction(2, 0.5), 1), std::invalid_argument);
}

namespace {

oracle::Cells brute_force_scheme(oracle::Cells u, int m, const std::vector<MixedStep>& steps, int n_max) {
  for (int n = 0; n < n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto& step = steps[k % steps.size()];
      if (const auto* plane = std::get_if<LatticeHyperplane>(&step)) {
        const auto [reflect, inside] = explicit_plane(plane->direction(), int(plane->offset()));
        u = oracle::polarize_cells(u, m, reflect, inside);
      } else {
        u = steiner_oracle(u, m, std::get<SteinerAxis>(step) == SteinerAxis::Y);
      }
    }
  }
  return u;
}

}  // namespace

TEST_CASE("mixed_schedule agrees with brute force on a small grid") {
  const std::vector<MixedStep> steps = {LatticeHyperplane(LatticeDirection::X, 0),
                                        LatticeHyperplane(LatticeDirection::Y, 0),
                                        LatticeHyperplane(LatticeDirection::DiagUp, 0),
                                        LatticeHyperplane(LatticeDirection::DiagDown, 0),
                                        SteinerAxis::X,
                                        SteinerAxis::Y};
  GridFunction u(2, 0.5);
  u.set(2, 1, 5.0);
  u.set(1, 1, 2.0);
  const int n_max = 8;
  const auto series = mixed_schedule(u, steps, n_max, 1.0, RadialWeight::gaussian(), 0.01);
  REQUIRE(series.records.size() == n_max + 1);
  CHECK(series.final().lp_error <= series.records.front().lp_error);

  const auto cells = brute_force_scheme(oracle::to_cells(u), 2, steps, n_max);
  const auto target = rearrange_grid(u);
  double err = 0.0;
  for (int j = -2; j <= 2; ++j)
    for (int i = -2; i <= 2; ++i) {
      auto it = cells.find({i, j});
      err += std::abs((it == cells.end() ? 0.0 : it->second) - target.at(i, j)) * 0.25;
    }
  CHECK(series.final().lp_error == err);
  for (std::size_t k = 1; k < series.records.size(); ++k)
    CHECK(series.records[k].weighted_mass >= series.records[k - 1].weighted_mass - 1e-12);
}

TEST_CASE("mixed_schedule with shifted hyperplanes on a larger grid") {
  const std::vector<MixedStep> steps = {LatticeHyperplane(LatticeDirection::X, 1),
                                        LatticeHyperplane(LatticeDirection::Y, -1),
                                        LatticeHyperplane(LatticeDirection::DiagUp, 0),
                                        LatticeHyperplane(LatticeDirection::DiagDown, 1),
                                        SteinerAxis::Y,
                                        LatticeHyperplane(LatticeDirection::X, -1),
                                        LatticeHyperplane(LatticeDirection::Y, 0),
                                        SteinerAxis::X};
  const int m = 10;
  GridFunction u(m, 0.5);
  u.set(3, -2, 7.0);
  u.set(4, -2, 3.0);
  u.set(3, -1, 1.0);
  const int n_max = 6;
  const auto series = mixed_schedule(u, steps, n_max, 1.0, RadialWeight::gaussian(), 0.01);
  CHECK(series.final().lp_error <= series.records.front().lp_error);

  const auto cells = brute_force_scheme(oracle::to_cells(u), m, steps, n_max);
  const auto target = oracle::to_cells(rearrange_grid(u));
  double err = 0.0;
  for (int j = -m; j <= m; ++j)
    for (int i = -m; i <= m; ++i) {
      auto a = cells.find({i, j});
      auto b = target.find({i, j});
      err += std::abs((a == cells.end() ? 0.0 : a->second) - (b == target.end() ? 0.0 : b->second)) * 0.25;
    }
  CHECK(series.final().lp_error == err);
}

TEST_CASE("mixed_schedule edge cases") {
  GridFunction u(2, 0.5);
  u.set(0, 0, 3.0);
  u.set(1, 0, 1.0);
  const auto target = rearrange_grid(u);
  const std::vector<MixedStep> steiner_only = {SteinerAxis::X, SteinerAxis::Y};
  for (const auto& r : mixed_schedule(target, steiner_only, 4, 1.0, RadialWeight::gaussian(), 0.01).records)
    CHECK(r.lp_error == 0.0);
  CHECK(mixed_schedule(u, steiner_only, 3, 2.0, RadialWeight::gaussian(), 0.01).records.size() == 4);
  CHECK_THROWS_AS(mixed_schedule(u, std::span<const MixedStep>{}, 3, 1.0, RadialWeight::gaussian(), 0.01),
                  std::invalid_argument);
}
