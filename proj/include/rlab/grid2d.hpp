#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "rlab/halfspace.hpp"
#include "rlab/series.hpp"

namespace rlab {

class RadialWeight;

class GridFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonnegative values on the centered index square [-m, m]^2 with cell size h.
/// Cell (i, j) has center (i h, j h); storage is row-major with j outer.
class GridFunction {
 public:
  GridFunction(int half_width, double cell_size);
  // values.size() must be (2m+1)^2; all values finite and >= 0.
  static GridFunction from_values(int half_width, double cell_size, std::vector<double> values);

  int half_width() const noexcept { return m_; }
  double cell_size() const noexcept { return h_; }
  int side() const noexcept { return 2 * m_ + 1; }

  bool in_range(int i, int j) const noexcept { return i >= -m_ && i <= m_ && j >= -m_ && j <= m_; }
  // Zero outside the square.
  double at(int i, int j) const noexcept { return in_range(i, j) ? values_[index(i, j)] : 0.0; }
  void set(int i, int j, double value);

  std::span<const double> values() const noexcept { return values_; }
  std::vector<double> sorted_values() const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j + m_) * static_cast<std::size_t>(side()) + static_cast<std::size_t>(i + m_);
  }

  int m_;
  double h_;
  std::vector<double> values_;
};

enum class LatticeDirection { X, Y, DiagUp, DiagDown };

// Grid-preserving halfspace {i <= s}, {j <= s}, {i + j <= s} or {i - j <= s}
// in index units. X and Y take multiples of 1/2; diagonals take integers.
class LatticeHyperplane {
 public:
  LatticeHyperplane(LatticeDirection direction, double offset);

  LatticeDirection direction() const noexcept { return direction_; }
  double offset() const noexcept { return 0.5 * doubled_; }

  bool contains(int i, int j) const noexcept;
  std::pair<int, int> reflect(int i, int j) const noexcept;
  bool contains_origin() const noexcept { return doubled_ >= 0; }

  // The same halfspace in physical coordinates for cell size h.
  Halfspace to_halfspace(double cell_size) const;

  friend bool operator==(const LatticeHyperplane&, const LatticeHyperplane&) = default;

 private:
  LatticeDirection direction_;
  int doubled_;  // 2 s
};

// axis names the line S that stays fixed: Y rearranges every row (fixed j)
// about i = 0, X rearranges every column (fixed i) about j = 0.
enum class SteinerAxis { X, Y };

using MixedStep = std::variant<LatticeHyperplane, SteinerAxis>;

// Throws GridFitError when the reflected support box leaves the square.
GridFunction polarize_grid_exact(const GridFunction& u, const LatticeHyperplane& plane);

// Bilinear-interpolated polarization for an arbitrary planar halfspace.
// Reflected points within 1e-9 index units of a cell center read that cell.
GridFunction polarize_grid_interp(const GridFunction& u, const Halfspace& h);

// Bilinear interpolation in index coordinates with zero extension.
double interpolate(const GridFunction& u, double fi, double fj);

// Sorted values assigned to cells ordered by (i^2 + j^2, i, j).
GridFunction rearrange_grid(const GridFunction& u);

GridFunction steiner_rows(const GridFunction& u, SteinerAxis axis);

GridFunction apply_step(const GridFunction& u, const MixedStep& step);

// Riemann sums with cell area h^2.
double lp_distance(const GridFunction& u, const GridFunction& v, double p);
double lp_norm(const GridFunction& u, double p);
double sup_distance(const GridFunction& u, const GridFunction& v);
double deviation_measure(const GridFunction& u, const GridFunction& v, double eps);
double weighted_mass(const GridFunction& u, const RadialWeight& w);

// Triangular scheme over the steps (reused cyclically), recording the
// distance to rearrange_grid(u) for n = 0 .. n_max.
ConvergenceSeries mixed_schedule(const GridFunction& u, std::span<const MixedStep> steps, std::uint64_t n_max,
                                 double p, const RadialWeight& w, double eps);

}  // namespace rlab
