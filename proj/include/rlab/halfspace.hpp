#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rlab {

using Point2 = std::array<double, 2>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Where the origin sits relative to a closed halfspace.
enum class OriginPosition { Interior, Boundary, Excluded };

/// Closed halfspace {x : <x, normal> <= offset} on the line or in the plane.
///
/// On the line the normal is +1 or -1 (stored as angle 0 or pi). In the
/// plane the normal is (cos angle, sin angle); angles that are multiples of
/// pi/2 get an exact axis normal so that axis reflections stay exact.
class Halfspace {
 public:
  static Halfspace on_line(int sign, double offset);
  static Halfspace in_plane(double angle, double offset);

  int dimension() const noexcept { return dimension_; }
  double angle() const noexcept { return angle_; }
  const Point2& normal() const noexcept { return normal_; }
  double offset() const noexcept { return offset_; }

  // +1 or -1; throws DimensionError in the plane.
  int sign() const;
  // The boundary point sign * offset; line only.
  double boundary_point() const;

  OriginPosition classify() const noexcept;

  bool contains(double x) const;
  bool contains(const Point2& x) const;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;

 private:
  Halfspace(int dimension, double angle, Point2 normal, double offset)
      : dimension_(dimension), angle_(angle), normal_(normal), offset_(offset) {}

  int dimension_;
  double angle_;
  Point2 normal_;
  double offset_;
};

double reflect(const Halfspace& h, double x);
Point2 reflect(const Halfspace& h, const Point2& x);

// angle(normal1, normal2) + |offset1 - offset2|.
double halfspace_distance(const Halfspace& a, const Halfspace& b);

// `nu=<sign or angle>,d=<offset>`, 17 significant digits.
std::string format_halfspace(const Halfspace& h);
// Throws std::invalid_argument on malformed text.
Halfspace parse_halfspace(std::string_view text, int dimension);

// k-th term (k >= 1) of 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, 1/16, ...
double dyadic_fraction(std::uint64_t k);

enum class ScheduleKind { FullDyadic, RestrictedDyadic };

/// Deterministic dense enumeration of halfspaces with offsets in (0, rho].
///
/// Line: terms 2k-1 and 2k are (+1, rho*q_k) and (-1, rho*q_k) where q_k is
/// dyadic_fraction(k). Plane: Cantor pairing of the dyadic angle sequence
/// 0, pi, pi/2, 3pi/2, pi/4, ... with the offset sequence rho*q_k.
///
/// Offsets are rounded to a multiple of 2^-36 so that reflections of dyadic
/// breakpoints stay exactly representable; for rho = 1 this is a no-op.
class Schedule {
 public:
  Schedule(int dimension, double rho, ScheduleKind kind = ScheduleKind::FullDyadic);

  int dimension() const noexcept { return dimension_; }
  double rho() const noexcept { return rho_; }
  ScheduleKind kind() const noexcept { return kind_; }

  // n >= 1.
  Halfspace nth(std::uint64_t n) const;
  Halfspace next() { return nth(++cursor_); }
  std::uint64_t position() const noexcept { return cursor_; }

 private:
  double offset_term(std::uint64_t k) const;

  int dimension_;
  double rho_;
  ScheduleKind kind_;
  std::uint64_t cursor_ = 0;
};

// Smallest n <= n_max with distance(schedule.nth(n), target) < eps.
std::optional<std::uint64_t> density_witness(const Schedule& schedule, const Halfspace& target,
                                             double eps, std::uint64_t n_max);

}  // namespace rlab
