#include "rlab/halfspace.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "rlab/number_format.hpp"

namespace rlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Schedule offsets live on this grid.
constexpr double kOffsetQuantum = 0x1p-36;

Point2 unit_normal(double angle) {
  double c = std::cos(angle);
  double s = std::sin(angle);
  // Exact axis normals for multiples of pi/2.
  if (std::abs(c) < 1e-15) return {0.0, s > 0 ? 1.0 : -1.0};
  if (std::abs(s) < 1e-15) return {c > 0 ? 1.0 : -1.0, 0.0};
  return {c, s};
}

double angle_between(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > std::numbers::pi ? kTwoPi - d : d;
}

void require_line(const Halfspace& h) {
  if (h.dimension() != 1) throw DimensionError("operation needs a halfspace on the line");
}

void require_plane(const Halfspace& h) {
  if (h.dimension() != 2) throw DimensionError("operation needs a halfspace in the plane");
}

}  // namespace

Halfspace Halfspace::on_line(int sign, double offset) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("halfspace sign must be +1 or -1");
  if (!std::isfinite(offset)) throw std::invalid_argument("halfspace offset must be finite");
  return Halfspace(1, sign > 0 ? 0.0 : std::numbers::pi, {double(sign), 0.0}, offset);
}

Halfspace Halfspace::in_plane(double angle, double offset) {
  if (!std::isfinite(angle) || !std::isfinite(offset))
    throw std::invalid_argument("halfspace angle and offset must be finite");
  return Halfspace(2, angle, unit_normal(angle), offset);
}

int Halfspace::sign() const {
  require_line(*this);
  return normal_[0] > 0 ? 1 : -1;
}

double Halfspace::boundary_point() const {
  require_line(*this);
  return normal_[0] * offset_;
}

OriginPosition Halfspace::classify() const noexcept {
  if (offset_ > 0) return OriginPosition::Interior;
  if (offset_ == 0) return OriginPosition::Boundary;
  return OriginPosition::Excluded;
}

bool Halfspace::contains(double x) const {
  require_line(*this);
  return normal_[0] * x <= offset_;
}

bool Halfspace::contains(const Point2& x) const {
  require_plane(*this);
  return x[0] * normal_[0] + x[1] * normal_[1] <= offset_;
}

double reflect(const Halfspace& h, double x) {
  return 2.0 * h.boundary_point() - x;
}

Point2 reflect(const Halfspace& h, const Point2& x) {
  require_plane(h);
  const auto& n = h.normal();
  const double t = 2.0 * (x[0] * n[0] + x[1] * n[1] - h.offset());
  return {x[0] - t * n[0], x[1] - t * n[1]};
}

double halfspace_distance(const Halfspace& a, const Halfspace& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("halfspace_distance: dimension mismatch");
  return angle_between(a.angle(), b.angle()) + std::abs(a.offset() - b.offset());
}

std::string format_halfspace(const Halfspace& h) {
  const std::string nu = h.dimension() == 1 ? (h.sign() > 0 ? "1" : "-1") : format_double(h.angle());
  return "nu=" + nu + ",d=" + format_double(h.offset());
}

Halfspace parse_halfspace(std::string_view text, int dimension) {
  text = trim(text);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("halfspace: expected 'nu=...,d=...'");
  auto nu = trim(text.substr(0, comma));
  auto d = trim(text.substr(comma + 1));
  if (!nu.starts_with("nu=") || !d.starts_with("d="))
    throw std::invalid_argument("halfspace: expected 'nu=...,d=...'");
  nu.remove_prefix(3);
  d.remove_prefix(2);
  const double offset = parse_double(d);
  switch (dimension) {
    case 1: {
      const double s = parse_double(nu);
      if (s != 1.0 && s != -1.0) throw std::invalid_argument("halfspace: on the line nu must be 1 or -1");
      return Halfspace::on_line(s > 0 ? 1 : -1, offset);
    }
    case 2:
      return Halfspace::in_plane(parse_double(nu), offset);
    default:
      throw DimensionError("halfspace: dimension must be 1 or 2");
  }
}

double dyadic_fraction(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("dyadic_fraction: index starts at 1");
  const int level = std::bit_width(k);  // k in [2^(level-1), 2^level)
  const std::uint64_t j = k - (std::uint64_t{1} << (level - 1));
  return std::ldexp(double(2 * j + 1), -level);
}

Schedule::Schedule(int dimension, double rho, ScheduleKind kind)
    : dimension_(dimension), rho_(rho), kind_(kind) {
  if (dimension != 1 && dimension != 2) throw DimensionError("schedule dimension must be 1 or 2");
  if (!(rho > 0) || !std::isfinite(rho)) throw std::invalid_argument("schedule rho must be positive");
}

double Schedule::offset_term(std::uint64_t k) const {
  const double exact = rho_ * dyadic_fraction(k);
  const double snapped = std::nearbyint(exact / kOffsetQuantum) * kOffsetQuantum;
  return (snapped > 0 && snapped <= rho_) ? snapped : exact;
}

Halfspace Schedule::nth(std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("schedule index starts at 1");
  if (dimension_ == 1) {
    const std::uint64_t k = (n + 1) / 2;
    return Halfspace::on_line(n % 2 == 1 ? 1 : -1, offset_term(k));
  }
  // Cantor diagonal t = a + b holds pairs (a, b) with a = 1 .. t-1.
  std::uint64_t t = 2;
  std::uint64_t before = 0;  // pairs on earlier diagonals
  while (before + (t - 1) < n) {
    before += t - 1;
    ++t;
  }
  const std::uint64_t a = n - before;
  const std::uint64_t b = t - a;
  const double angle = a == 1 ? 0.0 : kTwoPi * dyadic_fraction(a - 1);
  return Halfspace::in_plane(angle, offset_term(b));
}

std::optional<std::uint64_t> density_witness(const Schedule& schedule, const Halfspace& target,
                                             double eps, std::uint64_t n_max) {
  if (target.dimension() != schedule.dimension())
    throw DimensionError("density_witness: dimension mismatch");
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (halfspace_distance(schedule.nth(n), target) < eps) return n;
  }
  return std::nullopt;
}

}  // namespace rlab
