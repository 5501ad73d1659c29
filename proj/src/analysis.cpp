#include "rlab/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rlab/number_format.hpp"

namespace rlab {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) compensation_ += (sum_ - t) + x;
    else compensation_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Integral of exp(-x^2) over [a, b], a <= b, using erfc on the tails to avoid
// cancellation.
double gaussian_integral(double a, double b) {
  constexpr double half_sqrt_pi = 0.5 * 1.7724538509055160273;  // sqrt(pi) / 2
  if (a >= 0) return half_sqrt_pi * (std::erfc(a) - std::erfc(b));
  if (b <= 0) return half_sqrt_pi * (std::erfc(-b) - std::erfc(-a));
  return half_sqrt_pi * (std::erf(b) - std::erf(a));
}

// Integral of (R - |x|) over [a, b] inside one sign region of [-R, R].
double tent_integral(double a, double b, double radius) {
  const double mid = 0.5 * (a + b);
  return (b - a) * (radius - std::abs(mid));
}

}  // namespace

RadialWeight RadialWeight::triangular(double radius) {
  if (!(radius > 0) || !std::isfinite(radius)) throw std::invalid_argument("triangular weight radius must be > 0");
  return RadialWeight(Kind::Triangular, radius);
}

RadialWeight RadialWeight::parse(std::string_view text) {
  text = trim(text);
  if (text == "gaussian") return gaussian();
  if (text.starts_with("triangular:")) return triangular(parse_double(text.substr(11)));
  throw std::invalid_argument("weight must be 'gaussian' or 'triangular:R'");
}

double RadialWeight::operator()(double r) const noexcept {
  r = std::abs(r);
  if (kind_ == Kind::Gaussian) return std::exp(-r * r);
  return r < radius_ ? radius_ - r : 0.0;
}

std::string RadialWeight::to_string() const {
  return kind_ == Kind::Gaussian ? "gaussian" : "triangular:" + format_double(radius_);
}

double RadialWeight::integral(double a, double b) const {
  if (!(a <= b)) return 0.0;
  if (kind_ == Kind::Gaussian) return gaussian_integral(a, b);
  const double lo = std::max(a, -radius_);
  const double hi = std::min(b, radius_);
  if (!(lo < hi)) return 0.0;
  double total = 0.0;
  if (lo < 0) total += tent_integral(lo, std::min(hi, 0.0), radius_);
  if (hi > 0) total += tent_integral(std::max(lo, 0.0), hi, radius_);
  return total;
}

double weighted_mass(const StepFunction& u, const RadialWeight& w) {
  CompensatedSum total;
  const auto b = u.breakpoints();
  const auto v = u.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 0) total.add(v[i] * w.integral(b[i], b[i + 1]));
  }
  return total.value();
}

double polarization_gap(const StepFunction& u, const Halfspace& h, const RadialWeight& w) {
  return weighted_mass(polarize(u, h), w) - weighted_mass(u, w);
}

double hardy_littlewood_gap(const StepFunction& u, const StepFunction& v) {
  return inner_product(rearrange(u), rearrange(v)) - inner_product(u, v);
}

double cavalieri_gap(const StepFunction& u, double p) {
  return std::abs(lp_norm_pow(rearrange(u), p) - lp_norm_pow(u, p));
}

double contraction_gap(const StepFunction& u, const StepFunction& v, double p) {
  return lp_distance_pow(u, v, p) - lp_distance_pow(rearrange(u), rearrange(v), p);
}

double deviation_measure(const StepFunction& u, const StepFunction& v, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("deviation_measure: eps must be > 0");
  double total = 0.0;
  for_each_common_piece(u, v, [&](double a, double b, double x, double y) {
    if (std::abs(x - y) > eps) total += b - a;
  });
  return total;
}

SchemeRun converge_scheme(const StepFunction& u, const Schedule& schedule, const SchemeOptions& options) {
  if (options.n_max < 1) throw std::invalid_argument("converge_scheme: n_max must be >= 1");
  if (!(options.p >= 1.0)) throw std::invalid_argument("converge_scheme: p must be >= 1");
  if (!(options.eps > 0)) throw std::invalid_argument("converge_scheme: eps must be > 0");
  if (schedule.dimension() != 1) throw DimensionError("converge_scheme runs on the line");

  std::vector<Halfspace> halfspaces;
  halfspaces.reserve(options.n_max);
  for (std::uint64_t k = 1; k <= options.n_max; ++k) halfspaces.push_back(schedule.nth(k));

  SchemeRun run{{}, u, rearrange(u)};
  auto record = [&](std::uint64_t n) {
    const StepFunction& current = run.final_iterate;
    run.series.records.push_back({n, lp_distance(current, run.target, options.p),
                                  weighted_mass(current, options.weight), sup_distance(current, run.target),
                                  deviation_measure(current, run.target, options.eps),
                                  lp_norm(current, options.p)});
  };

  record(0);
  for (std::uint64_t n = 0; n < options.n_max; ++n) {
    if (options.order == SchemeOrder::Forward) {
      for (std::uint64_t k = 0; k <= n; ++k) run.final_iterate = polarize(run.final_iterate, halfspaces[k]);
    } else {
      for (std::uint64_t k = n + 1; k-- > 0;) run.final_iterate = polarize(run.final_iterate, halfspaces[k]);
    }
    record(n + 1);
  }
  return run;
}

SchemeRun converge_restricted(const StepFunction& u, double rho, const SchemeOptions& options) {
  return converge_scheme(u, Schedule(1, rho, ScheduleKind::RestrictedDyadic), options);
}

}  // namespace rlab
