#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rlab/halfspace.hpp"
#include "rlab/series.hpp"
#include "rlab/step1d.hpp"

namespace rlab {

/// Radial, radially nonincreasing weight: exp(-|x|^2), or max(0, R - |x|).
class RadialWeight {
 public:
  enum class Kind { Gaussian, Triangular };

  static RadialWeight gaussian() { return RadialWeight(Kind::Gaussian, 0.0); }
  static RadialWeight triangular(double radius);
  // "gaussian" or "triangular:R"
  static RadialWeight parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double radius() const noexcept { return radius_; }
  double operator()(double r) const noexcept;
  std::string to_string() const;

  // Integral of the weight over [a, b) on the line.
  double integral(double a, double b) const;

  friend bool operator==(const RadialWeight&, const RadialWeight&) = default;

 private:
  RadialWeight(Kind kind, double radius) : kind_(kind), radius_(radius) {}

  Kind kind_;
  double radius_;
};

double weighted_mass(const StepFunction& u, const RadialWeight& w);

// weighted_mass(u^H) - weighted_mass(u); nonnegative when 0 is in H.
double polarization_gap(const StepFunction& u, const Halfspace& h, const RadialWeight& w);

// int u* v* - int u v.
double hardy_littlewood_gap(const StepFunction& u, const StepFunction& v);

// | ||u*||_p^p - ||u||_p^p |.
double cavalieri_gap(const StepFunction& u, double p);

// ||u - v||_p^p - ||u* - v*||_p^p.
double contraction_gap(const StepFunction& u, const StepFunction& v, double p);

// Measure of {|u - v| > eps}.
double deviation_measure(const StepFunction& u, const StepFunction& v, double eps);

enum class SchemeOrder { Forward, Reversed };

struct SchemeOptions {
  std::uint64_t n_max = 60;
  double p = 1.0;
  RadialWeight weight = RadialWeight::triangular(16.0);
  double eps = 0.01;
  SchemeOrder order = SchemeOrder::Forward;
};

struct SchemeRun {
  ConvergenceSeries series;
  StepFunction final_iterate;
  StepFunction target;  // rearrange(u)
};

// u_{n+1} = u_n polarized successively by H_1, ..., H_{n+1} (Forward) or by
// H_{n+1}, ..., H_1 (Reversed). Records n = 0 .. n_max.
SchemeRun converge_scheme(const StepFunction& u, const Schedule& schedule, const SchemeOptions& options);

// converge_scheme with the restricted dyadic schedule of offsets in (0, rho].
SchemeRun converge_restricted(const StepFunction& u, double rho, const SchemeOptions& options);

}  // namespace rlab
