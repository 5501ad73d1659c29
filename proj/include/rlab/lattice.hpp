#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "rlab/series.hpp"

namespace rlab {

using Site = std::int64_t;

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finitely supported nonnegative function on the integers. Only strictly
// positive values are stored.
class LatticeFunction {
 public:
  LatticeFunction() = default;

  // Drops zeros; throws std::invalid_argument on negative or non-finite values.
  static LatticeFunction from_map(std::map<Site, double> values);

  double operator()(Site x) const noexcept;
  const std::map<Site, double>& entries() const noexcept { return values_; }
  std::size_t support_size() const noexcept { return values_.size(); }
  bool is_zero() const noexcept { return values_.empty(); }

  // Stored values sorted ascending.
  std::vector<double> sorted_values() const;

  friend bool operator==(const LatticeFunction&, const LatticeFunction&) = default;

 private:
  std::map<Site, double> values_;
};

// Position in the order 0, 1, -1, 2, -2, ...
constexpr std::uint64_t spiral_rank(Site x) noexcept {
  if (x > 0) return 2 * static_cast<std::uint64_t>(x) - 1;
  return 2 * static_cast<std::uint64_t>(-x);
}

constexpr Site site_at_rank(std::uint64_t r) noexcept {
  if (r % 2 == 1) return static_cast<Site>((r + 1) / 2);
  return -static_cast<Site>(r / 2);
}

constexpr bool spiral_precedes(Site a, Site b) noexcept { return spiral_rank(a) < spiral_rank(b); }

// The reflection x -> center - x.
struct LatticeInvolution {
  Site center = 0;

  constexpr Site operator()(Site x) const noexcept { return center - x; }
};

LatticeFunction rearrange_lattice(const LatticeFunction& u);

// Puts max(u(x), u(i(x))) on the spiral-earlier site of each orbit {x, i(x)}.
LatticeFunction polarize_involution(const LatticeFunction& u, LatticeInvolution i);

// Which map plays the first involution of the two-involution scheme. The
// default reflects about 0; Identity is the literal x -> x, which never moves
// anything and leaves the scheme stuck at a fixed point of x -> 1 - x alone.
enum class FirstInvolution { ReflectAtZero, Identity };

struct FixedPointResult {
  LatticeFunction fixed_point;
  std::size_t sweeps = 0;
};

// Alternates the first involution and x -> 1 - x until neither changes u.
// Throws ConvergenceError when max_sweeps is exhausted.
FixedPointResult two_involution_scheme(const LatticeFunction& u, std::size_t max_sweeps,
                                       FirstInvolution first = FirstInvolution::ReflectAtZero);

// One record per sweep of the two-involution scheme (n = 0 is the input),
// stopping at the first sweep that changes nothing.
ConvergenceSeries two_involution_series(const LatticeFunction& u, std::size_t max_sweeps, double p, double eps,
                                        FirstInvolution first = FirstInvolution::ReflectAtZero);

// The first count reflection centers 0, 1, -1, 2, -2, ...
std::vector<Site> spiral_centers(std::size_t count);

double lp_distance(const LatticeFunction& u, const LatticeFunction& v, double p);
double lp_norm(const LatticeFunction& u, double p);
double sup_distance(const LatticeFunction& u, const LatticeFunction& v);
// Number of sites where |u - v| > eps.
double deviation_count(const LatticeFunction& u, const LatticeFunction& v, double eps);

// Sum of u(x) / (1 + rank(x)); nondecreasing under every involution polarization.
double spiral_weighted_mass(const LatticeFunction& u);

// Triangular scheme u_{n+1} = u_n polarized by centers[0..n], recording the
// distance to rearrange_lattice(u) for n = 0 .. n_max. Centers are reused
// cyclically when n_max exceeds their count.
ConvergenceSeries schedule_scheme_lattice(const LatticeFunction& u, std::span<const Site> centers,
                                          std::uint64_t n_max, double p, double eps);

}  // namespace rlab
