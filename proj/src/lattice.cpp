#include "rlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "rlab/step1d.hpp"

namespace rlab {

LatticeFunction LatticeFunction::from_map(std::map<Site, double> values) {
  LatticeFunction out;
  for (const auto& [site, value] : values) {
    if (!std::isfinite(value) || value < 0)
      throw std::invalid_argument("lattice function values must be finite and >= 0");
    if (value > 0) out.values_.emplace_hint(out.values_.end(), site, value);
  }
  return out;
}

double LatticeFunction::operator()(Site x) const noexcept {
  const auto it = values_.find(x);
  return it == values_.end() ? 0.0 : it->second;
}

std::vector<double> LatticeFunction::sorted_values() const {
  std::vector<double> out;
  out.reserve(values_.size());
  for (const auto& entry : values_) out.push_back(entry.second);
  std::sort(out.begin(), out.end());
  return out;
}

LatticeFunction rearrange_lattice(const LatticeFunction& u) {
  auto values = u.sorted_values();
  std::map<Site, double> out;
  std::uint64_t rank = 0;
  for (auto it = values.rbegin(); it != values.rend(); ++it) out.emplace(site_at_rank(rank++), *it);
  return LatticeFunction::from_map(std::move(out));
}

LatticeFunction polarize_involution(const LatticeFunction& u, LatticeInvolution i) {
  std::map<Site, double> out;
  for (const auto& [x, value] : u.entries()) {
    const Site y = i(x);
    if (y == x) {
      out[x] = value;
      continue;
    }
    // Each orbit is handled once, from its smaller site or from its only
    // supported site.
    const double partner = u(y);
    if (partner > 0 && y < x) continue;
    const Site lead = spiral_precedes(x, y) ? x : y;
    const Site trail = lead == x ? y : x;
    out[lead] = std::max(value, partner);
    out[trail] = std::min(value, partner);
  }
  return LatticeFunction::from_map(std::move(out));
}

FixedPointResult two_involution_scheme(const LatticeFunction& u, std::size_t max_sweeps, FirstInvolution first) {
  if (max_sweeps == 0) throw std::invalid_argument("two_involution_scheme: max_sweeps must be >= 1");
  LatticeFunction current = u;
  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    LatticeFunction next = first == FirstInvolution::Identity ? current
                                                               : polarize_involution(current, {0});
    next = polarize_involution(next, {1});
    if (next == current) return {std::move(current), sweep};
    current = std::move(next);
  }
  throw ConvergenceError("two_involution_scheme: no fixed point within " + std::to_string(max_sweeps) +
                         " sweeps");
}

std::vector<Site> spiral_centers(std::size_t count) {
  std::vector<Site> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) out.push_back(site_at_rank(r));
  return out;
}

namespace {

template <class F>
void for_each_union_site(const LatticeFunction& u, const LatticeFunction& v, F&& f) {
  std::set<Site> sites;
  for (const auto& e : u.entries()) sites.insert(e.first);
  for (const auto& e : v.entries()) sites.insert(e.first);
  for (Site x : sites) f(u(x), v(x));
}

}  // namespace

double lp_distance(const LatticeFunction& u, const LatticeFunction& v, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("l^p exponent must satisfy p >= 1");
  double total = 0.0;
  for_each_union_site(u, v, [&](double a, double b) { total += abs_pow(a - b, p); });
  return p == 1.0 ? total : std::pow(total, 1.0 / p);
}

double lp_norm(const LatticeFunction& u, double p) { return lp_distance(u, LatticeFunction{}, p); }

double sup_distance(const LatticeFunction& u, const LatticeFunction& v) {
  double best = 0.0;
  for_each_union_site(u, v, [&](double a, double b) { best = std::max(best, std::abs(a - b)); });
  return best;
}

double deviation_count(const LatticeFunction& u, const LatticeFunction& v, double eps) {
  double count = 0.0;
  for_each_union_site(u, v, [&](double a, double b) {
    if (std::abs(a - b) > eps) count += 1.0;
  });
  return count;
}

double spiral_weighted_mass(const LatticeFunction& u) {
  // Fixed summation order: ascending rank.
  std::vector<std::pair<std::uint64_t, double>> terms;
  terms.reserve(u.support_size());
  for (const auto& [x, value] : u.entries()) terms.emplace_back(spiral_rank(x), value);
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (const auto& [rank, value] : terms) total += value / (1.0 + double(rank));
  return total;
}

namespace {

ConvergenceRecord make_record(std::uint64_t n, const LatticeFunction& current, const LatticeFunction& target,
                              double p, double eps) {
  return {n, lp_distance(current, target, p), spiral_weighted_mass(current), sup_distance(current, target),
          deviation_count(current, target, eps), lp_norm(current, p)};
}

}  // namespace

ConvergenceSeries two_involution_series(const LatticeFunction& u, std::size_t max_sweeps, double p, double eps,
                                        FirstInvolution first) {
  const LatticeFunction target = rearrange_lattice(u);
  ConvergenceSeries series;
  auto record = [&](std::uint64_t n, const LatticeFunction& current) {
    series.records.push_back(make_record(n, current, target, p, eps));
  };
  LatticeFunction current = u;
  record(0, current);
  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    LatticeFunction next = first == FirstInvolution::Identity ? current : polarize_involution(current, {0});
    next = polarize_involution(next, {1});
    const bool fixed = next == current;
    current = std::move(next);
    record(sweep, current);
    if (fixed) break;
  }
  return series;
}

ConvergenceSeries schedule_scheme_lattice(const LatticeFunction& u, std::span<const Site> centers,
                                          std::uint64_t n_max, double p, double eps) {
  if (centers.empty() && n_max > 0) throw std::invalid_argument("schedule_scheme_lattice: no centers");
  const LatticeFunction target = rearrange_lattice(u);
  ConvergenceSeries series;
  auto record = [&](std::uint64_t n, const LatticeFunction& current) {
    series.records.push_back(make_record(n, current, target, p, eps));
  };
  LatticeFunction current = u;
  record(0, current);
  for (std::uint64_t n = 0; n < n_max; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) current = polarize_involution(current, {centers[k % centers.size()]});
    record(n + 1, current);
  }
  return series;
}

}  // namespace rlab
