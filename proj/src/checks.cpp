#include "rlab/checks.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "rlab/analysis.hpp"
#include "rlab/generators.hpp"
#include "rlab/io.hpp"
#include "rlab/lattice.hpp"
#include "rlab/number_format.hpp"

namespace rlab {

namespace {

constexpr double kTolerance = 1e-12;
constexpr double kEqualityTolerance = 1e-9;
constexpr std::size_t kMaxSweeps = 10000;

struct CaseResult {
  bool ok = true;
  std::string detail;
  std::string inputs;
};

std::string dump(const StepFunction& u, const char* name) {
  std::ostringstream out;
  out << "# " << name << '\n';
  write_step_csv(out, u);
  return out.str();
}

RadialWeight random_weight(Rng& rng) {
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) return RadialWeight::gaussian();
  return RadialWeight::triangular(std::uniform_int_distribution<int>(16, 256)(rng) / 16.0);
}

CaseResult check_cavalieri(const StepFunction& u) {
  for (double p : {1.0, 2.0, 3.0}) {
    const double gap = cavalieri_gap(u, p);
    if (!(gap < kTolerance))
      return {false, "cavalieri_gap(p=" + format_double(p) + ") = " + format_double(gap), dump(u, "u")};
  }
  return {};
}

CaseResult check_hardy_littlewood(const StepFunction& u, const StepFunction& v) {
  const double gap = hardy_littlewood_gap(u, v);
  if (gap >= -kTolerance) return {};
  return {false, "hardy_littlewood_gap = " + format_double(gap), dump(u, "u") + dump(v, "v")};
}

CaseResult check_contraction(const StepFunction& u, const StepFunction& v) {
  for (double p : {1.0, 2.0, 3.0}) {
    const double gap = contraction_gap(u, v, p);
    if (!(gap >= -kTolerance))
      return {false, "contraction_gap(p=" + format_double(p) + ") = " + format_double(gap), dump(u, "u") + dump(v, "v")};
  }
  return {};
}

CaseResult check_polarization(const StepFunction& u, Rng& rng) {
  const Halfspace h = random_halfspace_1d(rng, OffsetRange::NonNegative);
  const RadialWeight w = random_weight(rng);
  const std::string where = "# halfspace " + format_halfspace(h) + "\n";
  const double gap = polarization_gap(u, h, w);
  if (!(gap >= -kTolerance))
    return {false, "polarization_gap(" + w.to_string() + ") = " + format_double(gap), where + dump(u, "u")};

  const Halfspace interior = random_halfspace_1d(rng, OffsetRange::Positive);
  const double gauss_gap = polarization_gap(u, interior, RadialWeight::gaussian());
  if (gauss_gap < kTolerance) {
    const double moved = lp_distance(u, polarize(u, interior), 1.0);
    if (!(moved < kEqualityTolerance)) {
      return {false,
              "gaussian polarization_gap = " + format_double(gauss_gap) + " but ||u - u^H||_1 = " + format_double(moved),
              "# halfspace " + format_halfspace(interior) + "\n" + dump(u, "u")};
    }
  }
  return {};
}

CaseResult check_lattice_fixed_point(Rng& rng) {
  const LatticeFunction u = random_lattice_function(rng);
  auto inputs = [&] {
    std::ostringstream out;
    out << "# u\n";
    write_lattice_csv(out, u);
    return out.str();
  };
  try {
    const auto result = two_involution_scheme(u, kMaxSweeps);
    if (!(result.fixed_point == rearrange_lattice(u)))
      return {false, "two-involution fixed point differs from rearrange_lattice", inputs()};
    if (result.fixed_point.sorted_values() != u.sorted_values())
      return {false, "value multiset changed", inputs()};
  } catch (const ConvergenceError& e) {
    return {false, e.what(), inputs()};
  }
  return {};
}

CaseResult run_case(Suite suite, std::uint64_t index, const CheckOptions& options) {
  Rng rng = case_rng(options.seed, index);
  if (suite == Suite::LatticeFixedPoint) return check_lattice_fixed_point(rng);
  const bool fixture_case = index == options.cases;
  const StepFunction u = fixture_case ? *options.fixture : random_step_function(rng);
  switch (suite) {
    case Suite::Cavalieri: return check_cavalieri(u);
    case Suite::HardyLittlewood: return check_hardy_littlewood(u, random_step_function(rng));
    case Suite::Contraction: return check_contraction(u, random_step_function(rng));
    case Suite::Polarization: return check_polarization(u, rng);
    case Suite::LatticeFixedPoint: break;
  }
  return {};
}

}  // namespace

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::Cavalieri: return "cavalieri";
    case Suite::HardyLittlewood: return "hardy-littlewood";
    case Suite::Contraction: return "contraction";
    case Suite::Polarization: return "polarization";
    case Suite::LatticeFixedPoint: return "lattice-fixed-point";
  }
  return "unknown";
}

std::vector<Suite> parse_suites(std::string_view text) {
  text = trim(text);
  const std::vector<Suite> all{Suite::Cavalieri, Suite::HardyLittlewood, Suite::Contraction, Suite::Polarization,
                               Suite::LatticeFixedPoint};
  if (text == "all") return all;
  for (Suite s : all)
    if (text == to_string(s)) return {s};
  throw std::invalid_argument("unknown suite '" + std::string(text) + "'");
}

CheckReport run_checks(std::span<const Suite> suites, const CheckOptions& options) {
  struct Job {
    Suite suite;
    std::uint64_t index;
  };
  std::vector<Job> jobs;
  for (Suite s : suites) {
    const bool with_fixture = options.fixture.has_value() && s != Suite::LatticeFixedPoint;
    for (std::uint64_t k = 0; k < options.cases + (with_fixture ? 1 : 0); ++k) jobs.push_back({s, k});
  }

  std::vector<CaseResult> results(jobs.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t k = cursor++; k < jobs.size(); k = cursor++) results[k] = run_case(jobs[k].suite, jobs[k].index, options);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  CheckReport report;
  for (Suite s : suites) report.tallies.push_back({s, 0, 0});
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    auto& tally = *std::find_if(report.tallies.begin(), report.tallies.end(),
                                [&](const SuiteTally& t) { return t.suite == jobs[k].suite; });
    ++tally.cases;
    if (!results[k].ok) {
      ++tally.failures;
      report.failures.push_back({jobs[k].suite, jobs[k].index, results[k].detail, results[k].inputs});
    }
  }
  return report;
}

void write_report(std::ostream& out, const CheckReport& report) {
  for (const auto& t : report.tallies) {
    out << (t.failures == 0 ? "PASS " : "FAIL ") << to_string(t.suite) << ": " << t.cases - t.failures << '/'
        << t.cases << " cases\n";
  }
  for (const auto& f : report.failures) {
    out << "\ncounterexample " << to_string(f.suite) << " case " << f.case_index << ": " << f.detail << '\n'
        << f.inputs;
  }
}

}  // namespace rlab
