// rearrange_lab: polarization and symmetric rearrangement experiments.
//
// Exit codes: 0 success, 1 property check failed, 2 usage or parse error,
// 3 grid fit error, 4 invariant violated during `converge`.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rlab/analysis.hpp"
#include "rlab/checks.hpp"
#include "rlab/grid2d.hpp"
#include "rlab/halfspace.hpp"
#include "rlab/io.hpp"
#include "rlab/lattice.hpp"
#include "rlab/number_format.hpp"

namespace {

using namespace rlab;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitInvariant = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  std::string output;
  std::string engine;  // empty: infer from the input header
  double p = 1.0;
  double rho = 1.0;
  std::uint64_t n_max = 60;
  double eps = 0.01;
  std::string weight = "triangular:16";
  std::uint64_t seed = 42;
  std::string order = "forward";

  // polarize
  std::string halfspace;
  std::string involution;
  std::string hyperplane;

  // converge, lattice and grid engines
  std::string scheme = "triangular";
  std::string first_involution = "reflect";
  std::size_t max_sweeps = 10000;
  std::string steps = "X:0.5,Y:0.5,DiagUp:0,DiagDown:0,SteinerX,SteinerY";

  // check
  std::string suite = "all";
  std::uint64_t cases = 1000;

  // schedule
  int dim = 1;
  std::uint64_t count = 0;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") std::cout << text;
  else write_file(cfg.output, text);
}

Engine resolve_engine(const Config& cfg) {
  if (!cfg.engine.empty()) return parse_engine(cfg.engine);
  return detect_engine_file(cfg.input);
}

template <class F>
auto parse_input(const Config& cfg, F&& reader) {
  std::istringstream in(read_file(cfg.input));
  return reader(in);
}

LatticeInvolution parse_involution(std::string_view text) {
  text = trim(text);
  if (!text.starts_with("c=")) throw std::invalid_argument("involution must look like 'c=<integer>'");
  return {parse_integer<Site>(text.substr(2))};
}

LatticeDirection parse_direction(std::string_view text) {
  if (text == "X") return LatticeDirection::X;
  if (text == "Y") return LatticeDirection::Y;
  if (text == "DiagUp") return LatticeDirection::DiagUp;
  if (text == "DiagDown") return LatticeDirection::DiagDown;
  throw std::invalid_argument("direction must be X, Y, DiagUp or DiagDown");
}

// `X:0.5`, `DiagUp:-1`
LatticeHyperplane parse_hyperplane(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("hyperplane must look like '<direction>:<offset>'");
  return LatticeHyperplane(parse_direction(text.substr(0, colon)), parse_double(text.substr(colon + 1)));
}

std::vector<MixedStep> parse_steps(std::string_view text) {
  std::vector<MixedStep> steps;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto item = trim(text.substr(start, end - start));
    if (item == "SteinerX") steps.emplace_back(SteinerAxis::X);
    else if (item == "SteinerY") steps.emplace_back(SteinerAxis::Y);
    else steps.emplace_back(parse_hyperplane(item));
    start = end + 1;
  }
  return steps;
}

int cmd_polarize(const Config& cfg) {
  std::ostringstream out;
  switch (resolve_engine(cfg)) {
    case Engine::Step1d: {
      if (cfg.halfspace.empty()) throw UsageError("step1d polarize needs --halfspace");
      const auto u = parse_input(cfg, read_step_csv);
      write_step_csv(out, polarize(u, parse_halfspace(cfg.halfspace, 1)));
      break;
    }
    case Engine::Lattice: {
      if (cfg.involution.empty()) throw UsageError("lattice polarize needs --involution c=<integer>");
      const auto u = parse_input(cfg, read_lattice_csv);
      write_lattice_csv(out, polarize_involution(u, parse_involution(cfg.involution)));
      break;
    }
    case Engine::Grid2d: {
      const auto u = parse_input(cfg, read_grid_csv);
      if (!cfg.hyperplane.empty()) write_grid_csv(out, polarize_grid_exact(u, parse_hyperplane(cfg.hyperplane)));
      else if (!cfg.halfspace.empty()) write_grid_csv(out, polarize_grid_interp(u, parse_halfspace(cfg.halfspace, 2)));
      else throw UsageError("grid2d polarize needs --hyperplane or --halfspace");
      break;
    }
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_rearrange(const Config& cfg) {
  std::ostringstream out;
  switch (resolve_engine(cfg)) {
    case Engine::Step1d: write_step_csv(out, rearrange(parse_input(cfg, read_step_csv))); break;
    case Engine::Lattice: write_lattice_csv(out, rearrange_lattice(parse_input(cfg, read_lattice_csv))); break;
    case Engine::Grid2d: write_grid_csv(out, rearrange_grid(parse_input(cfg, read_grid_csv))); break;
  }
  emit(cfg, out.str());
  return 0;
}

double scaled_tolerance(double reference) { return 1e-12 * std::max(1.0, std::abs(reference)); }

int finish_series(const Config& cfg, const ConvergenceSeries& series, bool mass_monotone) {
  std::ostringstream out;
  write_series_csv(out, series);
  emit(cfg, out.str());
  const auto& first = series.records.front();
  if (auto violation = find_invariant_violation(series, scaled_tolerance(first.lp_norm),
                                                scaled_tolerance(first.weighted_mass), mass_monotone)) {
    std::cerr << "invariant violated: " << *violation << '\n';
    return kExitInvariant;
  }
  return 0;
}

int cmd_converge(const Config& cfg) {
  if (cfg.order != "forward" && cfg.order != "reversed") throw UsageError("--order must be forward or reversed");
  switch (resolve_engine(cfg)) {
    case Engine::Step1d: {
      const auto u = parse_input(cfg, read_step_csv);
      SchemeOptions options;
      options.n_max = cfg.n_max;
      options.p = cfg.p;
      options.eps = cfg.eps;
      options.weight = RadialWeight::parse(cfg.weight);
      options.order = cfg.order == "forward" ? SchemeOrder::Forward : SchemeOrder::Reversed;
      const auto run = converge_scheme(u, Schedule(1, cfg.rho), options);
      return finish_series(cfg, run.series, true);
    }
    case Engine::Lattice: {
      const auto u = parse_input(cfg, read_lattice_csv);
      if (cfg.scheme == "two-involution") {
        if (cfg.first_involution != "reflect" && cfg.first_involution != "identity")
          throw UsageError("--first-involution must be reflect or identity");
        const auto first =
            cfg.first_involution == "identity" ? FirstInvolution::Identity : FirstInvolution::ReflectAtZero;
        return finish_series(cfg, two_involution_series(u, cfg.max_sweeps, cfg.p, cfg.eps, first), true);
      }
      if (cfg.scheme != "triangular") throw UsageError("--scheme must be triangular or two-involution");
      const auto centers = spiral_centers(static_cast<std::size_t>(cfg.n_max));
      return finish_series(cfg, schedule_scheme_lattice(u, centers, cfg.n_max, cfg.p, cfg.eps), true);
    }
    case Engine::Grid2d: {
      const auto u = parse_input(cfg, read_grid_csv);
      const auto steps = parse_steps(cfg.steps);
      bool mass_monotone = true;
      for (const auto& s : steps)
        if (const auto* plane = std::get_if<LatticeHyperplane>(&s); plane && !plane->contains_origin())
          mass_monotone = false;
      const auto series = mixed_schedule(u, steps, cfg.n_max, cfg.p, RadialWeight::parse(cfg.weight), cfg.eps);
      return finish_series(cfg, series, mass_monotone);
    }
  }
  return 0;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("REARRANGE_LAB_THREADS")) {
    try {
      n = std::max(1u, std::min(n, parse_integer<unsigned>(cap)));
    } catch (const std::invalid_argument&) {
      throw UsageError("REARRANGE_LAB_THREADS must be a positive integer");
    }
  }
  return n;
}

int cmd_check(const Config& cfg) {
  CheckOptions options;
  options.cases = cfg.cases;
  options.seed = cfg.seed;
  options.threads = worker_count();
  if (!cfg.input.empty()) options.fixture = parse_input(cfg, read_step_csv);
  const auto suites = parse_suites(cfg.suite);
  const auto report = run_checks(suites, options);
  std::ostringstream out;
  write_report(out, report);
  emit(cfg, out.str());
  return report.passed() ? 0 : kExitCheckFailed;
}

int cmd_schedule(const Config& cfg) {
  if (cfg.count == 0) throw UsageError("--count must be >= 1");
  const Schedule schedule(cfg.dim, cfg.rho);
  std::ostringstream out;
  for (std::uint64_t n = 1; n <= cfg.count; ++n) out << format_halfspace(schedule.nth(n)) << '\n';
  emit(cfg, out.str());
  return 0;
}

void add_io(CLI::App* cmd, Config& cfg, bool input_required = true) {
  auto* in = cmd->add_option("--input", cfg.input, "Input CSV file");
  if (input_required) in->required();
  cmd->add_option("--output", cfg.output, "Output file (default: stdout)");
  cmd->add_option("--engine", cfg.engine, "step1d | lattice | grid2d (default: inferred from the header)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarization and symmetric decreasing rearrangement lab"};
  app.require_subcommand(1);
  Config cfg;

  auto* polarize_cmd = app.add_subcommand("polarize", "Polarize a function");
  add_io(polarize_cmd, cfg);
  polarize_cmd->add_option("--halfspace", cfg.halfspace, "nu=<+-1 or angle>,d=<offset> (step1d, grid2d interpolated)");
  polarize_cmd->add_option("--involution", cfg.involution, "c=<integer>: the lattice reflection x -> c - x");
  polarize_cmd->add_option("--hyperplane", cfg.hyperplane, "<X|Y|DiagUp|DiagDown>:<offset> (grid2d exact)");

  auto* rearrange_cmd = app.add_subcommand("rearrange", "Symmetric decreasing rearrangement");
  add_io(rearrange_cmd, cfg);

  auto* converge_cmd = app.add_subcommand("converge", "Run the iterated polarization scheme; writes a series CSV");
  add_io(converge_cmd, cfg);
  converge_cmd->add_option("--p", cfg.p, "L^p exponent")->check(CLI::Range(1.0, 1e6));
  converge_cmd->add_option("--rho", cfg.rho, "Schedule offset bound")->check(CLI::PositiveNumber);
  converge_cmd->add_option("--n-max", cfg.n_max, "Outer iterations")->check(CLI::Range(1, 1000000));
  converge_cmd->add_option("--eps", cfg.eps, "Deviation threshold")->check(CLI::PositiveNumber);
  converge_cmd->add_option("--weight", cfg.weight, "gaussian | triangular:R");
  converge_cmd->add_option("--seed", cfg.seed, "Unused by deterministic engines; accepted for uniformity");
  converge_cmd->add_option("--order", cfg.order, "forward | reversed");
  converge_cmd->add_option("--scheme", cfg.scheme, "lattice: triangular | two-involution");
  converge_cmd->add_option("--first-involution", cfg.first_involution, "lattice two-involution: reflect | identity");
  converge_cmd->add_option("--max-sweeps", cfg.max_sweeps, "lattice two-involution sweep budget");
  converge_cmd->add_option("--steps", cfg.steps, "grid2d: comma list of <dir>:<offset>, SteinerX, SteinerY");

  auto* check_cmd = app.add_subcommand("check", "Run the property suites; writes a pass/fail report");
  add_io(check_cmd, cfg, false);
  check_cmd->add_option("--suite", cfg.suite,
                        "cavalieri | hardy-littlewood | contraction | polarization | lattice-fixed-point | all");
  check_cmd->add_option("--cases", cfg.cases, "Cases per suite");
  check_cmd->add_option("--seed", cfg.seed, "Base seed; case k uses seed + k");

  auto* schedule_cmd = app.add_subcommand("schedule", "Print the dense halfspace schedule");
  schedule_cmd->add_option("--dim", cfg.dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  schedule_cmd->add_option("--rho", cfg.rho, "Offset bound")->check(CLI::PositiveNumber);
  schedule_cmd->add_option("--count", cfg.count, "Number of halfspaces")->required();
  schedule_cmd->add_option("--output", cfg.output, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*polarize_cmd) return cmd_polarize(cfg);
    if (*rearrange_cmd) return cmd_rearrange(cfg);
    if (*converge_cmd) return cmd_converge(cfg);
    if (*check_cmd) return cmd_check(cfg);
    if (*schedule_cmd) return cmd_schedule(cfg);
  } catch (const GridFitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGeometry;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return kExitUsage;
}
