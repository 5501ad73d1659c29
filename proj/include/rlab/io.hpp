#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rlab/grid2d.hpp"
#include "rlab/lattice.hpp"
#include "rlab/step1d.hpp"

namespace rlab {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Engine { Step1d, Lattice, Grid2d };

std::string to_string(Engine engine);
Engine parse_engine(std::string_view text);

// CSV formats (UTF-8, LF, 17 significant digits):
//   step1d   header `breakpoint,value`; rows `b,v`; last row `b,`
//   lattice  header `site,value`; one row per support site, increasing
//   grid2d   first row `m,h`; then 2m+1 rows of 2m+1 values, j = -m .. m
void write_step_csv(std::ostream& out, const StepFunction& u);
void write_lattice_csv(std::ostream& out, const LatticeFunction& u);
void write_grid_csv(std::ostream& out, const GridFunction& u);

StepFunction read_step_csv(std::istream& in);
LatticeFunction read_lattice_csv(std::istream& in);
GridFunction read_grid_csv(std::istream& in);

// Guesses the engine from the first line of a CSV document.
Engine detect_engine(std::string_view first_line);
Engine detect_engine_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace rlab
