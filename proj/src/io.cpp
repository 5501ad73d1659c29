#include "rlab/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "rlab/number_format.hpp"

namespace rlab {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Reads the next non-blank line; false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) return true;
  }
  return false;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

template <class F>
auto at_line(std::size_t line_no, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    fail(line_no, e.what());
  }
}

}  // namespace

std::string to_string(Engine engine) {
  switch (engine) {
    case Engine::Step1d: return "step1d";
    case Engine::Lattice: return "lattice";
    case Engine::Grid2d: return "grid2d";
  }
  return "unknown";
}

Engine parse_engine(std::string_view text) {
  text = trim(text);
  if (text == "step1d") return Engine::Step1d;
  if (text == "lattice") return Engine::Lattice;
  if (text == "grid2d") return Engine::Grid2d;
  throw std::invalid_argument("engine must be step1d, lattice or grid2d");
}

void write_step_csv(std::ostream& out, const StepFunction& u) {
  out << "breakpoint,value\n";
  const auto b = u.breakpoints();
  const auto v = u.values();
  for (std::size_t i = 0; i < v.size(); ++i) out << format_double(b[i]) << ',' << format_double(v[i]) << '\n';
  if (!b.empty()) out << format_double(b.back()) << ",\n";
}

void write_lattice_csv(std::ostream& out, const LatticeFunction& u) {
  out << "site,value\n";
  for (const auto& [site, value] : u.entries()) out << site << ',' << format_double(value) << '\n';
}

void write_grid_csv(std::ostream& out, const GridFunction& u) {
  const int m = u.half_width();
  out << m << ',' << format_double(u.cell_size()) << '\n';
  for (int j = -m; j <= m; ++j) {
    for (int i = -m; i <= m; ++i) {
      if (i > -m) out << ',';
      out << format_double(u.at(i, j));
    }
    out << '\n';
  }
}

StepFunction read_step_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no) || trim(line) != "breakpoint,value")
    fail(line_no, "expected header 'breakpoint,value'");
  std::vector<double> breakpoints;
  std::vector<double> values;
  bool closed = false;
  while (next_line(in, line, line_no)) {
    if (closed) fail(line_no, "data after the closing breakpoint row");
    const auto fields = split(line);
    if (fields.size() != 2) fail(line_no, "expected two fields");
    breakpoints.push_back(at_line(line_no, [&] { return parse_double(fields[0]); }));
    if (trim(fields[1]).empty()) {
      closed = true;
    } else {
      const double v = at_line(line_no, [&] { return parse_double(fields[1]); });
      if (v < 0) fail(line_no, "negative value");
      values.push_back(v);
    }
  }
  if (!breakpoints.empty() && !closed) fail(line_no, "missing closing row 'b,'");
  return at_line(line_no, [&] { return StepFunction::from_pieces(std::move(breakpoints), std::move(values)); });
}

LatticeFunction read_lattice_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no) || trim(line) != "site,value") fail(line_no, "expected header 'site,value'");
  std::map<Site, double> values;
  bool first = true;
  Site previous = 0;
  while (next_line(in, line, line_no)) {
    const auto fields = split(line);
    if (fields.size() != 2) fail(line_no, "expected two fields");
    const Site site = at_line(line_no, [&] { return parse_integer<Site>(fields[0]); });
    const double v = at_line(line_no, [&] { return parse_double(fields[1]); });
    if (v < 0) fail(line_no, "negative value");
    if (!first && site <= previous) fail(line_no, "sites must be strictly increasing");
    values.emplace(site, v);
    previous = site;
    first = false;
  }
  return LatticeFunction::from_map(std::move(values));
}

GridFunction read_grid_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) fail(line_no, "expected first row 'm,h'");
  const auto head = split(line);
  if (head.size() != 2) fail(line_no, "expected first row 'm,h'");
  const int m = at_line(line_no, [&] { return parse_integer<int>(head[0]); });
  const double h = at_line(line_no, [&] { return parse_double(head[1]); });
  if (m < 0 || m > 4096) fail(line_no, "half-width out of range");
  if (!(h > 0)) fail(line_no, "cell size must be > 0");
  const std::size_t side = static_cast<std::size_t>(2 * m + 1);
  std::vector<double> values;
  values.reserve(side * side);
  for (std::size_t row = 0; row < side; ++row) {
    if (!next_line(in, line, line_no)) fail(line_no, "expected " + std::to_string(side) + " value rows");
    const auto fields = split(line);
    if (fields.size() != side) fail(line_no, "expected " + std::to_string(side) + " values");
    for (auto f : fields) {
      const double v = at_line(line_no, [&] { return parse_double(f); });
      if (v < 0) fail(line_no, "negative value");
      values.push_back(v);
    }
  }
  if (next_line(in, line, line_no)) fail(line_no, "unexpected extra row");
  return GridFunction::from_values(m, h, std::move(values));
}

Engine detect_engine(std::string_view first_line) {
  first_line = trim(first_line);
  if (first_line == "breakpoint,value") return Engine::Step1d;
  if (first_line == "site,value") return Engine::Lattice;
  if (split(first_line).size() == 2) return Engine::Grid2d;
  throw ParseError("cannot infer the engine from header '" + std::string(first_line) + "'");
}

Engine detect_engine_file(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError(path.string() + ": empty file");
  return detect_engine(line);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace rlab
