#include "gaborheat/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gaborheat/error.hpp"

namespace gaborheat {

static_assert(std::endian::native == std::endian::little, "WOPM I/O assumes a little-endian host");

void Table::add_row(std::vector<double> row) {
  require(row.size() == columns.size(), "table row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  return os;
}

void write_row(std::ostream& os, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    os << format_double(row[i]);
  }
  os << '\n';
}

void write_header(std::ostream& os, const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
}

}  // namespace

void write_table_csv(const std::string& path, const Table& table) {
  auto os = open_out(path);
  write_header(os, table.columns);
  for (const auto& r : table.rows) write_row(os, r);
  if (!os) fail(ErrorKind::io, "write failed for '" + path + "'");
}

void write_grid_function_csv(const std::string& path, const GridFunction& f) {
  auto os = open_out(path);
  const Grid& g = f.grid();
  const int n = g.samples();
  if (g.dim() == 1) {
    write_header(os, {"index", "x", "re", "im"});
    for (int j = 0; j < n; ++j) write_row(os, {double(j), g.x(j), f[j].real(), f[j].imag()});
  } else {
    write_header(os, {"index", "x", "y", "re", "im"});
    for (int j0 = 0; j0 < n; ++j0)
      for (int j1 = 0; j1 < n; ++j1) {
        const std::size_t i = std::size_t(j0) * n + j1;
        write_row(os, {double(i), g.x(j0), g.x(j1), f[i].real(), f[i].imag()});
      }
  }
  if (!os) fail(ErrorKind::io, "write failed for '" + path + "'");
}

GridFunction read_grid_function_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::io, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(is, line)) fail(ErrorKind::io, "empty grid function file '" + path + "'");
  int dim = 0;
  if (line == "index,x,re,im")
    dim = 1;
  else if (line == "index,x,y,re,im")
    dim = 2;
  else
    fail(ErrorKind::io, "unexpected grid function header '" + line + "'");

  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> r;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        r.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(ErrorKind::io, "malformed number '" + cell + "' in '" + path + "'");
      }
    }
    if (r.size() != std::size_t(dim + 3)) fail(ErrorKind::io, "malformed row in '" + path + "'");
    rows.push_back(std::move(r));
  }
  const std::size_t total = rows.size();
  const int n = dim == 1 ? int(total) : int(std::lround(std::sqrt(double(total))));
  if (n < 8 || std::size_t(dim == 1 ? n : n * n) != total)
    fail(ErrorKind::io, "sample count in '" + path + "' does not form a grid");
  // x_1 - x_0 = h along the fastest axis.
  const std::size_t step = dim == 1 ? 1 : std::size_t(n);
  const double h = rows[step][1] - rows[0][1];
  const double L = h * n;
  Grid grid(dim, L, n);
  CVector v(static_cast<Eigen::Index>(total));
  for (std::size_t i = 0; i < total; ++i) v[Eigen::Index(i)] = cplx(rows[i][std::size_t(dim + 1)], rows[i][std::size_t(dim + 2)]);
  return GridFunction(grid, std::move(v));
}

void write_field_csv(const std::string& path, const PhaseSpaceField& field) {
  auto os = open_out(path);
  const PhaseLattice& lat = field.lattice;
  if (!field.is_matrix()) {
    write_header(os, {"zx", "zxi", "re", "im"});
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const PhasePoint z = lat.point(i);
      const cplx v = field.values(Eigen::Index(i), 0);
      write_row(os, {z.x, z.xi, v.real(), v.imag()});
    }
  } else {
    write_header(os, {"zx", "zxi", "wx", "wxi", "abs"});
    for (Eigen::Index c = 0; c < field.values.cols(); ++c) {
      const PhasePoint z = lat.point(std::size_t(c));
      for (Eigen::Index r = 0; r < field.values.rows(); ++r) {
        const PhasePoint w = lat.point(std::size_t(r));
        write_row(os, {z.x, z.xi, w.x, w.xi, std::abs(field.values(r, c))});
      }
    }
  }
  if (!os) fail(ErrorKind::io, "write failed for '" + path + "'");
}

void write_operator_wopm(const std::string& path, const OperatorMatrix& op) {
  auto os = open_out(path, true);
  const std::int64_t d = op.grid.dim();
  const std::int64_t n = op.grid.samples();
  const double L = op.grid.length();
  os.write("WOPM", 4);
  os.write(reinterpret_cast<const char*>(&d), 8);
  os.write(reinterpret_cast<const char*>(&n), 8);
  os.write(reinterpret_cast<const char*>(&L), 8);
  const Eigen::Index rows = op.entries.rows();
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < op.entries.cols(); ++c) {
      const double pair[2] = {op.entries(r, c).real(), op.entries(r, c).imag()};
      os.write(reinterpret_cast<const char*>(pair), 16);
    }
  if (!os) fail(ErrorKind::io, "write failed for '" + path + "'");
}

OperatorMatrix read_operator_wopm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::io, "cannot open '" + path + "'");
  char magic[4];
  std::int64_t d = 0, n = 0;
  double L = 0.0;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&d), 8);
  is.read(reinterpret_cast<char*>(&n), 8);
  is.read(reinterpret_cast<char*>(&L), 8);
  if (!is || std::memcmp(magic, "WOPM", 4) != 0) fail(ErrorKind::io, "'" + path + "' is not a WOPM file");
  if (d < 1 || d > 2 || n < 8 || n > (1 << 16)) fail(ErrorKind::io, "invalid WOPM header in '" + path + "'");
  Grid grid(int(d), L, int(n));
  const auto size = Eigen::Index(grid.size());
  CMatrix m(size, size);
  for (Eigen::Index r = 0; r < size; ++r)
    for (Eigen::Index c = 0; c < size; ++c) {
      double pair[2];
      is.read(reinterpret_cast<char*>(pair), 16);
      m(r, c) = cplx(pair[0], pair[1]);
    }
  if (!is) fail(ErrorKind::io, "truncated WOPM file '" + path + "'");
  return {grid, std::move(m), 0.0};
}

}  // namespace gaborheat
