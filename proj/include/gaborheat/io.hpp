#pragma once

#include <string>
#include <vector>

#include "gaborheat/grid.hpp"
#include "gaborheat/tfa.hpp"
#include "gaborheat/weyl.hpp"

namespace gaborheat {

/// Named columns of doubles, written with round-trip precision.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

void write_table_csv(const std::string& path, const Table& table);
std::string format_double(double v);

/// index,x,re,im (d = 1) or index,x,y,re,im (d = 2).
void write_grid_function_csv(const std::string& path, const GridFunction& f);
/// Reads a d = 1 or d = 2 file written by write_grid_function_csv; the grid is
/// reconstructed from the sample positions.
GridFunction read_grid_function_csv(const std::string& path);

/// zx,zxi,re,im for vector fields; zx,zxi,wx,wxi,abs for matrix fields.
void write_field_csv(const std::string& path, const PhaseSpaceField& field);

/// "WOPM", int64 d, int64 n, float64 L (little endian), then row-major
/// complex entries as float64 pairs.
void write_operator_wopm(const std::string& path, const OperatorMatrix& op);
OperatorMatrix read_operator_wopm(const std::string& path);

}  // namespace gaborheat
