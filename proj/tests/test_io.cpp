#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "gaborheat/battery.hpp"
#include "gaborheat/io.hpp"

using namespace gaborheat;
namespace fs = std::filesystem;

namespace {
std::string tmp(const char* name) { return (fs::temp_directory_path() / name).string(); }
}  // namespace

TEST_CASE("doubles round trip through text") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("grid function csv round trip") {
  const Grid g(1, 40.0, 64);
  const GridFunction f = gaussian_packet(g, 1.0, 2.0, 0.7);
  const std::string path = tmp("gh_io_f.csv");
  write_grid_function_csv(path, f);
  const GridFunction h = read_grid_function_csv(path);
  CHECK(h.grid() == g);
  CHECK(sup_norm(h - f) == 0.0);
  fs::remove(path);
}

TEST_CASE("two-dimensional csv round trip") {
  const Grid g(2, 8.0, 8);
  const GridFunction f = sample(g, [](double x, double y) { return cplx(x, y); });
  const std::string path = tmp("gh_io_f2.csv");
  write_grid_function_csv(path, f);
  const GridFunction h = read_grid_function_csv(path);
  CHECK(h.grid() == g);
  CHECK(sup_norm(h - f) == 0.0);
  fs::remove(path);
}

TEST_CASE("malformed csv") {
  const std::string path = tmp("gh_io_bad.csv");
  std::ofstream(path) << "index,x,re,im\n0,0.0,1.0\n";
  CHECK_THROWS_AS(read_grid_function_csv(path), Error);
  fs::remove(path);
  CHECK_THROWS_AS(read_grid_function_csv(tmp("gh_io_missing.csv")), Error);
}

TEST_CASE("WOPM round trip and header") {
  const Grid g(1, 20.0, 16);
  OperatorMatrix op = identity_operator(g);
  op.entries(3, 5) = cplx(0.25, -1.5);
  const std::string path = tmp("gh_io_op.wopm");
  write_operator_wopm(path, op);
  CHECK(fs::file_size(path) == 4 + 8 + 8 + 8 + 16 * 16 * 16);
  std::ifstream is(path, std::ios::binary);
  char magic[4];
  is.read(magic, 4);
  CHECK(std::string(magic, 4) == "WOPM");
  const OperatorMatrix back = read_operator_wopm(path);
  CHECK(back.grid == g);
  CHECK(back.entries == op.entries);
  fs::remove(path);
}

TEST_CASE("table csv") {
  Table t;
  t.columns = {"a", "b"};
  t.add_row({1.0, 0.5});
  CHECK_THROWS_AS(t.add_row({1.0}), Error);
  const std::string path = tmp("gh_io_t.csv");
  write_table_csv(path, t);
  std::ifstream is(path);
  std::string head, row;
  std::getline(is, head);
  std::getline(is, row);
  CHECK(head == "a,b");
  CHECK(row == "1,0.5");
  fs::remove(path);
}
