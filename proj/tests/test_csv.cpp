#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "cdr/error.hpp"
#include "cdr/table.hpp"

using namespace cdr;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Table two_rows() {
  Table t;
  t.columns = {"x", "y"};
  t.rows = {{0.0, 1.0 / 3.0}, {1.5, -2e-20}};
  return t;
}

}  // namespace

TEST_CASE("format_number") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(0.154508497187) == "0.154508497187");
  CHECK(format_number(-2e-20) == "-2e-20");
}

TEST_CASE("two-row table gives three lines") {
  const std::string text = format_csv(two_rows());
  CHECK(text == "x,y\n0,0.333333333333\n1.5,-2e-20\n");
  CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("metadata line") {
  Table t = two_rows();
  t.metadata = {{"figure", "fig2a"}, {"phi_d", "0.314159265359"}};
  const std::string text = format_csv(t);
  CHECK(text.rfind("# figure=fig2a phi_d=0.314159265359\nx,y\n", 0) == 0);
}

TEST_CASE("write_csv is byte-deterministic") {
  const auto dir = std::filesystem::temp_directory_path() / "cdrecho_test_csv";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  write_csv(two_rows(), a);
  write_csv(two_rows(), b);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == format_csv(two_rows()));
  std::filesystem::remove_all(dir);
}

TEST_CASE("non-finite values are refused") {
  Table t = two_rows();
  t.rows[1][1] = std::numeric_limits<double>::quiet_NaN();
  const auto path = (std::filesystem::temp_directory_path() / "cdrecho_nan.csv").string();
  std::filesystem::remove(path);
  try {
    write_csv(t, path);
    FAIL("NaN serialized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteValue);
    CHECK(std::string(e.what()).find("NON_FINITE_VALUE") == 0);
  }
  CHECK_FALSE(std::filesystem::exists(path));
  t.rows[1][1] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(format_csv(t), Error);
}

TEST_CASE("unwritable path is an I/O error") {
  try {
    write_csv(two_rows(), "/nonexistent/dir/out.csv");
    FAIL("write to missing directory succeeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("column lookup") {
  CHECK(two_rows().column("y") == 1);
  CHECK_THROWS_AS(two_rows().column("z"), Error);
}
