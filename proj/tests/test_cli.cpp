#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "cdr/error.hpp"
#include "cdr/state.hpp"

using namespace cdr;
using namespace cdr::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "cdrecho");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

const std::string kSeqDir = CDRECHO_SEQUENCE_DIR;

}  // namespace

TEST_CASE("figures writes fourteen CSV files") {
  const auto dir = scratch("cdrecho_cli_figures");
  const auto r = call({"figures", "--out", dir.string()});
  CHECK(r.code == kSuccess);
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    CHECK(entry.path().extension() == ".csv");
    ++count;
  }
  CHECK(count == 14);
  CHECK(std::filesystem::exists(dir / "fig4b.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("echo reports an emissive second echo for the CDR file") {
  const auto r = call({"echo", "--seq", kSeqDir + "/cdr.json"});
  CHECK(r.code == kSuccess);
  CHECK(r.out.find("E2 emissive") != std::string::npos);
  CHECK(r.out.find("E1 absorptive") != std::string::npos);
  CHECK(r.out.find("predicted echoes (us): 24 36") != std::string::npos);

  const auto dr = call({"echo", "--seq", kSeqDir + "/dr.json"});
  CHECK(dr.code == kSuccess);
  CHECK(dr.out.find("E2 absorptive") != std::string::npos);
}

TEST_CASE("echo writes the trace CSV") {
  const auto dir = scratch("cdrecho_cli_echo");
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "trace.csv").string();
  const auto r = call({"echo", "--seq", kSeqDir + "/dr.json", "--out", csv});
  CHECK(r.code == kSuccess);
  std::ifstream in(csv);
  std::string meta, header;
  std::getline(in, meta);
  std::getline(in, header);
  CHECK(meta == "# sequence=dr.json engine=hard");
  CHECK(header == "t_us,re_p,im_p,abs_p,rho11,rho22,rho33");
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify passes on an intact build") {
  const auto r = call({"verify"});
  CHECK(r.code == kSuccess);
  CHECK(r.out.find("all checks passed") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("stages prints the chain") {
  const auto r = call({"stages", "--phid", "pi/2"});
  CHECK(r.code == kSuccess);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "stage,im_rho12,re_rho13,im_rho13,rho11,rho22,rho33");
  std::getline(lines, line);
  CHECK(line.rfind("D,-0.5,", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("R1,0.5,", 0) == 0);
}

TEST_CASE("sweep and propagate") {
  const auto s = call({"sweep", "--stage", "r1", "--vary", "phi_r1", "--lo", "0", "--hi", "pi",
                       "--steps", "2", "--phid", "0.1pi"});
  CHECK(s.code == kSuccess);
  CHECK(s.out == "phi_r1,im_rho12,re_rho13,rho11,rho22,rho33\n"
                 "0,-0.154508497187,0,0.975528258148,0.0244717418524,0\n"
                 "3.14159265359,0.154508497187,0,0.0244717418524,0.975528258148,0\n");

  const auto p = call({"propagate", "--phi0", "0.01", "--alpha", "1", "--zmax", "2"});
  CHECK(p.code == kSuccess);
  CHECK(p.out.find("phi(z_max) = 0.0036788") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(call({}).code == kUsageError);
  CHECK(call({"bogus"}).code == kUsageError);
  CHECK(call({"echo"}).code == kUsageError);
  CHECK(call({"sweep", "--stage", "r9", "--vary", "r1"}).code == kUsageError);
  CHECK(call({"sweep", "--stage", "r1", "--vary", "c1"}).code == kUsageError);
  CHECK(call({"stages", "--phid", "half"}).code == kUsageError);
  CHECK(call({"echo", "--seq", kSeqDir + "/cdr.json", "--engine", "magic"}).code ==
        kUsageError);
  CHECK(call({"--help"}).code == kSuccess);
}

TEST_CASE("I/O errors exit 3") {
  const auto r = call({"echo", "--seq", "/nonexistent/cdr.json"});
  CHECK(r.code == kIoError);
  CHECK(r.err.find("IO_ERROR") != std::string::npos);
  CHECK(call({"figures", "--out", "/proc/cdrecho_cannot_write"}).code == kIoError);
}

TEST_CASE("parse_area_value") {
  CHECK(parse_area_value("0.1pi") == doctest::Approx(0.1 * kPi));
  CHECK(parse_area_value("pi/2") == doctest::Approx(kPi / 2));
  CHECK(parse_area_value("3*pi") == doctest::Approx(3 * kPi));
  CHECK(parse_area_value("-pi") == doctest::Approx(-kPi));
  CHECK(parse_area_value("pi") == kPi);
  CHECK(parse_area_value(" 0.314 ") == 0.314);
  CHECK_THROWS_AS(parse_area_value(""), Error);
  CHECK_THROWS_AS(parse_area_value("pi/0"), Error);
  CHECK_THROWS_AS(parse_area_value("2pi3"), Error);
  CHECK_THROWS_AS(parse_area_value("abc"), Error);
}
