#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>

#include "fdasim/raster_io.hpp"

namespace fs = std::filesystem;
using Catch::Approx;

namespace {

struct Run {
  int exit_code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FDASIM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (const std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string config(const std::string& name) {
  return std::string("--config ") + FDASIM_EXAMPLES_DIR + "/" + name;
}

// Parses "key=value" tokens of one report line.
std::map<std::string, std::string> fields(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("fdasim_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("").exit_code == 1);
  CHECK(run("snapshot").exit_code == 1);
  CHECK(run("frobnicate").exit_code == 1);
  CHECK(run("snapshot --config /nonexistent.conf").exit_code == 1);
  CHECK(run("snapshot " + config("rect_pulse.conf") + " --set array.colour=red").exit_code == 2);
  CHECK(run("snapshot " + config("rect_pulse.conf") + " --mode fda_exact").exit_code == 2);
  CHECK(run("snapshot " + config("rect_pulse.conf") + " --set array.offsets=linear:1kHz")
            .exit_code == 2);
  CHECK(run("compare " + config("fda_chebyshev.conf") +
            " fda_approx fda_exact --tolerance 1e-12 --set grid.n_range=32 --set grid.n_theta=32")
            .exit_code == 3);
  CHECK(run("check --trials 50").exit_code == 0);
}

TEST_CASE("snapshot of the rectangular pulse reports the 81 km band") {
  const auto dir = scratch("rect");
  const auto r = run("snapshot " + config("rect_pulse.conf") + " --out-dir " + dir.string());
  REQUIRE(r.exit_code == 0);
  auto f = fields(r.out);
  const double cell = 399e3 / 511;
  CHECK(f["mode"] == "pulsed");
  CHECK(std::stod(f["range_extent_m"]) == Approx(81e3).margin(cell));
  CHECK(std::stod(f["range_center_m"]) == Approx(300e3).margin(cell));
  CHECK(fs::exists(dir / "rect_pulse.csv"));
  CHECK(fs::exists(dir / "rect_pulse.pgm"));
  const auto img = fdasim::parse_pgm(fdasim::read_file(dir / "rect_pulse.pgm"));
  CHECK(img.width == 512);
  CHECK(img.height == 512);
  fs::remove_all(dir);
}

TEST_CASE("equivalent phased array matches the FDA on the grid") {
  const auto r = run("compare " + config("fda_chebyshev.conf") +
                     " fda_approx equivalent_pa --tolerance 1e-12 --set grid.n_range=128");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("compare fda_approx vs equivalent_pa") != std::string::npos);
}

TEST_CASE("sweep advances the pulsed peak at the wave speed") {
  const auto dir = scratch("sweep");
  const auto r = run("sweep " + config("gaussian_pulse.conf") + " --times 0,0.05ms,0.1ms" +
                     " --format csv --out-dir " + dir.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::vector<double> peaks;
  while (std::getline(is, line)) peaks.push_back(std::stod(fields(line)["peak_r_m"]));
  REQUIRE(peaks.size() == 3);
  const double cell = 399e3 / 511;
  CHECK(peaks[1] - peaks[0] == Approx(3e8 * 0.05e-3).margin(cell));
  CHECK(peaks[2] - peaks[1] == Approx(3e8 * 0.05e-3).margin(cell));
  for (int k = 0; k < 3; ++k) {
    CHECK(fs::exists(dir / ("gaussian_pulse_00" + std::to_string(k) + ".csv")));
  }
  CHECK_FALSE(fs::exists(dir / "gaussian_pulse_000.pgm"));
  fs::remove_all(dir);
}

TEST_CASE("repeated snapshots are byte-identical") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const std::string args = "snapshot " + config("fda_chebyshev.conf") +
                           " --set grid.n_range=96 --set grid.n_theta=80 --out-dir ";
  REQUIRE(run(args + a.string()).exit_code == 0);
  REQUIRE(run(args + b.string()).exit_code == 0);
  for (const char* f : {"fda_chebyshev.csv", "fda_chebyshev.pgm"}) {
    CHECK(fdasim::read_file(a / f) == fdasim::read_file(b / f));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}
