// End-to-end tests that drive the installed-style binary through a shell,
// checking output files, stream routing and exit codes.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asymtun/io.hpp"
#include "asymtun/sweep.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() /
         ("asymtun_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path = temp_path("stdout_" + std::to_string(counter));
  const fs::path err_path = temp_path("stderr_" + std::to_string(counter));
  ++counter;

  const std::string command = std::string(ASYMTUN_CLI_PATH) + " " + args +
                              " >" + out_path.string() + " 2>" +
                              err_path.string();
  const int status = std::system(command.c_str());

  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  fs::remove(out_path);
  fs::remove(err_path);
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> values;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) values.push_back(std::strtod(cell.c_str(), nullptr));
  return values;
}

// name -> (re, im) from the spectrum CSV report.
std::map<std::string, std::pair<double, double>> parse_spectrum(
    const std::string& text) {
  std::map<std::string, std::pair<double, double>> rows;
  for (const auto& line : lines_of(text)) {
    if (line.empty() || line[0] == '#' || line.rfind("name,", 0) == 0) continue;
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    rows[line.substr(0, first)] = {
        std::strtod(line.substr(first + 1, second - first - 1).c_str(), nullptr),
        std::strtod(line.substr(second + 1).c_str(), nullptr)};
  }
  return rows;
}

}  // namespace

TEST_CASE("spectrum reports the reference anchors") {
  const auto result = run_cli("spectrum --g 1 --alpha 0.6");
  REQUIRE(result.exit_code == 0);
  const auto rows = parse_spectrum(result.out);
  CHECK(std::abs(rows.at("eigenvalue_0").first - 0.8) < 1e-15);
  CHECK(std::abs(rows.at("eigenvalue_1").first + 0.8) < 1e-15);
  CHECK(std::abs(rows.at("metric_0_0").first - 4.0) < 1e-14);
  CHECK(std::abs(rows.at("metric_1_1").first - 1.0) < 1e-15);
  CHECK(std::abs(rows.at("metric_0_1").first) < 1e-15);
  CHECK(rows.at("biorthogonality_residual").first < 1e-14);
  CHECK(rows.at("completeness_residual").first < 1e-14);
  CHECK(rows.at("pseudo_hermiticity_residual").first < 1e-14);
  CHECK(rows.at("numeric_eigenvalue_deviation").first < 1e-12);
  CHECK(result.err.find("numeric eigenvalue deviation") != std::string::npos);
}

TEST_CASE("spectrum of the Hermitian case has left = right dagger") {
  const auto result = run_cli("spectrum --g 1 --alpha 0");
  REQUIRE(result.exit_code == 0);
  const auto rows = parse_spectrum(result.out);
  CHECK(std::abs(rows.at("eigenvalue_0").first - 1.0) < 1e-14);
  for (int s = 0; s < 2; ++s) {
    for (int i = 0; i < 2; ++i) {
      const auto left =
          rows.at("left_" + std::to_string(s) + "_" + std::to_string(i));
      const auto right =
          rows.at("right_" + std::to_string(s) + "_" + std::to_string(i));
      CHECK(std::abs(left.first - right.first) < 1e-14);
      CHECK(std::abs(left.second + right.second) < 1e-14);
    }
  }
}

TEST_CASE("spectrum as JSON") {
  const auto result = run_cli("spectrum --g 1 --beta 4 --format json");
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("\"eigenvalues\"") != std::string::npos);
  CHECK(result.out.find("\"metric\"") != std::string::npos);
  CHECK(result.out.find("\"biorthogonality_residual\"") != std::string::npos);
}

TEST_CASE("domain errors exit with code 2") {
  const auto exceptional = run_cli("spectrum --g 1 --alpha 1");
  CHECK(exceptional.exit_code == 2);
  CHECK(exceptional.err.find("exceptional point") != std::string::npos);

  CHECK(run_cli("spectrum --g 0 --alpha 0.5").exit_code == 2);
  CHECK(run_cli("spectrum --g 1 --beta -2").exit_code == 2);
  CHECK(run_cli("spectrum --g 1 --alpha 0.5 --beta 2").exit_code == 2);
  CHECK(run_cli("spectrum --bogus-flag 1").exit_code == 2);
  CHECK(run_cli("bogus-command").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("grid --quantity bogus").exit_code == 2);
  CHECK(run_cli("grid --tau-points 1").exit_code == 2);
  CHECK(run_cli("rates --step 1.0").exit_code == 2);
  CHECK(run_cli("rates --tau-max 12 --equilibrium-from 10").exit_code == 2);
  CHECK(run_cli("evolve --columns occ_A,bogus").exit_code == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("evolve --help").exit_code == 0);
}

TEST_CASE("unwritable output exits with code 4") {
  CHECK(run_cli("grid --tau-points 3 --beta-points 2 --output "
                "/nonexistent_dir_asymtun/out.csv")
            .exit_code == 4);
}

TEST_CASE("evolve defaults start at occupation one") {
  const auto result = run_cli("evolve");
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.out);
  REQUIRE(lines.size() >= 3);
  CHECK(lines[1] == "tau,occ_A,occ_B,prob_AB,prob_BA,norm_A,norm_B");
  const auto first_row = parse_csv_row(lines[2]);
  REQUIRE(first_row.size() == 7);
  CHECK(first_row[0] == 0.0);
  CHECK(first_row[1] == 1.0);
  CHECK(first_row[2] == 0.0);
  CHECK(result.err.find("occupation conservation") != std::string::npos);
}

TEST_CASE("evolve at beta = 1 gives sin^2 transition probabilities") {
  const auto result =
      run_cli("evolve --beta 1 --tau-points 9 --tau-max 3.141592653589793");
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.out);
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto row = parse_csv_row(lines[i]);
    const double s = std::sin(row[0]);
    CHECK(std::abs(row[3] - s * s) < 1e-12);
  }
}

TEST_CASE("evolve oracle summary stays below tolerance") {
  const auto result = run_cli("evolve --oracle --tau-points 31");
  REQUIRE(result.exit_code == 0);
  const auto pos = result.err.find("oracle max deviation = ");
  REQUIRE(pos != std::string::npos);
  const double deviation =
      std::strtod(result.err.c_str() + pos + std::string("oracle max deviation = ").size(),
                  nullptr);
  CHECK(deviation < 1e-10);
  CHECK(result.out.find("occ_A_oracle") != std::string::npos);
}

TEST_CASE("evolve JSON round-trips through a file") {
  const fs::path path = temp_path("evolve.json");
  const auto result = run_cli("evolve --tau-points 5 --format json --output " +
                              path.string());
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.empty());
  const std::string text = slurp(path);
  CHECK(text.find("\"values\"") != std::string::npos);
  CHECK(text.find("\"tau_points\": 5") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("grid runs are deterministic byte for byte") {
  const fs::path a = temp_path("grid_a.csv");
  const fs::path b = temp_path("grid_b.csv");
  const std::string flags = "grid --tau-points 21 --beta-points 9 ";
  REQUIRE(run_cli(flags + "--output " + a.string()).exit_code == 0);
  REQUIRE(run_cli(flags + "--output " + b.string()).exit_code == 0);
  const std::string text_a = slurp(a);
  CHECK(text_a == slurp(b));
  CHECK(text_a.rfind("# quantity=prob_AB tau_points=21 beta_points=9", 0) == 0);
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("grid reciprocity between prob_AB and prob_BA") {
  const fs::path ab = temp_path("grid_ab.csv");
  const fs::path ba = temp_path("grid_ba.csv");
  const std::string flags = "grid --tau-points 11 --beta-points 9 ";
  REQUIRE(run_cli(flags + "--quantity prob_AB --output " + ab.string())
              .exit_code == 0);
  REQUIRE(run_cli(flags + "--quantity prob_BA --output " + ba.string())
              .exit_code == 0);

  std::ifstream ab_in(ab);
  std::ifstream ba_in(ba);
  const auto ab_data = asymtun::io::read_grid_csv(ab_in);
  const auto ba_data = asymtun::io::read_grid_csv(ba_in);
  REQUIRE(ab_data.beta.size() == 9);
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 9; ++j) {
      CHECK(std::abs(ab_data.at(i, j) - ba_data.at(i, 8 - j)) < 1e-12);
    }
  }
  fs::remove(ab);
  fs::remove(ba);
}

TEST_CASE("grid JSON matches the library evaluation") {
  const fs::path path = temp_path("grid.json");
  REQUIRE(run_cli("grid --quantity ratio --tau-points 7 --beta-points 5 "
                  "--format json --output " +
                  path.string())
              .exit_code == 0);
  std::ifstream in(path);
  const auto from_cli = asymtun::io::read_grid_json(in);

  asymtun::GridSpec spec;
  spec.tau_points = 7;
  spec.beta_points = 5;
  const auto direct = asymtun::grid(spec, asymtun::GridQuantity::Ratio);
  REQUIRE(from_cli.values.size() == direct.values.size());
  for (std::size_t k = 0; k < direct.values.size(); ++k) {
    CHECK(from_cli.values[k] == direct.values[k]);
  }
  fs::remove(path);
}

TEST_CASE("rates defaults produce the equilibrium footer") {
  const auto result = run_cli("rates");
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.out);
  REQUIRE(lines.size() == 1 + 10001 + 1);
  CHECK(lines.front().rfind("# rates step=0.005", 0) == 0);
  const std::string& footer = lines.back();
  CHECK(footer.rfind("# equilibrium_from=10 mean_nA=", 0) == 0);

  const auto mean_na_pos = footer.find("mean_nA=");
  const auto mean_nb_pos = footer.find("mean_nB=");
  const double mean_na =
      std::strtod(footer.c_str() + mean_na_pos + 8, nullptr);
  const double mean_nb =
      std::strtod(footer.c_str() + mean_nb_pos + 8, nullptr);
  CHECK(mean_nb > mean_na);
  CHECK(result.err.find("conservation") != std::string::npos);
}

TEST_CASE("rates at the symmetric fixed point have zero amplitude") {
  const auto result =
      run_cli("rates --beta 1 --n-a0 0.5 --n-b0 0.5 --tau-max 30");
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.out);
  CHECK(lines.back().find("amplitude_nA=0") != std::string::npos);
}

TEST_CASE("rates honors --no-equilibrium for short horizons") {
  const auto result = run_cli("rates --tau-max 12 --no-equilibrium");
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("equilibrium") == std::string::npos);
}

TEST_CASE("rates as JSON") {
  const auto result = run_cli("rates --tau-max 35 --format json");
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("\"equilibrium\"") != std::string::npos);
  CHECK(result.out.find("\"mean_nB\"") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags win") {
  const fs::path config = temp_path("config.ini");
  {
    std::ofstream out(config);
    out << "[grid]\n"
        << "quantity=ratio\n"
        << "tau-points=5\n"
        << "beta-points=3\n";
  }
  const auto from_config = run_cli("grid --config " + config.string());
  REQUIRE(from_config.exit_code == 0);
  CHECK(from_config.out.rfind("# quantity=ratio tau_points=5 beta_points=3",
                              0) == 0);

  const auto overridden =
      run_cli("grid --config " + config.string() + " --tau-points 7");
  REQUIRE(overridden.exit_code == 0);
  CHECK(overridden.out.rfind("# quantity=ratio tau_points=7 beta_points=3",
                             0) == 0);
  fs::remove(config);

  CHECK(run_cli("grid --config /nonexistent_asymtun.ini").exit_code == 2);
}

TEST_CASE("identical invocations produce identical bytes on stdout") {
  const std::string args = "evolve --beta 2.5 --tau-points 17 --oracle";
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
}
