#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cann/discovery.hpp"

namespace fs = std::filesystem;
using namespace cann;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path log = fs::temp_directory_path() / ("cann_cli_test_" + std::to_string(counter++) + ".log");
  const std::string cmd = std::string(CANN_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(log);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("cann_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("list-data enumerates exactly the builtin names") {
  const RunResult r = run_cli("list-data");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::vector<std::string> got;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) got.push_back(line);
  CHECK(got == builtin_dataset_names());
}

TEST_CASE("export-data round-trips through load") {
  const fs::path dir = fresh_dir("export");
  const fs::path out = dir / "gum.csv";
  const RunResult r = run_cli("export-data --data mooney_gum_ut --out " + out.string());
  CHECK(r.exit_code == 0);
  const Dataset d = load_csv(out.string());
  CHECK(d.size() == 7);
}

TEST_CASE("fit writes report, curves and loss history") {
  const fs::path dir = fresh_dir("fit");
  const RunResult r = run_cli("fit --data blatzko_rubber_ut --epochs 400 --lr 1e-2 "
                              "--init-scale 1e-2 --seed 3 --out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "curve_UT.csv"));
  CHECK(fs::exists(dir / "loss.csv"));
  CHECK(r.output.find("discovered model") != std::string::npos);

  const Report rep = report_from_json(slurp(dir / "report.json"));
  CHECK(rep.dataset == "blatzko_rubber_ut");
  CHECK(rep.epochs == 400);
  CHECK(rep.config.seed == 3);

  const std::string curve = slurp(dir / "curve_UT.csv");
  CHECK(curve.rfind("lambda,p_model,p_data,term_1,term_2,term_3,term_4,term_5,term_6,term_7,term_8\n", 0) == 0);

  const std::string loss = slurp(dir / "loss.csv");
  CHECK(loss.rfind("epoch,mse\n", 0) == 0);
}

TEST_CASE("fit is byte-deterministic for a fixed seed") {
  const fs::path dir_a = fresh_dir("det_a");
  const fs::path dir_b = fresh_dir("det_b");
  const std::string flags = "fit --data mooney_tread_ut --epochs 300 --lr 1e-2 "
                            "--init-scale 1e-3 --seed 11 --out ";
  CHECK(run_cli(flags + dir_a.string()).exit_code == 0);
  CHECK(run_cli(flags + dir_b.string()).exit_code == 0);
  CHECK(slurp(dir_a / "report.json") == slurp(dir_b / "report.json"));
}

TEST_CASE("fit on a missing file fails with a message") {
  const RunResult r = run_cli("fit --data missing.csv");
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("missing.csv") != std::string::npos);
}

TEST_CASE("fit reports parse errors with the line number") {
  const fs::path dir = fresh_dir("badcsv");
  const fs::path bad = dir / "bad.csv";
  std::ofstream(bad) << "mode,lambda,stress_mpa\nUT,1.0,0.0\nZZ,2.0,1.0\n";
  const RunResult r = run_cli("fit --data " + bad.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("line 3") != std::string::npos);
}

TEST_CASE("fit divergence exits nonzero naming the epoch") {
  const fs::path dir = fresh_dir("diverge");
  const RunResult r = run_cli("fit --data treloar50_multi --epochs 50 --init-scale 0.5 "
                              "--seed 1 --out " + dir.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("epoch") != std::string::npos);
}

TEST_CASE("fit-baseline rejects multi-mode data") {
  const RunResult r = run_cli("fit-baseline --data treloar20_multi --epochs 10");
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("single-mode") != std::string::npos);
}

TEST_CASE("fit-baseline trains and writes artifacts") {
  const fs::path dir = fresh_dir("baseline");
  const RunResult r = run_cli("fit-baseline --data mooney_gum_ut --epochs 500 --lr 1e-2 "
                              "--seed 2 --out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "loss.csv"));
  CHECK(fs::exists(dir / "baseline_curve_UT.csv"));
  CHECK(r.output.find("25 parameters") != std::string::npos);

  // The fitted curve carries an extrapolation segment out to twice the
  // largest data stretch (rows without a data column).
  const std::string curve = slurp(dir / "baseline_curve_UT.csv");
  CHECK(curve.find("\n13.9") != std::string::npos);  // reaches 2 x 6.96
  CHECK(curve.find("6.96,") != std::string::npos);
  // extrapolation rows have an empty data column
  CHECK(curve.find(",\n") != std::string::npos);
}

TEST_CASE("fit on the 50 C multi-mode data populates the discovered parameters") {
  const fs::path dir = fresh_dir("t50fit");
  const RunResult r = run_cli("fit --data treloar50_multi --epochs 30000 --lr 5e-6 "
                              "--init-scale 1e-6 --seed 7 --out " + dir.string());
  REQUIRE(r.exit_code == 0);
  const Report rep = report_from_json(slurp(dir / "report.json"));
  CHECK(rep.model.physical_params.count("mu1") == 1);
  CHECK(rep.model.physical_params.count("mu2") == 1);
  CHECK(rep.model.physical_params.count("a1") == 1);
  CHECK(rep.model.physical_params.count("b1") == 1);
  CHECK(fs::exists(dir / "curve_UT.csv"));
  CHECK(fs::exists(dir / "curve_ET.csv"));
  CHECK(fs::exists(dir / "curve_PS.csv"));
}

TEST_CASE("predict evaluates curves from a saved report") {
  const fs::path dir = fresh_dir("predict");
  // Build a neo-Hooke report by hand so the expected values are closed-form.
  Report rep;
  rep.dataset = "synthetic";
  rep.weights = recover_named_model(NeoHooke{0.5});
  rep.model = classify(rep.weights);
  const fs::path weights = dir / "report.json";
  std::ofstream(weights) << to_json(rep);

  const RunResult r = run_cli("predict --weights " + weights.string() +
                              " --modes UT --lambda-min 1 --lambda-max 2 --lambda-steps 2 "
                              "--out " + dir.string());
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "predict_UT.csv");
  CHECK(csv.find("lambda,p1,p2,pressure\n") == 0);
  CHECK(csv.find("\n2,0.875,") != std::string::npos);

  // Empty grid: header-only file.
  const RunResult r0 = run_cli("predict --weights " + weights.string() +
                               " --modes PS --lambda-steps 0 --out " + dir.string());
  CHECK(r0.exit_code == 0);
  CHECK(slurp(dir / "predict_PS.csv") == "lambda,p1,p2,pressure\n");

  // A grid containing lambda = 0 is a domain error.
  const RunResult rbad = run_cli("predict --weights " + weights.string() +
                                 " --modes UT --lambda-min 0 --lambda-max 1 --lambda-steps 3 "
                                 "--out " + dir.string());
  CHECK(rbad.exit_code != 0);

  const RunResult rmissing = run_cli("predict --weights nowhere.json");
  CHECK(rmissing.exit_code != 0);
}

TEST_CASE("report subcommand re-prints discovery from a saved report") {
  const fs::path dir = fresh_dir("report_cmd");
  Report rep;
  rep.dataset = "synthetic";
  rep.weights = recover_named_model(MooneyRivlin{0.3, 0.1});
  rep.model = classify(rep.weights);
  const fs::path weights = dir / "report.json";
  std::ofstream(weights) << to_json(rep);

  const RunResult r = run_cli("report --weights " + weights.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("mooney_rivlin") != std::string::npos);

  // A huge threshold deactivates everything.
  const RunResult r2 = run_cli("report --weights " + weights.string() + " --threshold 10");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("generalized") != std::string::npos);
}
