#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cann/baseline_nn.hpp"
#include "cann/data.hpp"
#include "cann/discovery.hpp"
#include "cann/optimizer.hpp"
#include "cann/stress.hpp"

namespace fs = std::filesystem;
using namespace cann;

namespace {

constexpr int kExitError = 1;
constexpr int kExitDiverged = 2;

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Dataset resolve_dataset(const std::string& selector) {
  const auto& names = builtin_dataset_names();
  if (std::find(names.begin(), names.end(), selector) != names.end()) {
    return builtin_dataset(selector);
  }
  return load_csv(selector);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_model_summary(std::ostream& os, const DiscoveredModel& model) {
  os << "discovered model: " << model.model_name;
  if (model.nearest_family) os << " (nearest family: " << *model.nearest_family << ")";
  os << "\n";
  os << "active terms (" << model.active_terms.size() << " of " << kNumTerms << "):";
  if (model.active_terms.empty()) os << " none";
  os << "\n";
  for (TermId id : model.active_terms) os << "  " << to_string(id) << "\n";
  if (!model.physical_params.empty()) {
    os << "physical parameters:\n";
    for (const auto& [name, p] : model.physical_params) {
      os << "  " << name << " = " << num(p.value) << " " << p.unit << "\n";
    }
  }
}

std::string curve_csv(const Report& rep, DeformationMode mode) {
  std::string csv = "lambda,p_model,p_data";
  for (int t = 1; t <= kNumTerms; ++t) csv += ",term_" + std::to_string(t);
  csv += "\n";
  for (const CurvePoint& pt : rep.curves) {
    if (pt.mode != mode) continue;
    csv += num(pt.lambda) + "," + num(pt.p_model) + "," + num(pt.p_data);
    for (double v : pt.p_terms) csv += "," + num(v);
    csv += "\n";
  }
  return csv;
}

std::string loss_csv(const std::vector<double>& history) {
  std::string csv = "epoch,mse\n";
  for (std::size_t e = 0; e < history.size(); ++e) {
    csv += std::to_string(e + 1) + "," + num(history[e]) + "\n";
  }
  return csv;
}

struct FitOptions {
  std::string data;
  std::string out_dir = ".";
  AdamConfig config;
  std::optional<double> threshold;
};

int cmd_fit(const FitOptions& opt) {
  const Dataset dataset = resolve_dataset(opt.data);
  const TrainingRecord rec = train_cann(dataset, opt.config);
  Report rep = report(rec, dataset, opt.threshold);
  rep.config = opt.config;

  fs::create_directories(opt.out_dir);
  const fs::path report_path = fs::path(opt.out_dir) / "report.json";
  write_file(report_path, to_json(rep));
  std::vector<fs::path> artifacts = {report_path};

  for (DeformationMode mode : dataset.modes()) {
    const fs::path p = fs::path(opt.out_dir) / ("curve_" + std::string(to_string(mode)) + ".csv");
    write_file(p, curve_csv(rep, mode));
    artifacts.push_back(p);
  }
  const fs::path loss_path = fs::path(opt.out_dir) / "loss.csv";
  write_file(loss_path, loss_csv(rec.loss_history));
  artifacts.push_back(loss_path);

  print_model_summary(std::cout, rep.model);
  std::cout << "loss: " << num(rep.initial_loss) << " -> " << num(rep.final_loss)
            << " MPa^2 over " << rep.epochs << " epochs (seed " << opt.config.seed << ")\n";
  for (const auto& p : artifacts) std::cout << "wrote " << p.string() << "\n";
  return 0;
}

struct BaselineOptions {
  std::string data;
  std::string out_dir = ".";
  std::string layers = "1,8,1";
  AdamConfig config;
};

std::vector<int> parse_layers(const std::string& text) {
  std::vector<int> sizes;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
  return sizes;
}

int cmd_fit_baseline(const BaselineOptions& opt) {
  const Dataset dataset = resolve_dataset(opt.data);
  const auto modes = dataset.modes();
  if (modes.size() != 1) {
    std::cerr << "error: the baseline network is single-mode by contract; '" << opt.data
              << "' contains " << modes.size() << " modes (train one mode at a time)\n";
    return kExitError;
  }
  const DeformationMode mode = modes.front();

  std::vector<std::pair<double, double>> pairs;
  for (const Sample& s : dataset.samples) pairs.emplace_back(s.lambda, s.stress_mpa);

  const std::vector<int> layer_sizes = parse_layers(opt.layers);
  const MlpTrainingRecord rec = mlp_train(pairs, opt.config, layer_sizes);

  fs::create_directories(opt.out_dir);
  const fs::path loss_path = fs::path(opt.out_dir) / "loss.csv";
  write_file(loss_path, loss_csv(rec.loss_history));

  // Fitted curve on the data grid plus an extrapolation segment up to twice
  // the largest data stretch, to exhibit the tanh saturation.
  std::string csv = "lambda,p_model,p_data\n";
  double max_lambda = 1.0;
  for (const auto& [lambda, stress] : pairs) {
    csv += num(lambda) + "," + num(mlp_forward(rec.params, lambda)) + "," + num(stress) + "\n";
    max_lambda = std::max(max_lambda, lambda);
  }
  for (int i = 1; i <= 20; ++i) {
    const double lambda = max_lambda + i * max_lambda / 20.0;
    csv += num(lambda) + "," + num(mlp_forward(rec.params, lambda)) + ",\n";
  }
  const fs::path curve_path =
      fs::path(opt.out_dir) / ("baseline_curve_" + std::string(to_string(mode)) + ".csv");
  write_file(curve_path, csv);

  std::cout << "baseline network layers:";
  for (int n : layer_sizes) std::cout << " " << n;
  std::cout << " (" << rec.params.parameter_count() << " parameters)\n";
  std::cout << "loss: " << num(rec.loss_history.front()) << " -> "
            << num(rec.loss_history.back()) << " MPa^2 over " << rec.epochs_run << " epochs\n";
  std::cout << "wrote " << loss_path.string() << "\n";
  std::cout << "wrote " << curve_path.string() << "\n";
  return 0;
}

struct PredictOptions {
  std::string weights_path;
  std::string out_dir = ".";
  std::string modes = "UT";
  double lambda_min = 1.0;
  double lambda_max = 8.0;
  int lambda_steps = 50;
};

int cmd_predict(const PredictOptions& opt) {
  const Report rep = report_from_json(read_file(opt.weights_path));

  std::vector<double> grid;
  for (int i = 0; i < opt.lambda_steps; ++i) {
    grid.push_back(opt.lambda_steps == 1
                       ? opt.lambda_min
                       : opt.lambda_min + i * (opt.lambda_max - opt.lambda_min) /
                                              (opt.lambda_steps - 1));
  }

  std::istringstream ss(opt.modes);
  std::string tok;
  fs::create_directories(opt.out_dir);
  while (std::getline(ss, tok, ',')) {
    DeformationMode mode;
    if (tok == "UT") mode = DeformationMode::UniaxialTension;
    else if (tok == "ET") mode = DeformationMode::EquibiaxialTension;
    else if (tok == "PS") mode = DeformationMode::PureShear;
    else throw std::invalid_argument("unknown mode '" + tok + "' (expected UT, ET or PS)");

    const auto curve = predict_curve(rep.weights, mode, grid);
    std::string csv = "lambda,p1,p2,pressure\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      csv += num(grid[i]) + "," + num(curve[i].p1) + ",";
      if (curve[i].p2) csv += num(*curve[i].p2);
      csv += "," + num(curve[i].pressure) + "\n";
    }
    const fs::path p = fs::path(opt.out_dir) / ("predict_" + tok + ".csv");
    write_file(p, csv);
    std::cout << "wrote " << p.string() << "\n";
  }
  return 0;
}

int cmd_report(const std::string& weights_path, std::optional<double> threshold) {
  const Report rep = report_from_json(read_file(weights_path));
  const DiscoveredModel model =
      threshold ? classify(rep.weights, *threshold) : classify(rep.weights);
  std::cout << "dataset: " << rep.dataset << "\n";
  print_model_summary(std::cout, model);
  std::cout << "loss: " << num(rep.initial_loss) << " -> " << num(rep.final_loss)
            << " MPa^2 over " << rep.epochs << " epochs\n";
  std::cout << "final gradient norm: " << num(rep.final_gradient_norm) << "\n";
  return 0;
}

int cmd_export_data(const std::string& selector, std::string out_path) {
  const Dataset dataset = resolve_dataset(selector);
  if (out_path.empty()) out_path = selector + ".csv";
  save_csv(dataset, out_path);
  std::cout << "wrote " << out_path << " (" << dataset.size() << " samples)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-based constitutive model discovery for rubber stress-stretch data"};
  app.require_subcommand(1);

  FitOptions fit;
  double fit_threshold = -1.0;
  auto* fit_cmd = app.add_subcommand("fit", "Train the energy network and discover a model");
  fit_cmd->add_option("--data", fit.data, "builtin dataset name or CSV path")->required();
  fit_cmd->add_option("--epochs", fit.config.epochs, "training epochs");
  fit_cmd->add_option("--lr", fit.config.learning_rate, "ADAM learning rate");
  fit_cmd->add_option("--seed", fit.config.seed, "RNG seed for the weight initialization");
  fit_cmd->add_option("--init-scale", fit.config.init_scale,
                      "weights start uniform in [0, init-scale]");
  fit_cmd->add_option("--beta1", fit.config.beta1, "ADAM first-moment decay");
  fit_cmd->add_option("--beta2", fit.config.beta2, "ADAM second-moment decay");
  fit_cmd->add_option("--threshold", fit_threshold,
                      "activity threshold (default: 1e-3 x largest term magnitude)");
  fit_cmd->add_option("--out", fit.out_dir, "output directory");

  BaselineOptions base;
  auto* base_cmd = app.add_subcommand("fit-baseline",
                                      "Train the classical tanh network on single-mode data");
  base_cmd->add_option("--data", base.data, "builtin dataset name or CSV path")->required();
  base_cmd->add_option("--epochs", base.config.epochs, "training epochs");
  base_cmd->add_option("--lr", base.config.learning_rate, "ADAM learning rate");
  base_cmd->add_option("--seed", base.config.seed, "RNG seed for the weight initialization");
  base_cmd->add_option("--layers", base.layers, "comma-separated layer sizes, e.g. 1,8,1");
  base_cmd->add_option("--out", base.out_dir, "output directory");

  PredictOptions pred;
  auto* pred_cmd = app.add_subcommand("predict", "Evaluate stress curves from a fitted report");
  pred_cmd->add_option("--weights", pred.weights_path, "report.json of a prior fit")->required();
  pred_cmd->add_option("--modes", pred.modes, "comma-separated modes (UT,ET,PS)");
  pred_cmd->add_option("--lambda-min", pred.lambda_min, "grid start");
  pred_cmd->add_option("--lambda-max", pred.lambda_max, "grid end");
  pred_cmd->add_option("--lambda-steps", pred.lambda_steps, "grid size");
  pred_cmd->add_option("--out", pred.out_dir, "output directory");

  std::string report_weights;
  double report_threshold = -1.0;
  auto* report_cmd = app.add_subcommand("report", "Re-print discovery from a fitted report");
  report_cmd->add_option("--weights", report_weights, "report.json of a prior fit")->required();
  report_cmd->add_option("--threshold", report_threshold, "activity threshold override");

  auto* list_cmd = app.add_subcommand("list-data", "List builtin dataset names");

  std::string export_data, export_out;
  auto* export_cmd = app.add_subcommand("export-data", "Write a dataset as CSV");
  export_cmd->add_option("--data", export_data, "builtin dataset name or CSV path")->required();
  export_cmd->add_option("--out", export_out, "output CSV path (default: <name>.csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit_cmd->parsed()) {
      if (fit_threshold >= 0.0) fit.threshold = fit_threshold;
      return cmd_fit(fit);
    }
    if (base_cmd->parsed()) return cmd_fit_baseline(base);
    if (pred_cmd->parsed()) return cmd_predict(pred);
    if (report_cmd->parsed()) {
      std::optional<double> thr;
      if (report_threshold >= 0.0) thr = report_threshold;
      return cmd_report(report_weights, thr);
    }
    if (list_cmd->parsed()) {
      for (const auto& name : builtin_dataset_names()) std::cout << name << "\n";
      return 0;
    }
    if (export_cmd->parsed()) return cmd_export_data(export_data, export_out);
  } catch (const DivergenceError& e) {
    std::cerr << "error: training " << e.what() << "\n";
    return kExitDiverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
