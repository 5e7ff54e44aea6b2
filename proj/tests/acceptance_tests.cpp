// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria that exercise the command line run the installed
// binary through CANN_CLI_PATH.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cann/baseline_nn.hpp"
#include "cann/data.hpp"
#include "cann/discovery.hpp"
#include "cann/optimizer.hpp"
#include "cann/stress.hpp"

namespace fs = std::filesystem;
using namespace cann;

namespace {

// Training protocol used for the multi-mode discovery criteria. The source
// publication does not state optimizer settings; these are pinned here and
// recorded in every report. The tiny init and learning rate keep the
// quadratic-exponential terms out of overflow territory on the
// large-stretch biaxial data (their inner coefficients multiply stretch
// powers up to (I2-3)^2 ~ 1e6, so any sizable step overflows exp and
// permanently poisons the ADAM second moment).
constexpr double kMultiLr = 5e-6;
constexpr int kMultiEpochs = 30000;
constexpr double kMultiInit = 1e-6;

// Protocol for the single-mode loss-decay criterion.
constexpr double kSingleLr = 1e-3;
constexpr int kSingleEpochs = 10000;
constexpr double kSingleInit = 1e-4;

constexpr DeformationMode kModes[] = {DeformationMode::UniaxialTension,
                                      DeformationMode::EquibiaxialTension,
                                      DeformationMode::PureShear};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (static_cast<double>(rng() >> 11) * 0x1.0p-53) * (hi - lo);
}

CannWeights random_weights(std::mt19937_64& rng, double lo, double hi) {
  std::array<double, kNumWeights> a;
  for (double& v : a) v = uniform(rng, lo, hi);
  return CannWeights::from_array(a);
}

// Mixed tolerance: true relative error for O(1) components, absolute at
// 1e-8 below the 0.01 floor (difference quotients of O(1..100) functions
// carry ~1e-9 roundoff, while a factor or sign bug on a small component
// still lands far above the floor).
double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-2});
}

bool within(double value, double center, double rel_tol) {
  return std::abs(value - center) <= rel_tol * std::abs(center);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CANN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "cann_acceptance";
  fs::create_directories(dir);
  return dir;
}

std::string fit_flags(const std::string& dataset, std::uint64_t seed, const fs::path& out) {
  std::ostringstream ss;
  ss << "fit --data " << dataset << " --epochs " << kMultiEpochs << " --lr " << kMultiLr
     << " --init-scale " << kMultiInit << " --seed " << seed << " --out " << out.string();
  return ss.str();
}

struct SeedOutcome {
  bool ok = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Criterion 1: multi-mode discovery on the 20 C data.
bool criterion_multi_mode_20(std::ostream& log) {
  const std::vector<TermId> target = {TermId::LinI1, TermId::ExpLinI1, TermId::ExpLinI2};
  int passes = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const fs::path out = work_dir() / ("t20_seed" + std::to_string(seed));
    const auto t0 = std::chrono::steady_clock::now();
    if (run_cli(fit_flags("treloar20_multi", seed, out)) != 0) {
      log << "    seed " << seed << ": fit failed\n";
      continue;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) {
      log << "    seed " << seed << ": fit took " << secs << " s (budget 60 s)\n";
      continue;
    }
    const Report rep = report_from_json(slurp(out / "report.json"));
    const auto& params = rep.model.physical_params;
    const bool set_ok = rep.model.active_terms == target;
    const bool mu_ok = params.count("mu1") && within(params.at("mu1").value, 0.2370, 0.25);
    const bool a_ok = params.count("a1") && within(params.at("a1").value, 0.0582, 0.50);
    const bool b_ok = params.count("b1") && within(params.at("b1").value, 0.0387, 0.50);
    log << "    seed " << seed << ": active={";
    for (TermId t : rep.model.active_terms) log << " " << to_string(t);
    log << " } set:" << (set_ok ? "ok" : "MISS");
    auto show = [&](const char* name, bool ok) {
      if (params.count(name)) log << " " << name << "=" << params.at(name).value
                                  << (ok ? "(ok)" : "(out)");
      else log << " " << name << "=absent";
    };
    show("mu1", mu_ok);
    show("a1", a_ok);
    show("b1", b_ok);
    log << "\n";
    if (set_ok && mu_ok && a_ok && b_ok) ++passes;
  }
  log << "    " << passes << "/5 seeds satisfied every clause (majority needed)\n";
  return passes >= 3;
}

// Criterion 2: multi-mode discovery on the 50 C data, same protocol.
bool criterion_multi_mode_50(std::ostream& log) {
  int passes = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const fs::path out = work_dir() / ("t50_seed" + std::to_string(seed));
    if (run_cli(fit_flags("treloar50_multi", seed, out)) != 0) {
      log << "    seed " << seed << ": fit failed\n";
      continue;
    }
    const Report rep = report_from_json(slurp(out / "report.json"));
    const auto& params = rep.model.physical_params;
    const bool mu_ok = params.count("mu1") && within(params.at("mu1").value, 0.2830, 0.25);
    bool exp_active = false;
    for (TermId t : rep.model.active_terms) exp_active |= (t == TermId::ExpLinI1);
    log << "    seed " << seed << ": mu1="
        << (params.count("mu1") ? params.at("mu1").value : 0.0) << (mu_ok ? "(ok)" : "(out)")
        << " exp_lin_i1 " << (exp_active ? "active" : "inactive") << "\n";
    if (mu_ok && exp_active) ++passes;
  }
  log << "    " << passes << "/5 seeds passed (majority needed)\n";
  return passes >= 3;
}

// Criterion 3: four-orders loss decay on each single-mode table.
bool criterion_loss_decay(std::ostream& log) {
  const std::vector<std::string> sets = {"treloar20_ut",    "treloar50_ut",
                                         "mooney_gum_ut",   "mooney_tread_ut",
                                         "blatzko_foam_ut", "blatzko_rubber_ut"};
  bool all_ok = true;
  for (const auto& name : sets) {
    AdamConfig config;
    config.learning_rate = kSingleLr;
    config.epochs = kSingleEpochs;
    config.init_scale = kSingleInit;
    config.seed = 1;
    double ratio = 0.0;
    try {
      const TrainingRecord rec = train_cann(builtin_dataset(name), config);
      double lowest = rec.loss_history.front();
      for (double l : rec.loss_history) lowest = std::min(lowest, l);
      ratio = rec.loss_history.front() / lowest;
    } catch (const DivergenceError& e) {
      log << "    " << name << ": " << e.what() << "\n";
      all_ok = false;
      continue;
    }
    const bool ok = ratio >= 1e4;
    log << "    " << name << ": decay ratio " << ratio << (ok ? " (>= 1e4)" : " (< 1e4)") << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok;
}

// Criterion 4: the four analytic gradients against central differences.
bool criterion_gradient_oracles(std::ostream& log) {
  std::mt19937_64 rng(2024);
  const double h = 1e-6;
  int checked = 0;
  double worst = 0.0;

  auto fd_check = [&](double analytic, double fd) {
    worst = std::max(worst, rel_err(analytic, fd));
    ++checked;
    return rel_err(analytic, fd) < 1e-6;
  };

  bool ok = true;
  // Sampling keeps every exponential O(1): the identity being checked is
  // the chain rule, which the difference quotient only resolves in a
  // well-conditioned regime.
  // energy_weight_gradient
  for (int trial = 0; trial < 100; ++trial) {
    const CannWeights w = random_weights(rng, 0.05, 1.0);
    const double i1 = uniform(rng, 3.2, 5.0);
    const double i2 = uniform(rng, 3.2, 5.0);
    const auto g = energy_weight_gradient(w, i1, i2);
    auto arr = w.to_array();
    for (int k = 0; k < kNumWeights; ++k) {
      auto at = [&](double x) {
        auto a = arr;
        a[k] = x;
        return energy(CannWeights::from_array(a), i1, i2);
      };
      ok &= fd_check(g[k], (at(arr[k] + h) - at(arr[k] - h)) / (2.0 * h));
    }
  }
  // stress_weight_gradient
  for (int trial = 0; trial < 100; ++trial) {
    const CannWeights w = random_weights(rng, 0.05, 0.8);
    const DeformationMode mode = kModes[trial % 3];
    const double lambda = mode == DeformationMode::EquibiaxialTension ? uniform(rng, 1.1, 1.4)
                                                                      : uniform(rng, 1.1, 2.0);
    const auto g = stress_weight_gradient(w, mode, lambda);
    auto arr = w.to_array();
    for (int k = 0; k < kNumWeights; ++k) {
      auto at = [&](double x) {
        auto a = arr;
        a[k] = x;
        return nominal_stress(CannWeights::from_array(a), mode, lambda).p1;
      };
      ok &= fd_check(g[k], (at(arr[k] + h) - at(arr[k] - h)) / (2.0 * h));
    }
  }
  // loss_gradient, on a short-stretch multi-mode grid
  Dataset data;
  data.source = "fd-grid";
  for (DeformationMode mode : kModes) {
    for (double lambda : {1.05, 1.15, 1.25, 1.35, 1.45}) {
      data.samples.push_back({mode, lambda, 0.3 * (lambda - 1.0)});
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const CannWeights w = random_weights(rng, 0.05, 0.8);
    const auto g = loss_gradient(w, data);
    auto arr = w.to_array();
    for (int k = 0; k < kNumWeights; ++k) {
      auto at = [&](double x) {
        auto a = arr;
        a[k] = x;
        return mse_loss(CannWeights::from_array(a), data);
      };
      ok &= fd_check(g[k], (at(arr[k] + h) - at(arr[k] - h)) / (2.0 * h));
    }
  }
  // mlp_gradient
  for (int trial = 0; trial < 100; ++trial) {
    MlpParams p = MlpParams::initialize({1, 8, 1}, 1000 + trial);
    for (auto& b : p.biases)
      for (double& v : b) v = uniform(rng, -0.5, 0.5);
    const double lambda = uniform(rng, 1.0, 6.0);
    const MlpGradient g = mlp_gradient(p, lambda);
    for (std::size_t layer = 0; layer < p.weights.size(); ++layer) {
      for (std::size_t i = 0; i < p.weights[layer].size(); ++i) {
        auto at = [&](double x) {
          MlpParams q = p;
          q.weights[layer][i] = x;
          return mlp_forward(q, lambda);
        };
        const double x0 = p.weights[layer][i];
        ok &= fd_check(g.weights[layer][i], (at(x0 + h) - at(x0 - h)) / (2.0 * h));
      }
      for (std::size_t i = 0; i < p.biases[layer].size(); ++i) {
        auto at = [&](double x) {
          MlpParams q = p;
          q.biases[layer][i] = x;
          return mlp_forward(q, lambda);
        };
        const double x0 = p.biases[layer][i];
        ok &= fd_check(g.biases[layer][i], (at(x0 + h) - at(x0 - h)) / (2.0 * h));
      }
    }
  }
  log << "    " << checked << " gradient components checked, worst relative error " << worst
      << "\n";
  return ok;
}

// Criterion 5: thermodynamic and physical invariants over random weights.
bool criterion_physical_invariants(std::ostream& log) {
  std::mt19937_64 rng(31337);
  bool ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const CannWeights w = random_weights(rng, 0.0, 1.0);
    for (DeformationMode mode : kModes) {
      const auto s = nominal_stress(w, mode, 1.0);
      ok &= std::abs(s.p1) < 1e-12;
      if (s.p2) ok &= std::abs(*s.p2) < 1e-12;
    }
    ok &= energy(w, 3.0, 3.0) == 0.0;
    ok &= energy(w, uniform(rng, 3.0, 12.0), uniform(rng, 3.0, 12.0)) >= 0.0;

    const DeformationMode mode = kModes[trial % 3];
    double prev = 0.0;
    for (int i = 0; i <= 30; ++i) {
      const double lambda = 1.0 + i * 9.0 / 30.0;
      const double p = nominal_stress(w, mode, lambda).p1;
      const double slack = std::isfinite(prev) ? 1e-12 * std::max(1.0, std::abs(prev)) : 0.0;
      if (!(p >= prev - slack)) ok = false;
      prev = p;
    }
    if (!ok) {
      log << "    violated at trial " << trial << "\n";
      return false;
    }
  }
  log << "    1000 random weight vectors: stress-free reference, zero and non-negative "
         "energy, monotone stress\n";
  return true;
}

// Criterion 6: named-model stress equivalence and classification round trip.
bool criterion_named_models(std::ostream& log) {
  std::mt19937_64 rng(555);
  bool ok = true;
  int curves = 0;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    const double mu = uniform(rng, 0.1, 2.0);
    const double mu2 = uniform(rng, 0.05, 1.0);
    const double a1 = uniform(rng, 0.05, 1.0);
    const double a2 = uniform(rng, 0.05, 0.5);
    const double b = uniform(rng, 0.02, 0.5);

    auto check_curve = [&](const NamedModel& m, auto closed_form_ut) {
      const CannWeights w = recover_named_model(m);
      for (double lambda = 1.0; lambda <= 5.0; lambda += 0.25) {
        const double got = nominal_stress(w, DeformationMode::UniaxialTension, lambda).p1;
        const double want = closed_form_ut(lambda);
        if (std::abs(got - want) > 1e-12 * std::max(1.0, std::abs(want))) return false;
      }
      ++curves;
      return true;
    };

    auto g = [](double l) { return l - 1.0 / (l * l); };
    auto x1 = [](double l) { return l * l + 2.0 / l - 3.0; };

    ok &= check_curve(NeoHooke{mu}, [&](double l) { return mu * g(l); });
    ok &= check_curve(BlatzKo{mu}, [&](double l) { return mu * (1.0 - 1.0 / (l * l * l)); });
    ok &= check_curve(MooneyRivlin{mu, mu2}, [&](double l) { return (mu + mu2 / l) * g(l); });
    ok &= check_curve(Yeoh2{a1, a2}, [&](double l) { return (a1 + 2.0 * a2 * x1(l)) * g(l); });
    ok &= check_curve(Demiray{a1, b},
                      [&](double l) { return a1 * std::exp(b * x1(l)) * g(l); });

    const std::vector<std::pair<NamedModel, std::vector<std::pair<const char*, double>>>> cases =
        {{NeoHooke{mu}, {{"mu", mu}}},
         {BlatzKo{mu}, {{"mu", mu}}},
         {MooneyRivlin{mu, mu2}, {{"mu1", mu}, {"mu2", mu2}}},
         {Yeoh2{a1, a2}, {{"a1", a1}, {"a2", a2}}},
         {Demiray{a1, b}, {{"a", a1}, {"b", b}}}};
    for (const auto& [model, expected] : cases) {
      const DiscoveredModel dm = classify(recover_named_model(model));
      if (dm.model_name != family_name(model)) ok = false;
      for (const auto& [pname, pval] : expected) {
        if (!dm.physical_params.count(pname) ||
            std::abs(dm.physical_params.at(pname).value - pval) >
                1e-12 * std::max(1.0, std::abs(pval))) {
          ok = false;
        }
      }
    }
  }
  log << "    " << curves << " closed-form curves matched, classification round trips exact\n";
  return ok;
}

// Criterion 7: baseline network fit quality and saturation bound.
bool criterion_baseline(std::ostream& log) {
  std::vector<std::pair<double, double>> pairs;
  const Dataset data = builtin_dataset("treloar20_ut");
  for (const Sample& s : data.samples) pairs.emplace_back(s.lambda, s.stress_mpa);

  AdamConfig config;
  config.epochs = 20000;
  config.learning_rate = 1e-2;
  config.seed = 1;
  const MlpTrainingRecord rec = mlp_train(pairs, config, {1, 8, 1});

  double mse = 0.0;
  for (const auto& [l, s] : pairs) {
    const double r = mlp_forward(rec.params, l) - s;
    mse += r * r / static_cast<double>(pairs.size());
  }
  log << "    (1,8,1) tanh network on treloar20_ut: final MSE " << mse << " MPa^2\n";
  if (!(mse < 1e-2)) return false;

  double bound = std::abs(rec.params.biases.back()[0]);
  for (double w : rec.params.weights.back()) bound += std::abs(w);
  for (double lambda = 8.0; lambda <= 20.0; lambda += 0.1) {
    if (std::abs(mlp_forward(rec.params, lambda)) > bound) {
      log << "    saturation bound violated at lambda " << lambda << "\n";
      return false;
    }
  }
  log << "    extrapolation over [8, 20] stays within the saturation bound " << bound << "\n";
  return true;
}

// Criterion 8: kinematics identities.
bool criterion_kinematics(std::ostream& log) {
  std::mt19937_64 rng(999);
  bool ok = true;
  for (DeformationMode mode : kModes) {
    for (double lambda = 0.5; lambda <= 10.0; lambda += 0.05) {
      const auto inv = invariants(mode, lambda);
      const auto gen = general_invariants(deformation_gradient(mode, lambda));
      ok &= std::abs(inv.i1 - gen.i1) < 1e-12 * std::max(1.0, gen.i1);
      ok &= std::abs(inv.i2 - gen.i2) < 1e-12 * std::max(1.0, gen.i2);
    }
  }
  for (double lambda = 0.5; lambda <= 10.0; lambda += 0.05) {
    const auto ps = invariants(DeformationMode::PureShear, lambda);
    ok &= (ps.i1 == ps.i2);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const CannWeights w = random_weights(rng, 0.0, 1.0);
    const double lambda = uniform(rng, 1.0, 5.0);
    const auto s = nominal_stress(w, DeformationMode::EquibiaxialTension, lambda);
    ok &= s.p2.has_value() && s.p1 == *s.p2;
  }
  for (int trial = 0; trial < 200; ++trial) {
    const double l1 = uniform(rng, 0.4, 3.0);
    const double l2 = uniform(rng, 0.4, 3.0);
    const double l3 = uniform(rng, 0.4, 3.0);
    const double c = uniform(rng, 0.2, 5.0);
    const auto base = general_invariants({l1, l2, l3});
    const auto scaled = general_invariants({c * l1, c * l2, c * l3});
    ok &= std::abs(base.ibar1 - scaled.ibar1) < 1e-12 * std::max(1.0, base.ibar1);
    ok &= std::abs(base.ibar2 - scaled.ibar2) < 1e-12 * std::max(1.0, base.ibar2);
  }
  log << "    mode/general agreement, pure-shear equality, equibiaxial P1=P2, "
         "dilation-invariant isochoric invariants\n";
  return ok;
}

// Criterion 9: byte-identical reports for identical flags and seed.
bool criterion_determinism(std::ostream& log) {
  const fs::path out_a = work_dir() / "det_a";
  const fs::path out_b = work_dir() / "det_b";
  const std::string flags =
      "fit --data treloar20_multi --epochs 2000 --lr 1e-5 --init-scale 1e-6 --seed 7 --out ";
  if (run_cli(flags + out_a.string()) != 0 || run_cli(flags + out_b.string()) != 0) {
    log << "    fit failed\n";
    return false;
  }
  const std::string a = slurp(out_a / "report.json");
  const std::string b = slurp(out_b / "report.json");
  log << "    two identical fits produced " << a.size() << "-byte reports, byte-equal: "
      << (a == b ? "yes" : "NO") << "\n";
  return !a.empty() && a == b;
}

struct Criterion {
  std::string name;
  std::function<bool(std::ostream&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1 multi-mode discovery, 20 C (active set, mu1 +/-25%, a1/b1 +/-50%, majority of 5 seeds)",
       criterion_multi_mode_20},
      {"2 multi-mode discovery, 50 C (mu1 +/-25%, I1 linear-exponential active, majority of 5 seeds)",
       criterion_multi_mode_50},
      {"3 loss decay >= 4 orders of magnitude on the six single-mode tables within 10000 epochs",
       criterion_loss_decay},
      {"4 analytic gradients match central finite differences (rel err < 1e-6, >= 100 samples)",
       criterion_gradient_oracles},
      {"5 thermodynamic invariants on 1000 random non-negative weight vectors",
       criterion_physical_invariants},
      {"6 named-model stress equivalence within 1e-12 and exact classification round trip",
       criterion_named_models},
      {"7 baseline (1,8,1) network: MSE < 1e-2 MPa^2 within 20000 epochs, bounded extrapolation",
       criterion_baseline},
      {"8 kinematics identities at 1e-12", criterion_kinematics},
      {"9 determinism: identical flags and seed give byte-identical report.json",
       criterion_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail << "    exception: " << e.what() << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.name << "\n" << detail.str();
    if (!ok) ++failures;
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criterion(s) failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
