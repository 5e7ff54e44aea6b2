#include "cann/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cann/stress.hpp"

namespace cann {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct FamilyPattern {
  const char* name;
  std::set<TermId> active;
};

const std::vector<FamilyPattern>& family_patterns() {
  static const std::vector<FamilyPattern> patterns = {
      {"neo_hooke", {TermId::LinI1}},
      {"blatz_ko", {TermId::LinI2}},
      {"mooney_rivlin", {TermId::LinI1, TermId::LinI2}},
      {"yeoh2", {TermId::LinI1, TermId::QuadI1}},
      {"demiray", {TermId::ExpLinI1}},
  };
  return patterns;
}

void put(std::map<std::string, PhysicalParam>& params, const std::string& name, double value,
         const char* unit) {
  params[name] = PhysicalParam{value, unit};
}

DiscoveredModel classify_impl(const CannWeights& w, double threshold) {
  DiscoveredModel out;
  out.threshold = threshold;

  std::set<TermId> active;
  for (int t = 0; t < kNumTerms; ++t) {
    const TermId id = static_cast<TermId>(t);
    if (w.term_magnitude(id) > threshold) {
      active.insert(id);
      out.active_terms.push_back(id);
    }
  }
  out.sparsity = kNumTerms - static_cast<int>(active.size());

  const double mu1 = 2.0 * w.lin_i1;
  const double mu2 = 2.0 * w.lin_i2;
  const double a1 = 2.0 * w.exp_lin_i1.inner * w.exp_lin_i1.outer;
  const double b1 = w.exp_lin_i1.inner;
  const double a2 = 2.0 * w.exp_lin_i2.inner * w.exp_lin_i2.outer;
  const double b2 = w.exp_lin_i2.inner;

  for (const auto& fam : family_patterns()) {
    if (fam.active != active) continue;
    out.model_name = fam.name;
    if (fam.active == std::set<TermId>{TermId::LinI1}) {
      put(out.physical_params, "mu", mu1, "MPa");
    } else if (fam.active == std::set<TermId>{TermId::LinI2}) {
      put(out.physical_params, "mu", mu2, "MPa");
    } else if (fam.active == std::set<TermId>{TermId::LinI1, TermId::LinI2}) {
      put(out.physical_params, "mu1", mu1, "MPa");
      put(out.physical_params, "mu2", mu2, "MPa");
      put(out.physical_params, "mu", mu1 + mu2, "MPa");
    } else if (fam.active == std::set<TermId>{TermId::LinI1, TermId::QuadI1}) {
      put(out.physical_params, "a1", mu1, "MPa");
      put(out.physical_params, "a2", 2.0 * w.quad_i1, "MPa");
    } else {
      put(out.physical_params, "a", a1, "MPa");
      put(out.physical_params, "b", b1, "-");
    }
    return out;
  }

  out.model_name = "generalized";
  for (TermId id : out.active_terms) {
    switch (id) {
      case TermId::LinI1: put(out.physical_params, "mu1", mu1, "MPa"); break;
      case TermId::LinI2: put(out.physical_params, "mu2", mu2, "MPa"); break;
      case TermId::ExpLinI1:
        put(out.physical_params, "a1", a1, "MPa");
        put(out.physical_params, "b1", b1, "-");
        break;
      case TermId::ExpLinI2:
        put(out.physical_params, "a2", a2, "MPa");
        put(out.physical_params, "b2", b2, "-");
        break;
      case TermId::QuadI1: put(out.physical_params, "q1", 2.0 * w.quad_i1, "MPa"); break;
      case TermId::QuadI2: put(out.physical_params, "q2", 2.0 * w.quad_i2, "MPa"); break;
      case TermId::ExpQuadI1:
        put(out.physical_params, "aq1", 2.0 * w.exp_quad_i1.inner * w.exp_quad_i1.outer, "MPa");
        put(out.physical_params, "bq1", w.exp_quad_i1.inner, "-");
        break;
      case TermId::ExpQuadI2:
        put(out.physical_params, "aq2", 2.0 * w.exp_quad_i2.inner * w.exp_quad_i2.outer, "MPa");
        put(out.physical_params, "bq2", w.exp_quad_i2.inner, "-");
        break;
    }
  }

  if (!active.empty()) {
    std::size_t best = 0;
    std::size_t best_diff = kNumTerms + 1;
    for (std::size_t i = 0; i < family_patterns().size(); ++i) {
      std::vector<TermId> diff;
      std::set_symmetric_difference(active.begin(), active.end(),
                                    family_patterns()[i].active.begin(),
                                    family_patterns()[i].active.end(), std::back_inserter(diff));
      if (diff.size() < best_diff) {
        best_diff = diff.size();
        best = i;
      }
    }
    out.nearest_family = family_patterns()[best].name;
  }
  return out;
}

}  // namespace

const char* family_name(const NamedModel& model) {
  return std::visit(
      [](const auto& m) -> const char* {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NeoHooke>) return "neo_hooke";
        else if constexpr (std::is_same_v<T, BlatzKo>) return "blatz_ko";
        else if constexpr (std::is_same_v<T, MooneyRivlin>) return "mooney_rivlin";
        else if constexpr (std::is_same_v<T, Yeoh2>) return "yeoh2";
        else return "demiray";
      },
      model);
}

double default_threshold(const CannWeights& w) {
  double max_mag = 0.0;
  for (int t = 0; t < kNumTerms; ++t) {
    max_mag = std::max(max_mag, w.term_magnitude(static_cast<TermId>(t)));
  }
  return 1e-3 * max_mag;
}

DiscoveredModel classify(const CannWeights& w, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  return classify_impl(w, threshold);
}

DiscoveredModel classify(const CannWeights& w) {
  return classify_impl(w, default_threshold(w));
}

CannWeights recover_named_model(const NamedModel& model) {
  auto require_positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
  };
  CannWeights w;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NeoHooke>) {
          require_positive(m.mu, "mu");
          w.lin_i1 = m.mu / 2.0;
        } else if constexpr (std::is_same_v<T, BlatzKo>) {
          require_positive(m.mu, "mu");
          w.lin_i2 = m.mu / 2.0;
        } else if constexpr (std::is_same_v<T, MooneyRivlin>) {
          require_positive(m.mu1, "mu1");
          require_positive(m.mu2, "mu2");
          w.lin_i1 = m.mu1 / 2.0;
          w.lin_i2 = m.mu2 / 2.0;
        } else if constexpr (std::is_same_v<T, Yeoh2>) {
          require_positive(m.a1, "a1");
          require_positive(m.a2, "a2");
          w.lin_i1 = m.a1 / 2.0;
          w.quad_i1 = m.a2 / 2.0;
        } else {
          require_positive(m.a, "a");
          require_positive(m.b, "b");
          w.exp_lin_i1 = {m.b, m.a / (2.0 * m.b)};
        }
      },
      model);
  return w;
}

Report report(const TrainingRecord& record, const Dataset& dataset,
              std::optional<double> threshold) {
  Report rep;
  rep.dataset = dataset.source;
  rep.weights = record.final_weights;
  rep.model = threshold ? classify(record.final_weights, *threshold)
                        : classify(record.final_weights);
  rep.initial_loss = record.loss_history.empty() ? 0.0 : record.loss_history.front();
  rep.final_loss = mse_loss(record.final_weights, dataset);
  rep.epochs = record.epochs_run;
  rep.final_gradient_norm = record.final_gradient_norm;

  for (const Sample& s : dataset.samples) {
    CurvePoint pt;
    pt.mode = s.mode;
    pt.lambda = s.lambda;
    pt.p_data = s.stress_mpa;
    pt.p_model = nominal_stress(record.final_weights, s.mode, s.lambda).p1;
    pt.p_terms = term_stresses(record.final_weights, s.mode, s.lambda);
    rep.curves.push_back(pt);
  }
  return rep;
}

std::string to_json(const Report& report) {
  const CannWeights& w = report.weights;
  std::ostringstream os;
  os << "{\n";
  os << "  \"dataset\": \"" << report.dataset << "\",\n";
  os << "  \"model_name\": \"" << report.model.model_name << "\",\n";
  if (report.model.nearest_family) {
    os << "  \"nearest_family\": \"" << *report.model.nearest_family << "\",\n";
  }
  os << "  \"sparsity\": " << report.model.sparsity << ",\n";
  os << "  \"threshold\": " << g17(report.model.threshold) << ",\n";

  os << "  \"active_terms\": [";
  for (std::size_t i = 0; i < report.model.active_terms.size(); ++i) {
    const TermId id = report.model.active_terms[i];
    if (i) os << ", ";
    os << "{\"term\": \"" << to_string(id) << "\", \"magnitude\": "
       << g17(w.term_magnitude(id)) << "}";
  }
  os << "],\n";

  os << "  \"physical_params\": {";
  bool first = true;
  for (const auto& [name, param] : report.model.physical_params) {
    if (!first) os << ", ";
    first = false;
    os << "\"" << name << "\": {\"value\": " << g17(param.value) << ", \"unit\": \""
       << param.unit << "\"}";
  }
  os << "},\n";

  os << "  \"weights\": {";
  os << "\"lin_i1\": " << g17(w.lin_i1);
  os << ", \"exp_lin_i1\": {\"inner\": " << g17(w.exp_lin_i1.inner)
     << ", \"outer\": " << g17(w.exp_lin_i1.outer) << "}";
  os << ", \"quad_i1\": " << g17(w.quad_i1);
  os << ", \"exp_quad_i1\": {\"inner\": " << g17(w.exp_quad_i1.inner)
     << ", \"outer\": " << g17(w.exp_quad_i1.outer) << "}";
  os << ", \"lin_i2\": " << g17(w.lin_i2);
  os << ", \"exp_lin_i2\": {\"inner\": " << g17(w.exp_lin_i2.inner)
     << ", \"outer\": " << g17(w.exp_lin_i2.outer) << "}";
  os << ", \"quad_i2\": " << g17(w.quad_i2);
  os << ", \"exp_quad_i2\": {\"inner\": " << g17(w.exp_quad_i2.inner)
     << ", \"outer\": " << g17(w.exp_quad_i2.outer) << "}";
  os << "},\n";

  os << "  \"loss_history_summary\": {\"initial\": " << g17(report.initial_loss)
     << ", \"final\": " << g17(report.final_loss) << ", \"epochs\": " << report.epochs << "},\n";
  os << "  \"final_gradient_norm\": " << g17(report.final_gradient_norm) << ",\n";

  const AdamConfig& c = report.config;
  os << "  \"config\": {\"learning_rate\": " << g17(c.learning_rate)
     << ", \"beta1\": " << g17(c.beta1) << ", \"beta2\": " << g17(c.beta2)
     << ", \"epsilon\": " << g17(c.epsilon) << ", \"epochs\": " << c.epochs
     << ", \"seed\": " << c.seed << ", \"init_scale\": " << g17(c.init_scale) << "},\n";

  os << "  \"curves\": [\n";
  for (std::size_t i = 0; i < report.curves.size(); ++i) {
    const CurvePoint& pt = report.curves[i];
    os << "    {\"mode\": \"" << to_string(pt.mode) << "\", \"lambda\": " << g17(pt.lambda)
       << ", \"p_data\": " << g17(pt.p_data) << ", \"p_model\": " << g17(pt.p_model)
       << ", \"terms\": [";
    for (int t = 0; t < kNumTerms; ++t) {
      if (t) os << ", ";
      os << g17(pt.p_terms[t]);
    }
    os << "]}" << (i + 1 < report.curves.size() ? "," : "") << "\n";
  }
  os << "  ]\n";
  os << "}\n";
  return os.str();
}

Report report_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);

  Report rep;
  rep.dataset = j.at("dataset").get<std::string>();

  const auto& jw = j.at("weights");
  CannWeights w;
  w.lin_i1 = jw.at("lin_i1").get<double>();
  w.exp_lin_i1 = {jw.at("exp_lin_i1").at("inner").get<double>(),
                  jw.at("exp_lin_i1").at("outer").get<double>()};
  w.quad_i1 = jw.at("quad_i1").get<double>();
  w.exp_quad_i1 = {jw.at("exp_quad_i1").at("inner").get<double>(),
                   jw.at("exp_quad_i1").at("outer").get<double>()};
  w.lin_i2 = jw.at("lin_i2").get<double>();
  w.exp_lin_i2 = {jw.at("exp_lin_i2").at("inner").get<double>(),
                  jw.at("exp_lin_i2").at("outer").get<double>()};
  w.quad_i2 = jw.at("quad_i2").get<double>();
  w.exp_quad_i2 = {jw.at("exp_quad_i2").at("inner").get<double>(),
                   jw.at("exp_quad_i2").at("outer").get<double>()};
  rep.weights = w;

  const double threshold = j.at("threshold").get<double>();
  rep.model = threshold > 0.0 ? classify(w, threshold) : classify_impl(w, threshold);

  const auto& js = j.at("loss_history_summary");
  rep.initial_loss = js.at("initial").get<double>();
  rep.final_loss = js.at("final").get<double>();
  rep.epochs = js.at("epochs").get<int>();
  rep.final_gradient_norm = j.at("final_gradient_norm").get<double>();

  const auto& jc = j.at("config");
  rep.config.learning_rate = jc.at("learning_rate").get<double>();
  rep.config.beta1 = jc.at("beta1").get<double>();
  rep.config.beta2 = jc.at("beta2").get<double>();
  rep.config.epsilon = jc.at("epsilon").get<double>();
  rep.config.epochs = jc.at("epochs").get<int>();
  rep.config.seed = jc.at("seed").get<std::uint64_t>();
  rep.config.init_scale = jc.at("init_scale").get<double>();

  for (const auto& jp : j.at("curves")) {
    CurvePoint pt;
    const std::string mode = jp.at("mode").get<std::string>();
    pt.mode = mode == "UT"   ? DeformationMode::UniaxialTension
              : mode == "ET" ? DeformationMode::EquibiaxialTension
                             : DeformationMode::PureShear;
    pt.lambda = jp.at("lambda").get<double>();
    pt.p_data = jp.at("p_data").get<double>();
    pt.p_model = jp.at("p_model").get<double>();
    const auto& terms = jp.at("terms");
    for (int t = 0; t < kNumTerms; ++t) pt.p_terms[t] = terms.at(t).get<double>();
    rep.curves.push_back(pt);
  }
  return rep;
}

}  // namespace cann
