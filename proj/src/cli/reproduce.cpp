#include <algorithm>
#include <cmath>

#include "doflab/cli.hpp"
#include "doflab/error.hpp"

namespace doflab {

namespace {

std::vector<double> logspace(double a, double b, std::size_t m) {
  std::vector<double> v;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = m == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(m - 1);
    v.push_back(std::exp(std::log(a) + t * (std::log(b) - std::log(a))));
  }
  return v;
}

ExperimentConfig base(ExperimentKind kind, std::uint64_t seed, std::size_t reps, const std::string& figure) {
  ExperimentConfig c;
  c.kind = kind;
  c.seed = seed;
  c.figure = figure;
  c.estimator.n_reps = reps;
  c.estimator.seed = seed;
  return c;
}

std::vector<PredictorSpec> lasso_path(double lo, double hi, std::size_t m) {
  std::vector<PredictorSpec> v;
  for (double l : logspace(lo, hi, m)) v.push_back(PredictorSpec::lasso(l));
  v.push_back(PredictorSpec::lassoless());
  return v;
}

std::vector<PredictorSpec> knn_grid(std::size_t n) {
  std::vector<PredictorSpec> v;
  for (std::size_t k : {1, 2, 3, 5, 8, 12, 20, 30, 50, 80, 120, 200})
    if (k < n) v.push_back(PredictorSpec::knn(k));
  return v;
}

// Single trees up to interpolation, then forests of interpolating trees.
std::vector<PredictorSpec> forest_path(std::size_t n) {
  std::vector<PredictorSpec> v;
  for (std::size_t leaves : {2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000})
    if (leaves < n) v.push_back(PredictorSpec::tree(leaves));
  v.push_back(PredictorSpec::tree(n));
  for (std::size_t trees : {2, 5, 10, 20}) v.push_back(PredictorSpec::forest(trees, n));
  return v;
}

std::vector<PredictorSpec> compare_grid() {
  std::vector<PredictorSpec> v;
  for (double l : logspace(1e-3, 1e2, 12)) v.push_back(PredictorSpec::ridge(l));
  for (const auto& k : knn_grid(200)) v.push_back(k);
  for (std::size_t leaves : {4, 16, 64, 200}) v.push_back(PredictorSpec::forest(10, leaves));
  return v;
}

std::vector<double> gamma_curve() {
  std::vector<double> g = logspace(0.1, 4.0, 40);
  g.push_back(1.0);
  std::sort(g.begin(), g.end());
  return g;
}

CsvTable project(const CsvTable& t, const std::vector<std::string>& cols) {
  CsvTable out;
  out.header = cols;
  std::vector<std::size_t> idx;
  for (const auto& c : cols) idx.push_back(t.column(c));
  for (const auto& r : t.rows) {
    std::vector<std::string> row;
    for (std::size_t i : idx) row.push_back(r[i]);
    out.add_row(std::move(row));
  }
  return out;
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"fig1",          "fig-lasso-under", "fig-lasso-over", "fig-forest",        "fig-compare",
          "fig-attribution", "fig-ridge",     "fig-ridgeless",  "fig-lasso-theory",  "fig-lassoless",
          "fig-knn-under", "fig-knn-over",    "fig-random-features"};
}

std::vector<FigureRun> figure_recipe(std::string_view figure_id, std::uint64_t seed, bool full,
                                     std::optional<std::size_t> reps_override) {
  const std::string id(figure_id);
  const std::size_t reps = reps_override ? *reps_override : (full ? 500 : 100);
  std::vector<FigureRun> runs;
  auto sweep = [&](const std::string& name, GeneratorSpec g, std::vector<PredictorSpec> preds) {
    ExperimentConfig c = base(ExperimentKind::Sweep, seed, reps, id);
    c.generator = g;
    c.predictors = std::move(preds);
    runs.push_back({name, std::move(c)});
  };
  auto theory = [&](const std::string& name, GeneratorSpec g, AsymptoticsConfig a) {
    ExperimentConfig c = base(ExperimentKind::Asymptotics, seed, reps, id);
    c.generator = g;
    c.asymptotics = std::move(a);
    runs.push_back({name, std::move(c)});
  };

  if (id == "fig1") {
    GeneratorSpec g = GeneratorSpec::nonlinear_ar1(100, 300);
    g.sort_by_signal = true;
    std::vector<PredictorSpec> preds;
    for (std::size_t p = 1; p <= 300; ++p) {
      PredictorSpec s = PredictorSpec::ridgeless();
      s.max_features = p;
      preds.push_back(s);
    }
    sweep("sweep", g, preds);
  } else if (id == "fig-lasso-under") {
    sweep("lasso", GeneratorSpec::sparse_linear(200, 30, 10), lasso_path(0.1, 150.0, 25));
  } else if (id == "fig-lasso-over") {
    sweep("lasso", GeneratorSpec::sparse_linear(200, 300, 100), lasso_path(0.1, 150.0, 25));
  } else if (id == "fig-forest") {
    const std::size_t n = full ? 2000 : 400;
    sweep("forest", GeneratorSpec::linear_ar1(n, full ? 50 : 20), forest_path(n));
  } else if (id == "fig-compare") {
    sweep("linear", GeneratorSpec::linear_ar1(200, 100), compare_grid());
  } else if (id == "fig-attribution") {
    ExperimentConfig c = base(ExperimentKind::Decompose, seed, reps, id);
    c.generator = GeneratorSpec::linear_ar1(200, 100);
    c.predictors = compare_grid();
    runs.push_back({"attribution", std::move(c)});
  } else if (id == "fig-ridge") {
    AsymptoticsConfig a;
    a.system = TheorySystem::Ridge;
    a.lambda = logspace(1e-2, 1e1, 16);
    a.spectrum = "generator";
    a.monte_carlo = true;
    theory("under", GeneratorSpec::nonlinear_ar1(500, 300), a);
    theory("over", GeneratorSpec::nonlinear_ar1(200, 300), a);
  } else if (id == "fig-ridgeless") {
    AsymptoticsConfig a;
    a.system = TheorySystem::Ridgeless;
    a.gamma = gamma_curve();
    a.spectrum = "generator";
    a.monte_carlo = true;
    a.mc_gamma = {0.25, 0.5, 0.75, 1.5, 2.0, 3.0, 4.0};
    theory("ridgeless", GeneratorSpec::nonlinear_ar1(400, 400), a);
  } else if (id == "fig-lasso-theory") {
    AsymptoticsConfig a;
    a.system = TheorySystem::Lasso;
    a.lambda = logspace(0.05, 4.0, 16);
    a.signal = "generator";
    a.monte_carlo = true;
    theory("under", GeneratorSpec::bernoulli_signal(800, 600, 1.0 / 6.0), a);
    theory("over", GeneratorSpec::bernoulli_signal(400, 600, 1.0 / 6.0), a);
  } else if (id == "fig-lassoless") {
    AsymptoticsConfig a;
    a.system = TheorySystem::Lassoless;
    a.gamma = gamma_curve();
    a.signal = "bernoulli";
    a.delta = 0.1;
    a.monte_carlo = true;
    a.mc_gamma = {0.25, 0.5, 0.75, 1.5, 2.0, 3.0};
    theory("lassoless", GeneratorSpec::bernoulli_signal(400, 400, 0.1), a);
  } else if (id == "fig-knn-under") {
    sweep("knn", GeneratorSpec::nonlinear_ar1(500, 300), knn_grid(500));
  } else if (id == "fig-knn-over") {
    sweep("knn", GeneratorSpec::nonlinear_ar1(200, 300), knn_grid(200));
  } else if (id == "fig-random-features") {
    std::vector<PredictorSpec> preds;
    for (std::size_t p = 1; p <= 300; ++p) {
      PredictorSpec s = PredictorSpec::random_features_ridgeless(p);
      s.rf_seed = seed;
      preds.push_back(s);
    }
    sweep("random-features", GeneratorSpec::nonlinear_ar1(100, 300), preds);
  } else {
    throw InvalidArgument("unknown figure id '" + id + "'");
  }
  for (auto& r : runs) r.config.full = full;
  return runs;
}

std::vector<NamedTable> reproduce(std::string_view figure_id, std::uint64_t seed, bool full,
                                  std::optional<std::size_t> reps, std::size_t workers) {
  std::vector<NamedTable> out;
  for (auto& run : figure_recipe(figure_id, seed, full, reps)) {
    run.config.estimator.workers = workers;
    run.config.validate();
    CsvTable t = run_experiment(run.config);
    const Manifest m = make_manifest(run.config);
    if (figure_id == "fig1") {
      out.push_back({"err_vs_p", project(t, {"p_eff", "err_R", "se_err_R", "err_T", "se_err_T"}), m});
      out.push_back({"df_vs_p", project(t, {"p_eff", "df_fixed", "se_fixed", "df_emergent", "se_emergent",
                                            "df_intrinsic", "se_intrinsic"}), m});
      out.push_back({"err_vs_df", project(t, {"p_eff", "df_emergent", "df_intrinsic", "err_R", "se_err_R"}), m});
    } else {
      out.push_back({run.name, std::move(t), m});
    }
  }
  return out;
}

}  // namespace doflab
