#include <algorithm>
#include <cmath>
#include <set>

#include "doflab/cli.hpp"
#include "doflab/error.hpp"
#include "doflab/omega.hpp"

namespace doflab {

namespace {

std::string num(double x) { return format_number(x); }
std::string num(std::size_t x) { return std::to_string(x); }

const std::vector<std::string> kPredictorColumns = {"predictor", "family",   "lambda",       "k",
                                                    "max_leaves", "n_trees", "max_features", "rf_features",
                                                    "p_eff"};

std::vector<std::string> predictor_cells(const PredictorSpec& p, std::size_t gen_p) {
  std::size_t p_eff = gen_p;
  if (p.family == Family::RandomFeaturesRidgeless)
    p_eff = p.rf_features;
  else if (p.max_features)
    p_eff = std::min(p.max_features, gen_p);
  return {p.label(),          to_string(p.family), num(p.lambda),       num(p.k), num(p.max_leaves),
          num(p.n_trees),     num(p.max_features), num(p.rf_features), num(p_eff)};
}

EstimatorConfig estimator_of(const ExperimentConfig& cfg) {
  EstimatorConfig e = cfg.estimator;
  e.seed = cfg.seed;
  return e;
}

}  // namespace

CsvTable run_sweep(const ExperimentConfig& cfg) {
  require(cfg.generator.has_value(), "sweep needs a generator");
  require(!cfg.predictors.empty(), "sweep needs predictors");
  const EstimatorConfig est = estimator_of(cfg);
  const DataModel model(*cfg.generator, cfg.seed);
  const auto reports = dof_sweep(model, cfg.predictors, est);

  CsvTable t;
  t.header = kPredictorColumns;
  for (const char* c : {"n", "p", "reps", "failed", "sigma2", "err_R", "se_err_R", "err_T", "se_err_T", "opt",
                        "se_opt", "opt_intrinsic", "se_opt_intrinsic", "df_fixed", "se_fixed", "df_emergent",
                        "se_emergent", "df_intrinsic", "se_intrinsic", "df_bias", "se_bias", "mean_nonzero"})
    t.header.push_back(c);
  const bool cv = est.cv_folds.has_value();
  if (cv)
    for (const char* c : {"cv_optimism", "se_cv_optimism", "df_cv"}) t.header.push_back(c);

  std::optional<Dataset> cv_data;
  if (cv) cv_data = generate(*cfg.generator, cfg.seed);
  for (const auto& r : reports) {
    auto row = predictor_cells(r.predictor, model.p());
    const auto& e = r.emergent;
    const auto& i = r.intrinsic;
    for (const auto& s :
         {num(r.n), num(model.p()), num(e.n_reps), num(e.failed), num(r.sigma2_used), num(e.err_R), num(e.se_err_R),
          num(e.err_T), num(e.se_err_T), num(e.optimism), num(e.se), num(i.optimism), num(i.se), num(r.df_fixed),
          num(r.se_fixed), num(r.df_emergent), num(r.se_emergent), num(r.df_intrinsic), num(r.se_intrinsic),
          num(r.df_bias), num(r.se_bias), r.mean_nonzero ? num(*r.mean_nonzero) : std::string()})
      row.push_back(s);
    if (cv) {
      const auto o = cv_optimism(*cv_data, r.predictor, *est.cv_folds, cfg.seed);
      row.push_back(num(o.optimism));
      row.push_back(num(o.se));
      row.push_back(num(df_from_optimism(o.optimism, r.sigma2_used, r.n)));
    }
    t.add_row(std::move(row));
  }
  return t;
}

namespace {

struct GammaPoint {
  double gamma;
  std::size_t n = 0, p = 0;
  bool mc = false;
};

std::vector<GammaPoint> gamma_points(const ExperimentConfig& cfg) {
  const auto& a = *cfg.asymptotics;
  const std::size_t n = cfg.generator ? cfg.generator->n : 1000;
  auto point = [&](double g, bool mc) {
    GammaPoint gp;
    gp.n = n;
    gp.p = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(g * static_cast<double>(n))));
    gp.mc = mc;
    // Points that carry Monte Carlo columns use the realized aspect ratio.
    gp.gamma = mc ? static_cast<double>(gp.p) / static_cast<double>(n) : g;
    return gp;
  };
  std::vector<double> grid = a.gamma;
  if (grid.empty()) grid.push_back(static_cast<double>(cfg.generator->p) / static_cast<double>(n));
  std::vector<GammaPoint> pts;
  if (!a.monte_carlo) {
    for (double g : grid) pts.push_back(point(g, false));
  } else if (a.mc_gamma.empty()) {
    for (double g : grid) pts.push_back(point(g, true));
  } else {
    for (double g : grid) pts.push_back(point(g, false));
    for (double g : a.mc_gamma) pts.push_back(point(g, true));
    std::stable_sort(pts.begin(), pts.end(), [](const GammaPoint& x, const GammaPoint& y) {
      return x.gamma < y.gamma || (x.gamma == y.gamma && x.mc && !y.mc);
    });
    std::vector<GammaPoint> uniq;
    for (const auto& p : pts)
      if (uniq.empty() || uniq.back().gamma != p.gamma) uniq.push_back(p);
    pts = std::move(uniq);
  }
  return pts;
}

GeneratorSpec generator_at(const ExperimentConfig& cfg, std::size_t p) {
  GeneratorSpec g = *cfg.generator;
  g.p = p;
  return g;
}

double theory_sigma2(const ExperimentConfig& cfg) {
  const auto& a = *cfg.asymptotics;
  if (a.sigma2) return *a.sigma2;
  if (cfg.generator) return cfg.generator->sigma * cfg.generator->sigma;
  return 1.0;
}

SpectralModel spectral_model(const ExperimentConfig& cfg, const GammaPoint& gp,
                             const std::optional<DataModel>& model) {
  const auto& a = *cfg.asymptotics;
  const double s2 = theory_sigma2(cfg);
  SpectralModel s;
  if (a.spectrum == "generator") {
    s = SpectralModel::from_data_model(*model);
    if (a.sigma2) s.sigma2 = *a.sigma2;
    s.gamma = gp.gamma;
  } else if (a.spectrum == "atoms") {
    s.atoms = a.atoms;
    s.gamma = gp.gamma;
    s.sigma2 = s2;
    s.sigma2_nl = a.sigma2_nl;
  } else {
    s = SpectralModel::identity(gp.gamma, s2, a.signal_energy, a.sigma2_nl);
  }
  s.validate();
  return s;
}

SignalLaw signal_law(const ExperimentConfig& cfg, const GammaPoint& gp, const std::optional<DataModel>& model) {
  const auto& a = *cfg.asymptotics;
  if (a.signal == "generator") return SignalLaw::empirical(model->beta());
  if (a.signal == "bernoulli")
    return SignalLaw::bernoulli(a.delta, a.amplitude ? *a.amplitude : 1.0 / std::sqrt(a.delta * gp.gamma));
  if (a.signal == "atoms") {
    SignalLaw l;
    l.atoms = a.signal_atoms;
    l.validate();
    return l;
  }
  return SignalLaw::zero();
}

PenaltyLaw penalty_law(const AsymptoticsConfig& a) {
  if (a.penalty == "ridge") return PenaltyLaw::ridge();
  if (a.penalty == "elastic-net") return PenaltyLaw::elastic_net(a.alpha);
  if (a.penalty == "pseudo-huber") return PenaltyLaw::pseudo_huber();
  return PenaltyLaw::soft_threshold();
}

struct TheoryRow {
  double lambda = 0.0;
  double mu = NAN, tau = NAN, a = NAN, V = NAN, B = NAN, D = NAN;
  double fixed = 0.0, intrinsic = 0.0, emergent = 0.0;
  bool divergent = false;
  double residual = NAN;
};

TheoryRow from_ridge(double lambda, const RidgeSolution& r) {
  TheoryRow t;
  t.lambda = lambda;
  t.mu = r.mu;
  t.V = r.V;
  t.B = r.B;
  t.D = r.D;
  t.fixed = r.df_fixed_norm;
  t.intrinsic = r.df_intrinsic_norm;
  t.emergent = r.df_emergent_norm;
  t.divergent = r.divergent;
  return t;
}

TheoryRow from_scalar(double lambda, const DofEquivalents& d) {
  TheoryRow t;
  t.lambda = lambda;
  t.fixed = d.df_fixed_norm;
  t.intrinsic = d.df_intrinsic_norm;
  t.emergent = d.df_emergent_norm;
  t.divergent = d.divergent;
  if (d.emergent.tau > 0.0) {
    t.mu = d.emergent.mu;
    t.tau = d.emergent.tau;
    t.a = d.emergent.a;
    t.residual = std::max(d.emergent.residual_tau, d.emergent.residual_mu);
  }
  return t;
}

PredictorSpec mc_predictor(TheorySystem sys, double lambda, const AsymptoticsConfig& a) {
  switch (sys) {
    case TheorySystem::Ridge:
      return lambda > 0.0 ? PredictorSpec::ridge(lambda) : PredictorSpec::ridgeless();
    case TheorySystem::Ridgeless:
      return PredictorSpec::ridgeless();
    case TheorySystem::Lasso:
      return lambda > 0.0 ? PredictorSpec::lasso(lambda) : PredictorSpec::lassoless();
    case TheorySystem::Lassoless:
      return PredictorSpec::lassoless();
    case TheorySystem::Convex:
      if (a.penalty == "soft-threshold") return lambda > 0.0 ? PredictorSpec::lasso(lambda) : PredictorSpec::lassoless();
      break;
  }
  throw InvalidArgument("no Monte Carlo predictor for the " + a.penalty + " penalty");
}

}  // namespace

CsvTable run_asymptotics(const ExperimentConfig& cfg) {
  require(cfg.asymptotics.has_value(), "asymptotics experiment needs an asymptotics block");
  const auto& a = *cfg.asymptotics;
  const bool spectral = a.system == TheorySystem::Ridge || a.system == TheorySystem::Ridgeless;
  const bool scalar_mc = a.monte_carlo && !spectral;
  if (scalar_mc)
    require(cfg.generator->variant == GeneratorVariant::BernoulliSignal,
            "scalar-system Monte Carlo needs the bernoulli-signal generator (features with variance 1/n)");
  const EstimatorConfig est = estimator_of(cfg);
  const PenaltyLaw penalty = penalty_law(a);

  CsvTable t;
  t.header = {"system", "gamma", "lambda", "n",  "p",        "mu",           "tau",
              "a",      "V",     "B",      "D",  "df_fixed_norm", "df_intrinsic_norm", "df_emergent_norm",
              "divergent", "residual"};
  if (a.monte_carlo)
    for (const char* c : {"mc", "mc_reps", "mc_err_R", "mc_se_err_R", "mc_df_fixed_norm", "mc_se_df_fixed_norm",
                          "mc_df_intrinsic_norm", "mc_se_df_intrinsic_norm", "mc_df_emergent_norm",
                          "mc_se_df_emergent_norm"})
      t.header.push_back(c);

  std::vector<double> lambdas = a.lambda;
  if (a.system == TheorySystem::Ridgeless || a.system == TheorySystem::Lassoless) lambdas = {0.0};

  for (const auto& gp : gamma_points(cfg)) {
    std::optional<DataModel> model;
    const bool need_model = gp.mc || a.spectrum == "generator" || a.signal == "generator";
    if (need_model) model.emplace(generator_at(cfg, gp.p), cfg.seed);

    std::vector<TheoryRow> theory;
    if (spectral) {
      const SpectralModel s = spectral_model(cfg, gp, model);
      for (double l : lambdas)
        theory.push_back(from_ridge(l, l > 0.0 ? ridge_equivalents(l, s) : ridgeless_equivalents(s)));
    } else {
      const SignalLaw law = signal_law(cfg, gp, model);
      const double s2 = theory_sigma2(cfg);
      for (double l : lambdas) {
        DofEquivalents d;
        switch (a.system) {
          case TheorySystem::Lasso:
            d = l > 0.0 ? lasso_equivalents(l, gp.gamma, law, s2) : lassoless_equivalents(gp.gamma, law, s2);
            break;
          case TheorySystem::Lassoless:
            d = lassoless_equivalents(gp.gamma, law, s2);
            break;
          default:
            d = convex_equivalents(l, gp.gamma, law, s2, penalty);
            break;
        }
        theory.push_back(from_scalar(l, d));
      }
    }

    std::vector<DofReport> mc;
    if (gp.mc) {
      std::vector<PredictorSpec> preds;
      for (double l : lambdas) preds.push_back(mc_predictor(a.system, l, a));
      mc = dof_sweep(*model, preds, est);
    }

    for (std::size_t i = 0; i < theory.size(); ++i) {
      const auto& th = theory[i];
      std::vector<std::string> row = {to_string(a.system), num(gp.gamma), num(th.lambda), num(gp.n), num(gp.p),
                                      num(th.mu),          num(th.tau),   num(th.a),      num(th.V), num(th.B),
                                      num(th.D),           num(th.fixed), num(th.intrinsic), num(th.emergent),
                                      th.divergent ? "1" : "0", num(th.residual)};
      if (a.monte_carlo) {
        if (gp.mc) {
          const auto& r = mc[i];
          const double n = static_cast<double>(r.n);
          for (const auto& s : {std::string("1"), num(r.emergent.n_reps), num(r.emergent.err_R),
                                num(r.emergent.se_err_R), num(r.df_fixed / n), num(r.se_fixed / n),
                                num(r.df_intrinsic / n), num(r.se_intrinsic / n), num(r.df_emergent / n),
                                num(r.se_emergent / n)})
            row.push_back(s);
        } else {
          row.push_back("0");
          row.resize(t.header.size());
        }
      }
      t.add_row(std::move(row));
    }
  }
  return t;
}

CsvTable run_decompose(const ExperimentConfig& cfg) {
  require(cfg.generator.has_value(), "decompose needs a generator");
  require(!cfg.predictors.empty(), "decompose needs predictors");
  const EstimatorConfig est = estimator_of(cfg);
  const DataModel model(*cfg.generator, cfg.seed);
  const auto grids = scenario_sweep(model, cfg.predictors, cfg.shift, est);

  CsvTable t;
  t.header = kPredictorColumns;
  for (const char* c : {"n", "p", "reps", "sigma2", "df00", "se00", "df01", "se01", "df10", "se10", "df11", "se11",
                        "phi_bias", "se_phi_bias", "phi_cov", "se_phi_cov", "efficiency_residual"})
    t.header.push_back(c);
  for (std::size_t g = 0; g < grids.size(); ++g) {
    const auto& s = grids[g];
    const Attribution at = shapley_attribution(s);
    auto row = predictor_cells(cfg.predictors[g], model.p());
    for (const auto& c : {num(s.n), num(model.p()), num(s.opt00.size()), num(s.sigma2_used), num(s.df00),
                          num(s.se00), num(s.df01), num(s.se01), num(s.df10), num(s.se10), num(s.df11), num(s.se11),
                          num(at.phi_bias), num(at.se_phi_bias), num(at.phi_cov), num(at.se_phi_cov),
                          num(at.efficiency_residual)})
      row.push_back(c);
    t.add_row(std::move(row));
  }
  return t;
}

CsvTable run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Sweep:
      return run_sweep(cfg);
    case ExperimentKind::Asymptotics:
      return run_asymptotics(cfg);
    case ExperimentKind::Decompose:
      return run_decompose(cfg);
    case ExperimentKind::Reproduce:
      break;
  }
  throw InvalidArgument("reproduce experiments emit several tables; use reproduce()");
}

}  // namespace doflab
