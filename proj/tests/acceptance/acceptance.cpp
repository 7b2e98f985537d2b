// Acceptance checks: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]  (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doflab/asymptotics.hpp"
#include "doflab/cli.hpp"
#include "doflab/core.hpp"
#include "doflab/decomposition.hpp"
#include "doflab/estimator.hpp"
#include "doflab/omega.hpp"
#include "doflab/predictors.hpp"

using namespace doflab;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;
  std::vector<std::string> failures;

  void need(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (failures.size() < 4) failures.push_back(what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<double> logspace(double a, double b, std::size_t m) {
  std::vector<double> v;
  for (std::size_t i = 0; i < m; ++i)
    v.push_back(std::exp(std::log(a) + (std::log(b) - std::log(a)) * static_cast<double>(i) / static_cast<double>(m - 1)));
  return v;
}

double pooled(double a, double b) { return std::hypot(a, b); }

// Every CSV-producing run, kept for the determinism check.
struct Recorded {
  std::string name;
  ExperimentConfig config;
  CsvTable table;
};
std::vector<Recorded> recorded;

CsvTable record(const std::string& name, ExperimentConfig cfg) {
  cfg.estimator.seed = cfg.seed;
  cfg.validate();
  CsvTable t = run_experiment(cfg);
  recorded.push_back({name, cfg, t});
  return t;
}

ExperimentConfig sweep_config(std::uint64_t seed, const GeneratorSpec& g, std::vector<PredictorSpec> preds,
                              std::size_t reps) {
  ExperimentConfig c;
  c.kind = ExperimentKind::Sweep;
  c.seed = seed;
  c.generator = g;
  c.predictors = std::move(preds);
  c.estimator.n_reps = reps;
  return c;
}

ExperimentConfig theory_config(std::uint64_t seed, std::optional<GeneratorSpec> g, AsymptoticsConfig a,
                               std::size_t reps) {
  ExperimentConfig c;
  c.kind = ExperimentKind::Asymptotics;
  c.seed = seed;
  c.generator = g;
  c.asymptotics = std::move(a);
  c.estimator.n_reps = reps;
  return c;
}

// ---- 1

Check reference_calibration() {
  Check c;
  std::uint64_t seed = 100;
  for (int variant = 0; variant < 2; ++variant)
    for (std::size_t d : {5, 10, 25, 50}) {
      const GeneratorSpec g = variant == 0 ? GeneratorSpec::sparse_linear(100, d, d, 1.0)
                                           : GeneratorSpec::linear_ar1(100, d, 0.5, 1.0);
      const CsvTable t = record("calibration", sweep_config(++seed, g, {PredictorSpec::least_squares()}, 2000));
      const double ref = reference_optimism(static_cast<double>(d), 100, 1.0);
      const double opt = t.number(0, "opt"), se = t.number(0, "se_opt");
      const double df = t.number(0, "df_emergent"), sdf = t.number(0, "se_emergent");
      const std::string tag = (variant == 0 ? "iid d=" : "ar1(0.5) d=") + std::to_string(d);
      c.need(std::abs(opt - ref) <= 3.0 * se, tag + fmt(" opt %.4f vs %.4f", opt, ref) + fmt(" (se %.4f)", se));
      c.need(std::abs(df - static_cast<double>(d)) <= 3.0 * sdf, tag + fmt(" df %.3f (se %.3f)", df, sdf));
      c.note(tag + fmt(":%.2fse", std::abs(opt - ref) / se));
    }
  return c;
}

// ---- 2

Check omega_round_trip() {
  Check c;
  double worst = 0.0;
  for (std::size_t n : {10, 100, 10000})
    for (int i = 0; i < 1000; ++i) {
      const double d = (static_cast<double>(n) - 2.0) * static_cast<double>(i) / 1000.0;
      worst = std::max(worst, std::abs(omega_n(reference_optimism(d, n, 1.0), n) - d));
    }
  c.need(worst <= 1e-9, fmt("round trip error %.3g", worst));
  c.note(fmt("max round trip error %.2g", worst));
  for (double x : {0.5, 2.0, 10.0}) {
    double prev = INFINITY;
    for (std::size_t n : {10, 100, 1000, 10000, 100000}) {
      const double gap = std::abs(omega_n(x, n) / static_cast<double>(n) - omega(x));
      c.need(gap < prev, fmt("gap not decreasing at x=%g n=%g", x, static_cast<double>(n)));
      prev = gap;
    }
  }
  return c;
}

// ---- 3

Check fixed_x_anchors() {
  Check c;
  std::vector<PredictorSpec> preds = {PredictorSpec::least_squares()};
  for (double l : logspace(2.0, 120.0, 6)) preds.push_back(PredictorSpec::lasso(l));
  const GeneratorSpec g = GeneratorSpec::sparse_linear(200, 30, 10);
  const ExperimentConfig cfg = sweep_config(301, g, preds, 100);
  const CsvTable t = record("fixed-x lasso path", cfg);
  c.need(std::abs(t.number(0, "df_fixed") - 30.0) <= 1e-8, fmt("least squares df_F %.12g", t.number(0, "df_fixed")));

  EstimatorConfig est;
  est.seed = cfg.seed;
  est.fixed_x_outer = 20;
  est.fixed_x_inner = 100;
  const DataModel model(g, cfg.seed);
  double worst = 0.0;
  for (std::size_t i = 1; i < preds.size(); ++i) {
    const DfEstimate mc = fixed_x_df_monte_carlo(model, preds[i], est);
    const double nnz = t.number(i, "df_fixed"), se = t.number(i, "se_fixed");
    const double z = std::abs(mc.value - nnz) / pooled(mc.se, se);
    worst = std::max(worst, z);
    c.need(z <= 3.0, preds[i].label() + fmt(": covariance df %.3f vs nonzero %.3f", mc.value, nnz));
  }
  c.note(fmt("lasso path max gap %.2f pooled se", worst));

  const DataModel wide(GeneratorSpec::nonlinear_ar1(50, 100), 302);
  est.seed = 302;
  const DfEstimate r = fixed_x_df_monte_carlo(wide, PredictorSpec::ridgeless(), est);
  c.need(std::abs(r.value - 50.0) <= 3.0 * r.se, fmt("ridgeless MC df_F %.3f (se %.3f) vs 50", r.value, r.se));
  c.note(fmt("ridgeless MC df_F %.2f (se %.2f)", r.value, r.se));
  return c;
}

// ---- 4

Check universality() {
  Check c;
  GeneratorSpec g = GeneratorSpec::sparse_linear(600, 180, 180, 1.0);
  g.features = FeatureDistribution::Rademacher;
  const CsvTable t = record("rademacher", sweep_config(401, g, {PredictorSpec::least_squares()}, 1000));
  const double target = 0.3 + 0.3 / 0.7;
  const double opt = t.number(0, "opt"), se = t.number(0, "se_opt");
  c.need(std::abs(opt - target) <= 3.0 * se, fmt("optimism %.4f vs %.4f (se %.4f)", opt, target, se));
  c.note(fmt("optimism %.4f, target %.4f, se %.4f", opt, target, se));
  return c;
}

// ---- 5

double quadratic_mu(double lambda, double gamma) {
  const double b = 1.0 - lambda - gamma;
  return 0.5 * (-b + std::sqrt(b * b + 4.0 * lambda));
}

// Largest |theory − MC| over MC rows of an asymptotics table, per df kind.
double max_mc_gap(const CsvTable& t, Check& c, const std::string& tag) {
  double worst = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.number(i, "mc") != 1.0) continue;
    for (const char* kind : {"fixed", "intrinsic", "emergent"}) {
      const std::string th = std::string("df_") + kind + "_norm";
      const double gap = std::abs(t.number(i, th) - t.number(i, "mc_" + th));
      worst = std::max(worst, gap);
      c.need(gap <= 0.05, tag + " " + kind + fmt(" gap %.4f at gamma=%.3g lambda=%.3g", gap, t.number(i, "gamma"),
                                                  t.number(i, "lambda")));
    }
  }
  return worst;
}

Check ridge_exactness() {
  Check c;
  double worst = 0.0;
  for (double lambda : logspace(1e-2, 1e1, 10))
    for (double gamma : logspace(0.1, 5.0, 10))
      worst = std::max(worst, std::abs(solve_ridge_mu(lambda, SpectralModel::identity(gamma, 1.0)) -
                                       quadratic_mu(lambda, gamma)));
  c.need(worst <= 1e-10, fmt("closed-form mu error %.3g", worst));
  c.note(fmt("mu error %.2g", worst));

  AsymptoticsConfig a;
  a.system = TheorySystem::Ridge;
  a.lambda = logspace(1e-2, 1e1, 8);
  a.spectrum = "generator";
  a.monte_carlo = true;
  std::uint64_t seed = 500;
  for (auto [n, p] : {std::pair<std::size_t, std::size_t>{300, 180}, {150, 225}}) {
    const CsvTable t = record("ridge theory", theory_config(++seed, GeneratorSpec::nonlinear_ar1(n, p), a, 100));
    const std::string tag = "n=" + std::to_string(n) + " p=" + std::to_string(p);
    c.note(tag + fmt(" max gap %.4f", max_mc_gap(t, c, tag)));
  }
  return c;
}

// ---- 6

Check ridgeless_theory() {
  Check c;
  AsymptoticsConfig a;
  a.system = TheorySystem::Ridgeless;
  a.gamma = {0.25, 0.5, 2.0, 4.0};
  a.spectrum = "generator";
  a.monte_carlo = true;
  const CsvTable t = record("ridgeless theory", theory_config(601, GeneratorSpec::nonlinear_ar1(400, 400), a, 100));
  c.note(fmt("max gap %.4f", max_mc_gap(t, c, "ridgeless")));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double g = t.number(i, "gamma");
    if (g >= 1.0) continue;
    c.need(std::abs(t.number(i, "df_intrinsic_norm") - g) <= 1e-9, fmt("theory intrinsic at gamma=%.3g", g));
    c.need(std::abs(t.number(i, "mc_df_intrinsic_norm") - g) <= 0.05,
           fmt("MC intrinsic %.4f at gamma=%.3g", t.number(i, "mc_df_intrinsic_norm"), g));
  }

  AsymptoticsConfig curve;
  curve.system = TheorySystem::Ridgeless;
  curve.gamma = logspace(0.1, 10.0, 49);
  curve.gamma.push_back(1.0);
  std::sort(curve.gamma.begin(), curve.gamma.end());
  curve.spectrum = "identity";
  curve.signal_energy = 1.0;
  curve.sigma2 = 0.16;
  const CsvTable u = record("ridgeless curve", theory_config(602, std::nullopt, curve, 100));
  c.need(u.rows.size() == 50, "curve has " + std::to_string(u.rows.size()) + " points");
  for (const char* kind : {"df_intrinsic_norm", "df_emergent_norm"}) {
    std::size_t peak = 0;
    for (std::size_t i = 1; i < u.rows.size(); ++i)
      if (u.number(i, kind) > u.number(peak, kind)) peak = i;
    c.need(u.number(peak, "gamma") == 1.0, std::string(kind) + fmt(" peaks at gamma=%.4g", u.number(peak, "gamma")));
    const bool intrinsic = std::string(kind) == "df_intrinsic_norm";
    for (std::size_t i = 1; i < u.rows.size(); ++i) {
      const double prev = u.number(i - 1, kind), cur = u.number(i, kind);
      if (u.number(i, "gamma") <= 1.0)
        c.need(cur > prev, std::string(kind) + fmt(" not increasing at gamma=%.4g", u.number(i, "gamma")));
      else if (intrinsic)
        c.need(cur < prev, std::string(kind) + fmt(" not decreasing at gamma=%.4g", u.number(i, "gamma")));
    }
  }
  return c;
}

// ---- 7

double stratified_m2(double a0, std::size_t draws, std::uint64_t seed) {
  RandomStream rng(seed, 0, StreamRole::PureNoise);
  double sum = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double u = (static_cast<double>(i) + rng.uniform()) / static_cast<double>(draws);
    const double s = soft_threshold(normal_quantile(u), a0);
    sum += s * s;
  }
  return sum / static_cast<double>(draws);
}

Check lasso_theory() {
  Check c;
  const ScalarSystemSolution cf = lassoless_intrinsic_closed_form(2.0, 1.0);
  c.need(std::abs(cf.a - normal_quantile(0.75)) <= 1e-12, fmt("a0 %.15g", cf.a));
  const double m2 = stratified_m2(cf.a, 10000000, 701);
  const double tau2_mc = 1.0 / (1.0 - 2.0 * m2);
  const double rel = std::abs(cf.tau * cf.tau - tau2_mc) / tau2_mc;
  c.need(rel <= 1e-4, fmt("tau0^2 %.6f vs MC %.6f", cf.tau * cf.tau, tau2_mc));
  c.note(fmt("tau0^2 %.6f, MC %.6f", cf.tau * cf.tau, tau2_mc));

  AsymptoticsConfig a;
  a.system = TheorySystem::Lasso;
  a.lambda = logspace(0.1, 3.0, 8);
  a.signal = "generator";
  a.monte_carlo = true;
  std::uint64_t seed = 710;
  std::vector<CsvTable> tables;
  for (std::size_t p : {300, 600}) {
    tables.push_back(
        record("lasso theory", theory_config(++seed, GeneratorSpec::bernoulli_signal(400, p, 1.0 / 6.0), a, 100)));
    const std::string tag = "p=" + std::to_string(p);
    c.note(tag + fmt(" max gap %.4f", max_mc_gap(tables.back(), c, tag)));
  }

  AsymptoticsConfig curve;
  curve.system = TheorySystem::Lassoless;
  curve.gamma = logspace(0.1, 10.0, 50);
  curve.signal = "bernoulli";
  curve.delta = 0.1;
  curve.sigma2 = 1.0;
  tables.push_back(record("lassoless curve", theory_config(719, std::nullopt, curve, 100)));

  double resid = 0.0;
  for (const auto& t : tables)
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (t.number(i, "divergent") == 1.0) continue;
      resid = std::max(resid, t.number(i, "residual"));
      c.need(t.number(i, "df_emergent_norm") >= t.number(i, "df_intrinsic_norm"),
             fmt("emergent below intrinsic at gamma=%.4g lambda=%.4g", t.number(i, "gamma"), t.number(i, "lambda")));
    }
  for (std::size_t k = 0; k < 2; ++k) {
    const CsvTable& t = tables[k];
    for (std::size_t i = 1; i < t.rows.size(); ++i)
      c.need(t.number(i, "df_intrinsic_norm") < t.number(i - 1, "df_intrinsic_norm"),
             fmt("intrinsic not decreasing in lambda at %.4g", t.number(i, "lambda")));
  }
  c.need(resid <= 1e-10, fmt("solver residual %.3g", resid));
  c.note(fmt("max residual %.2g", resid));
  return c;
}

// ---- 8

Check convex_specialization() {
  Check c;
  double lasso_gap = 0.0, ridge_gap = 0.0, gcv = 0.0;
  const std::vector<double> lambdas = {0.1, 0.4, 1.0, 2.0, 5.0}, gammas = {0.2, 0.5, 0.9, 1.5, 3.0};
  const PenaltyLaw laws[] = {PenaltyLaw::soft_threshold(), PenaltyLaw::ridge(), PenaltyLaw::elastic_net(0.5),
                             PenaltyLaw::pseudo_huber()};
  for (double lambda : lambdas)
    for (double gamma : gammas) {
      const SignalLaw law = SignalLaw::bernoulli(1.0 / 6.0, 1.0 / std::sqrt(gamma / 6.0));
      const DofEquivalents l = lasso_equivalents(lambda, gamma, law, 1.0);
      const DofEquivalents v = convex_equivalents(lambda, gamma, law, 1.0, PenaltyLaw::soft_threshold());
      lasso_gap = std::max({lasso_gap, std::abs(l.df_fixed_norm - v.df_fixed_norm),
                            std::abs(l.df_intrinsic_norm - v.df_intrinsic_norm),
                            std::abs(l.df_emergent_norm - v.df_emergent_norm), std::abs(l.emergent.tau - v.emergent.tau)});
      const DofEquivalents r = convex_equivalents(lambda, gamma, SignalLaw::zero(), 1.0, PenaltyLaw::ridge());
      ridge_gap = std::max(ridge_gap, std::abs(r.df_fixed_norm -
                                               ridge_equivalents(lambda, SpectralModel::identity(gamma, 1.0)).df_fixed_norm));
      for (const auto& pen : laws) gcv = std::max(gcv, gcv_consistency_check(lambda, gamma, law, 1.0, pen));
    }
  c.need(lasso_gap <= 1e-9, fmt("soft-threshold vs lasso %.3g", lasso_gap));
  c.need(ridge_gap <= 1e-6, fmt("ridge prox vs ridge df_F %.3g", ridge_gap));
  c.need(gcv <= 1e-9, fmt("gcv residual %.3g", gcv));
  c.note(fmt("lasso %.2g, ridge %.2g, gcv %.2g", lasso_gap, ridge_gap, gcv));
  return c;
}

// ---- 9

Check emergent_above_intrinsic() {
  Check c;
  std::vector<PredictorSpec> preds;
  for (double l : logspace(1e-3, 1e2, 8)) preds.push_back(PredictorSpec::ridge(l));
  preds.push_back(PredictorSpec::ridgeless());
  for (std::size_t k : {1, 3, 10, 30}) preds.push_back(PredictorSpec::knn(k));
  std::vector<PredictorSpec> under = preds;
  under.push_back(PredictorSpec::least_squares());
  double worst = INFINITY;
  std::size_t points = 0;
  std::uint64_t seed = 900;
  for (auto [g, list] : {std::pair{GeneratorSpec::nonlinear_ar1(200, 100), under},
                         std::pair{GeneratorSpec::nonlinear_ar1(100, 200), preds}}) {
    const CsvTable t = record("excess bias", sweep_config(++seed, g, list, 100));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double b = t.number(i, "df_bias"), se = t.number(i, "se_bias");
      worst = std::min(worst, se > 0.0 ? b / se : b);
      ++points;
      c.need(b >= -3.0 * se, t.rows[i][0] + fmt(" df_bias %.4f (se %.4f)", b, se));
    }
  }
  c.note(std::to_string(points) + " points" + fmt(", smallest df_bias/se %.2f", worst));
  return c;
}

// ---- 10

Check double_descent() {
  Check c;
  GeneratorSpec g = GeneratorSpec::nonlinear_ar1(100, 300);
  g.sort_by_signal = true;
  std::vector<PredictorSpec> preds;
  for (std::size_t p = 1; p <= 300; ++p) {
    PredictorSpec s = PredictorSpec::ridgeless();
    s.max_features = p;
    preds.push_back(s);
  }
  const CsvTable t = record("double descent", sweep_config(1001, g, preds, 100));
  auto at = [&](std::size_t p, const char* col) { return t.number(p - 1, col); };

  std::size_t peak = 50;
  for (std::size_t p = 50; p <= 200; ++p)
    if (at(p, "err_R") > at(peak, "err_R")) peak = p;
  c.need(peak >= 90 && peak <= 110, "err_R peak at p=" + std::to_string(peak));
  c.note("err_R peak at p=" + std::to_string(peak));

  for (std::size_t p = 121; p <= 300; ++p) {
    const double slack = 2.0 * std::max(at(p, "se_intrinsic"), at(p - 1, "se_intrinsic"));
    c.need(at(p, "df_intrinsic") < at(p - 1, "df_intrinsic") + slack,
           fmt("df_intrinsic rises at p=%g: %.3f after %.3f", static_cast<double>(p), at(p, "df_intrinsic"),
               at(p - 1, "df_intrinsic")));
  }
  for (std::size_t p = 1; p <= 300; ++p) {
    const double target = static_cast<double>(std::min<std::size_t>(p, 100));
    c.need(std::abs(at(p, "df_fixed") - target) <= 3.0 * at(p, "se_fixed") + 1e-8,
           fmt("df_fixed %.6f at p=%g", at(p, "df_fixed"), static_cast<double>(p)));
  }
  return c;
}

// ---- 11

Check random_forest() {
  Check c;
  ExperimentConfig cfg = figure_recipe("fig-forest", 1101, false, 40).front().config;
  cfg.figure.clear();
  cfg.estimator.fixed_x_outer = 10;
  cfg.estimator.fixed_x_inner = 50;
  const CsvTable t = record("forest", cfg);
  const double n = static_cast<double>(cfg.generator->n);
  std::size_t threshold = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.rows[i][t.column("family")] == "tree" && t.number(i, "max_leaves") == n) threshold = i;
  c.need(threshold > 0, "no interpolating tree in the path");

  for (std::size_t i = 1; i <= threshold; ++i)
    c.need(t.number(i, "df_fixed") >= t.number(i - 1, "df_fixed") - 3.0 * pooled(t.number(i, "se_fixed"), t.number(i - 1, "se_fixed")),
           fmt("df_fixed drops at row %g: %.2f", static_cast<double>(i), t.number(i, "df_fixed")));
  for (std::size_t i = threshold; i < t.rows.size(); ++i)
    c.need(std::abs(t.number(i, "df_fixed") - n) <= 3.0 * t.number(i, "se_fixed") + 1e-8,
           fmt("df_fixed %.2f off n at row %g", t.number(i, "df_fixed"), static_cast<double>(i)));
  for (const char* kind : {"emergent", "intrinsic"}) {
    const std::string df = std::string("df_") + kind, se = std::string("se_") + kind;
    for (std::size_t i = threshold + 1; i < t.rows.size(); ++i) {
      c.need(t.number(i, df) < t.number(i - 1, df) + 2.0 * pooled(t.number(i, se), t.number(i - 1, se)),
             df + fmt(" rises at row %g: %.2f", static_cast<double>(i), t.number(i, df)));
      c.need(t.number(i, df) + 3.0 * t.number(i, se) < n - 1.0, df + fmt(" %.2f near n-1", t.number(i, df)));
    }
    c.need(t.number(t.rows.size() - 1, df) < t.number(threshold, df), df + " not lower after adding trees");
    c.note(std::string(kind) + fmt(" %.1f -> %.1f", t.number(threshold, df), t.number(t.rows.size() - 1, df)));
  }
  return c;
}

// ---- 12

Check shapley() {
  Check c;
  std::vector<PredictorSpec> preds;
  for (double l : {0.01, 0.1, 1.0, 10.0}) preds.push_back(PredictorSpec::ridge(l));
  for (std::size_t k : {1, 5, 20}) preds.push_back(PredictorSpec::knn(k));
  preds.push_back(PredictorSpec::forest(5, 16));
  auto make = [&](std::uint64_t seed, GeneratorSpec g, ShiftSpec s) {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::Decompose;
    cfg.seed = seed;
    cfg.generator = g;
    cfg.predictors = preds;
    cfg.shift = s;
    cfg.estimator.n_reps = 60;
    return cfg;
  };
  GeneratorSpec null = GeneratorSpec::linear_ar1(100, 20);
  null.signal_scale = 0.0;
  const CsvTable full = record("shapley", make(1201, GeneratorSpec::linear_ar1(100, 20), ShiftSpec{}));
  const CsvTable noshift = record("shapley no shift", make(1202, GeneratorSpec::linear_ar1(100, 20), ShiftSpec::none()));
  const CsvTable nosignal = record("shapley no signal", make(1203, null, ShiftSpec{}));

  std::size_t rows = 0, literal = 0;
  for (const CsvTable* t : {&full, &noshift, &nosignal})
    for (std::size_t i = 0; i < t->rows.size(); ++i) {
      const double d00 = t->number(i, "df00"), d11 = t->number(i, "df11");
      const double pb = t->number(i, "phi_bias"), pc = t->number(i, "phi_cov");
      c.need(d11 - d00 - pb - pc == 0.0, t->rows[i][0] + " efficiency residual nonzero");
      c.need(t->number(i, "efficiency_residual") == 0.0, t->rows[i][0] + " efficiency column nonzero");
      literal += d00 + pb + pc == d11;
      ++rows;
    }
  c.note(std::to_string(rows) + " rows, " + std::to_string(literal) + " also exact in summed form");
  for (std::size_t i = 0; i < noshift.rows.size(); ++i)
    c.need(std::abs(noshift.number(i, "phi_cov")) <= 3.0 * noshift.number(i, "se_phi_cov"),
           noshift.rows[i][0] + fmt(" no-shift phi_cov %.4f", noshift.number(i, "phi_cov")));
  double worst = 0.0;
  for (std::size_t i = 0; i < nosignal.rows.size(); ++i) {
    const double pb = nosignal.number(i, "phi_bias"), se = nosignal.number(i, "se_phi_bias");
    worst = std::max(worst, std::abs(pb) / se);
    c.need(std::abs(pb) <= 3.0 * se, nosignal.rows[i][0] + fmt(" no-signal phi_bias %.4f (se %.4f)", pb, se));
  }
  c.note(fmt("no-signal max |phi_bias|/se %.2f", worst));
  return c;
}

// ---- 13

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Check determinism() {
  Check c;
  const auto dir = std::filesystem::temp_directory_path() / "doflab-acceptance";
  std::filesystem::remove_all(dir);
  std::size_t i = 0;
  for (const auto& r : recorded) {
    ExperimentConfig cfg = r.config;
    cfg.estimator.workers = 2;
    const CsvTable t = run_experiment(cfg);
    const std::string base = (dir / std::to_string(i++)).string();
    write_csv(base + "-a.csv", t, make_manifest(cfg));
    write_csv(base + "-b.csv", r.table, make_manifest(r.config));
    c.need(slurp(base + "-a.csv") == slurp(base + "-b.csv"), r.name + ": CSV differs between runs");
    c.need(slurp(base + "-a.csv.manifest.json") == slurp(base + "-b.csv.manifest.json"), r.name + ": manifest differs");
  }
  std::filesystem::remove_all(dir);
  c.note(std::to_string(recorded.size()) + " runs repeated with a different worker count");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"reference calibration", reference_calibration},
      {"omega round trip", omega_round_trip},
      {"fixed-X anchors", fixed_x_anchors},
      {"universality", universality},
      {"ridge solver exactness", ridge_exactness},
      {"ridgeless theory vs MC", ridgeless_theory},
      {"lasso and lassoless", lasso_theory},
      {"convex specialization", convex_specialization},
      {"emergent >= intrinsic", emergent_above_intrinsic},
      {"double descent", double_descent},
      {"random forest", random_forest},
      {"shapley decomposition", shapley},
      {"determinism", determinism},
  };
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(static_cast<std::size_t>(std::stoul(argv[i])));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string detail;
    for (const auto& s : c.ok ? c.notes : c.failures) detail += (detail.empty() ? "" : "; ") + s;
    std::printf("%s %2zu %s [%.0fs] %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                detail.c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
