#include "doflab/decomposition.hpp"

#include <cmath>

#include "../estimator/engine.hpp"
#include "doflab/error.hpp"
#include "doflab/omega.hpp"

namespace doflab {

void ShiftSpec::validate() const {
  require(scale > 0.0 && std::isfinite(scale), "shift scale must be positive");
  if (offset) require(std::isfinite(*offset), "shift offset must be finite");
}

ShiftSpec ShiftSpec::none() {
  ShiftSpec s;
  s.scale = 1.0;
  s.offset = 0.0;
  return s;
}

Vector ShiftSpec::resolve(std::size_t dim) const {
  if (offset_vector.size() > 0) {
    require(static_cast<std::size_t>(offset_vector.size()) == dim, "shift offset vector has the wrong length");
    return offset_vector;
  }
  const double v = offset ? *offset : 0.5 / std::sqrt(static_cast<double>(dim));
  return Vector::Constant(static_cast<Eigen::Index>(dim), v);
}

namespace {

std::vector<double> paired(const std::vector<detail::PointRecord>& recs, double detail::PointRecord::*train,
                           double detail::PointRecord::*test) {
  std::vector<double> v;
  v.reserve(recs.size());
  for (const auto& r : recs) v.push_back(r.*test - r.*train);
  return v;
}

}  // namespace

std::vector<ScenarioGrid> scenario_sweep(const DataModel& model, std::span<const PredictorSpec> grid,
                                         const ShiftSpec& shift, const EstimatorConfig& cfg) {
  shift.validate();
  require(!grid.empty(), "scenario sweep needs predictors");
  const std::size_t n = model.n();
  double sigma2 = detail::known_sigma2(model, cfg);
  detail::RunModes modes;
  modes.shift = detail::TestShift{shift.scale, shift.resolve(model.latent_dim())};
  std::vector<std::vector<detail::PointRecord>> sig, noi;
  if (cfg.sigma2_source == Sigma2Source::Proxy) {
    modes.noise = false;
    sig = detail::run_replications(model, grid, cfg, modes);
    sigma2 = INFINITY;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      std::vector<double> t, r;
      for (const auto& rec : sig[g]) {
        t.push_back(rec.err_t_signal);
        r.push_back(rec.err_r_signal);
      }
      sigma2 = std::min(sigma2, detail::summarize(t, r, cfg.max_failure_fraction, grid[g].label()).err_R);
    }
    modes.noise = true;
    modes.signal = false;
    modes.noise_sd = std::sqrt(sigma2);
    noi = detail::run_replications(model, grid, cfg, modes);
  } else {
    modes.noise_sd = std::sqrt(sigma2);
    sig = detail::run_replications(model, grid, cfg, modes);
    noi = sig;
  }

  std::vector<ScenarioGrid> out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    ScenarioGrid sg;
    sg.n = n;
    sg.sigma2_used = sigma2;
    using R = detail::PointRecord;
    std::vector<double> c00 = paired(noi[g], &R::err_t_noise, &R::err_r_noise);
    std::vector<double> c01 = paired(noi[g], &R::err_t_noise, &R::err_r_noise_shift);
    std::vector<double> c10 = paired(sig[g], &R::err_t_signal, &R::err_r_signal);
    std::vector<double> c11 = paired(sig[g], &R::err_t_signal, &R::err_r_signal_shift);
    std::size_t failed = 0;
    for (std::size_t i = 0; i < c00.size(); ++i) {
      if (!(std::isfinite(c00[i]) && std::isfinite(c01[i]) && std::isfinite(c10[i]) && std::isfinite(c11[i]))) {
        ++failed;
        continue;
      }
      sg.opt00.push_back(c00[i]);
      sg.opt01.push_back(c01[i]);
      sg.opt10.push_back(c10[i]);
      sg.opt11.push_back(c11[i]);
    }
    if (static_cast<double>(failed) > cfg.max_failure_fraction * static_cast<double>(c00.size()) ||
        sg.opt00.size() < 2)
      throw NumericalError(grid[g].label() + ": too many failed scenario replications");
    auto cell = [&](const std::vector<double>& o, double& mean_opt, double& df, double& se) {
      mean_opt = detail::mean(o);
      df = df_from_optimism(mean_opt, sigma2, n);
      se = df_standard_error(mean_opt, detail::standard_error(o), sigma2, n);
    };
    cell(sg.opt00, sg.mean_opt00, sg.df00, sg.se00);
    cell(sg.opt01, sg.mean_opt01, sg.df01, sg.se01);
    cell(sg.opt10, sg.mean_opt10, sg.df10, sg.se10);
    cell(sg.opt11, sg.mean_opt11, sg.df11, sg.se11);
    out.push_back(std::move(sg));
  }
  return out;
}

ScenarioGrid scenario_grid(const DataModel& model, const PredictorSpec& pred, const ShiftSpec& shift,
                           const EstimatorConfig& cfg) {
  const PredictorSpec grid[] = {pred};
  return scenario_sweep(model, grid, shift, cfg)[0];
}

ScenarioGrid scenario_grid(const GeneratorSpec& gen, const PredictorSpec& pred, const ShiftSpec& shift,
                           const EstimatorConfig& cfg) {
  return scenario_grid(DataModel(gen, cfg.seed), pred, shift, cfg);
}

ScenarioGrid make_scenario_grid(double df00, double df01, double df10, double df11) {
  ScenarioGrid g;
  g.df00 = df00;
  g.df01 = df01;
  g.df10 = df10;
  g.df11 = df11;
  return g;
}

Attribution shapley_attribution(const ScenarioGrid& g) {
  Attribution a;
  a.base = g.df00;
  a.phi_bias = 0.5 * (g.df11 - g.df01) + 0.5 * (g.df10 - g.df00);
  a.phi_cov = (g.df11 - g.df00) - a.phi_bias;
  a.efficiency_residual = ((g.df11 - g.df00) - a.phi_bias) - a.phi_cov;

  const std::size_t reps = g.opt00.size();
  if (reps >= 2 && g.sigma2_used > 0.0) {
    // Linearize each df in its per-replication optimism and pair across cells.
    auto slope = [&](double mean_opt) {
      return omega_n_derivative(std::max(mean_opt, 0.0) / g.sigma2_used, g.n) / g.sigma2_used;
    };
    const double s00 = slope(g.mean_opt00), s01 = slope(g.mean_opt01);
    const double s10 = slope(g.mean_opt10), s11 = slope(g.mean_opt11);
    std::vector<double> lb(reps), lc(reps);
    for (std::size_t i = 0; i < reps; ++i) {
      const double d00 = s00 * g.opt00[i], d01 = s01 * g.opt01[i];
      const double d10 = s10 * g.opt10[i], d11 = s11 * g.opt11[i];
      lb[i] = 0.5 * (d11 - d01) + 0.5 * (d10 - d00);
      lc[i] = 0.5 * (d11 - d10) + 0.5 * (d01 - d00);
    }
    a.se_phi_bias = detail::standard_error(lb);
    a.se_phi_cov = detail::standard_error(lc);
  }
  return a;
}

}  // namespace doflab
