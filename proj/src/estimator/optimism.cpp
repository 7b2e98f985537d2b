#include <algorithm>
#include <cmath>

#include "doflab/error.hpp"
#include "doflab/omega.hpp"
#include "engine.hpp"

namespace doflab {

using detail::known_sigma2;
using detail::run_replications;
using detail::summarize;

namespace {

std::vector<double> column(const std::vector<detail::PointRecord>& recs, double detail::PointRecord::*field) {
  std::vector<double> v;
  v.reserve(recs.size());
  for (const auto& r : recs) v.push_back(r.*field);
  return v;
}

}  // namespace

OptimismEstimate estimate_random_x_optimism(const DataModel& model, const PredictorSpec& pred,
                                            const EstimatorConfig& cfg) {
  detail::RunModes modes;
  modes.noise = false;
  const PredictorSpec grid[] = {pred};
  const auto recs = run_replications(model, grid, cfg, modes);
  return summarize(column(recs[0], &detail::PointRecord::err_t_signal),
                   column(recs[0], &detail::PointRecord::err_r_signal), cfg.max_failure_fraction, pred.label());
}

OptimismEstimate estimate_random_x_optimism(const GeneratorSpec& gen, const PredictorSpec& pred,
                                            const EstimatorConfig& cfg) {
  return estimate_random_x_optimism(DataModel(gen, cfg.seed), pred, cfg);
}

double estimate_sigma2_proxy(const DataModel& model, std::span<const PredictorSpec> grid, const EstimatorConfig& cfg) {
  require(!grid.empty(), "sigma2 proxy needs a nonempty predictor grid");
  detail::RunModes modes;
  modes.noise = false;
  const auto recs = run_replications(model, grid, cfg, modes);
  double best = INFINITY;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto est = summarize(column(recs[g], &detail::PointRecord::err_t_signal),
                               column(recs[g], &detail::PointRecord::err_r_signal), cfg.max_failure_fraction,
                               grid[g].label());
    best = std::min(best, est.err_R);
  }
  return best;
}

double estimate_sigma2_proxy(const GeneratorSpec& gen, std::span<const PredictorSpec> grid,
                             const EstimatorConfig& cfg) {
  return estimate_sigma2_proxy(DataModel(gen, cfg.seed), grid, cfg);
}

OptimismEstimate estimate_intrinsic_optimism(const DataModel& model, const PredictorSpec& pred,
                                             const EstimatorConfig& cfg) {
  double sigma2 = known_sigma2(model, cfg);
  if (cfg.sigma2_source == Sigma2Source::Proxy) {
    const PredictorSpec grid[] = {pred};
    sigma2 = estimate_sigma2_proxy(model, grid, cfg);
  }
  detail::RunModes modes;
  modes.signal = false;
  modes.noise_sd = std::sqrt(sigma2);
  const PredictorSpec grid[] = {pred};
  const auto recs = run_replications(model, grid, cfg, modes);
  return summarize(column(recs[0], &detail::PointRecord::err_t_noise),
                   column(recs[0], &detail::PointRecord::err_r_noise), cfg.max_failure_fraction, pred.label());
}

OptimismEstimate estimate_intrinsic_optimism(const GeneratorSpec& gen, const PredictorSpec& pred,
                                             const EstimatorConfig& cfg) {
  return estimate_intrinsic_optimism(DataModel(gen, cfg.seed), pred, cfg);
}

double df_standard_error(double opt, double se_opt, double sigma2, std::size_t n) {
  const double x = std::max(opt, 0.0) / sigma2;
  return omega_n_derivative(x, n) * se_opt / sigma2;
}

std::vector<DofReport> dof_sweep(const DataModel& model, std::span<const PredictorSpec> grid,
                                 const EstimatorConfig& cfg) {
  require(!grid.empty(), "dof_sweep needs a nonempty predictor grid");
  std::vector<std::vector<detail::PointRecord>> signal_recs, noise_recs;
  double sigma2 = known_sigma2(model, cfg);
  if (cfg.sigma2_source == Sigma2Source::Known) {
    detail::RunModes modes;
    modes.noise_sd = std::sqrt(sigma2);
    signal_recs = run_replications(model, grid, cfg, modes);
    noise_recs = signal_recs;
  } else {
    detail::RunModes first;
    first.noise = false;
    signal_recs = run_replications(model, grid, cfg, first);
    sigma2 = INFINITY;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const auto est = summarize(column(signal_recs[g], &detail::PointRecord::err_t_signal),
                                 column(signal_recs[g], &detail::PointRecord::err_r_signal),
                                 cfg.max_failure_fraction, grid[g].label());
      sigma2 = std::min(sigma2, est.err_R);
    }
    require(sigma2 > 0.0, "sigma2 proxy is not positive");
    detail::RunModes second;
    second.signal = false;
    second.noise_sd = std::sqrt(sigma2);
    noise_recs = run_replications(model, grid, cfg, second);
  }

  const std::size_t n = model.n();
  std::vector<DofReport> out;
  out.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const PredictorSpec& spec = grid[g];
    DofReport r;
    r.predictor = spec;
    r.n = n;
    r.sigma2_used = sigma2;
    r.emergent = summarize(column(signal_recs[g], &detail::PointRecord::err_t_signal),
                           column(signal_recs[g], &detail::PointRecord::err_r_signal), cfg.max_failure_fraction,
                           spec.label() + " (emergent)");
    r.intrinsic = summarize(column(noise_recs[g], &detail::PointRecord::err_t_noise),
                            column(noise_recs[g], &detail::PointRecord::err_r_noise), cfg.max_failure_fraction,
                            spec.label() + " (intrinsic)");
    r.df_emergent = df_from_optimism(r.emergent.optimism, sigma2, n);
    r.df_intrinsic = df_from_optimism(r.intrinsic.optimism, sigma2, n);
    r.df_bias = r.df_emergent - r.df_intrinsic;
    r.se_emergent = df_standard_error(r.emergent.optimism, r.emergent.se, sigma2, n);
    r.se_intrinsic = df_standard_error(r.intrinsic.optimism, r.intrinsic.se, sigma2, n);
    {
      const double ge = omega_n_derivative(std::max(r.emergent.optimism, 0.0) / sigma2, n) / sigma2;
      const double gi = omega_n_derivative(std::max(r.intrinsic.optimism, 0.0) / sigma2, n) / sigma2;
      std::vector<double> lin;
      for (std::size_t i = 0; i < r.emergent.samples.size(); ++i) {
        const double a = r.emergent.samples[i];
        const double b = r.intrinsic.samples[i];
        if (std::isfinite(a) && std::isfinite(b)) lin.push_back(ge * a - gi * b);
      }
      r.se_bias = detail::standard_error(lin);
    }

    std::vector<double> traces, nnz;
    for (const auto& rec : signal_recs[g]) {
      if (std::isfinite(rec.trace)) traces.push_back(rec.trace);
      if (std::isfinite(rec.nnz)) nnz.push_back(rec.nnz);
    }
    if (!nnz.empty()) r.mean_nonzero = detail::mean(nnz);
    if (cfg.fixed_x_method == FixedXMethod::Auto && spec.family == Family::Null) {
      r.df_fixed = 0.0;
      r.se_fixed = 0.0;
    } else if (cfg.fixed_x_method == FixedXMethod::Auto && spec.is_linear_smoother() && traces.size() >= 2) {
      r.df_fixed = detail::mean(traces);
      r.se_fixed = detail::standard_error(traces);
    } else if (cfg.fixed_x_method == FixedXMethod::Auto && (spec.family == Family::Lasso || spec.family == Family::Lassoless) && nnz.size() >= 2) {
      r.df_fixed = detail::mean(nnz);
      r.se_fixed = detail::standard_error(nnz);
    } else {
      const DfEstimate mc = fixed_x_df_monte_carlo(model, spec, cfg);
      r.df_fixed = mc.value;
      r.se_fixed = mc.se;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DofReport> dof_sweep(const GeneratorSpec& gen, std::span<const PredictorSpec> grid,
                                 const EstimatorConfig& cfg) {
  return dof_sweep(DataModel(gen, cfg.seed), grid, cfg);
}

DofReport dof_report(const DataModel& model, const PredictorSpec& pred, const EstimatorConfig& cfg) {
  const PredictorSpec grid[] = {pred};
  return dof_sweep(model, grid, cfg)[0];
}

DofReport dof_report(const GeneratorSpec& gen, const PredictorSpec& pred, const EstimatorConfig& cfg) {
  return dof_report(DataModel(gen, cfg.seed), pred, cfg);
}

}  // namespace doflab
