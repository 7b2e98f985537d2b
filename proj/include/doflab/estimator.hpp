#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "doflab/core.hpp"
#include "doflab/predictors.hpp"

namespace doflab {

enum class Sigma2Source { Known, Proxy };
enum class FixedXMethod { Auto, MonteCarlo };

struct EstimatorConfig {
  std::size_t n_reps = 100;
  std::size_t test_size = 1000;
  std::uint64_t seed = 0;
  Sigma2Source sigma2_source = Sigma2Source::Known;
  std::optional<double> sigma2;  // known value; defaults to the generator noise variance
  std::optional<std::size_t> cv_folds;
  std::size_t workers = 1;
  std::size_t fixed_x_outer = 20;
  std::size_t fixed_x_inner = 100;
  FixedXMethod fixed_x_method = FixedXMethod::Auto;
  double max_failure_fraction = 0.1;

  void validate() const;
};

struct OptimismEstimate {
  double err_R = 0.0;
  double err_T = 0.0;
  double optimism = 0.0;  // err_R − err_T
  double se = 0.0;
  double se_err_R = 0.0;
  double se_err_T = 0.0;
  std::size_t n_reps = 0;
  std::size_t failed = 0;
  std::vector<double> samples;  // per-replication optimism, NaN where the fit failed
};

struct DfEstimate {
  double value = 0.0;
  double se = 0.0;
};

struct DofReport {
  PredictorSpec predictor;
  std::size_t n = 0;
  double sigma2_used = 0.0;
  double df_fixed = 0.0;
  double df_emergent = 0.0;
  double df_intrinsic = 0.0;
  double df_bias = 0.0;  // df_emergent − df_intrinsic
  double se_fixed = 0.0;
  double se_emergent = 0.0;
  double se_intrinsic = 0.0;
  double se_bias = 0.0;
  OptimismEstimate emergent;
  OptimismEstimate intrinsic;
  std::optional<double> mean_nonzero;  // lasso families
};

// Replication-level Monte Carlo (every operation below draws features from the
// generator keyed by cfg.seed; the coefficient vector is fixed by that seed too).
OptimismEstimate estimate_random_x_optimism(const DataModel& model, const PredictorSpec& pred,
                                            const EstimatorConfig& cfg);
OptimismEstimate estimate_random_x_optimism(const GeneratorSpec& gen, const PredictorSpec& pred,
                                            const EstimatorConfig& cfg);
OptimismEstimate estimate_intrinsic_optimism(const DataModel& model, const PredictorSpec& pred,
                                             const EstimatorConfig& cfg);
OptimismEstimate estimate_intrinsic_optimism(const GeneratorSpec& gen, const PredictorSpec& pred,
                                             const EstimatorConfig& cfg);
double estimate_sigma2_proxy(const DataModel& model, std::span<const PredictorSpec> grid, const EstimatorConfig& cfg);
double estimate_sigma2_proxy(const GeneratorSpec& gen, std::span<const PredictorSpec> grid,
                             const EstimatorConfig& cfg);

DfEstimate fixed_x_df(const DataModel& model, const PredictorSpec& pred, const EstimatorConfig& cfg);
DfEstimate fixed_x_df(const GeneratorSpec& gen, const PredictorSpec& pred, const EstimatorConfig& cfg);
// Σᵢ Cov(yᵢ, f̂(xᵢ) | X)/σ² with X redrawn cfg.fixed_x_outer times and y redrawn cfg.fixed_x_inner times.
DfEstimate fixed_x_df_monte_carlo(const DataModel& model, const PredictorSpec& pred, const EstimatorConfig& cfg);

// One report per grid point; replications draw data once and fit every grid point.
std::vector<DofReport> dof_sweep(const DataModel& model, std::span<const PredictorSpec> grid,
                                 const EstimatorConfig& cfg);
std::vector<DofReport> dof_sweep(const GeneratorSpec& gen, std::span<const PredictorSpec> grid,
                                 const EstimatorConfig& cfg);
DofReport dof_report(const DataModel& model, const PredictorSpec& pred, const EstimatorConfig& cfg);
DofReport dof_report(const GeneratorSpec& gen, const PredictorSpec& pred, const EstimatorConfig& cfg);

struct SmootherOptimism {
  double intrinsic = 0.0;
  double emergent = 0.0;
  double b_plus = 0.0;        // excess bias
  double v_plus = 0.0;        // excess variance
  double opt_fixed = 0.0;     // E[(2σ²/n) tr L]
  double df_predictive = 0.0; // tr L + (n/2)(E‖L(x₀)‖² − tr LᵀL/n)
  double se_intrinsic = 0.0;
  double se_emergent = 0.0;
  double se_b_plus = 0.0;
  double se_v_plus = 0.0;
  double se_opt_fixed = 0.0;
  double se_df_predictive = 0.0;
  double sigma2 = 0.0;
  std::size_t n_reps = 0;
};

// Closed-form optimism of a linear smoother with Monte Carlo over x₀ and X.
SmootherOptimism linear_smoother_optimism(const PredictorSpec& pred, const DataModel& model,
                                          const EstimatorConfig& cfg);
SmootherOptimism linear_smoother_optimism(const PredictorSpec& pred, const GeneratorSpec& gen,
                                          const EstimatorConfig& cfg);

struct ExcessBiasVariance {
  double b_plus = 0.0;
  double v_plus = 0.0;
  double se_b_plus = 0.0;
  double se_v_plus = 0.0;
};
ExcessBiasVariance excess_bias_variance(const PredictorSpec& pred, const DataModel& model,
                                        const EstimatorConfig& cfg);
DfEstimate luan_predictive_df(const PredictorSpec& pred, const DataModel& model, const EstimatorConfig& cfg);

// K-fold cross-validation on one dataset: err_R from held-out folds, err_T from
// the full fit; se from per-observation differences.
OptimismEstimate cv_optimism(const Dataset& data, const PredictorSpec& pred, std::size_t folds,
                             std::uint64_t seed = 0);

// Delta-method standard error of df_from_optimism.
double df_standard_error(double opt, double se_opt, double sigma2, std::size_t n);

}  // namespace doflab
