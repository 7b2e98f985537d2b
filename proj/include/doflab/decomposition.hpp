#pragma once

#include <optional>
#include <span>
#include <vector>

#include "doflab/core.hpp"
#include "doflab/estimator.hpp"
#include "doflab/predictors.hpp"

namespace doflab {

// Test features become scale·x + offset (latent coordinates).
struct ShiftSpec {
  double scale = 1.5;
  std::optional<double> offset;  // broadcast; default 0.5/√p
  Vector offset_vector;          // overrides the scalar when nonempty

  void validate() const;
  static ShiftSpec none();
  Vector resolve(std::size_t dim) const;
};

struct ScenarioGrid {
  // First index: signal off/on. Second: shift off/on.
  double df00 = 0.0, df01 = 0.0, df10 = 0.0, df11 = 0.0;
  double se00 = 0.0, se01 = 0.0, se10 = 0.0, se11 = 0.0;
  double sigma2_used = 0.0;
  std::size_t n = 0;
  // Per-replication optimism for each cell (paired across cells).
  std::vector<double> opt00, opt01, opt10, opt11;
  double mean_opt00 = 0.0, mean_opt01 = 0.0, mean_opt10 = 0.0, mean_opt11 = 0.0;
};

struct Attribution {
  double base = 0.0;
  double phi_bias = 0.0;
  double phi_cov = 0.0;
  double se_phi_bias = 0.0;
  double se_phi_cov = 0.0;
  // ((df11 − df00) − φ_bias) − φ_cov, identically zero.
  double efficiency_residual = 0.0;
};

ScenarioGrid scenario_grid(const DataModel& model, const PredictorSpec& pred, const ShiftSpec& shift,
                           const EstimatorConfig& cfg);
ScenarioGrid scenario_grid(const GeneratorSpec& gen, const PredictorSpec& pred, const ShiftSpec& shift,
                           const EstimatorConfig& cfg);
std::vector<ScenarioGrid> scenario_sweep(const DataModel& model, std::span<const PredictorSpec> grid,
                                         const ShiftSpec& shift, const EstimatorConfig& cfg);

// Grid from the four df values only (no standard errors).
ScenarioGrid make_scenario_grid(double df00, double df01, double df10, double df11);
Attribution shapley_attribution(const ScenarioGrid& grid);

}  // namespace doflab
