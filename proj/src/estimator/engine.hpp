#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "doflab/estimator.hpp"

namespace doflab::detail {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Scale then offset applied to latent test features.
struct TestShift {
  double scale = 1.0;
  Vector offset;  // length latent_dim
};

struct RunModes {
  bool signal = true;
  bool noise = true;
  double noise_sd = 1.0;  // pure-noise standard deviation
  std::optional<TestShift> shift;
};

struct PointRecord {
  double err_t_signal = kNaN, err_r_signal = kNaN, err_r_signal_shift = kNaN;
  double err_t_noise = kNaN, err_r_noise = kNaN, err_r_noise_shift = kNaN;
  double trace = kNaN;
  double nnz = kNaN;
};

struct Draw {
  Matrix x;
  Vector f, y, v;
  Matrix x0;
  Vector y0, v0;
  Matrix x0_shift;
  Vector y0_shift;
};

Draw draw_replication(const DataModel& model, std::size_t test_size, std::uint64_t seed, std::size_t rep,
                      double noise_sd, const std::optional<TestShift>& shift);

// records[g][rep]
std::vector<std::vector<PointRecord>> run_replications(const DataModel& model, std::span<const PredictorSpec> grid,
                                                       const EstimatorConfig& cfg, const RunModes& modes);

std::uint64_t fit_seed(std::uint64_t seed, std::size_t rep);

double mean(const std::vector<double>& v);
// Sample standard deviation (n−1 denominator).
double sample_sd(const std::vector<double>& v);
double standard_error(const std::vector<double>& v);

// Aggregates paired per-replication errors; NaN pairs count as failures.
OptimismEstimate summarize(const std::vector<double>& err_t, const std::vector<double>& err_r,
                           double max_failure_fraction, const std::string& what);

double known_sigma2(const DataModel& model, const EstimatorConfig& cfg);

}  // namespace doflab::detail
