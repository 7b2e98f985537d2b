#include <cmath>
#include <string>

#include "doflab/error.hpp"
#include "doflab/parallel.hpp"
#include "engine.hpp"

namespace doflab {

void EstimatorConfig::validate() const {
  require(n_reps >= 2, "estimator needs n_reps >= 2");
  require(test_size >= 1, "estimator needs test_size >= 1");
  if (sigma2) require(*sigma2 > 0.0 && std::isfinite(*sigma2), "sigma2 must be positive");
  if (cv_folds) require(*cv_folds >= 2, "cv_folds must be >= 2");
  require(fixed_x_outer >= 2, "fixed_x_outer must be >= 2");
  require(fixed_x_inner >= 2, "fixed_x_inner must be >= 2");
  require(max_failure_fraction >= 0.0 && max_failure_fraction < 1.0, "max_failure_fraction must lie in [0, 1)");
}

namespace detail {

std::uint64_t fit_seed(std::uint64_t seed, std::size_t rep) { return hash_key(seed, rep, StreamRole::Forest, 0); }

double known_sigma2(const DataModel& model, const EstimatorConfig& cfg) {
  return cfg.sigma2 ? *cfg.sigma2 : model.noise_variance();
}

Draw draw_replication(const DataModel& model, std::size_t test_size, std::uint64_t seed, std::size_t rep,
                      double noise_sd, const std::optional<TestShift>& shift) {
  RandomStream xs(seed, rep, StreamRole::TrainX);
  RandomStream es(seed, rep, StreamRole::TrainNoise);
  RandomStream ts(seed, rep, StreamRole::Test, 0);
  RandomStream tn(seed, rep, StreamRole::Test, 1);
  RandomStream ps(seed, rep, StreamRole::PureNoise, 0);
  RandomStream pt(seed, rep, StreamRole::PureNoise, 1);

  Draw d;
  const std::size_t n = model.n();
  const Matrix latent = model.sample_latent(n, xs);
  d.x = model.observe(latent);
  d.f = model.regression_function(latent);
  d.y = d.f + model.sample_noise(n, es);
  const Matrix latent0 = model.sample_latent(test_size, ts);
  d.x0 = model.observe(latent0);
  const Vector e0 = model.sample_noise(test_size, tn);
  d.y0 = model.regression_function(latent0) + e0;
  d.v.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) d.v(static_cast<Eigen::Index>(i)) = noise_sd * ps.normal();
  d.v0.resize(static_cast<Eigen::Index>(test_size));
  for (std::size_t i = 0; i < test_size; ++i) d.v0(static_cast<Eigen::Index>(i)) = noise_sd * pt.normal();
  if (shift) {
    Matrix ls = shift->scale * latent0;
    ls.rowwise() += shift->offset.transpose();
    d.x0_shift = model.observe(ls);
    d.y0_shift = model.regression_function(ls) + e0;
  }
  return d;
}

std::vector<std::vector<PointRecord>> run_replications(const DataModel& model, std::span<const PredictorSpec> grid,
                                                       const EstimatorConfig& cfg, const RunModes& modes) {
  cfg.validate();
  for (const auto& g : grid) g.validate();
  const std::size_t reps = cfg.n_reps;
  std::vector<std::vector<PointRecord>> out(grid.size(), std::vector<PointRecord>(reps));
  const bool shifted = modes.shift.has_value();

  parallel_for(reps, cfg.workers, [&](std::size_t rep) {
    const Draw d = draw_replication(model, cfg.test_size, cfg.seed, rep, modes.noise_sd, modes.shift);
    const std::uint64_t seed = fit_seed(cfg.seed, rep);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const PredictorSpec& spec = grid[g];
      PointRecord& rec = out[g][rep];
      std::shared_ptr<const SmootherWeights> smoother;
      if (spec.is_linear_smoother()) {
        try {
          smoother = make_smoother(spec, d.x);
          rec.trace = smoother->trace();
        } catch (const NumericalError&) {
          continue;
        }
      }
      auto fit_to = [&](const Vector& resp) {
        return smoother ? smoother->fit(resp) : fit(spec, d.x, resp, seed);
      };
      if (modes.signal) {
        try {
          const FittedModel m = fit_to(d.y);
          rec.err_t_signal = mean_squared_error(m.predict(d.x), d.y);
          rec.err_r_signal = mean_squared_error(m.predict(d.x0), d.y0);
          if (shifted) rec.err_r_signal_shift = mean_squared_error(m.predict(d.x0_shift), d.y0_shift);
          if (auto nz = m.nonzero_count()) rec.nnz = static_cast<double>(*nz);
        } catch (const NumericalError&) {
        }
      }
      if (modes.noise) {
        try {
          const FittedModel m = fit_to(d.v);
          rec.err_t_noise = mean_squared_error(m.predict(d.x), d.v);
          const Vector p0 = m.predict(d.x0);
          rec.err_r_noise = mean_squared_error(p0, d.v0);
          if (shifted) rec.err_r_noise_shift = mean_squared_error(m.predict(d.x0_shift), d.v0);
        } catch (const NumericalError&) {
        }
      }
    }
  });
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? kNaN : s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return kNaN;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double standard_error(const std::vector<double>& v) {
  return v.size() < 2 ? kNaN : sample_sd(v) / std::sqrt(static_cast<double>(v.size()));
}

OptimismEstimate summarize(const std::vector<double>& err_t, const std::vector<double>& err_r,
                           double max_failure_fraction, const std::string& what) {
  OptimismEstimate est;
  std::vector<double> t, r, o;
  est.samples.resize(err_t.size(), kNaN);
  for (std::size_t i = 0; i < err_t.size(); ++i) {
    if (std::isfinite(err_t[i]) && std::isfinite(err_r[i])) {
      t.push_back(err_t[i]);
      r.push_back(err_r[i]);
      o.push_back(err_r[i] - err_t[i]);
      est.samples[i] = o.back();
    } else {
      ++est.failed;
    }
  }
  const double frac = err_t.empty() ? 1.0 : static_cast<double>(est.failed) / static_cast<double>(err_t.size());
  if (frac > max_failure_fraction || o.size() < 2)
    throw NumericalError(what + ": " + std::to_string(est.failed) + " of " + std::to_string(err_t.size()) +
                         " replications failed");
  est.n_reps = o.size();
  est.err_R = mean(r);
  est.err_T = mean(t);
  est.optimism = est.err_R - est.err_T;
  est.se = standard_error(o);
  est.se_err_R = standard_error(r);
  est.se_err_T = standard_error(t);
  return est;
}

}  // namespace detail

}  // namespace doflab
