#include <cmath>

#include "doflab/error.hpp"
#include "doflab/parallel.hpp"
#include "engine.hpp"

namespace doflab {

DfEstimate fixed_x_df_monte_carlo(const DataModel& model, const PredictorSpec& pred, const EstimatorConfig& cfg) {
  cfg.validate();
  pred.validate();
  const std::size_t outer = cfg.fixed_x_outer;
  const std::size_t inner = cfg.fixed_x_inner;
  const std::size_t n = model.n();
  const double sigma2 = model.noise_variance();
  std::vector<double> per_outer(outer, detail::kNaN);

  parallel_for(outer, cfg.workers, [&](std::size_t o) {
    RandomStream xs(cfg.seed, o, StreamRole::TrainX);
    const Matrix latent = model.sample_latent(n, xs);
    const Matrix x = model.observe(latent);
    const Vector f = model.regression_function(latent);
    const std::uint64_t seed = detail::fit_seed(cfg.seed, o);
    std::shared_ptr<const SmootherWeights> smoother;
    try {
      if (pred.is_linear_smoother()) smoother = make_smoother(pred, x);
    } catch (const NumericalError&) {
      return;
    }
    Matrix ys(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(inner));
    Matrix fits(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(inner));
    for (std::size_t r = 0; r < inner; ++r) {
      RandomStream es(cfg.seed, o, StreamRole::TrainNoise, 1 + r);
      const Vector y = f + model.sample_noise(n, es);
      try {
        const FittedModel m = smoother ? smoother->fit(y) : fit(pred, x, y, seed);
        ys.col(static_cast<Eigen::Index>(r)) = y;
        fits.col(static_cast<Eigen::Index>(r)) = m.predict(x);
      } catch (const NumericalError&) {
        return;
      }
    }
    const Vector ybar = ys.rowwise().mean();
    const Vector fbar = fits.rowwise().mean();
    const double cov = ((ys.colwise() - ybar).cwiseProduct(fits.colwise() - fbar)).sum() /
                       static_cast<double>(inner - 1);
    per_outer[o] = cov / sigma2;
  });

  std::vector<double> ok;
  for (double v : per_outer)
    if (std::isfinite(v)) ok.push_back(v);
  const double frac = 1.0 - static_cast<double>(ok.size()) / static_cast<double>(outer);
  if (frac > cfg.max_failure_fraction || ok.size() < 2)
    throw NumericalError(pred.label() + ": fixed-X Monte Carlo failed on too many feature draws");
  return DfEstimate{detail::mean(ok), detail::standard_error(ok)};
}

DfEstimate fixed_x_df(const DataModel& model, const PredictorSpec& pred, const EstimatorConfig& cfg) {
  cfg.validate();
  pred.validate();
  if (cfg.fixed_x_method == FixedXMethod::MonteCarlo) return fixed_x_df_monte_carlo(model, pred, cfg);
  if (pred.family == Family::Null) return DfEstimate{0.0, 0.0};
  if (pred.is_linear_smoother() || pred.family == Family::Lasso || pred.family == Family::Lassoless) {
    std::vector<double> vals;
    std::size_t failed = 0;
    const std::size_t n = model.n();
    for (std::size_t rep = 0; rep < cfg.n_reps; ++rep) {
      RandomStream xs(cfg.seed, rep, StreamRole::TrainX);
      RandomStream es(cfg.seed, rep, StreamRole::TrainNoise);
      const Matrix latent = model.sample_latent(n, xs);
      const Matrix x = model.observe(latent);
      try {
        if (pred.is_linear_smoother()) {
          vals.push_back(make_smoother(pred, x)->trace());
        } else {
          const Vector y = model.regression_function(latent) + model.sample_noise(n, es);
          vals.push_back(static_cast<double>(*fit(pred, x, y).nonzero_count()));
        }
      } catch (const NumericalError&) {
        ++failed;
      }
    }
    if (static_cast<double>(failed) > cfg.max_failure_fraction * static_cast<double>(cfg.n_reps) || vals.size() < 2)
      throw NumericalError(pred.label() + ": fixed-X df failed on too many feature draws");
    return DfEstimate{detail::mean(vals), detail::standard_error(vals)};
  }
  return fixed_x_df_monte_carlo(model, pred, cfg);
}

DfEstimate fixed_x_df(const GeneratorSpec& gen, const PredictorSpec& pred, const EstimatorConfig& cfg) {
  return fixed_x_df(DataModel(gen, cfg.seed), pred, cfg);
}

}  // namespace doflab
