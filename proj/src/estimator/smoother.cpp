#include <cmath>

#include "doflab/error.hpp"
#include "doflab/parallel.hpp"
#include "engine.hpp"

namespace doflab {

namespace {

struct SmootherTerms {
  double trace = detail::kNaN;
  double test_norm = detail::kNaN;    // mean over x₀ of ‖L(x₀)‖²
  double train_norm = detail::kNaN;   // tr LᵀL / n
  double bias_test = detail::kNaN;    // mean over x₀ of (f(x₀) − L(x₀)ᵀf(X))²
  double bias_train = detail::kNaN;   // ‖(I − L)f(X)‖² / n
};

}  // namespace

SmootherOptimism linear_smoother_optimism(const PredictorSpec& pred, const DataModel& model,
                                          const EstimatorConfig& cfg) {
  cfg.validate();
  pred.validate();
  if (!pred.is_linear_smoother()) throw Unsupported(pred.label() + " is not a linear smoother");
  const std::size_t n = model.n();
  const double nn = static_cast<double>(n);
  const double sigma2 = detail::known_sigma2(model, cfg);
  std::vector<SmootherTerms> terms(cfg.n_reps);

  parallel_for(cfg.n_reps, cfg.workers, [&](std::size_t rep) {
    RandomStream xs(cfg.seed, rep, StreamRole::TrainX);
    RandomStream ts(cfg.seed, rep, StreamRole::Test, 0);
    const Matrix latent = model.sample_latent(n, xs);
    const Matrix x = model.observe(latent);
    const Vector f = model.regression_function(latent);
    const Matrix latent0 = model.sample_latent(cfg.test_size, ts);
    const Matrix x0 = model.observe(latent0);
    const Vector f0 = model.regression_function(latent0);
    std::shared_ptr<const SmootherWeights> sm;
    try {
      sm = make_smoother(pred, x);
    } catch (const NumericalError&) {
      return;
    }
    const Matrix l = sm->in_sample();
    const Matrix w = sm->weights(x0);
    const double m = static_cast<double>(cfg.test_size);
    SmootherTerms& t = terms[rep];
    t.trace = l.trace();
    t.test_norm = w.squaredNorm() / m;
    t.train_norm = l.squaredNorm() / nn;
    t.bias_test = (f0 - w * f).squaredNorm() / m;
    t.bias_train = (f - l * f).squaredNorm() / nn;
  });

  std::vector<double> intr, emer, bplus, vplus, optf, dfpm;
  for (const auto& t : terms) {
    if (!std::isfinite(t.trace)) continue;
    const double v = sigma2 * (t.test_norm - t.train_norm);
    const double b = t.bias_test - t.bias_train;
    const double of = 2.0 * sigma2 / nn * t.trace;
    intr.push_back(of + v);
    emer.push_back(of + v + b);
    bplus.push_back(b);
    vplus.push_back(v);
    optf.push_back(of);
    dfpm.push_back(t.trace + 0.5 * nn * (t.test_norm - t.train_norm));
  }
  const double frac = 1.0 - static_cast<double>(intr.size()) / static_cast<double>(cfg.n_reps);
  if (frac > cfg.max_failure_fraction || intr.size() < 2)
    throw NumericalError(pred.label() + ": smoother construction failed on too many feature draws");

  SmootherOptimism r;
  r.sigma2 = sigma2;
  r.n_reps = intr.size();
  r.intrinsic = detail::mean(intr);
  r.emergent = detail::mean(emer);
  r.b_plus = detail::mean(bplus);
  r.v_plus = detail::mean(vplus);
  r.opt_fixed = detail::mean(optf);
  r.df_predictive = detail::mean(dfpm);
  r.se_intrinsic = detail::standard_error(intr);
  r.se_emergent = detail::standard_error(emer);
  r.se_b_plus = detail::standard_error(bplus);
  r.se_v_plus = detail::standard_error(vplus);
  r.se_opt_fixed = detail::standard_error(optf);
  r.se_df_predictive = detail::standard_error(dfpm);
  return r;
}

SmootherOptimism linear_smoother_optimism(const PredictorSpec& pred, const GeneratorSpec& gen,
                                          const EstimatorConfig& cfg) {
  return linear_smoother_optimism(pred, DataModel(gen, cfg.seed), cfg);
}

ExcessBiasVariance excess_bias_variance(const PredictorSpec& pred, const DataModel& model,
                                        const EstimatorConfig& cfg) {
  const SmootherOptimism s = linear_smoother_optimism(pred, model, cfg);
  return ExcessBiasVariance{s.b_plus, s.v_plus, s.se_b_plus, s.se_v_plus};
}

DfEstimate luan_predictive_df(const PredictorSpec& pred, const DataModel& model, const EstimatorConfig& cfg) {
  const SmootherOptimism s = linear_smoother_optimism(pred, model, cfg);
  return DfEstimate{s.df_predictive, s.se_df_predictive};
}

}  // namespace doflab
