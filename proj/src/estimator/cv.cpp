#include <algorithm>
#include <cmath>
#include <numeric>

#include "doflab/error.hpp"
#include "engine.hpp"

namespace doflab {

namespace {

std::size_t minimum_training_size(const PredictorSpec& pred, std::size_t p) {
  const std::size_t cols = pred.max_features ? pred.max_features : p;
  switch (pred.family) {
    case Family::LeastSquares:
      return cols;
    case Family::Knn:
      return pred.k;
    default:
      return 1;
  }
}

}  // namespace

OptimismEstimate cv_optimism(const Dataset& data, const PredictorSpec& pred, std::size_t folds, std::uint64_t seed) {
  pred.validate();
  const std::size_t n = data.n();
  require(folds >= 2, "cv needs folds >= 2");
  require(folds <= n, "cv needs folds <= n");
  const std::size_t largest_fold = (n + folds - 1) / folds;
  require(n - largest_fold >= minimum_training_size(pred, data.p()),
          "cv: training folds are smaller than " + pred.label() + " needs");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RandomStream rng(seed, 0, StreamRole::Fold);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[static_cast<std::size_t>(rng.below(i + 1))]);
  std::vector<std::size_t> fold_of(n);
  for (std::size_t pos = 0; pos < n; ++pos) fold_of[perm[pos]] = pos % folds;

  Vector cv_loss(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < folds; ++k) {
    std::vector<Eigen::Index> tr, te;
    for (std::size_t i = 0; i < n; ++i) (fold_of[i] == k ? te : tr).push_back(static_cast<Eigen::Index>(i));
    const Matrix xtr = data.features(tr, Eigen::all);
    const Vector ytr = data.response(tr);
    const Matrix xte = data.features(te, Eigen::all);
    const FittedModel m = fit(pred, xtr, ytr, detail::fit_seed(seed, k));
    const Vector pred_te = m.predict(xte);
    for (std::size_t t = 0; t < te.size(); ++t) {
      const double e = pred_te(static_cast<Eigen::Index>(t)) - data.response(te[t]);
      cv_loss(te[t]) = e * e;
    }
  }
  const FittedModel full = fit(pred, data.features, data.response, detail::fit_seed(seed, folds));
  const Vector train_loss = (full.predict(data.features) - data.response).array().square().matrix();

  std::vector<double> r(cv_loss.data(), cv_loss.data() + n);
  std::vector<double> t(train_loss.data(), train_loss.data() + n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = r[i] - t[i];
  OptimismEstimate est;
  est.err_R = detail::mean(r);
  est.err_T = detail::mean(t);
  est.optimism = est.err_R - est.err_T;
  est.se = detail::standard_error(d);
  est.se_err_R = detail::standard_error(r);
  est.se_err_T = detail::standard_error(t);
  est.n_reps = folds;
  est.samples = d;
  return est;
}

}  // namespace doflab
