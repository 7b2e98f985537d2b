#include "doflab/error.hpp"
#include "internal.hpp"

namespace doflab {

namespace {

class NullModel : public Model {
 public:
  Vector predict(const Matrix& x) const override { return Vector::Zero(x.rows()); }
};

}  // namespace

FittedModel::FittedModel(PredictorSpec spec, std::shared_ptr<const Model> impl,
                         std::shared_ptr<const SmootherWeights> smoother)
    : spec_(std::move(spec)), impl_(std::move(impl)), smoother_(std::move(smoother)) {
  require(impl_ != nullptr, "FittedModel needs a model");
}

Vector FittedModel::predict(const Matrix& x) const { return impl_->predict(x); }

double FittedModel::predict_one(const Vector& x) const {
  const Matrix row = x.transpose();
  return impl_->predict(row)(0);
}

double SmootherWeights::trace() const { return in_sample().trace(); }

std::shared_ptr<const SmootherWeights> make_smoother(const PredictorSpec& spec, const Matrix& x) {
  spec.validate();
  switch (spec.family) {
    case Family::LeastSquares:
    case Family::Ridge:
    case Family::Ridgeless:
    case Family::RandomFeaturesRidgeless:
      return detail::make_spectral_smoother(spec, x);
    case Family::Knn:
      return detail::make_knn_smoother(spec, x);
    default:
      throw Unsupported(to_string(spec.family) + " is not a linear smoother");
  }
}

const SmootherWeights& smoother_weights(const FittedModel& model) {
  if (!model.smoother()) throw Unsupported(to_string(model.spec().family) + " is not a linear smoother");
  return *model.smoother();
}

FittedModel fit(const PredictorSpec& spec, const Matrix& x, const Vector& y, std::uint64_t seed) {
  spec.validate();
  require(x.rows() == y.size(), "fit: response length must equal feature row count");
  require(x.rows() >= 1, "fit: empty training set");
  switch (spec.family) {
    case Family::Null:
      return FittedModel(spec, std::make_shared<NullModel>());
    case Family::LeastSquares:
    case Family::Ridge:
    case Family::Ridgeless:
    case Family::RandomFeaturesRidgeless:
    case Family::Knn:
      return make_smoother(spec, x)->fit(y);
    case Family::Lasso:
    case Family::Lassoless:
      return detail::fit_lasso_family(spec, x, y);
    case Family::Tree:
    case Family::Forest:
      return detail::fit_tree_family(spec, x, y, seed);
  }
  throw InvalidArgument("unknown predictor family");
}

FittedModel fit(const PredictorSpec& spec, const Dataset& data, std::uint64_t seed) {
  return fit(spec, data.features, data.response, seed);
}

FittedModel fit_least_squares(const Dataset& data) { return fit(PredictorSpec::least_squares(), data); }
FittedModel fit_ridge(const Dataset& data, double lambda) { return fit(PredictorSpec::ridge(lambda), data); }
FittedModel fit_ridgeless(const Dataset& data) { return fit(PredictorSpec::ridgeless(), data); }
FittedModel fit_lasso(const Dataset& data, double lambda) { return fit(PredictorSpec::lasso(lambda), data); }
FittedModel fit_lassoless(const Dataset& data) { return fit(PredictorSpec::lassoless(), data); }
FittedModel fit_knn(const Dataset& data, std::size_t k) { return fit(PredictorSpec::knn(k), data); }
FittedModel fit_tree(const Dataset& data, std::size_t max_leaves) {
  return fit(PredictorSpec::tree(max_leaves), data);
}
FittedModel fit_forest(const Dataset& data, std::size_t n_trees, std::size_t max_leaves, std::uint64_t seed) {
  return fit(PredictorSpec::forest(n_trees, max_leaves), data, seed);
}

}  // namespace doflab
