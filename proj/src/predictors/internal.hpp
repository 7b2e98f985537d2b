#pragma once

#include <memory>

#include "doflab/predictors.hpp"

namespace doflab::detail {

// Column prefix selection followed by the optional tanh random-feature map.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(const PredictorSpec& spec, Eigen::Index input_cols);
  Matrix apply(const Matrix& x) const;

 private:
  std::size_t max_features_ = 0;
  std::shared_ptr<const Matrix> rf_;
};

class LinearModel : public Model {
 public:
  LinearModel(FeatureMap map, Vector beta) : map_(std::move(map)), beta_(std::move(beta)) {}
  Vector predict(const Matrix& x) const override { return map_.apply(x) * beta_; }
  const Vector* coefficients() const override { return &beta_; }

 private:
  FeatureMap map_;
  Vector beta_;
};

class LassoModel : public LinearModel {
 public:
  LassoModel(FeatureMap map, Vector beta);
  std::optional<std::size_t> nonzero_count() const override { return nnz_; }

 private:
  std::size_t nnz_;
};

std::shared_ptr<const SmootherWeights> make_spectral_smoother(const PredictorSpec& spec, const Matrix& x);
std::shared_ptr<const SmootherWeights> make_knn_smoother(const PredictorSpec& spec, const Matrix& x);
FittedModel fit_lasso_family(const PredictorSpec& spec, const Matrix& x, const Vector& y);
FittedModel fit_tree_family(const PredictorSpec& spec, const Matrix& x, const Vector& y, std::uint64_t seed);

}  // namespace doflab::detail
