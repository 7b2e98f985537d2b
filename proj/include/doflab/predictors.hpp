#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "doflab/core.hpp"

namespace doflab {

enum class Family {
  Null,  // always predicts 0
  LeastSquares,
  Ridge,
  Ridgeless,
  Lasso,
  Lassoless,
  Knn,
  Tree,
  Forest,
  RandomFeaturesRidgeless,
};

std::string to_string(Family f);
Family parse_family(std::string_view s);

struct PredictorSpec {
  Family family = Family::LeastSquares;
  double lambda = 0.0;
  std::size_t k = 1;
  std::size_t max_leaves = 2;
  std::size_t n_trees = 1;
  std::size_t mtry = 0;          // 0: ⌈p/3⌉ for forests, p for a single tree
  std::size_t rf_features = 0;   // random-features-ridgeless: number of features p
  std::size_t rf_latent = 0;     // random-features-ridgeless: weight columns; 0 uses the input width
  std::uint64_t rf_seed = 0;     // random-features-ridgeless: key of the fixed weight matrix
  std::size_t max_features = 0;  // fit on the first max_features columns only; 0 uses all

  void validate() const;
  bool is_linear_smoother() const;
  std::string label() const;

  static PredictorSpec null_model();
  static PredictorSpec least_squares();
  static PredictorSpec ridge(double lambda);
  static PredictorSpec ridgeless();
  static PredictorSpec lasso(double lambda);
  static PredictorSpec lassoless();
  static PredictorSpec knn(std::size_t k);
  static PredictorSpec tree(std::size_t max_leaves);
  static PredictorSpec forest(std::size_t n_trees, std::size_t max_leaves, std::size_t mtry = 0);
  static PredictorSpec random_features_ridgeless(std::size_t p, std::size_t latent = 0);
};

class Model {
 public:
  virtual ~Model() = default;
  virtual Vector predict(const Matrix& x) const = 0;
  virtual const Vector* coefficients() const { return nullptr; }
  virtual std::optional<std::size_t> nonzero_count() const { return std::nullopt; }
};

class SmootherWeights;

class FittedModel {
 public:
  FittedModel(PredictorSpec spec, std::shared_ptr<const Model> impl,
              std::shared_ptr<const SmootherWeights> smoother = nullptr);

  const PredictorSpec& spec() const { return spec_; }
  // Predictions for each row of x (all columns; max_features is applied here).
  Vector predict(const Matrix& x) const;
  double predict_one(const Vector& x) const;
  const Vector* coefficients() const { return impl_->coefficients(); }
  std::optional<std::size_t> nonzero_count() const { return impl_->nonzero_count(); }
  const std::shared_ptr<const SmootherWeights>& smoother() const { return smoother_; }

 private:
  PredictorSpec spec_;
  std::shared_ptr<const Model> impl_;
  std::shared_ptr<const SmootherWeights> smoother_;
};

// Weight operator of a linear smoother fit on training features X:
// f̂(x) = L_X(x)ᵀy for every response y.
class SmootherWeights : public std::enable_shared_from_this<SmootherWeights> {
 public:
  virtual ~SmootherWeights() = default;
  std::size_t n() const { return n_; }
  // Row i holds L_X(x0_i)ᵀ for query rows x0 (m×n).
  virtual Matrix weights(const Matrix& x0) const = 0;
  // L_X(X) (n×n).
  virtual Matrix in_sample() const = 0;
  virtual double trace() const;
  // Fit for response y without refactorizing X.
  virtual FittedModel fit(const Vector& y) const = 0;

 protected:
  explicit SmootherWeights(std::size_t n) : n_(n) {}
  std::size_t n_;
};

// Builds the weight operator for a smoother family on features X (all columns;
// max_features is applied inside). Throws Unsupported for other families.
std::shared_ptr<const SmootherWeights> make_smoother(const PredictorSpec& spec, const Matrix& x);
SmootherWeights const& smoother_weights(const FittedModel& model);

FittedModel fit(const PredictorSpec& spec, const Matrix& x, const Vector& y, std::uint64_t seed = 0);
FittedModel fit(const PredictorSpec& spec, const Dataset& data, std::uint64_t seed = 0);

FittedModel fit_least_squares(const Dataset& data);
FittedModel fit_ridge(const Dataset& data, double lambda);
FittedModel fit_ridgeless(const Dataset& data);
FittedModel fit_lasso(const Dataset& data, double lambda);
FittedModel fit_lassoless(const Dataset& data);
FittedModel fit_knn(const Dataset& data, std::size_t k);
FittedModel fit_tree(const Dataset& data, std::size_t max_leaves);
FittedModel fit_forest(const Dataset& data, std::size_t n_trees, std::size_t max_leaves, std::uint64_t seed);

}  // namespace doflab
