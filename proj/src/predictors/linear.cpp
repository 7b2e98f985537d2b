#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "doflab/error.hpp"
#include "internal.hpp"

namespace doflab::detail {

namespace {

std::shared_ptr<const Matrix> random_feature_weights(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, std::size_t, std::size_t>, std::shared_ptr<const Matrix>> cache;
  const auto key = std::make_tuple(seed, rows, cols);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  // Variance 1/√P per entry, drawn row by row so smaller maps are prefixes.
  const double spread = std::sqrt(1.0 / std::sqrt(static_cast<double>(cols)));
  auto w = std::make_shared<Matrix>(rows, cols);
  RandomStream rng(seed, 0, StreamRole::Signal, 2);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) (*w)(i, j) = spread * rng.normal();
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 4096) cache.clear();
  cache.emplace(key, w);
  return w;
}

class SpectralSmoother : public SmootherWeights {
 public:
  SpectralSmoother(PredictorSpec spec, FeatureMap map, Matrix u, Matrix v, Vector g, Vector sg)
      : SmootherWeights(static_cast<std::size_t>(u.rows())),
        spec_(std::move(spec)),
        map_(std::move(map)),
        u_(std::move(u)),
        v_(std::move(v)),
        g_(std::move(g)),
        sg_(std::move(sg)) {}

  Matrix weights(const Matrix& x0) const override {
    return (map_.apply(x0) * v_) * g_.asDiagonal() * u_.transpose();
  }
  Matrix in_sample() const override { return u_ * sg_.asDiagonal() * u_.transpose(); }
  double trace() const override { return sg_.sum(); }
  FittedModel fit(const Vector& y) const override {
    require(static_cast<std::size_t>(y.size()) == n_, "smoother fit: response length mismatch");
    Vector beta = v_ * (g_.asDiagonal() * (u_.transpose() * y));
    return FittedModel(spec_, std::make_shared<LinearModel>(map_, std::move(beta)), shared_from_this());
  }

 private:
  PredictorSpec spec_;
  FeatureMap map_;
  Matrix u_, v_;
  Vector g_, sg_;
};

}  // namespace

FeatureMap::FeatureMap(const PredictorSpec& spec, Eigen::Index input_cols) : max_features_(spec.max_features) {
  require(max_features_ <= static_cast<std::size_t>(input_cols), "max_features exceeds the number of columns");
  if (spec.family == Family::RandomFeaturesRidgeless) {
    const std::size_t width = max_features_ ? max_features_ : static_cast<std::size_t>(input_cols);
    require(spec.rf_latent == 0 || spec.rf_latent == width, "rf_latent must equal the input width");
    rf_ = random_feature_weights(spec.rf_seed, spec.rf_features, width);
  }
}

Matrix FeatureMap::apply(const Matrix& x) const {
  if (!rf_) return max_features_ ? Matrix(x.leftCols(max_features_)) : x;
  const Matrix z = (max_features_ ? Matrix(x.leftCols(max_features_)) : x) * rf_->transpose();
  return z.array().tanh().matrix();
}

LassoModel::LassoModel(FeatureMap map, Vector beta) : LinearModel(std::move(map), beta) {
  nnz_ = 0;
  for (Eigen::Index j = 0; j < beta.size(); ++j)
    if (beta(j) != 0.0) ++nnz_;
}

std::shared_ptr<const SmootherWeights> make_spectral_smoother(const PredictorSpec& spec, const Matrix& x_in) {
  FeatureMap map(spec, x_in.cols());
  const Matrix z = map.apply(x_in);
  const double n = static_cast<double>(z.rows());
  const Eigen::Index p = z.cols();
  Eigen::BDCSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double tol = static_cast<double>(std::max(z.rows(), p)) * std::numeric_limits<double>::epsilon() * smax;
  Vector g = Vector::Zero(s.size());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  switch (spec.family) {
    case Family::LeastSquares:
      if (p > z.rows() || rank < p) throw NumericalError("least squares: rank-deficient design (use ridgeless)");
      [[fallthrough]];
    case Family::Ridgeless:
    case Family::RandomFeaturesRidgeless:
      for (Eigen::Index i = 0; i < rank; ++i) g(i) = 1.0 / s(i);
      break;
    case Family::Ridge:
      for (Eigen::Index i = 0; i < s.size(); ++i) g(i) = (s(i) / n) / (s(i) * s(i) / n + spec.lambda);
      break;
    default:
      throw Unsupported(to_string(spec.family) + " is not a spectral smoother");
  }
  Vector sg = s.cwiseProduct(g);
  return std::make_shared<SpectralSmoother>(spec, std::move(map), svd.matrixU(), svd.matrixV(), std::move(g),
                                            std::move(sg));
}

}  // namespace doflab::detail
