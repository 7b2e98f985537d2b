#include <algorithm>
#include <vector>

#include "doflab/error.hpp"
#include "internal.hpp"

namespace doflab::detail {

namespace {

// Indices of the k nearest training rows to query row q, ties by lowest index.
void nearest(const Matrix& train, const Vector& sqnorm, const Matrix& query, Eigen::Index q, std::size_t k,
             std::vector<std::pair<double, Eigen::Index>>& scratch, std::vector<Eigen::Index>& out) {
  const Eigen::Index n = train.rows();
  scratch.resize(static_cast<std::size_t>(n));
  const double qq = query.row(q).squaredNorm();
  for (Eigen::Index i = 0; i < n; ++i) {
    double d = sqnorm(i) + qq - 2.0 * train.row(i).dot(query.row(q));
    scratch[static_cast<std::size_t>(i)] = {std::max(d, 0.0), i};
  }
  // Exact distances for candidates near the cut so rounding in the expansion
  // cannot reorder near-ties.
  auto kth = scratch.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(scratch.begin(), kth, scratch.end());
  const double cut = kth->first;
  const double slack = 1e-9 * (cut + qq + 1.0);
  for (auto& e : scratch)
    if (e.first <= cut + slack) e.first = (train.row(e.second) - query.row(q)).squaredNorm();
  std::nth_element(scratch.begin(), kth, scratch.end());
  std::sort(scratch.begin(), kth + 1);
  out.clear();
  for (auto it = scratch.begin(); it != kth + 1; ++it) out.push_back(it->second);
}

class KnnModel : public Model {
 public:
  KnnModel(FeatureMap map, Matrix x, Vector sqnorm, Vector y, std::size_t k)
      : map_(std::move(map)), x_(std::move(x)), sqnorm_(std::move(sqnorm)), y_(std::move(y)), k_(k) {}

  Vector predict(const Matrix& x_in) const override {
    const Matrix q = map_.apply(x_in);
    Vector out(q.rows());
    std::vector<std::pair<double, Eigen::Index>> scratch;
    std::vector<Eigen::Index> idx;
    for (Eigen::Index r = 0; r < q.rows(); ++r) {
      nearest(x_, sqnorm_, q, r, k_, scratch, idx);
      double s = 0.0;
      for (auto i : idx) s += y_(i);
      out(r) = s / static_cast<double>(k_);
    }
    return out;
  }

 private:
  FeatureMap map_;
  Matrix x_;
  Vector sqnorm_;
  Vector y_;
  std::size_t k_;
};

class KnnSmoother : public SmootherWeights {
 public:
  KnnSmoother(PredictorSpec spec, FeatureMap map, Matrix x)
      : SmootherWeights(static_cast<std::size_t>(x.rows())),
        spec_(std::move(spec)),
        map_(std::move(map)),
        x_(std::move(x)),
        sqnorm_(x_.rowwise().squaredNorm()) {}

  Matrix weights(const Matrix& x0) const override { return weights_mapped(map_.apply(x0)); }
  Matrix in_sample() const override { return weights_mapped(x_); }
  double trace() const override { return in_sample().trace(); }
  FittedModel fit(const Vector& y) const override {
    require(static_cast<std::size_t>(y.size()) == n_, "smoother fit: response length mismatch");
    return FittedModel(spec_, std::make_shared<KnnModel>(map_, x_, sqnorm_, y, spec_.k), shared_from_this());
  }

 private:
  Matrix weights_mapped(const Matrix& q) const {
    Matrix w = Matrix::Zero(q.rows(), x_.rows());
    std::vector<std::pair<double, Eigen::Index>> scratch;
    std::vector<Eigen::Index> idx;
    const double wk = 1.0 / static_cast<double>(spec_.k);
    for (Eigen::Index r = 0; r < q.rows(); ++r) {
      nearest(x_, sqnorm_, q, r, spec_.k, scratch, idx);
      for (auto i : idx) w(r, i) = wk;
    }
    return w;
  }

  PredictorSpec spec_;
  FeatureMap map_;
  Matrix x_;
  Vector sqnorm_;
};

}  // namespace

std::shared_ptr<const SmootherWeights> make_knn_smoother(const PredictorSpec& spec, const Matrix& x_in) {
  require(spec.k >= 1 && spec.k <= static_cast<std::size_t>(x_in.rows()), "knn needs 1 <= k <= n");
  FeatureMap map(spec, x_in.cols());
  return std::make_shared<KnnSmoother>(spec, map, map.apply(x_in));
}

}  // namespace doflab::detail
