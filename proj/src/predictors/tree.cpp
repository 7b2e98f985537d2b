#include "doflab/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "doflab/error.hpp"
#include "internal.hpp"

namespace doflab {

namespace {

struct Candidate {
  int node = -1;
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
  std::vector<Eigen::Index> left, right;
};

struct ByGain {
  bool operator()(const Candidate* a, const Candidate* b) const {
    if (a->gain != b->gain) return a->gain < b->gain;
    return a->node > b->node;
  }
};

double mean_of(const Vector& y, const std::vector<Eigen::Index>& idx) {
  double s = 0.0;
  for (auto i : idx) s += y(i);
  return s / static_cast<double>(idx.size());
}

// Best split of the samples idx over the given features; gain 0 when none.
Candidate best_split(const Matrix& x, const Vector& y, const std::vector<Eigen::Index>& idx,
                     const std::vector<Eigen::Index>& features) {
  Candidate best;
  const std::size_t m = idx.size();
  if (m < 2) return best;
  bool pure = true;
  for (auto i : idx)
    if (y(i) != y(idx[0])) {
      pure = false;
      break;
    }
  if (pure) return best;

  double total = 0.0;
  for (auto i : idx) total += y(i);
  const double mean = total / static_cast<double>(m);
  double sse = 0.0;
  for (auto i : idx) sse += (y(i) - mean) * (y(i) - mean);
  const double base = total * total / static_cast<double>(m);

  std::vector<Eigen::Index> order(idx);
  double best_score = -1.0;
  std::size_t best_pos = 0;
  for (auto f : features) {
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return x(a, f) < x(b, f); });
    double left = 0.0;
    for (std::size_t pos = 1; pos < m; ++pos) {
      left += y(order[pos - 1]);
      const double xl = x(order[pos - 1], f);
      const double xr = x(order[pos], f);
      if (!(xl < xr)) continue;
      const double nl = static_cast<double>(pos);
      const double nr = static_cast<double>(m - pos);
      const double right = total - left;
      const double score = left * left / nl + right * right / nr;
      if (score > best_score) {
        best_score = score;
        best_pos = pos;
        best.feature = static_cast<int>(f);
        double thr = 0.5 * (xl + xr);
        if (!(thr < xr)) thr = xl;
        best.threshold = thr;
      }
    }
    if (best.feature == static_cast<int>(f)) {
      best.left.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_pos));
      best.right.assign(order.begin() + static_cast<std::ptrdiff_t>(best_pos), order.end());
    }
  }
  if (best.feature < 0) return best;
  best.gain = best_score - base;
  if (!(best.gain > 1e-12 * sse)) {
    best.feature = -1;
    best.gain = 0.0;
  }
  return best;
}

}  // namespace

RegressionTree RegressionTree::grow(const Matrix& x, const Vector& y, std::size_t max_leaves, std::size_t mtry,
                                    RandomStream* rng) {
  require(max_leaves >= 2, "tree needs max_leaves >= 2");
  require(x.rows() == y.size() && x.rows() >= 1, "tree: response length mismatch");
  const std::size_t p = static_cast<std::size_t>(x.cols());
  if (mtry == 0 || mtry > p) mtry = p;
  require(mtry == p || rng != nullptr, "tree: feature subsampling needs a random stream");

  std::vector<Eigen::Index> all_features(p);
  std::iota(all_features.begin(), all_features.end(), Eigen::Index{0});
  auto draw_features = [&]() {
    if (mtry == p) return all_features;
    std::vector<Eigen::Index> pool(all_features);
    for (std::size_t i = 0; i < mtry; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng->below(p - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(mtry);
    return pool;
  };

  RegressionTree tree;
  std::vector<Eigen::Index> root(static_cast<std::size_t>(x.rows()));
  std::iota(root.begin(), root.end(), Eigen::Index{0});
  tree.nodes_.push_back(TreeNode{-1, 0.0, -1, -1, mean_of(y, root)});
  tree.leaves_ = 1;

  std::vector<std::unique_ptr<Candidate>> store;
  std::priority_queue<Candidate*, std::vector<Candidate*>, ByGain> queue;
  auto consider = [&](int node, const std::vector<Eigen::Index>& idx) {
    auto c = std::make_unique<Candidate>(best_split(x, y, idx, draw_features()));
    c->node = node;
    if (c->feature >= 0) {
      queue.push(c.get());
      store.push_back(std::move(c));
    }
  };
  consider(0, root);

  while (tree.leaves_ < max_leaves && !queue.empty()) {
    Candidate* c = queue.top();
    queue.pop();
    const int li = static_cast<int>(tree.nodes_.size());
    tree.nodes_.push_back(TreeNode{-1, 0.0, -1, -1, mean_of(y, c->left)});
    tree.nodes_.push_back(TreeNode{-1, 0.0, -1, -1, mean_of(y, c->right)});
    TreeNode& parent = tree.nodes_[static_cast<std::size_t>(c->node)];
    parent.feature = c->feature;
    parent.threshold = c->threshold;
    parent.left = li;
    parent.right = li + 1;
    ++tree.leaves_;
    consider(li, c->left);
    consider(li + 1, c->right);
    c->left.clear();
    c->right.clear();
  }
  return tree;
}

double RegressionTree::predict_row(const Matrix& x, Eigen::Index row) const {
  int at = 0;
  while (nodes_[static_cast<std::size_t>(at)].feature >= 0) {
    const TreeNode& nd = nodes_[static_cast<std::size_t>(at)];
    at = x(row, nd.feature) <= nd.threshold ? nd.left : nd.right;
  }
  return nodes_[static_cast<std::size_t>(at)].value;
}

Vector RegressionTree::predict(const Matrix& x) const {
  Vector out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) out(i) = predict_row(x, i);
  return out;
}

namespace detail {

namespace {

class ForestModel : public Model {
 public:
  ForestModel(FeatureMap map, std::vector<RegressionTree> trees) : map_(std::move(map)), trees_(std::move(trees)) {}
  Vector predict(const Matrix& x_in) const override {
    const Matrix x = map_.apply(x_in);
    Vector out = Vector::Zero(x.rows());
    for (const auto& t : trees_) out += t.predict(x);
    return out / static_cast<double>(trees_.size());
  }

 private:
  FeatureMap map_;
  std::vector<RegressionTree> trees_;
};

}  // namespace

FittedModel fit_tree_family(const PredictorSpec& spec, const Matrix& x_in, const Vector& y, std::uint64_t seed) {
  FeatureMap map(spec, x_in.cols());
  const Matrix x = map.apply(x_in);
  const std::size_t p = static_cast<std::size_t>(x.cols());
  std::size_t mtry = spec.mtry;
  std::size_t n_trees = 1;
  if (spec.family == Family::Forest) {
    n_trees = spec.n_trees;
    if (mtry == 0) mtry = (p + 2) / 3;
  } else if (mtry == 0) {
    mtry = p;
  }
  mtry = std::min(mtry, p);
  std::vector<RegressionTree> trees;
  trees.reserve(n_trees);
  for (std::size_t t = 0; t < n_trees; ++t) {
    RandomStream rng(seed, t, StreamRole::Forest, 0);
    trees.push_back(RegressionTree::grow(x, y, spec.max_leaves, mtry, &rng));
  }
  return FittedModel(spec, std::make_shared<ForestModel>(std::move(map), std::move(trees)));
}

}  // namespace detail

}  // namespace doflab
