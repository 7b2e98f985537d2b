#pragma once

#include <cstddef>
#include <vector>

#include "doflab/core.hpp"

namespace doflab {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

// CART regression tree grown best-first on squared-error gain.
class RegressionTree {
 public:
  // mtry features are drawn per split when mtry < p (rng required then).
  static RegressionTree grow(const Matrix& x, const Vector& y, std::size_t max_leaves, std::size_t mtry,
                             RandomStream* rng);
  double predict_row(const Matrix& x, Eigen::Index row) const;
  Vector predict(const Matrix& x) const;
  std::size_t leaves() const { return leaves_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

 private:
  std::vector<TreeNode> nodes_;
  std::size_t leaves_ = 0;
};

}  // namespace doflab
