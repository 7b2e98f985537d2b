#pragma once

#include <cstddef>
#include <vector>

#include "doflab/core.hpp"

namespace doflab {

struct LassoOptions {
  double kkt_tol = 1e-8;
  std::size_t max_sweeps = 200000;
  bool polish = true;                            // Newton step on the active set when signs settle
  std::vector<double>* objective_trace = nullptr;  // objective after every sweep, if set
};

struct LassoResult {
  Vector beta;
  double kkt_residual = 0.0;
  std::size_t sweeps = 0;
};

// ½‖y − Xb‖² + λ‖b‖₁
double lasso_objective(const Matrix& x, const Vector& y, const Vector& beta, double lambda);
// max_j of |x_jᵀr − λ sign(b_j)| on the support and (|x_jᵀr| − λ)₊ off it.
double lasso_kkt_residual(const Matrix& x, const Vector& y, const Vector& beta, double lambda);
double lasso_lambda_max(const Matrix& x, const Vector& y);

// Cyclic coordinate descent with active-set cycling. Throws ConvergenceError.
LassoResult solve_lasso(const Matrix& x, const Vector& y, double lambda, const LassoOptions& opt = {},
                        const Vector* warm = nullptr);
// Warm-started path down to λ_max·1e-8; returns the last solution.
LassoResult solve_lasso_path_to_interpolation(const Matrix& x, const Vector& y, const LassoOptions& opt = {});

}  // namespace doflab
