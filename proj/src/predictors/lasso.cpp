#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <vector>

#include "doflab/error.hpp"
#include "doflab/lasso_solver.hpp"
#include "internal.hpp"

namespace doflab {

namespace {

double soft(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double kkt_from_gradient(const Vector& grad, const Vector& beta, double lambda) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    const double v = beta(j) != 0.0 ? std::abs(grad(j) - lambda * sign(beta(j)))
                                    : std::max(0.0, std::abs(grad(j)) - lambda);
    worst = std::max(worst, v);
  }
  return worst;
}

class CoordinateDescent {
 public:
  CoordinateDescent(const Matrix& x, const Vector& y, double lambda, const LassoOptions& opt)
      : x_(x), y_(y), lambda_(lambda), opt_(opt), colsq_(x.colwise().squaredNorm().transpose()) {}

  LassoResult run(Vector beta) {
    beta_ = std::move(beta);
    r_ = y_ - x_ * beta_;
    const double scale = std::max(1.0, y_.norm());
    const double inner_tol = 1e-3 * opt_.kkt_tol / scale;
    double kkt = 0.0;
    while (true) {
      sweep(nullptr);
      std::vector<Eigen::Index> active;
      for (Eigen::Index j = 0; j < beta_.size(); ++j)
        if (beta_(j) != 0.0) active.push_back(j);
      for (std::size_t inner = 0; inner < 1000 && !active.empty(); ++inner) {
        if (sweep(&active) <= inner_tol) break;
        if (sweeps_ >= opt_.max_sweeps) break;
      }
      r_ = y_ - x_ * beta_;
      Vector grad = x_.transpose() * r_;
      kkt = kkt_from_gradient(grad, beta_, lambda_);
      if (kkt <= opt_.kkt_tol) break;
      if (opt_.polish && polish(active)) {
        grad = x_.transpose() * r_;
        kkt = kkt_from_gradient(grad, beta_, lambda_);
        if (kkt <= opt_.kkt_tol) break;
      }
      if (sweeps_ >= opt_.max_sweeps)
        throw ConvergenceError("lasso coordinate descent did not converge", kkt);
    }
    return LassoResult{beta_, kkt, sweeps_};
  }

 private:
  // One cyclic pass over the given coordinates (all if null). Returns the
  // largest coordinate move scaled by the column norm.
  double sweep(const std::vector<Eigen::Index>* coords) {
    double biggest = 0.0;
    const Eigen::Index count = coords ? static_cast<Eigen::Index>(coords->size()) : beta_.size();
    for (Eigen::Index t = 0; t < count; ++t) {
      const Eigen::Index j = coords ? (*coords)[static_cast<std::size_t>(t)] : t;
      const double cs = colsq_(j);
      if (cs == 0.0) continue;
      const double old = beta_(j);
      const double rho = x_.col(j).dot(r_) + cs * old;
      const double nb = soft(rho, lambda_) / cs;
      const double delta = nb - old;
      if (delta != 0.0) {
        r_.noalias() -= delta * x_.col(j);
        beta_(j) = nb;
        biggest = std::max(biggest, std::abs(delta) * std::sqrt(cs));
      }
    }
    ++sweeps_;
    if (opt_.objective_trace) opt_.objective_trace->push_back(0.5 * r_.squaredNorm() + lambda_ * beta_.lpNorm<1>());
    return biggest;
  }

  // Solve the stationarity equations on the current support with fixed signs;
  // accept only if the signs survive and the objective does not increase.
  bool polish(const std::vector<Eigen::Index>& active) {
    const Eigen::Index m = static_cast<Eigen::Index>(active.size());
    if (m == 0 || m > x_.rows()) return false;
    Matrix xa(x_.rows(), m);
    Vector s(m);
    for (Eigen::Index t = 0; t < m; ++t) {
      xa.col(t) = x_.col(active[static_cast<std::size_t>(t)]);
      s(t) = sign(beta_(active[static_cast<std::size_t>(t)]));
    }
    Matrix gram(m, m);
    gram.setZero();
    gram.selfadjointView<Eigen::Lower>().rankUpdate(xa.transpose());
    Eigen::LDLT<Matrix> ldlt(gram.selfadjointView<Eigen::Lower>());
    if (ldlt.info() != Eigen::Success) return false;
    const Vector b = ldlt.solve(xa.transpose() * y_ - lambda_ * s);
    for (Eigen::Index t = 0; t < m; ++t)
      if (!(sign(b(t)) == s(t))) return false;
    Vector candidate = Vector::Zero(beta_.size());
    for (Eigen::Index t = 0; t < m; ++t) candidate(active[static_cast<std::size_t>(t)]) = b(t);
    const Vector r = y_ - xa * b;
    const double before = 0.5 * r_.squaredNorm() + lambda_ * beta_.lpNorm<1>();
    const double after = 0.5 * r.squaredNorm() + lambda_ * candidate.lpNorm<1>();
    if (!(after <= before)) return false;
    beta_ = std::move(candidate);
    r_ = r;
    if (opt_.objective_trace) opt_.objective_trace->push_back(after);
    return true;
  }

  const Matrix& x_;
  const Vector& y_;
  double lambda_;
  LassoOptions opt_;
  Vector colsq_;
  Vector beta_, r_;
  std::size_t sweeps_ = 0;
};

}  // namespace

double lasso_objective(const Matrix& x, const Vector& y, const Vector& beta, double lambda) {
  return 0.5 * (y - x * beta).squaredNorm() + lambda * beta.lpNorm<1>();
}

double lasso_kkt_residual(const Matrix& x, const Vector& y, const Vector& beta, double lambda) {
  const Vector grad = x.transpose() * (y - x * beta);
  return kkt_from_gradient(grad, beta, lambda);
}

double lasso_lambda_max(const Matrix& x, const Vector& y) {
  return (x.transpose() * y).lpNorm<Eigen::Infinity>();
}

LassoResult solve_lasso(const Matrix& x, const Vector& y, double lambda, const LassoOptions& opt,
                        const Vector* warm) {
  require(lambda > 0.0, "lasso needs lambda > 0");
  require(x.rows() == y.size(), "lasso: response length mismatch");
  Vector start = warm ? *warm : Vector::Zero(x.cols());
  require(start.size() == x.cols(), "lasso: warm start has wrong length");
  if (lambda >= lasso_lambda_max(x, y) && !warm) return LassoResult{Vector::Zero(x.cols()), 0.0, 0};
  CoordinateDescent cd(x, y, lambda, opt);
  return cd.run(std::move(start));
}

LassoResult solve_lasso_path_to_interpolation(const Matrix& x, const Vector& y, const LassoOptions& opt) {
  const double lmax = lasso_lambda_max(x, y);
  if (lmax == 0.0) return LassoResult{Vector::Zero(x.cols()), 0.0, 0};
  const double lmin = lmax * 1e-8;
  const int steps = 40;
  const double ratio = std::pow(1e-8, 1.0 / steps);
  Vector beta = Vector::Zero(x.cols());
  LassoResult res{beta, 0.0, 0};
  std::size_t sweeps = 0;
  for (int k = 1; k <= steps; ++k) {
    const double lam = k == steps ? lmin : lmax * std::pow(ratio, k);
    res = solve_lasso(x, y, lam, opt, &beta);
    beta = res.beta;
    sweeps += res.sweeps;
  }
  res.sweeps = sweeps;
  return res;
}

namespace detail {

FittedModel fit_lasso_family(const PredictorSpec& spec, const Matrix& x_in, const Vector& y) {
  FeatureMap map(spec, x_in.cols());
  const Matrix x = map.apply(x_in);
  Vector beta;
  if (spec.family == Family::Lasso) {
    beta = solve_lasso(x, y, spec.lambda).beta;
  } else {
    bool done = false;
    if (x.cols() <= x.rows()) {
      PredictorSpec ls = spec;
      ls.family = Family::LeastSquares;
      try {
        const auto sm = make_spectral_smoother(ls, x_in);
        beta = *sm->fit(y).coefficients();
        done = true;
      } catch (const NumericalError&) {
      }
    }
    if (!done) beta = solve_lasso_path_to_interpolation(x, y).beta;
  }
  return FittedModel(spec, std::make_shared<LassoModel>(std::move(map), std::move(beta)));
}

}  // namespace detail

}  // namespace doflab
