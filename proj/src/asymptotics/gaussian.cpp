#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "doflab/asymptotics.hpp"
#include "doflab/error.hpp"
#include "numeric.hpp"

namespace doflab {

namespace {
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }
double normal_sf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, "normal_quantile needs p in (0, 1)");
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

double soft_threshold_second_moment(double y) {
  require(y >= 0.0, "threshold must be >= 0");
  return 2.0 * (-y * normal_pdf(y) + (1.0 + y * y) * normal_sf(y));
}

namespace detail {

double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double flo, double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NumericalError("root is not bracketed");
  boost::uintmax_t iters = 300;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
                                                   iters);
  return 0.5 * (r.first + r.second);
}

const GaussHermite& gauss_hermite(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<GaussHermite>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    // Golub–Welsch on the Jacobi matrix of the probabilists' Hermite polynomials.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(n - 1));
    for (std::size_t i = 1; i < n; ++i) sub(static_cast<Eigen::Index>(i - 1)) = std::sqrt(static_cast<double>(i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    auto rule = std::make_unique<GaussHermite>();
    for (std::size_t i = 0; i < n; ++i) {
      const double v0 = es.eigenvectors()(0, static_cast<Eigen::Index>(i));
      rule->nodes.push_back(es.eigenvalues()(static_cast<Eigen::Index>(i)));
      rule->weights.push_back(v0 * v0);
    }
    slot = std::move(rule);
  }
  return *slot;
}

}  // namespace detail

}  // namespace doflab
