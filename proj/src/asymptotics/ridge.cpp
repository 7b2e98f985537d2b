#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "doflab/asymptotics.hpp"
#include "doflab/error.hpp"
#include "doflab/omega.hpp"
#include "numeric.hpp"

namespace doflab {

void SpectralModel::validate() const {
  require(!atoms.empty(), "spectral model needs atoms");
  require(gamma > 0.0 && std::isfinite(gamma), "gamma must be positive");
  require(sigma2 > 0.0 && std::isfinite(sigma2), "sigma2 must be positive");
  require(sigma2_nl >= 0.0 && std::isfinite(sigma2_nl), "sigma2_nl must be >= 0");
  double total = 0.0;
  for (const auto& a : atoms) {
    require(a.eigenvalue > 0.0 && std::isfinite(a.eigenvalue), "eigenvalues must be positive");
    require(a.mass >= 0.0, "atom masses must be >= 0");
    require(a.signal_energy >= 0.0, "signal energies must be >= 0");
    total += a.mass;
  }
  require(std::abs(total - 1.0) <= 1e-9, "atom masses must sum to 1");
}

double SpectralModel::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : atoms)
    if (a.mass > 0.0) m = std::min(m, a.eigenvalue);
  return m;
}

double SpectralModel::mean_eigenvalue() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.mass * a.eigenvalue;
  return s;
}

SpectralModel SpectralModel::identity(double gamma, double sigma2, double signal_energy, double sigma2_nl) {
  SpectralModel m;
  m.atoms = {SpectralAtom{1.0, 1.0, signal_energy}};
  m.gamma = gamma;
  m.sigma2 = sigma2;
  m.sigma2_nl = sigma2_nl;
  return m;
}

SpectralModel SpectralModel::from_covariance(const Matrix& cov, const Vector& beta, double gamma, double sigma2,
                                             double sigma2_nl) {
  require(cov.rows() == cov.cols() && cov.rows() == beta.size(), "covariance and beta sizes disagree");
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  if (es.info() != Eigen::Success) throw NumericalError("covariance eigendecomposition failed");
  const Vector proj = es.eigenvectors().transpose() * beta;
  SpectralModel m;
  const double w = 1.0 / static_cast<double>(cov.rows());
  for (Eigen::Index k = 0; k < cov.rows(); ++k)
    m.atoms.push_back(SpectralAtom{es.eigenvalues()(k), w, proj(k) * proj(k)});
  m.gamma = gamma;
  m.sigma2 = sigma2;
  m.sigma2_nl = sigma2_nl;
  return m;
}

SpectralModel SpectralModel::from_data_model(const DataModel& model) {
  return from_covariance(model.observed_covariance(), model.observed_beta(),
                         static_cast<double>(model.p()) / static_cast<double>(model.n()), model.noise_variance(),
                         model.nonlinear_variance());
}

namespace {

// γ Σ m s/(s+μ)
double trace_resolvent(const SpectralModel& m, double mu) {
  double t = 0.0;
  for (const auto& a : m.atoms) t += a.mass * a.eigenvalue / (a.eigenvalue + mu);
  return m.gamma * t;
}

// γ Σ m s²/(s+μ)²
double trace_resolvent_sq(const SpectralModel& m, double mu) {
  double t = 0.0;
  for (const auto& a : m.atoms) {
    const double r = a.eigenvalue / (a.eigenvalue + mu);
    t += a.mass * r * r;
  }
  return m.gamma * t;
}

RidgeSolution chain(double lambda, double mu, const SpectralModel& m) {
  RidgeSolution s;
  s.mu = mu;
  s.V = trace_resolvent_sq(m, mu);
  s.D = 1.0 - s.V;
  double b = 0.0;
  for (const auto& a : m.atoms) {
    const double d = a.eigenvalue + mu;
    b += a.signal_energy * a.eigenvalue / (d * d);
  }
  s.B = mu * mu * b / m.sigma2;
  s.df_fixed_norm = 1.0 - lambda / mu;
  if (!(s.D > 0.0)) {
    s.divergent = true;
    s.df_intrinsic_norm = 1.0;
    s.df_emergent_norm = 1.0;
    return s;
  }
  const double shrink = 1.0 - (lambda / mu) * (lambda / mu);
  const double var = s.V / s.D + 1.0;
  s.df_intrinsic_norm = omega(std::max(shrink * var, 0.0));
  s.df_emergent_norm = omega(std::max(shrink * (s.B / s.D + var * (1.0 + m.sigma2_nl / m.sigma2)), 0.0));
  return s;
}

}  // namespace

double solve_ridge_mu(double lambda, const SpectralModel& model) {
  model.validate();
  require(lambda > 0.0 && std::isfinite(lambda), "ridge needs lambda > 0");
  // λ/μ + γ tr̄[Σ(Σ+μ)⁻¹] − 1 is strictly decreasing in μ > 0.
  auto f = [&](double mu) { return lambda / mu + trace_resolvent(model, mu) - 1.0; };
  const double lo = lambda;
  const double hi = lambda + model.gamma * model.mean_eigenvalue();
  const double mu = detail::bracketed_root(f, lo, hi, f(lo), f(hi));
  const double resid = std::abs(mu - lambda - mu * trace_resolvent(model, mu));
  if (!(resid <= 1e-12 * mu)) throw ConvergenceError("ridge fixed point did not converge", resid);
  return mu;
}

RidgeSolution ridge_equivalents(double lambda, const SpectralModel& model) {
  return chain(lambda, solve_ridge_mu(lambda, model), model);
}

double solve_ridgeless_mu(const SpectralModel& model) {
  model.validate();
  require(model.gamma > 1.0, "ridgeless fixed point needs gamma > 1");
  auto f = [&](double mu) { return trace_resolvent(model, mu) - 1.0; };
  double hi = model.gamma * model.mean_eigenvalue();
  while (f(hi) > 0.0) hi *= 2.0;
  double lo = hi;
  while (f(lo) < 0.0) lo *= 0.5;
  if (lo == hi) hi *= 2.0;
  const double mu = detail::bracketed_root(f, lo, hi, f(lo), f(hi));
  const double resid = std::abs(f(mu));
  if (!(resid <= 1e-12)) throw ConvergenceError("ridgeless fixed point did not converge", resid);
  return mu;
}

RidgeSolution ridgeless_equivalents(const SpectralModel& model) {
  model.validate();
  const double g = model.gamma;
  if (g < 1.0) {
    RidgeSolution s;
    s.mu = 0.0;
    s.df_fixed_norm = g;
    s.df_intrinsic_norm = g;
    s.df_emergent_norm = omega((g + g / (1.0 - g)) * (1.0 + model.sigma2_nl / model.sigma2));
    s.V = g / (1.0 - g);
    s.D = 1.0;
    return s;
  }
  if (g == 1.0) {
    RidgeSolution s;
    s.divergent = true;
    s.D = 0.0;
    s.df_fixed_norm = s.df_intrinsic_norm = s.df_emergent_norm = 1.0;
    return s;
  }
  return chain(0.0, solve_ridgeless_mu(model), model);
}

double mu_min(const SpectralModel& model) {
  model.validate();
  const double rmin = model.min_eigenvalue();
  auto f = [&](double mu) { return trace_resolvent_sq(model, mu) - 1.0; };
  double hi = std::max(1.0, model.gamma * model.mean_eigenvalue());
  while (f(hi) > 0.0) hi *= 2.0;
  // Approach −r_min from above until the left end is positive.
  double gap = rmin;
  double lo = -rmin + gap;
  int steps = 0;
  while (f(lo) < 0.0) {
    gap *= 0.5;
    lo = -rmin + gap;
    if (++steps > 2000 || gap == 0.0) throw NumericalError("mu_min: bracketing failed");
  }
  if (lo >= hi) return detail::bracketed_root(f, lo, hi * 2.0, f(lo), f(hi * 2.0));
  return detail::bracketed_root(f, lo, hi, f(lo), f(hi));
}

}  // namespace doflab
