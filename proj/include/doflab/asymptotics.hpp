#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "doflab/core.hpp"

namespace doflab {

// ---- Ridge and ridgeless (unit-variance features, objective (1/n)‖y − Xb‖² + λ‖b‖²).

struct SpectralAtom {
  double eigenvalue = 1.0;
  double mass = 1.0;
  double signal_energy = 0.0;  // Σ of (u_kᵀβ)² over eigenvectors in this atom
};

struct SpectralModel {
  std::vector<SpectralAtom> atoms;
  double gamma = 1.0;
  double sigma2 = 1.0;
  double sigma2_nl = 0.0;

  void validate() const;
  double min_eigenvalue() const;
  double mean_eigenvalue() const;

  // Σ = I with total signal energy ‖β‖².
  static SpectralModel identity(double gamma, double sigma2, double signal_energy = 0.0, double sigma2_nl = 0.0);
  // One atom per eigenvalue of cov (mass 1/p), energies from beta.
  static SpectralModel from_covariance(const Matrix& cov, const Vector& beta, double gamma, double sigma2,
                                       double sigma2_nl);
  // Observed covariance and coefficients of a generator (not for random features).
  static SpectralModel from_data_model(const DataModel& model);
};

struct RidgeSolution {
  double mu = 0.0;
  double V = 0.0;
  double B = 0.0;
  double D = 1.0;
  double df_fixed_norm = 0.0;
  double df_intrinsic_norm = 0.0;
  double df_emergent_norm = 0.0;
  bool divergent = false;
};

double solve_ridge_mu(double lambda, const SpectralModel& model);
RidgeSolution ridge_equivalents(double lambda, const SpectralModel& model);
double solve_ridgeless_mu(const SpectralModel& model);
RidgeSolution ridgeless_equivalents(const SpectralModel& model);
// Root of 1 = γ Σ m s²/(s + μ)² with μ > −r_min.
double mu_min(const SpectralModel& model);

// ---- Scalar systems (features with variance 1/n, objective ½‖y − Xb‖² + λ·penalty).

double soft_threshold(double u, double t);
double soft_threshold_derivative(double u, double t);

struct PointMass {
  double location = 0.0;
  double probability = 1.0;
};

struct SignalLaw {
  std::vector<PointMass> atoms;

  void validate() const;
  double second_moment() const;
  static SignalLaw zero();
  // Mass δ at `amplitude`, 1 − δ at 0.
  static SignalLaw bernoulli(double delta, double amplitude);
  // Empirical law of the entries of beta (equal-valued entries merged).
  static SignalLaw empirical(const Vector& beta);
};

enum class PenaltyKind { SoftThreshold, Ridge, Generic };

struct PenaltyLaw {
  std::string name = "generic";
  PenaltyKind kind = PenaltyKind::Generic;
  std::function<double(double, double)> prox;
  std::function<double(double, double)> prox_derivative;
  // Points where prox(·; t) is not differentiable (empty for smooth proxes).
  std::function<std::vector<double>(double)> kinks;

  void validate() const;
  static PenaltyLaw soft_threshold();
  static PenaltyLaw ridge();
  // |z| + (α/2)z²
  static PenaltyLaw elastic_net(double alpha);
  // √(1 + z²) − 1, a smooth penalty without closed-form moments.
  static PenaltyLaw pseudo_huber();
  // Same prox as `base` but with the closed forms disabled (quadrature path).
  static PenaltyLaw as_generic(const PenaltyLaw& base);
};

struct ProxMoments {
  double m2 = 0.0;  // E[(prox(b + τH; κ) − b)²]
  double m1 = 0.0;  // E[prox′(b + τH; κ)]
};

ProxMoments gaussian_prox_moments(double b, double tau, double kappa, const PenaltyLaw& penalty);
// Moments averaged over the signal law.
ProxMoments signal_prox_moments(const SignalLaw& law, double tau, double kappa, const PenaltyLaw& penalty);

struct ScalarSystemSolution {
  double tau = 0.0;
  double a = 0.0;
  double mu = 0.0;  // a·τ
  double lambda = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  bool converged = false;
  double residual_tau = 0.0;  // |1 − (σ² + γ m2)/τ²|
  double residual_mu = 0.0;   // |λ − aτ(1 − γ m1)| / max(1, λ), or |1 − γ m1| when λ = 0
};

ScalarSystemSolution solve_lasso_system(double lambda, double gamma, const SignalLaw& law, double sigma2);
ScalarSystemSolution solve_lassoless_system(double gamma, const SignalLaw& law, double sigma2);
ScalarSystemSolution solve_convex_system(double lambda, double gamma, const SignalLaw& law, double sigma2,
                                         const PenaltyLaw& penalty);

struct DofEquivalents {
  double df_fixed_norm = 0.0;
  double df_intrinsic_norm = 0.0;
  double df_emergent_norm = 0.0;
  bool divergent = false;
  ScalarSystemSolution emergent;
  ScalarSystemSolution intrinsic;
};

DofEquivalents convex_equivalents(double lambda, double gamma, const SignalLaw& law, double sigma2,
                                  const PenaltyLaw& penalty);
DofEquivalents lasso_equivalents(double lambda, double gamma, const SignalLaw& law, double sigma2);
// Piecewise in γ: least squares below 1, divergence flag at 1, scalar system above.
DofEquivalents lassoless_equivalents(double gamma, const SignalLaw& law, double sigma2);
// Closed-form pure-noise pair for the lassoless system: a₀ = Φ⁻¹((2γ−1)/(2γ)).
ScalarSystemSolution lassoless_intrinsic_closed_form(double gamma, double sigma2);

// |(σ² + γ m2)(1 − (1 − γ m1)²) − (1 − (λ/μ)²)τ²| / τ² at the converged solution.
double gcv_consistency_check(double lambda, double gamma, const SignalLaw& law, double sigma2,
                             const PenaltyLaw& penalty);

// Standard normal helpers.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_sf(double x);
double normal_quantile(double p);
// E[soft(H; y)²] for H ~ N(0, 1).
double soft_threshold_second_moment(double y);

}  // namespace doflab
