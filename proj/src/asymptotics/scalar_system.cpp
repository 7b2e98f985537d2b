#include <algorithm>
#include <cmath>
#include <optional>

#include "doflab/asymptotics.hpp"
#include "doflab/error.hpp"
#include "doflab/omega.hpp"
#include "numeric.hpp"

namespace doflab {

namespace {

constexpr double kResidualTol = 1e-10;

// System in (τ, a) with threshold κ = aτ:
//   τ² = σ² + γ m2(τ, aτ),   λ = aτ(1 − γ m1(τ, aτ)).
class ScalarSystem {
 public:
  ScalarSystem(double gamma, const SignalLaw& law, double sigma2, const PenaltyLaw& pen)
      : gamma_(gamma), law_(law), sigma2_(sigma2), pen_(pen) {}

  ProxMoments moments(double tau, double a) const { return signal_prox_moments(law_, tau, a * tau, pen_); }

  // τ(a), or nullopt when the τ-equation has no root (a below its feasible range).
  std::optional<double> tau_of(double a) const {
    const double sigma = std::sqrt(sigma2_);
    auto h = [&](double tau) { return (sigma2_ + gamma_ * moments(tau, a).m2) / (tau * tau) - 1.0; };
    double lo = sigma;
    double hlo = h(lo);
    if (hlo == 0.0) return lo;
    double hi = 2.0 * lo;
    double hhi = h(hi);
    int doublings = 0;
    while (hhi > 0.0) {
      lo = hi;
      hlo = hhi;
      hi *= 2.0;
      hhi = h(hi);
      if (++doublings > 200 || !std::isfinite(hhi)) return std::nullopt;
    }
    return detail::bracketed_root(h, lo, hi, hlo, hhi);
  }

  // Monotone increasing in a: aτ(1 − γ m1) − λ, or 1 − γ m1 when λ is zero.
  std::optional<double> outer(double a, double lambda) const {
    const auto tau = tau_of(a);
    if (!tau) return std::nullopt;
    const ProxMoments m = moments(*tau, a);
    if (lambda == 0.0) return 1.0 - gamma_ * m.m1;
    return a * *tau * (1.0 - gamma_ * m.m1) - lambda;
  }

  ScalarSystemSolution solve(double lambda) const {
    // Upper end: grow a until the outer function turns positive.
    double hi = 1.0;
    std::optional<double> ghi = outer(hi, lambda);
    int steps = 0;
    while (!ghi || *ghi <= 0.0) {
      hi *= 2.0;
      ghi = outer(hi, lambda);
      if (++steps > 200) throw ConvergenceError("scalar system: no upper bracket for a", ghi ? *ghi : NAN);
    }
    // Lower end: shrink until negative; bisect into the feasible region if needed.
    double lo = hi;
    std::optional<double> glo = ghi;
    double feasible_pos = hi;
    steps = 0;
    while (true) {
      const double cand = lo * 0.5;
      const auto g = outer(cand, lambda);
      if (!g) {
        double bad = cand, good = feasible_pos;
        bool found = false;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (bad + good);
          const auto gm = outer(mid, lambda);
          if (!gm) {
            bad = mid;
          } else if (*gm < 0.0) {
            lo = mid;
            glo = gm;
            found = true;
            break;
          } else {
            good = mid;
            feasible_pos = mid;
          }
        }
        if (!found) throw ConvergenceError("scalar system: no lower bracket for a", glo ? *glo : NAN);
        break;
      }
      if (*g < 0.0) {
        lo = cand;
        glo = g;
        break;
      }
      feasible_pos = cand;
      lo = cand;
      if (++steps > 1100 || cand < 1e-300)
        throw ConvergenceError("scalar system: no lower bracket for a", *g);
    }
    // Tighten the upper end to the nearest feasible positive point.
    hi = std::min(hi, feasible_pos);
    ghi = outer(hi, lambda);
    auto f = [&](double a) {
      const auto g = outer(a, lambda);
      return g ? *g : -INFINITY;
    };
    const double a = detail::bracketed_root(f, lo, hi, *glo, *ghi);
    return finish(a, lambda);
  }

  ScalarSystemSolution finish(double a, double lambda) const {
    ScalarSystemSolution s;
    const auto tau = tau_of(a);
    if (!tau) throw ConvergenceError("scalar system: root left the feasible region", NAN);
    s.a = a;
    s.tau = *tau;
    s.mu = a * s.tau;
    s.lambda = lambda;
    const ProxMoments m = moments(s.tau, a);
    s.m1 = m.m1;
    s.m2 = m.m2;
    s.residual_tau = std::abs(1.0 - (sigma2_ + gamma_ * m.m2) / (s.tau * s.tau));
    s.residual_mu = lambda == 0.0 ? std::abs(1.0 - gamma_ * m.m1)
                                  : std::abs(lambda - s.mu * (1.0 - gamma_ * m.m1)) / std::max(1.0, lambda);
    s.converged = s.residual_tau <= kResidualTol && s.residual_mu <= kResidualTol;
    return s;
  }

 private:
  double gamma_;
  const SignalLaw& law_;
  double sigma2_;
  const PenaltyLaw& pen_;
};

void check_inputs(double lambda, double gamma, const SignalLaw& law, double sigma2) {
  require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be >= 0");
  require(gamma > 0.0 && std::isfinite(gamma), "gamma must be positive");
  require(sigma2 > 0.0 && std::isfinite(sigma2), "sigma2 must be positive");
  law.validate();
}

}  // namespace

ScalarSystemSolution solve_convex_system(double lambda, double gamma, const SignalLaw& law, double sigma2,
                                         const PenaltyLaw& penalty) {
  check_inputs(lambda, gamma, law, sigma2);
  if (penalty.kind == PenaltyKind::Generic) penalty.validate();
  require(lambda > 0.0 || gamma > 1.0, "the lambda = 0 system needs gamma > 1");
  return ScalarSystem(gamma, law, sigma2, penalty).solve(lambda);
}

ScalarSystemSolution solve_lasso_system(double lambda, double gamma, const SignalLaw& law, double sigma2) {
  require(lambda > 0.0, "lasso system needs lambda > 0");
  return solve_convex_system(lambda, gamma, law, sigma2, PenaltyLaw::soft_threshold());
}

ScalarSystemSolution solve_lassoless_system(double gamma, const SignalLaw& law, double sigma2) {
  require(gamma > 1.0, "lassoless system needs gamma > 1");
  return solve_convex_system(0.0, gamma, law, sigma2, PenaltyLaw::soft_threshold());
}

ScalarSystemSolution lassoless_intrinsic_closed_form(double gamma, double sigma2) {
  require(gamma > 1.0, "lassoless system needs gamma > 1");
  require(sigma2 > 0.0, "sigma2 must be positive");
  ScalarSystemSolution s;
  s.a = normal_quantile((2.0 * gamma - 1.0) / (2.0 * gamma));
  s.m2 = soft_threshold_second_moment(s.a);
  s.tau = std::sqrt(sigma2 / (1.0 - gamma * s.m2));
  s.mu = s.a * s.tau;
  s.m1 = 2.0 * normal_sf(s.a);
  s.m2 *= s.tau * s.tau;
  s.residual_tau = std::abs(1.0 - (sigma2 + gamma * s.m2) / (s.tau * s.tau));
  s.residual_mu = std::abs(1.0 - gamma * s.m1);
  s.converged = true;
  return s;
}

DofEquivalents convex_equivalents(double lambda, double gamma, const SignalLaw& law, double sigma2,
                                  const PenaltyLaw& penalty) {
  DofEquivalents out;
  const SignalLaw null_law = SignalLaw::zero();
  out.emergent = solve_convex_system(lambda, gamma, law, sigma2, penalty);
  out.intrinsic = solve_convex_system(lambda, gamma, null_law, sigma2, penalty);
  const ScalarSystemSolution& e = out.emergent;
  const ScalarSystemSolution& i = out.intrinsic;
  if (!e.converged || !i.converged) {
    out.divergent = true;
    out.df_fixed_norm = 1.0 - lambda / e.mu;
    out.df_intrinsic_norm = 1.0;
    out.df_emergent_norm = 1.0;
    return out;
  }
  out.df_fixed_norm = 1.0 - lambda / e.mu;
  const double re = 1.0 - (lambda / e.mu) * (lambda / e.mu);
  const double ri = 1.0 - (lambda / i.mu) * (lambda / i.mu);
  out.df_intrinsic_norm = omega(std::max(ri * i.tau * i.tau / sigma2, 0.0));
  out.df_emergent_norm = omega(std::max(re * e.tau * e.tau / sigma2, 0.0));
  return out;
}

DofEquivalents lasso_equivalents(double lambda, double gamma, const SignalLaw& law, double sigma2) {
  require(lambda > 0.0, "lasso needs lambda > 0");
  return convex_equivalents(lambda, gamma, law, sigma2, PenaltyLaw::soft_threshold());
}

DofEquivalents lassoless_equivalents(double gamma, const SignalLaw& law, double sigma2) {
  check_inputs(0.0, gamma, law, sigma2);
  DofEquivalents out;
  if (gamma < 1.0) {
    out.df_fixed_norm = gamma;
    out.df_intrinsic_norm = omega(gamma + gamma / (1.0 - gamma));
    out.df_emergent_norm = out.df_intrinsic_norm;
    return out;
  }
  if (gamma == 1.0) {
    out.divergent = true;
    out.df_fixed_norm = out.df_intrinsic_norm = out.df_emergent_norm = 1.0;
    return out;
  }
  return convex_equivalents(0.0, gamma, law, sigma2, PenaltyLaw::soft_threshold());
}

double gcv_consistency_check(double lambda, double gamma, const SignalLaw& law, double sigma2,
                             const PenaltyLaw& penalty) {
  const ScalarSystemSolution s = solve_convex_system(lambda, gamma, law, sigma2, penalty);
  const double shrink = 1.0 - gamma * s.m1;
  const double lhs = (sigma2 + gamma * s.m2) * (1.0 - shrink * shrink);
  const double ratio = lambda / s.mu;
  const double rhs = (1.0 - ratio * ratio) * s.tau * s.tau;
  return std::abs(lhs - rhs) / (s.tau * s.tau);
}

}  // namespace doflab
