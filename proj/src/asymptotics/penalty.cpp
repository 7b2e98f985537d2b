#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "doflab/asymptotics.hpp"
#include "doflab/error.hpp"
#include "numeric.hpp"

namespace doflab {

double soft_threshold(double u, double t) {
  require(t >= 0.0, "soft_threshold needs t >= 0");
  if (u > t) return u - t;
  if (u < -t) return u + t;
  return 0.0;
}

double soft_threshold_derivative(double u, double t) {
  require(t >= 0.0, "soft_threshold needs t >= 0");
  return std::abs(u) > t ? 1.0 : 0.0;
}

void PenaltyLaw::validate() const {
  require(static_cast<bool>(prox), "penalty needs a prox");
  require(static_cast<bool>(prox_derivative), "penalty needs a prox derivative");
}

PenaltyLaw PenaltyLaw::soft_threshold() {
  PenaltyLaw p;
  p.name = "soft-threshold";
  p.kind = PenaltyKind::SoftThreshold;
  p.prox = [](double x, double t) { return doflab::soft_threshold(x, t); };
  p.prox_derivative = [](double x, double t) { return soft_threshold_derivative(x, t); };
  p.kinks = [](double t) { return std::vector<double>{-t, t}; };
  return p;
}

PenaltyLaw PenaltyLaw::ridge() {
  PenaltyLaw p;
  p.name = "ridge";
  p.kind = PenaltyKind::Ridge;
  p.prox = [](double x, double t) { return x / (1.0 + t); };
  p.prox_derivative = [](double, double t) { return 1.0 / (1.0 + t); };
  return p;
}

PenaltyLaw PenaltyLaw::elastic_net(double alpha) {
  require(alpha >= 0.0, "elastic net needs alpha >= 0");
  PenaltyLaw p;
  p.name = "elastic-net";
  p.prox = [alpha](double x, double t) { return doflab::soft_threshold(x, t) / (1.0 + alpha * t); };
  p.prox_derivative = [alpha](double x, double t) { return std::abs(x) > t ? 1.0 / (1.0 + alpha * t) : 0.0; };
  p.kinks = [](double t) { return std::vector<double>{-t, t}; };
  return p;
}

namespace {

// Solves z + t·z/√(1 + z²) = x by safeguarded Newton.
double pseudo_huber_prox(double x, double t) {
  if (x == 0.0 || t == 0.0) return x;
  const double ax = std::abs(x);
  double lo = ax / (1.0 + t), hi = ax;
  double z = lo;
  for (int it = 0; it < 100; ++it) {
    const double r = std::sqrt(1.0 + z * z);
    const double g = z + t * z / r - ax;
    if (g > 0.0) hi = z; else lo = z;
    const double dg = 1.0 + t / (r * r * r);
    double next = z - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 1e-16 * std::max(1.0, ax)) {
      z = next;
      break;
    }
    z = next;
  }
  return std::copysign(z, x);
}

}  // namespace

PenaltyLaw PenaltyLaw::pseudo_huber() {
  PenaltyLaw p;
  p.name = "pseudo-huber";
  p.prox = pseudo_huber_prox;
  p.prox_derivative = [](double x, double t) {
    const double z = pseudo_huber_prox(x, t);
    const double r = std::sqrt(1.0 + z * z);
    return 1.0 / (1.0 + t / (r * r * r));
  };
  return p;
}

PenaltyLaw PenaltyLaw::as_generic(const PenaltyLaw& base) {
  PenaltyLaw p = base;
  p.kind = PenaltyKind::Generic;
  p.name = base.name + "-quadrature";
  return p;
}

void SignalLaw::validate() const {
  require(!atoms.empty(), "signal law needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms) {
    require(std::isfinite(a.location), "signal atom location must be finite");
    require(a.probability >= 0.0, "signal atom probability must be >= 0");
    total += a.probability;
  }
  require(std::abs(total - 1.0) <= 1e-9, "signal law probabilities must sum to 1");
}

double SignalLaw::second_moment() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.probability * a.location * a.location;
  return s;
}

SignalLaw SignalLaw::zero() { return SignalLaw{{PointMass{0.0, 1.0}}}; }

SignalLaw SignalLaw::bernoulli(double delta, double amplitude) {
  require(delta > 0.0 && delta <= 1.0, "bernoulli signal needs delta in (0, 1]");
  SignalLaw law;
  if (delta < 1.0) law.atoms.push_back(PointMass{0.0, 1.0 - delta});
  law.atoms.push_back(PointMass{amplitude, delta});
  return law;
}

SignalLaw SignalLaw::empirical(const Vector& beta) {
  require(beta.size() > 0, "empirical signal law needs entries");
  std::vector<double> v(beta.data(), beta.data() + beta.size());
  std::sort(v.begin(), v.end());
  SignalLaw law;
  const double w = 1.0 / static_cast<double>(v.size());
  for (double x : v) {
    if (!law.atoms.empty() && law.atoms.back().location == x)
      law.atoms.back().probability += w;
    else
      law.atoms.push_back(PointMass{x, w});
  }
  return law;
}

namespace {

ProxMoments soft_moments(double b, double tau, double kappa) {
  const double c1 = (kappa - b) / tau;
  const double c2 = (kappa + b) / tau;
  const double q1 = normal_sf(c1), q2 = normal_sf(c2);
  const double p1 = normal_pdf(c1), p2 = normal_pdf(c2);
  auto tail = [&](double c, double q, double ph) {
    return tau * tau * (c * ph + q) - 2.0 * tau * kappa * ph + kappa * kappa * q;
  };
  // P(−c2 < H < c1) without cancellation.
  const double middle = 0.5 * (std::erf(c1 / std::sqrt(2.0)) + std::erf(c2 / std::sqrt(2.0)));
  ProxMoments m;
  m.m1 = q1 + q2;
  m.m2 = tail(c1, q1, p1) + tail(c2, q2, p2) + b * b * middle;
  return m;
}

ProxMoments ridge_moments(double b, double tau, double kappa) {
  const double d = 1.0 + kappa;
  return ProxMoments{(tau * tau + kappa * kappa * b * b) / (d * d), 1.0 / d};
}

ProxMoments hermite_moments(double b, double tau, double kappa, const PenaltyLaw& pen) {
  ProxMoments prev{NAN, NAN};
  for (std::size_t nodes = 64; nodes <= 1024; nodes *= 2) {
    const auto& rule = detail::gauss_hermite(nodes);
    ProxMoments cur{0.0, 0.0};
    for (std::size_t i = 0; i < nodes; ++i) {
      const double u = b + tau * rule.nodes[i];
      const double d = pen.prox(u, kappa) - b;
      cur.m2 += rule.weights[i] * d * d;
      cur.m1 += rule.weights[i] * pen.prox_derivative(u, kappa);
    }
    auto close = [](double a, double c) { return std::abs(a - c) <= 1e-10 * std::max(std::abs(c), 1e-4); };
    if (close(cur.m2, prev.m2) && close(cur.m1, prev.m1)) return cur;
    prev = cur;
  }
  throw ConvergenceError("Gauss-Hermite moments did not settle", std::abs(prev.m2));
}

ProxMoments kronrod_moments(double b, double tau, double kappa, const PenaltyLaw& pen) {
  constexpr double kReach = 12.0;
  std::vector<double> cuts{-kReach, kReach};
  for (double k : pen.kinks(kappa)) {
    const double h = (k - b) / tau;
    if (h > -kReach && h < kReach) cuts.push_back(h);
  }
  std::sort(cuts.begin(), cuts.end());
  ProxMoments m{0.0, 0.0};
  double worst = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    if (!(hi > lo)) continue;
    // Midpoint derivative avoids evaluating exactly at a kink.
    auto f2 = [&](double h) {
      const double d = pen.prox(b + tau * h, kappa) - b;
      return normal_pdf(h) * d * d;
    };
    auto f1 = [&](double h) { return normal_pdf(h) * pen.prox_derivative(b + tau * h, kappa); };
    double e2 = 0.0, e1 = 0.0;
    m.m2 += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f2, lo, hi, 20, 1e-13, &e2);
    m.m1 += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f1, lo, hi, 20, 1e-13, &e1);
    worst = std::max({worst, e2, e1});
  }
  if (!(worst <= 1e-10 * std::max({m.m2, m.m1, 1e-4})))
    throw ConvergenceError("Gauss-Kronrod moments did not settle", worst);
  return m;
}

}  // namespace

ProxMoments gaussian_prox_moments(double b, double tau, double kappa, const PenaltyLaw& penalty) {
  require(tau > 0.0, "gaussian_prox_moments needs tau > 0");
  require(kappa >= 0.0, "gaussian_prox_moments needs kappa >= 0");
  switch (penalty.kind) {
    case PenaltyKind::SoftThreshold:
      return soft_moments(b, tau, kappa);
    case PenaltyKind::Ridge:
      return ridge_moments(b, tau, kappa);
    case PenaltyKind::Generic:
      break;
  }
  penalty.validate();
  if (penalty.kinks && !penalty.kinks(kappa).empty()) return kronrod_moments(b, tau, kappa, penalty);
  return hermite_moments(b, tau, kappa, penalty);
}

ProxMoments signal_prox_moments(const SignalLaw& law, double tau, double kappa, const PenaltyLaw& penalty) {
  ProxMoments total{0.0, 0.0};
  for (const auto& a : law.atoms) {
    if (a.probability == 0.0) continue;
    const ProxMoments m = gaussian_prox_moments(a.location, tau, kappa, penalty);
    total.m2 += a.probability * m.m2;
    total.m1 += a.probability * m.m1;
  }
  return total;
}

}  // namespace doflab
