"""Independent reference values for the unit tests (scipy quadrature and root finding).

Run: python3 tests/oracles/oracles.py > tests/unit/oracle_values.hpp
"""
import numpy as np
from scipy import integrate, optimize, stats


def soft(u, t):
    return np.sign(u) * max(abs(u) - t, 0.0)


def moments(b, tau, kappa, prox=None, dprox=None):
    prox = prox or soft
    dprox = dprox or (lambda u, t: 1.0 if abs(u) > t else 0.0)
    pts = None
    f2 = lambda h: (prox(b + tau * h, kappa) - b) ** 2 * stats.norm.pdf(h)
    f1 = lambda h: dprox(b + tau * h, kappa) * stats.norm.pdf(h)
    if prox is soft:
        pts = sorted({(kappa - b) / tau, (-kappa - b) / tau})
    opts = dict(points=pts, limit=400, epsabs=1e-14, epsrel=1e-13)
    m2 = integrate.quad(f2, -14, 14, **opts)[0]
    m1 = integrate.quad(f1, -14, 14, **opts)[0]
    return m2, m1


def law_moments(law, tau, kappa, **kw):
    m2 = m1 = 0.0
    for loc, prob in law:
        a, c = moments(loc, tau, kappa, **kw)
        m2 += prob * a
        m1 += prob * c
    return m2, m1


def omega(x):
    return x / (1 + x / 2 + np.sqrt(1 + x * x / 4))


def lasso_system(lam, gamma, law, sigma2, **kw):
    # unknowns: log tau, log mu
    def eqs(z):
        tau, mu = np.exp(z)
        m2, m1 = law_moments(law, tau, mu, **kw)
        return [tau**2 - sigma2 - gamma * m2, lam - mu * (1 - gamma * m1)]

    best = None
    for t0 in (1.0, 2.0, 4.0):
        for mu0 in (lam + 0.5, 2 * lam + 1, 4 * lam + 2):
            sol = optimize.root(eqs, np.log([np.sqrt(sigma2) * t0, mu0]), method="hybr", tol=1e-14)
            if sol.success and max(abs(np.array(eqs(sol.x)))) < 1e-11:
                best = np.exp(sol.x)
                break
        if best is not None:
            break
    return best


def lasso_dfs(lam, gamma, law, sigma2):
    tau, mu = lasso_system(lam, gamma, law, sigma2)
    tau0, mu0 = lasso_system(lam, gamma, [(0.0, 1.0)], sigma2)
    return (tau, mu, 1 - lam / mu, omega((1 - lam**2 / mu0**2) * tau0**2 / sigma2),
            omega((1 - lam**2 / mu**2) * tau**2 / sigma2))


def pseudo_huber_prox(u, t):
    if u == 0:
        return 0.0
    g = lambda z: z + t * z / np.sqrt(1 + z * z) - u
    return optimize.brentq(g, min(0, u), max(0, u), xtol=1e-15, rtol=1e-15)


def pseudo_huber_dprox(u, t):
    z = pseudo_huber_prox(u, t)
    return 1.0 / (1.0 + t / (1 + z * z) ** 1.5)


def emit(name, value):
    print(f"inline constexpr double {name} = {value:.17g};")


def main():
    print("#pragma once")
    print("// Generated by tests/oracles/oracles.py; do not edit by hand.")
    print("namespace oracle {")
    # Soft-threshold moments.
    for i, (b, tau, kappa) in enumerate([(0.0, 1.0, 0.6744897501960817), (1.3, 0.7, 0.4), (-2.0, 1.5, 1.1),
                                         (0.5, 2.0, 3.0)]):
        m2, m1 = moments(b, tau, kappa)
        emit(f"soft_b{i}", b)
        emit(f"soft_tau{i}", tau)
        emit(f"soft_kappa{i}", kappa)
        emit(f"soft_m2_{i}", m2)
        emit(f"soft_m1_{i}", m1)
    # Pseudo-Huber moments (smooth generic penalty).
    for i, (b, tau, kappa) in enumerate([(0.0, 1.0, 0.5), (1.0, 0.8, 2.0)]):
        m2, m1 = moments(b, tau, kappa, prox=pseudo_huber_prox, dprox=pseudo_huber_dprox)
        emit(f"huber_b{i}", b)
        emit(f"huber_tau{i}", tau)
        emit(f"huber_kappa{i}", kappa)
        emit(f"huber_m2_{i}", m2)
        emit(f"huber_m1_{i}", m1)
    # Lassoless intrinsic closed form at gamma = 2.
    a0 = stats.norm.ppf(0.75)
    m2 = 2 * ((1 + a0 * a0) * stats.norm.sf(a0) - a0 * stats.norm.pdf(a0))
    emit("lassoless_a0", a0)
    emit("lassoless_m2", m2)
    emit("lassoless_tau0_sq", 1 / (1 - 2 * m2))
    emit("lassoless_omega", omega(1 / (1 - 2 * m2)))
    # Monte Carlo moment oracle, 10^7 draws stratified on normal quantiles
    # (one uniform draw per stratum), plus the plain-sampling se for scale.
    rng = np.random.default_rng(20240611)
    n = 10_000_000
    h = stats.norm.ppf((np.arange(n) + rng.random(n)) / n)
    s = np.maximum(np.abs(h) - a0, 0.0) ** 2
    emit("mc_m2", s.mean())
    plain = np.maximum(np.abs(rng.standard_normal(n)) - a0, 0.0) ** 2
    emit("mc_m2_plain", plain.mean())
    emit("mc_m2_plain_se", plain.std(ddof=1) / np.sqrt(n))
    # Lasso systems, bernoulli law with delta = 1/6, amplitude 1/sqrt(delta*gamma), sigma2 = 1.
    delta = 1 / 6
    for i, (lam, gamma) in enumerate([(0.5, 0.375), (1.5, 0.375), (0.5, 1.5), (1.2, 1.5)]):
        amp = 1 / np.sqrt(delta * gamma)
        law = [(0.0, 1 - delta), (amp, delta)]
        tau, mu, f, di, de = lasso_dfs(lam, gamma, law, 1.0)
        emit(f"lasso_lambda{i}", lam)
        emit(f"lasso_gamma{i}", gamma)
        emit(f"lasso_tau{i}", tau)
        emit(f"lasso_mu{i}", mu)
        emit(f"lasso_fixed{i}", f)
        emit(f"lasso_intrinsic{i}", di)
        emit(f"lasso_emergent{i}", de)
    # Ridge on a three-atom spectrum (root of mu = lam + gamma mu sum m s/(s+mu)).
    atoms = [(0.5, 0.3, 0.2), (1.0, 0.5, 0.5), (2.5, 0.2, 0.3)]
    lam, gamma, sigma2, sigma2_nl = 0.3, 1.7, 0.8, 0.1
    g = lambda mu: lam / mu + gamma * sum(m * s / (s + mu) for s, m, _ in atoms) - 1
    mu = optimize.brentq(g, lam, lam + 10 * gamma, xtol=1e-15, rtol=1e-15)
    V = gamma * sum(m * s * s / (s + mu) ** 2 for s, m, _ in atoms)
    B = mu * mu * sum(e * s / (s + mu) ** 2 for s, _, e in atoms) / sigma2
    D = 1 - V
    emit("ridge_mu", mu)
    emit("ridge_V", V)
    emit("ridge_B", B)
    emit("ridge_fixed", 1 - lam / mu)
    emit("ridge_intrinsic", omega((1 - lam**2 / mu**2) * (V / D + 1)))
    emit("ridge_emergent", omega((1 - lam**2 / mu**2) * (B / D + (V / D + 1) * (1 + sigma2_nl / sigma2))))
    print("}  // namespace oracle")


if __name__ == "__main__":
    main()
