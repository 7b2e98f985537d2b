#pragma once
// Generated by tests/oracles/oracles.py; do not edit by hand.
namespace oracle {
inline constexpr double soft_b0 = 0;
inline constexpr double soft_tau0 = 1;
inline constexpr double soft_kappa0 = 0.67448975019608171;
inline constexpr double soft_m2_0 = 0.29879412930404581;
inline constexpr double soft_m1_0 = 0.50000000000000022;
inline constexpr double soft_b1 = 1.3;
inline constexpr double soft_tau1 = 0.69999999999999996;
inline constexpr double soft_kappa1 = 0.40000000000000002;
inline constexpr double soft_m2_1 = 0.55079796478667753;
inline constexpr double soft_m1_1 = 0.90830782259538867;
inline constexpr double soft_b2 = -2;
inline constexpr double soft_tau2 = 1.5;
inline constexpr double soft_kappa2 = 1.1000000000000001;
inline constexpr double soft_m2_2 = 2.1117834401766364;
inline constexpr double soft_m1_2 = 0.74512966933874514;
inline constexpr double soft_b3 = 0.5;
inline constexpr double soft_tau3 = 2;
inline constexpr double soft_kappa3 = 3;
inline constexpr double soft_m2_3 = 0.3978586724103616;
inline constexpr double soft_m1_3 = 0.14570893053067238;
inline constexpr double huber_b0 = 0;
inline constexpr double huber_tau0 = 1;
inline constexpr double huber_kappa0 = 0.5;
inline constexpr double huber_m2_0 = 0.57341876917809431;
inline constexpr double huber_m1_0 = 0.75578825618329493;
inline constexpr double huber_b1 = 1;
inline constexpr double huber_tau1 = 0.80000000000000004;
inline constexpr double huber_kappa1 = 2;
inline constexpr double huber_m2_1 = 0.49805277655697544;
inline constexpr double huber_m1_1 = 0.40084944535781397;
inline constexpr double lassoless_a0 = 0.67448975019608171;
inline constexpr double lassoless_m2 = 0.29879412930404575;
inline constexpr double lassoless_tau0_sq = 2.4850169543788256;
inline constexpr double lassoless_omega = 0.64757044833451283;
inline constexpr double mc_m2 = 0.29879428338048386;
inline constexpr double mc_m2_plain = 0.29903057962098073;
inline constexpr double mc_m2_plain_se = 0.00023274635062608216;
inline constexpr double lasso_lambda0 = 0.5;
inline constexpr double lasso_gamma0 = 0.375;
inline constexpr double lasso_tau0 = 1.1143439043712149;
inline constexpr double lasso_mu0 = 0.65480524987323929;
inline constexpr double lasso_fixed0 = 0.236414185596721;
inline constexpr double lasso_intrinsic0 = 0.19250539422859264;
inline constexpr double lasso_emergent0 = 0.22590507122169198;
inline constexpr double lasso_lambda1 = 1.5;
inline constexpr double lasso_gamma1 = 0.375;
inline constexpr double lasso_tau1 = 1.1264523287732158;
inline constexpr double lasso_mu1 = 1.6743823696598312;
inline constexpr double lasso_fixed1 = 0.10414728010738605;
inline constexpr double lasso_intrinsic1 = 0.043339274582827859;
inline constexpr double lasso_emergent1 = 0.11745453173366908;
inline constexpr double lasso_lambda2 = 0.5;
inline constexpr double lasso_gamma2 = 1.5;
inline constexpr double lasso_tau2 = 1.4055193995038178;
inline constexpr double lasso_mu2 = 1.3041549532479322;
inline constexpr double lasso_fixed2 = 0.61660997509937365;
inline constexpr double lasso_intrinsic2 = 0.40156074157164251;
inline constexpr double lasso_emergent2 = 0.53492439025090299;
inline constexpr double lasso_lambda3 = 1.2;
inline constexpr double lasso_gamma3 = 1.5;
inline constexpr double lasso_tau3 = 1.3393577279316127;
inline constexpr double lasso_mu3 = 1.8420320462912521;
inline constexpr double lasso_fixed3 = 0.34854553566748181;
inline constexpr double lasso_intrinsic3 = 0.18493649735121967;
inline constexpr double lasso_emergent3 = 0.39087374621851989;
inline constexpr double ridge_mu = 1.230677725529578;
inline constexpr double ridge_V = 0.36607050123032342;
inline constexpr double ridge_B = 0.35546398700121606;
inline constexpr double ridge_fixed = 0.75623187632578159;
inline constexpr double ridge_intrinsic = 0.49672799955615116;
inline constexpr double ridge_emergent = 0.61295078652986368;
}  // namespace oracle
