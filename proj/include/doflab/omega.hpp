#pragma once

#include <cstddef>

namespace doflab {

// σ²(d/n + d/(n−d−1)), the random-X optimism of least squares with d features.
double reference_optimism(double d, std::size_t n, double sigma2);
// Unique d in [0, n−1) with reference_optimism(d, n, 1) = x.
double omega_n(double x, std::size_t n);
// d/dx of omega_n.
double omega_n_derivative(double x, std::size_t n);
// Large-n limit of omega_n(x)/n.
double omega(double x);
double omega_derivative(double x);
// omega_n(max(opt, 0)/σ², n).
double df_from_optimism(double opt, double sigma2, std::size_t n);

}  // namespace doflab
