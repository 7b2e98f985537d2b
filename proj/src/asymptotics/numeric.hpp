#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace doflab::detail {

// Root of f on [lo, hi] given values of opposite sign at the ends.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double flo, double fhi);

// Probabilists' Gauss–Hermite rule: E[g(H)] ≈ Σ w_i g(x_i), H ~ N(0, 1).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussHermite& gauss_hermite(std::size_t n);

}  // namespace doflab::detail
