#include "doflab/omega.hpp"

#include <cmath>
#include <limits>

#include "doflab/error.hpp"

namespace doflab {

double reference_optimism(double d, std::size_t n, double sigma2) {
  require(n >= 2, "reference_optimism needs n >= 2");
  const double nn = static_cast<double>(n);
  require(d >= 0.0 && d < nn - 1.0, "reference_optimism needs 0 <= d < n-1");
  require(sigma2 > 0.0, "sigma2 must be positive");
  return sigma2 * (d / nn + d / (nn - d - 1.0));
}

double omega_n(double x, std::size_t n) {
  require(n >= 2, "omega_n needs n >= 2");
  require(x >= 0.0, "omega_n needs x >= 0");
  const double nn = static_cast<double>(n);
  if (std::isinf(x)) return nn - 1.0;
  // Smaller root of d² − b·d + c = 0 written as 2c / (b + √(b² − 4c)).
  const double b = 2.0 * nn - 1.0 + nn * x;
  const double c = (nn - 1.0) * nn * x;
  if (c == 0.0) return 0.0;
  const double disc = (b - 2.0 * std::sqrt(c)) * (b + 2.0 * std::sqrt(c));
  const double d = 2.0 * c / (b + std::sqrt(std::max(disc, 0.0)));
  return std::min(d, std::nextafter(nn - 1.0, 0.0));
}

double omega_n_derivative(double x, std::size_t n) {
  const double d = omega_n(x, n);
  const double nn = static_cast<double>(n);
  const double gap = nn - d - 1.0;
  return 1.0 / (1.0 / nn + (nn - 1.0) / (gap * gap));
}

double omega(double x) {
  require(x >= 0.0, "omega needs x >= 0");
  if (std::isinf(x)) return 1.0;
  // 1 + x/2 − √(1 + x²/4) = x / (1 + x/2 + √(1 + x²/4))
  return x / (1.0 + 0.5 * x + std::hypot(1.0, 0.5 * x));
}

double omega_derivative(double x) {
  require(x >= 0.0, "omega needs x >= 0");
  const double r = std::hypot(1.0, 0.5 * x);
  return 0.5 - 0.25 * x / r;
}

double df_from_optimism(double opt, double sigma2, std::size_t n) {
  require(sigma2 > 0.0, "sigma2 must be positive");
  if (std::isnan(opt)) return std::numeric_limits<double>::quiet_NaN();
  return omega_n(std::max(opt, 0.0) / sigma2, n);
}

}  // namespace doflab
