#include "doflab/core.hpp"
#include "doflab/error.hpp"

namespace doflab {

double mean_squared_error(const Vector& pred, const Vector& truth) {
  require(pred.size() == truth.size(), "mean_squared_error: length mismatch");
  require(pred.size() > 0, "mean_squared_error: empty input");
  return (pred - truth).squaredNorm() / static_cast<double>(pred.size());
}

}  // namespace doflab
