#include <cmath>
#include <cstdio>

#include "doflab/error.hpp"
#include "doflab/predictors.hpp"

namespace doflab {

namespace {

struct FamilyName {
  Family f;
  const char* name;
};
constexpr FamilyName kFamilies[] = {
    {Family::Null, "null"},
    {Family::LeastSquares, "least-squares"},
    {Family::Ridge, "ridge"},
    {Family::Ridgeless, "ridgeless"},
    {Family::Lasso, "lasso"},
    {Family::Lassoless, "lassoless"},
    {Family::Knn, "knn"},
    {Family::Tree, "tree"},
    {Family::Forest, "forest"},
    {Family::RandomFeaturesRidgeless, "random-features-ridgeless"},
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Family f) {
  for (const auto& e : kFamilies)
    if (e.f == f) return e.name;
  return "unknown";
}

Family parse_family(std::string_view s) {
  for (const auto& e : kFamilies)
    if (s == e.name) return e.f;
  throw InvalidArgument("unknown predictor family '" + std::string(s) + "'");
}

void PredictorSpec::validate() const {
  require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be >= 0");
  switch (family) {
    case Family::Ridge:
    case Family::Lasso:
      require(lambda > 0.0, to_string(family) + " needs lambda > 0");
      break;
    case Family::Knn:
      require(k >= 1, "knn needs k >= 1");
      break;
    case Family::Tree:
      require(max_leaves >= 2, "tree needs max_leaves >= 2");
      break;
    case Family::Forest:
      require(max_leaves >= 2, "forest needs max_leaves >= 2");
      require(n_trees >= 1, "forest needs n_trees >= 1");
      break;
    case Family::RandomFeaturesRidgeless:
      require(rf_features >= 1, "random-features-ridgeless needs rf_features >= 1");
      break;
    default:
      break;
  }
}

bool PredictorSpec::is_linear_smoother() const {
  return family == Family::LeastSquares || family == Family::Ridge || family == Family::Ridgeless ||
         family == Family::Knn || family == Family::RandomFeaturesRidgeless;
}

std::string PredictorSpec::label() const {
  std::string s = to_string(family);
  switch (family) {
    case Family::Ridge:
    case Family::Lasso:
      s += "(lambda=" + num(lambda) + ")";
      break;
    case Family::Knn:
      s += "(k=" + std::to_string(k) + ")";
      break;
    case Family::Tree:
      s += "(max_leaves=" + std::to_string(max_leaves) + ")";
      break;
    case Family::Forest:
      s += "(n_trees=" + std::to_string(n_trees) + ",max_leaves=" + std::to_string(max_leaves) + ")";
      break;
    case Family::RandomFeaturesRidgeless:
      s += "(p=" + std::to_string(rf_features) + ")";
      break;
    default:
      break;
  }
  if (max_features) s += "[:" + std::to_string(max_features) + "]";
  return s;
}

PredictorSpec PredictorSpec::null_model() {
  PredictorSpec s;
  s.family = Family::Null;
  return s;
}
PredictorSpec PredictorSpec::least_squares() {
  PredictorSpec s;
  s.family = Family::LeastSquares;
  return s;
}
PredictorSpec PredictorSpec::ridge(double lambda) {
  PredictorSpec s;
  s.family = Family::Ridge;
  s.lambda = lambda;
  return s;
}
PredictorSpec PredictorSpec::ridgeless() {
  PredictorSpec s;
  s.family = Family::Ridgeless;
  return s;
}
PredictorSpec PredictorSpec::lasso(double lambda) {
  PredictorSpec s;
  s.family = Family::Lasso;
  s.lambda = lambda;
  return s;
}
PredictorSpec PredictorSpec::lassoless() {
  PredictorSpec s;
  s.family = Family::Lassoless;
  return s;
}
PredictorSpec PredictorSpec::knn(std::size_t k) {
  PredictorSpec s;
  s.family = Family::Knn;
  s.k = k;
  return s;
}
PredictorSpec PredictorSpec::tree(std::size_t max_leaves) {
  PredictorSpec s;
  s.family = Family::Tree;
  s.max_leaves = max_leaves;
  return s;
}
PredictorSpec PredictorSpec::forest(std::size_t n_trees, std::size_t max_leaves, std::size_t mtry) {
  PredictorSpec s;
  s.family = Family::Forest;
  s.n_trees = n_trees;
  s.max_leaves = max_leaves;
  s.mtry = mtry;
  return s;
}
PredictorSpec PredictorSpec::random_features_ridgeless(std::size_t p, std::size_t latent) {
  PredictorSpec s;
  s.family = Family::RandomFeaturesRidgeless;
  s.rf_features = p;
  s.rf_latent = latent;
  return s;
}

}  // namespace doflab
