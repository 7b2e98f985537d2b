#include <algorithm>
#include <cmath>
#include <numeric>

#include "doflab/core.hpp"
#include "doflab/error.hpp"

namespace doflab {

namespace {

struct VariantName {
  GeneratorVariant v;
  const char* name;
};
constexpr VariantName kVariants[] = {
    {GeneratorVariant::NonlinearAr1, "nonlinear-ar1"},
    {GeneratorVariant::SparseLinear, "sparse-linear"},
    {GeneratorVariant::LinearAr1, "linear-ar1"},
    {GeneratorVariant::BernoulliSignal, "bernoulli-signal"},
    {GeneratorVariant::RandomFeatures, "random-features"},
};

}  // namespace

std::string to_string(GeneratorVariant v) {
  for (const auto& e : kVariants)
    if (e.v == v) return e.name;
  return "unknown";
}

GeneratorVariant parse_generator_variant(std::string_view s) {
  for (const auto& e : kVariants)
    if (s == e.name) return e.v;
  throw InvalidArgument("unknown generator variant '" + std::string(s) + "'");
}

std::string to_string(NoiseDistribution d) {
  return d == NoiseDistribution::Gaussian ? "gaussian" : "rademacher-scaled";
}

NoiseDistribution parse_noise_distribution(std::string_view s) {
  if (s == "gaussian") return NoiseDistribution::Gaussian;
  if (s == "rademacher-scaled") return NoiseDistribution::RademacherScaled;
  throw InvalidArgument("unknown noise distribution '" + std::string(s) + "'");
}

std::string to_string(FeatureDistribution d) {
  return d == FeatureDistribution::Gaussian ? "gaussian" : "rademacher";
}

FeatureDistribution parse_feature_distribution(std::string_view s) {
  if (s == "gaussian") return FeatureDistribution::Gaussian;
  if (s == "rademacher") return FeatureDistribution::Rademacher;
  throw InvalidArgument("unknown feature distribution '" + std::string(s) + "'");
}

void NoiseSpec::validate() const {
  require(sigma2 > 0.0 && std::isfinite(sigma2), "noise variance must be positive");
}

void GeneratorSpec::validate() const {
  require(n >= 2, "generator needs n >= 2");
  require(p >= 1, "generator needs p >= 1");
  require(rho >= 0.0 && rho < 1.0, "rho must lie in [0, 1)");
  require(sigma > 0.0 && std::isfinite(sigma), "sigma must be positive");
  require(std::isfinite(signal_scale), "signal_scale must be finite");
  switch (variant) {
    case GeneratorVariant::SparseLinear:
      require(sparsity >= 1, "sparse-linear needs sparsity s >= 1");
      require(sparsity <= p, "sparsity s must not exceed p");
      if (amplitude) require(std::isfinite(*amplitude), "amplitude must be finite");
      break;
    case GeneratorVariant::BernoulliSignal:
      require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
      break;
    case GeneratorVariant::RandomFeatures:
      require(latent_p >= 1, "random-features needs latent_p >= 1");
      break;
    default:
      break;
  }
  require(!(sort_by_signal && variant == GeneratorVariant::RandomFeatures),
          "sort_by_signal does not apply to random-features");
}

GeneratorSpec GeneratorSpec::nonlinear_ar1(std::size_t n, std::size_t p, double rho, double sigma) {
  GeneratorSpec s;
  s.variant = GeneratorVariant::NonlinearAr1;
  s.n = n;
  s.p = p;
  s.rho = rho;
  s.sigma = sigma;
  return s;
}

GeneratorSpec GeneratorSpec::linear_ar1(std::size_t n, std::size_t p, double rho, double sigma) {
  GeneratorSpec s = nonlinear_ar1(n, p, rho, sigma);
  s.variant = GeneratorVariant::LinearAr1;
  return s;
}

GeneratorSpec GeneratorSpec::sparse_linear(std::size_t n, std::size_t p, std::size_t sp, double sigma) {
  GeneratorSpec s;
  s.variant = GeneratorVariant::SparseLinear;
  s.n = n;
  s.p = p;
  s.rho = 0.0;
  s.sigma = sigma;
  s.sparsity = sp;
  return s;
}

GeneratorSpec GeneratorSpec::bernoulli_signal(std::size_t n, std::size_t p, double delta, double sigma) {
  GeneratorSpec s;
  s.variant = GeneratorVariant::BernoulliSignal;
  s.n = n;
  s.p = p;
  s.rho = 0.0;
  s.sigma = sigma;
  s.delta = delta;
  return s;
}

GeneratorSpec GeneratorSpec::random_features(std::size_t n, std::size_t p, std::size_t latent, double rho,
                                             double sigma) {
  GeneratorSpec s = nonlinear_ar1(n, p, rho, sigma);
  s.variant = GeneratorVariant::RandomFeatures;
  s.latent_p = latent;
  return s;
}

Dataset::Dataset(Matrix x, Vector y, std::string id, std::uint64_t s)
    : features(std::move(x)), response(std::move(y)), generator_id(std::move(id)), seed(s) {
  require(features.rows() == response.size(), "response length must equal feature row count");
  require(features.rows() >= 2, "dataset needs n >= 2");
}

Matrix ar1_covariance(std::size_t p, double rho) {
  require(rho >= 0.0 && rho < 1.0, "rho must lie in [0, 1)");
  Matrix s(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      s(i, j) = std::pow(rho, std::abs(static_cast<double>(i) - static_cast<double>(j)));
  return s;
}

double ar1_trace_square(std::size_t p, double rho) {
  const double r2 = rho * rho;
  double total = static_cast<double>(p);
  double pw = 1.0;
  for (std::size_t k = 1; k < p; ++k) {
    pw *= r2;
    if (pw == 0.0) break;
    total += 2.0 * static_cast<double>(p - k) * pw;
  }
  return total;
}

Vector sample_unit_sphere(std::size_t p, std::uint64_t seed) {
  require(p >= 1, "sphere dimension must be >= 1");
  RandomStream rng(seed, 0, StreamRole::Signal, 0);
  Vector v(p);
  double nrm = 0.0;
  do {
    for (std::size_t j = 0; j < p; ++j) v(j) = rng.normal();
    nrm = v.norm();
  } while (nrm == 0.0);
  return v / nrm;
}

DataModel::DataModel(GeneratorSpec spec, std::uint64_t seed) : spec_(std::move(spec)), seed_(seed) {
  spec_.validate();
  const std::size_t d = latent_dim();
  beta_ = Vector::Zero(d);
  switch (spec_.variant) {
    case GeneratorVariant::NonlinearAr1:
    case GeneratorVariant::LinearAr1:
    case GeneratorVariant::RandomFeatures:
      beta_ = sample_unit_sphere(d, seed_);
      break;
    case GeneratorVariant::SparseLinear: {
      const double alpha = spec_.amplitude ? *spec_.amplitude
                                           : spec_.sigma / std::sqrt(static_cast<double>(spec_.sparsity));
      beta_.head(spec_.sparsity).setConstant(alpha);
      break;
    }
    case GeneratorVariant::BernoulliSignal: {
      const double amp = spec_.amplitude
                             ? *spec_.amplitude
                             : std::sqrt(static_cast<double>(spec_.n) / (spec_.delta * static_cast<double>(spec_.p)));
      RandomStream rng(seed_, 0, StreamRole::Signal, 0);
      for (std::size_t j = 0; j < d; ++j) beta_(j) = rng.uniform() < spec_.delta ? amp : 0.0;
      break;
    }
  }
  order_.resize(spec_.variant == GeneratorVariant::RandomFeatures ? 0 : spec_.p);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (spec_.sort_by_signal)
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(beta_(a)) > std::abs(beta_(b)); });
  beta_ *= spec_.signal_scale;

  if (spec_.variant == GeneratorVariant::RandomFeatures) {
    const std::size_t big_p = spec_.latent_p;
    const double spread = spec_.rf_scale == RandomFeatureScale::Variance
                              ? std::sqrt(1.0 / std::sqrt(static_cast<double>(big_p)))
                              : 1.0 / std::sqrt(static_cast<double>(big_p));
    rf_weights_.resize(spec_.p, big_p);
    RandomStream rng(seed_, 0, StreamRole::Signal, 1);
    for (std::size_t i = 0; i < spec_.p; ++i)
      for (std::size_t j = 0; j < big_p; ++j) rf_weights_(i, j) = spread * rng.normal();
  }
}

std::size_t DataModel::latent_dim() const {
  return spec_.variant == GeneratorVariant::RandomFeatures ? spec_.latent_p : spec_.p;
}

std::string DataModel::id() const { return to_string(spec_.variant); }

bool DataModel::is_nonlinear() const {
  return spec_.variant == GeneratorVariant::NonlinearAr1 || spec_.variant == GeneratorVariant::RandomFeatures;
}

double DataModel::nonlinear_variance() const {
  if (!is_nonlinear() || !has_signal()) return 0.0;
  const double d = static_cast<double>(latent_dim());
  return 2.0 * ar1_trace_square(latent_dim(), spec_.rho) / (d * d);
}

Matrix DataModel::latent_covariance() const {
  if (spec_.variant == GeneratorVariant::BernoulliSignal)
    return Matrix::Identity(latent_dim(), latent_dim()) / static_cast<double>(spec_.n);
  return ar1_covariance(latent_dim(), spec_.rho);
}

Vector DataModel::observed_beta() const {
  if (spec_.variant == GeneratorVariant::RandomFeatures)
    throw Unsupported("random-features model has no linear coefficients in observed coordinates");
  Vector b(spec_.p);
  for (std::size_t j = 0; j < spec_.p; ++j) b(j) = beta_(order_[j]);
  return b;
}

Matrix DataModel::observed_covariance() const {
  if (spec_.variant == GeneratorVariant::RandomFeatures)
    throw Unsupported("random-features model has no closed-form observed covariance");
  const Matrix s = latent_covariance();
  Matrix out(spec_.p, spec_.p);
  for (std::size_t i = 0; i < spec_.p; ++i)
    for (std::size_t j = 0; j < spec_.p; ++j) out(i, j) = s(order_[i], order_[j]);
  return out;
}

Matrix DataModel::sample_latent(std::size_t m, RandomStream& rng) const {
  const std::size_t d = latent_dim();
  Matrix x(m, d);
  const bool rad = spec_.features == FeatureDistribution::Rademacher;
  auto draw = [&]() { return rad ? rng.rademacher() : rng.normal(); };
  if (spec_.variant == GeneratorVariant::BernoulliSignal) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec_.n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < d; ++j) x(i, j) = scale * draw();
    return x;
  }
  const double rho = spec_.rho;
  const double innov = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < m; ++i) {
    double prev = draw();
    x(i, 0) = prev;
    for (std::size_t j = 1; j < d; ++j) {
      prev = rho * prev + innov * draw();
      x(i, j) = prev;
    }
  }
  return x;
}

Matrix DataModel::observe(const Matrix& latent) const {
  if (spec_.variant == GeneratorVariant::RandomFeatures)
    return (latent * rf_weights_.transpose()).array().tanh().matrix();
  if (!spec_.sort_by_signal) return latent;
  Matrix out(latent.rows(), spec_.p);
  for (std::size_t j = 0; j < spec_.p; ++j) out.col(j) = latent.col(order_[j]);
  return out;
}

Vector DataModel::regression_function(const Matrix& latent) const {
  Vector f = latent * beta_;
  if (is_nonlinear() && has_signal()) {
    const double d = static_cast<double>(latent_dim());
    f.array() += latent.rowwise().squaredNorm().array() / d - 1.0;
  }
  return f;
}

Vector DataModel::sample_noise(std::size_t m, RandomStream& rng) const {
  Vector e(m);
  const double s = spec_.sigma;
  if (spec_.noise == NoiseDistribution::Gaussian) {
    for (std::size_t i = 0; i < m; ++i) e(i) = s * rng.normal();
  } else {
    for (std::size_t i = 0; i < m; ++i) e(i) = s * rng.rademacher();
  }
  return e;
}

Dataset generate(const GeneratorSpec& spec, std::uint64_t seed) {
  DataModel model(spec, seed);
  RandomStream xs(seed, 0, StreamRole::TrainX);
  RandomStream es(seed, 0, StreamRole::TrainNoise);
  const Matrix latent = model.sample_latent(spec.n, xs);
  Vector y = model.regression_function(latent) + model.sample_noise(spec.n, es);
  return Dataset(model.observe(latent), std::move(y), model.id(), seed);
}

}  // namespace doflab
