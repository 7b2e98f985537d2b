#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "doflab/rng.hpp"

namespace doflab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class GeneratorVariant { NonlinearAr1, SparseLinear, LinearAr1, BernoulliSignal, RandomFeatures };
enum class NoiseDistribution { Gaussian, RademacherScaled };
enum class FeatureDistribution { Gaussian, Rademacher };
// How the random-feature weight spread 1/sqrt(P) is read.
enum class RandomFeatureScale { Variance, StdDev };

std::string to_string(GeneratorVariant v);
GeneratorVariant parse_generator_variant(std::string_view s);
std::string to_string(NoiseDistribution d);
NoiseDistribution parse_noise_distribution(std::string_view s);
std::string to_string(FeatureDistribution d);
FeatureDistribution parse_feature_distribution(std::string_view s);

struct NoiseSpec {
  double sigma2 = 1.0;
  NoiseDistribution distribution = NoiseDistribution::Gaussian;
  void validate() const;
};

struct GeneratorSpec {
  GeneratorVariant variant = GeneratorVariant::NonlinearAr1;
  std::size_t n = 100;
  std::size_t p = 10;
  double rho = 0.25;
  double sigma = 0.4;
  std::size_t sparsity = 0;
  std::optional<double> amplitude;  // sparse-linear α (default σ/√s) or bernoulli mass location
  double delta = 1.0;
  std::size_t latent_p = 0;  // random-features P
  NoiseDistribution noise = NoiseDistribution::Gaussian;
  FeatureDistribution features = FeatureDistribution::Gaussian;
  RandomFeatureScale rf_scale = RandomFeatureScale::Variance;
  double signal_scale = 1.0;  // 0 gives the null-signal model
  bool sort_by_signal = false;

  void validate() const;
  NoiseSpec noise_spec() const { return {sigma * sigma, noise}; }

  static GeneratorSpec nonlinear_ar1(std::size_t n, std::size_t p, double rho = 0.25, double sigma = 0.4);
  static GeneratorSpec linear_ar1(std::size_t n, std::size_t p, double rho = 0.25, double sigma = 0.5);
  static GeneratorSpec sparse_linear(std::size_t n, std::size_t p, std::size_t s, double sigma = 1.0);
  static GeneratorSpec bernoulli_signal(std::size_t n, std::size_t p, double delta, double sigma = 1.0);
  static GeneratorSpec random_features(std::size_t n, std::size_t p, std::size_t latent, double rho = 0.25,
                                       double sigma = 0.4);
};

struct Dataset {
  Matrix features;
  Vector response;
  std::string generator_id;
  std::uint64_t seed = 0;

  Dataset(Matrix x, Vector y, std::string id = "user", std::uint64_t s = 0);
  std::size_t n() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t p() const { return static_cast<std::size_t>(features.cols()); }
};

// Population model behind a GeneratorSpec: the coefficient vector and any
// random feature map are fixed by the generator seed.
class DataModel {
 public:
  DataModel(GeneratorSpec spec, std::uint64_t seed);

  const GeneratorSpec& spec() const { return spec_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t n() const { return spec_.n; }
  std::size_t p() const { return spec_.p; }
  std::size_t latent_dim() const;
  std::string id() const;

  double noise_variance() const { return spec_.sigma * spec_.sigma; }
  // Variance of the nonlinear component of f (zero for linear variants).
  double nonlinear_variance() const;
  bool has_signal() const { return spec_.signal_scale != 0.0; }
  bool is_nonlinear() const;

  // Linear coefficients in latent coordinates.
  const Vector& beta() const { return beta_; }
  // Linear coefficients and covariance in observed coordinates (not for random features).
  Vector observed_beta() const;
  Matrix observed_covariance() const;
  Matrix latent_covariance() const;

  // Rows nest: drawing more rows from a fresh stream extends earlier draws.
  Matrix sample_latent(std::size_t m, RandomStream& rng) const;
  Matrix observe(const Matrix& latent) const;
  Vector regression_function(const Matrix& latent) const;
  Vector sample_noise(std::size_t m, RandomStream& rng) const;

 private:
  GeneratorSpec spec_;
  std::uint64_t seed_;
  Vector beta_;
  Matrix rf_weights_;
  std::vector<std::size_t> order_;  // observed column j is latent column order_[j]
};

Matrix ar1_covariance(std::size_t p, double rho);
// tr(Σ²) for Σ = AR1(ρ) of size p.
double ar1_trace_square(std::size_t p, double rho);
Vector sample_unit_sphere(std::size_t p, std::uint64_t seed);
Dataset generate(const GeneratorSpec& spec, std::uint64_t seed);
double mean_squared_error(const Vector& pred, const Vector& truth);

}  // namespace doflab
