#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "doflab/asymptotics.hpp"
#include "doflab/core.hpp"
#include "doflab/decomposition.hpp"
#include "doflab/estimator.hpp"
#include "doflab/predictors.hpp"

namespace doflab {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ExperimentKind { Sweep, Asymptotics, Decompose, Reproduce };
std::string to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view s);

enum class TheorySystem { Ridge, Ridgeless, Lasso, Lassoless, Convex };
std::string to_string(TheorySystem s);
TheorySystem parse_theory_system(std::string_view s);

struct AsymptoticsConfig {
  TheorySystem system = TheorySystem::Ridge;
  std::vector<double> gamma;   // empty: generator p/n
  std::vector<double> lambda;  // ridge, lasso, convex
  // Spectrum: "identity", "generator", or explicit atoms.
  std::string spectrum = "identity";
  std::vector<SpectralAtom> atoms;
  double signal_energy = 1.0;  // identity spectrum
  // Signal law: "generator", "zero", "bernoulli" or "atoms".
  std::string signal = "zero";
  double delta = 1.0;
  std::optional<double> amplitude;  // bernoulli, default √(1/δ)
  std::vector<PointMass> signal_atoms;
  std::optional<double> sigma2;  // default: generator noise variance, else 1
  double sigma2_nl = 0.0;
  std::string penalty = "soft-threshold";
  double alpha = 1.0;  // elastic-net
  bool monte_carlo = false;
  std::vector<double> mc_gamma;  // empty: every γ in the grid
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Sweep;
  std::uint64_t seed = 0;
  std::string output;
  std::optional<GeneratorSpec> generator;
  std::vector<PredictorSpec> predictors;
  EstimatorConfig estimator;
  std::optional<AsymptoticsConfig> asymptotics;
  ShiftSpec shift;
  std::string figure;
  bool full = false;

  void validate() const;
};

// Parsing rejects unknown keys and malformed values with InvalidArgument.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
// Canonical JSON (sorted keys, defaults filled in); the manifest hash covers this text.
std::string canonical_config(const ExperimentConfig& cfg);
std::uint64_t fnv1a64(std::string_view bytes);

// ---- CSV

std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  std::string str() const;
};

struct Manifest {
  std::string config;  // canonical text
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::string kind;
  std::string figure;

  std::string str() const;
};
Manifest make_manifest(const ExperimentConfig& cfg);

struct NamedTable {
  std::string name;
  CsvTable table;
  Manifest manifest;
};
// Writes path and path + ".manifest.json".
void write_csv(const std::string& path, const CsvTable& table, const Manifest& manifest);

// ---- Runners (workers come from cfg.estimator.workers and never reach the output)

CsvTable run_sweep(const ExperimentConfig& cfg);
CsvTable run_asymptotics(const ExperimentConfig& cfg);
CsvTable run_decompose(const ExperimentConfig& cfg);
CsvTable run_experiment(const ExperimentConfig& cfg);

// ---- Figure recipes

std::vector<std::string> figure_ids();
struct FigureRun {
  std::string name;
  ExperimentConfig config;
};
// Configs behind a figure; reps default to 100, 500 with full.
std::vector<FigureRun> figure_recipe(std::string_view figure_id, std::uint64_t seed, bool full,
                                     std::optional<std::size_t> reps = std::nullopt);
// Runs every recipe and returns the named tables (fig1 splits its sweep in three).
std::vector<NamedTable> reproduce(std::string_view figure_id, std::uint64_t seed, bool full,
                                  std::optional<std::size_t> reps = std::nullopt, std::size_t workers = 1);

}  // namespace doflab
