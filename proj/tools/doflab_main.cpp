#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "doflab/cli.hpp"
#include "doflab/error.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::size_t workers = 1;
  std::string out;
  std::string figure;
  bool full = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "experiment seed (overrides the config)");
  sub->add_option("--reps", f.reps, "replications (overrides the config)");
  sub->add_option("--workers", f.workers, "worker threads (capped by DOFLAB_MAX_WORKERS)")->check(CLI::PositiveNumber);
  sub->add_option("--out", f.out, "output path");
}

void emit(const doflab::CsvTable& t, const doflab::Manifest& m, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << t.str();
    return;
  }
  doflab::write_csv(path, t, m);
  std::cerr << "wrote " << path << "\n";
}

int run(const std::string& command, const Flags& f) {
  using namespace doflab;
  if (command == "reproduce") {
    std::string figure = f.figure;
    std::uint64_t seed = f.seed.value_or(0);
    bool full = f.full;
    std::optional<std::size_t> reps = f.reps;
    if (!f.config.empty()) {
      const ExperimentConfig c = load_config(f.config);
      require(c.kind == ExperimentKind::Reproduce, "config kind is '" + to_string(c.kind) + "', expected reproduce");
      if (figure.empty()) figure = c.figure;
      if (!f.seed) seed = c.seed;
      full = full || c.full;
    }
    require(!figure.empty(), "reproduce needs --figure or a config with a figure");
    const auto ids = figure_ids();
    require(std::find(ids.begin(), ids.end(), figure) != ids.end(), "unknown figure id '" + figure + "'");
    const std::string dir = f.out.empty() ? "reproduce-out/" + figure : f.out;
    for (const auto& nt : reproduce(figure, seed, full, reps, f.workers))
      emit(nt.table, nt.manifest, (std::filesystem::path(dir) / (nt.name + ".csv")).string());
    return 0;
  }
  ExperimentConfig c = load_config(f.config);
  require(to_string(c.kind) == command, "config kind is '" + to_string(c.kind) + "', expected " + command);
  if (f.seed) c.seed = *f.seed;
  if (f.reps) c.estimator.n_reps = *f.reps;
  c.estimator.seed = c.seed;
  c.estimator.workers = f.workers;
  c.validate();
  const CsvTable t = run_experiment(c);
  emit(t, make_manifest(c), f.out.empty() ? c.output : f.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"doflab: random-X degrees of freedom laboratory"};
  app.set_version_flag("--version", doflab::kToolVersion);
  app.require_subcommand(1);
  Flags flags;
  for (const char* name : {"sweep", "asymptotics", "decompose"}) {
    auto* sub = app.add_subcommand(name, std::string("run a ") + name + " config");
    sub->add_option("--config", flags.config, "config file (JSON)")->required()->check(CLI::ExistingFile);
    add_common(sub, flags);
  }
  auto* rep = app.add_subcommand("reproduce", "emit the CSV bundle behind a figure");
  rep->add_option("--figure,figure", flags.figure, "figure id");
  rep->add_option("--config", flags.config, "reproduce config file (JSON)")->check(CLI::ExistingFile);
  rep->add_flag("--full", flags.full, "full replication count (500)");
  add_common(rep, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, flags);
  } catch (const doflab::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
}
