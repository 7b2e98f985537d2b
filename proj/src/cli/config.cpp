#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "doflab/cli.hpp"
#include "doflab/error.hpp"

namespace doflab {

using nlohmann::json;

namespace {

struct KindName {
  ExperimentKind k;
  const char* name;
};
constexpr KindName kKinds[] = {
    {ExperimentKind::Sweep, "sweep"},
    {ExperimentKind::Asymptotics, "asymptotics"},
    {ExperimentKind::Decompose, "decompose"},
    {ExperimentKind::Reproduce, "reproduce"},
};

struct SystemName {
  TheorySystem s;
  const char* name;
};
constexpr SystemName kSystems[] = {
    {TheorySystem::Ridge, "ridge"},         {TheorySystem::Ridgeless, "ridgeless"},
    {TheorySystem::Lasso, "lasso"},         {TheorySystem::Lassoless, "lassoless"},
    {TheorySystem::Convex, "convex"},
};

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw InvalidArgument(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) throw InvalidArgument("unknown key '" + key + "' in " + where);
}

double get_real(const json& v, const std::string& what) {
  if (!v.is_number()) throw InvalidArgument(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidArgument(what + " must be finite");
  return x;
}

std::uint64_t get_u64(const json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw InvalidArgument(what + " must be a nonnegative integer");
}

std::size_t get_count(const json& v, const std::string& what) { return static_cast<std::size_t>(get_u64(v, what)); }

bool get_bool(const json& v, const std::string& what) {
  if (!v.is_boolean()) throw InvalidArgument(what + " must be true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw InvalidArgument(what + " must be a string");
  return v.get<std::string>();
}

// A number, a list of numbers, or {"from", "to", "step"} / {"from", "to", "count", "log"}.
std::vector<double> get_values(const json& v, const std::string& what) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(get_real(v, what));
  } else if (v.is_array()) {
    for (const auto& e : v) out.push_back(get_real(e, what));
  } else if (v.is_object()) {
    check_keys(v, {"from", "to", "step", "count", "log"}, what);
    if (!v.contains("from") || !v.contains("to")) throw InvalidArgument(what + " range needs from and to");
    const double a = get_real(v["from"], what + ".from");
    const double b = get_real(v["to"], what + ".to");
    const bool log = v.contains("log") && get_bool(v["log"], what + ".log");
    if (v.contains("step") == v.contains("count"))
      throw InvalidArgument(what + " range needs exactly one of step or count");
    if (v.contains("step")) {
      if (log) throw InvalidArgument(what + " log range needs count");
      const double h = get_real(v["step"], what + ".step");
      if (!(h > 0.0) || b < a) throw InvalidArgument(what + " range needs step > 0 and to >= from");
      const auto m = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9));
      for (std::size_t i = 0; i <= m; ++i) out.push_back(a + h * static_cast<double>(i));
    } else {
      const std::size_t m = get_count(v["count"], what + ".count");
      if (m < 1) throw InvalidArgument(what + " range needs count >= 1");
      if (log && !(a > 0.0 && b > 0.0)) throw InvalidArgument(what + " log range needs positive ends");
      for (std::size_t i = 0; i < m; ++i) {
        const double t = m == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(m - 1);
        out.push_back(log ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a));
      }
    }
  } else {
    throw InvalidArgument(what + " must be a number, list or range");
  }
  if (out.empty()) throw InvalidArgument(what + " is empty");
  return out;
}

std::vector<std::size_t> get_counts(const json& v, const std::string& what) {
  std::vector<std::size_t> out;
  for (double x : get_values(v, what)) {
    if (x < 0.0 || std::abs(x - std::round(x)) > 1e-9) throw InvalidArgument(what + " must hold nonnegative integers");
    out.push_back(static_cast<std::size_t>(std::llround(x)));
  }
  return out;
}

GeneratorSpec parse_generator(const json& j) {
  check_keys(j,
             {"variant", "n", "p", "rho", "sigma", "sparsity", "amplitude", "delta", "latent_p", "noise", "features",
              "rf_scale", "signal_scale", "sort_by_signal"},
             "generator");
  if (!j.contains("variant")) throw InvalidArgument("generator needs a variant");
  GeneratorSpec g;
  g.variant = parse_generator_variant(get_string(j["variant"], "generator.variant"));
  if (g.variant == GeneratorVariant::LinearAr1) g.sigma = 0.5;
  if (g.variant == GeneratorVariant::SparseLinear || g.variant == GeneratorVariant::BernoulliSignal) {
    g.sigma = 1.0;
    g.rho = 0.0;
  }
  if (j.contains("n")) g.n = get_count(j["n"], "generator.n");
  if (j.contains("p")) g.p = get_count(j["p"], "generator.p");
  if (j.contains("rho")) g.rho = get_real(j["rho"], "generator.rho");
  if (j.contains("sigma")) g.sigma = get_real(j["sigma"], "generator.sigma");
  if (j.contains("sparsity")) g.sparsity = get_count(j["sparsity"], "generator.sparsity");
  if (j.contains("amplitude")) g.amplitude = get_real(j["amplitude"], "generator.amplitude");
  if (j.contains("delta")) g.delta = get_real(j["delta"], "generator.delta");
  if (j.contains("latent_p")) g.latent_p = get_count(j["latent_p"], "generator.latent_p");
  if (j.contains("noise")) g.noise = parse_noise_distribution(get_string(j["noise"], "generator.noise"));
  if (j.contains("features")) g.features = parse_feature_distribution(get_string(j["features"], "generator.features"));
  if (j.contains("rf_scale")) {
    const std::string s = get_string(j["rf_scale"], "generator.rf_scale");
    if (s == "variance")
      g.rf_scale = RandomFeatureScale::Variance;
    else if (s == "std")
      g.rf_scale = RandomFeatureScale::StdDev;
    else
      throw InvalidArgument("generator.rf_scale must be 'variance' or 'std'");
  }
  if (j.contains("signal_scale")) g.signal_scale = get_real(j["signal_scale"], "generator.signal_scale");
  if (j.contains("sort_by_signal")) g.sort_by_signal = get_bool(j["sort_by_signal"], "generator.sort_by_signal");
  g.validate();
  return g;
}

// Each list-valued field multiplies the grid, in the order written below.
void parse_predictor(const json& j, std::vector<PredictorSpec>& out) {
  check_keys(j,
             {"family", "lambda", "k", "max_leaves", "n_trees", "mtry", "rf_features", "rf_latent", "rf_seed",
              "max_features"},
             "predictor");
  if (!j.contains("family")) throw InvalidArgument("predictor needs a family");
  PredictorSpec base;
  base.family = parse_family(get_string(j["family"], "predictor.family"));
  if (j.contains("rf_seed")) base.rf_seed = get_u64(j["rf_seed"], "predictor.rf_seed");
  std::vector<PredictorSpec> grid{base};
  auto expand_real = [&](const char* key, double PredictorSpec::*field) {
    if (!j.contains(key)) return;
    std::vector<PredictorSpec> next;
    for (const auto& p : grid)
      for (double v : get_values(j[key], std::string("predictor.") + key)) {
        PredictorSpec q = p;
        q.*field = v;
        next.push_back(q);
      }
    grid = std::move(next);
  };
  auto expand_count = [&](const char* key, std::size_t PredictorSpec::*field) {
    if (!j.contains(key)) return;
    std::vector<PredictorSpec> next;
    for (const auto& p : grid)
      for (std::size_t v : get_counts(j[key], std::string("predictor.") + key)) {
        PredictorSpec q = p;
        q.*field = v;
        next.push_back(q);
      }
    grid = std::move(next);
  };
  expand_real("lambda", &PredictorSpec::lambda);
  expand_count("k", &PredictorSpec::k);
  expand_count("max_leaves", &PredictorSpec::max_leaves);
  expand_count("n_trees", &PredictorSpec::n_trees);
  expand_count("mtry", &PredictorSpec::mtry);
  expand_count("rf_features", &PredictorSpec::rf_features);
  expand_count("rf_latent", &PredictorSpec::rf_latent);
  expand_count("max_features", &PredictorSpec::max_features);
  for (auto& p : grid) {
    p.validate();
    out.push_back(p);
  }
}

EstimatorConfig parse_estimator(const json& j) {
  check_keys(j,
             {"reps", "test_size", "sigma2_source", "sigma2", "cv_folds", "fixed_x_outer", "fixed_x_inner",
              "fixed_x_method", "max_failure_fraction"},
             "estimator");
  EstimatorConfig e;
  if (j.contains("reps")) e.n_reps = get_count(j["reps"], "estimator.reps");
  if (j.contains("test_size")) e.test_size = get_count(j["test_size"], "estimator.test_size");
  if (j.contains("sigma2_source")) {
    const std::string s = get_string(j["sigma2_source"], "estimator.sigma2_source");
    if (s == "known")
      e.sigma2_source = Sigma2Source::Known;
    else if (s == "proxy")
      e.sigma2_source = Sigma2Source::Proxy;
    else
      throw InvalidArgument("estimator.sigma2_source must be 'known' or 'proxy'");
  }
  if (j.contains("sigma2")) e.sigma2 = get_real(j["sigma2"], "estimator.sigma2");
  if (j.contains("cv_folds")) e.cv_folds = get_count(j["cv_folds"], "estimator.cv_folds");
  if (j.contains("fixed_x_outer")) e.fixed_x_outer = get_count(j["fixed_x_outer"], "estimator.fixed_x_outer");
  if (j.contains("fixed_x_inner")) e.fixed_x_inner = get_count(j["fixed_x_inner"], "estimator.fixed_x_inner");
  if (j.contains("fixed_x_method")) {
    const std::string s = get_string(j["fixed_x_method"], "estimator.fixed_x_method");
    if (s == "auto")
      e.fixed_x_method = FixedXMethod::Auto;
    else if (s == "monte-carlo")
      e.fixed_x_method = FixedXMethod::MonteCarlo;
    else
      throw InvalidArgument("estimator.fixed_x_method must be 'auto' or 'monte-carlo'");
  }
  if (j.contains("max_failure_fraction"))
    e.max_failure_fraction = get_real(j["max_failure_fraction"], "estimator.max_failure_fraction");
  return e;
}

AsymptoticsConfig parse_asymptotics(const json& j) {
  check_keys(j,
             {"system", "gamma", "lambda", "spectrum", "signal_energy", "signal", "sigma2", "sigma2_nl", "penalty",
              "monte_carlo", "mc_gamma"},
             "asymptotics");
  AsymptoticsConfig a;
  if (!j.contains("system")) throw InvalidArgument("asymptotics needs a system");
  a.system = parse_theory_system(get_string(j["system"], "asymptotics.system"));
  if (j.contains("gamma")) a.gamma = get_values(j["gamma"], "asymptotics.gamma");
  if (j.contains("lambda")) a.lambda = get_values(j["lambda"], "asymptotics.lambda");
  if (j.contains("spectrum")) {
    const json& s = j["spectrum"];
    if (s.is_string()) {
      a.spectrum = s.get<std::string>();
      if (a.spectrum != "identity" && a.spectrum != "generator")
        throw InvalidArgument("asymptotics.spectrum must be 'identity', 'generator' or a list of atoms");
    } else if (s.is_array()) {
      a.spectrum = "atoms";
      for (const auto& e : s) {
        check_keys(e, {"eigenvalue", "mass", "signal_energy"}, "asymptotics.spectrum atom");
        SpectralAtom at;
        if (e.contains("eigenvalue")) at.eigenvalue = get_real(e["eigenvalue"], "eigenvalue");
        if (e.contains("mass")) at.mass = get_real(e["mass"], "mass");
        if (e.contains("signal_energy")) at.signal_energy = get_real(e["signal_energy"], "signal_energy");
        a.atoms.push_back(at);
      }
    } else {
      throw InvalidArgument("asymptotics.spectrum must be a string or a list");
    }
  }
  if (j.contains("signal_energy")) a.signal_energy = get_real(j["signal_energy"], "asymptotics.signal_energy");
  if (j.contains("signal")) {
    const json& s = j["signal"];
    if (s.is_string()) {
      a.signal = s.get<std::string>();
      if (a.signal != "generator" && a.signal != "zero")
        throw InvalidArgument("asymptotics.signal must be 'generator', 'zero' or an object");
    } else {
      check_keys(s, {"kind", "delta", "amplitude", "atoms"}, "asymptotics.signal");
      a.signal = s.contains("kind") ? get_string(s["kind"], "asymptotics.signal.kind") : "";
      if (a.signal == "bernoulli") {
        if (!s.contains("delta")) throw InvalidArgument("bernoulli signal needs delta");
        a.delta = get_real(s["delta"], "asymptotics.signal.delta");
        if (s.contains("amplitude")) a.amplitude = get_real(s["amplitude"], "asymptotics.signal.amplitude");
      } else if (a.signal == "atoms") {
        if (!s.contains("atoms") || !s["atoms"].is_array()) throw InvalidArgument("atoms signal needs an atoms list");
        for (const auto& e : s["atoms"]) {
          check_keys(e, {"location", "probability"}, "asymptotics.signal atom");
          PointMass m;
          if (e.contains("location")) m.location = get_real(e["location"], "location");
          if (e.contains("probability")) m.probability = get_real(e["probability"], "probability");
          a.signal_atoms.push_back(m);
        }
      } else if (a.signal != "zero") {
        throw InvalidArgument("asymptotics.signal.kind must be 'zero', 'bernoulli' or 'atoms'");
      }
    }
  }
  if (j.contains("sigma2")) a.sigma2 = get_real(j["sigma2"], "asymptotics.sigma2");
  if (j.contains("sigma2_nl")) a.sigma2_nl = get_real(j["sigma2_nl"], "asymptotics.sigma2_nl");
  if (j.contains("penalty")) {
    const json& p = j["penalty"];
    if (p.is_string()) {
      a.penalty = p.get<std::string>();
    } else {
      check_keys(p, {"kind", "alpha"}, "asymptotics.penalty");
      a.penalty = p.contains("kind") ? get_string(p["kind"], "asymptotics.penalty.kind") : "";
      if (p.contains("alpha")) a.alpha = get_real(p["alpha"], "asymptotics.penalty.alpha");
    }
    if (a.penalty != "soft-threshold" && a.penalty != "ridge" && a.penalty != "elastic-net" &&
        a.penalty != "pseudo-huber")
      throw InvalidArgument("unknown penalty '" + a.penalty + "'");
  }
  if (j.contains("monte_carlo")) a.monte_carlo = get_bool(j["monte_carlo"], "asymptotics.monte_carlo");
  if (j.contains("mc_gamma")) a.mc_gamma = get_values(j["mc_gamma"], "asymptotics.mc_gamma");
  return a;
}

ShiftSpec parse_shift(const json& j) {
  check_keys(j, {"scale", "offset"}, "shift");
  ShiftSpec s;
  if (j.contains("scale")) s.scale = get_real(j["scale"], "shift.scale");
  if (j.contains("offset")) {
    const json& o = j["offset"];
    if (o.is_array()) {
      s.offset_vector.resize(static_cast<Eigen::Index>(o.size()));
      for (std::size_t i = 0; i < o.size(); ++i) s.offset_vector[static_cast<Eigen::Index>(i)] = get_real(o[i], "shift.offset");
    } else {
      s.offset = get_real(o, "shift.offset");
    }
  }
  s.validate();
  return s;
}

json to_json(const GeneratorSpec& g) {
  json j;
  j["variant"] = to_string(g.variant);
  j["n"] = g.n;
  j["p"] = g.p;
  j["rho"] = g.rho;
  j["sigma"] = g.sigma;
  j["sparsity"] = g.sparsity;
  if (g.amplitude) j["amplitude"] = *g.amplitude;
  j["delta"] = g.delta;
  j["latent_p"] = g.latent_p;
  j["noise"] = to_string(g.noise);
  j["features"] = to_string(g.features);
  j["rf_scale"] = g.rf_scale == RandomFeatureScale::Variance ? "variance" : "std";
  j["signal_scale"] = g.signal_scale;
  j["sort_by_signal"] = g.sort_by_signal;
  return j;
}

json to_json(const PredictorSpec& p) {
  return json{{"family", to_string(p.family)}, {"lambda", p.lambda},          {"k", p.k},
              {"max_leaves", p.max_leaves},    {"n_trees", p.n_trees},        {"mtry", p.mtry},
              {"rf_features", p.rf_features},  {"rf_latent", p.rf_latent},    {"rf_seed", p.rf_seed},
              {"max_features", p.max_features}};
}

json to_json(const EstimatorConfig& e) {
  json j;
  j["reps"] = e.n_reps;
  j["test_size"] = e.test_size;
  j["sigma2_source"] = e.sigma2_source == Sigma2Source::Known ? "known" : "proxy";
  if (e.sigma2) j["sigma2"] = *e.sigma2;
  if (e.cv_folds) j["cv_folds"] = *e.cv_folds;
  j["fixed_x_outer"] = e.fixed_x_outer;
  j["fixed_x_inner"] = e.fixed_x_inner;
  j["fixed_x_method"] = e.fixed_x_method == FixedXMethod::Auto ? "auto" : "monte-carlo";
  j["max_failure_fraction"] = e.max_failure_fraction;
  return j;
}

json to_json(const AsymptoticsConfig& a) {
  json j;
  j["system"] = to_string(a.system);
  if (!a.gamma.empty()) j["gamma"] = a.gamma;
  if (!a.lambda.empty()) j["lambda"] = a.lambda;
  if (a.spectrum == "atoms") {
    json atoms = json::array();
    for (const auto& at : a.atoms)
      atoms.push_back({{"eigenvalue", at.eigenvalue}, {"mass", at.mass}, {"signal_energy", at.signal_energy}});
    j["spectrum"] = atoms;
  } else {
    j["spectrum"] = a.spectrum;
  }
  j["signal_energy"] = a.signal_energy;
  if (a.signal == "bernoulli") {
    json s{{"kind", "bernoulli"}, {"delta", a.delta}};
    if (a.amplitude) s["amplitude"] = *a.amplitude;
    j["signal"] = s;
  } else if (a.signal == "atoms") {
    json atoms = json::array();
    for (const auto& m : a.signal_atoms) atoms.push_back({{"location", m.location}, {"probability", m.probability}});
    j["signal"] = json{{"kind", "atoms"}, {"atoms", atoms}};
  } else {
    j["signal"] = a.signal;
  }
  if (a.sigma2) j["sigma2"] = *a.sigma2;
  j["sigma2_nl"] = a.sigma2_nl;
  j["penalty"] = json{{"kind", a.penalty}, {"alpha", a.alpha}};
  j["monte_carlo"] = a.monte_carlo;
  if (!a.mc_gamma.empty()) j["mc_gamma"] = a.mc_gamma;
  return j;
}

}  // namespace

std::string to_string(ExperimentKind k) {
  for (const auto& e : kKinds)
    if (e.k == k) return e.name;
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
  for (const auto& e : kKinds)
    if (s == e.name) return e.k;
  throw InvalidArgument("unknown experiment kind '" + std::string(s) + "'");
}

std::string to_string(TheorySystem s) {
  for (const auto& e : kSystems)
    if (e.s == s) return e.name;
  return "unknown";
}

TheorySystem parse_theory_system(std::string_view s) {
  for (const auto& e : kSystems)
    if (s == e.name) return e.s;
  throw InvalidArgument("unknown asymptotics system '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  estimator.validate();
  shift.validate();
  switch (kind) {
    case ExperimentKind::Sweep:
    case ExperimentKind::Decompose:
      require(generator.has_value(), to_string(kind) + " needs a generator");
      require(!predictors.empty(), to_string(kind) + " needs at least one predictor");
      break;
    case ExperimentKind::Asymptotics: {
      require(asymptotics.has_value(), "asymptotics experiment needs an asymptotics block");
      const auto& a = *asymptotics;
      const bool needs_lambda = a.system == TheorySystem::Ridge || a.system == TheorySystem::Lasso ||
                                a.system == TheorySystem::Convex;
      require(!needs_lambda || !a.lambda.empty(), to_string(a.system) + " theory needs a lambda grid");
      require(!a.gamma.empty() || generator.has_value(), "asymptotics needs a gamma grid or a generator");
      require(!a.monte_carlo || generator.has_value(), "Monte Carlo pairing needs a generator");
      require(a.spectrum != "generator" || generator.has_value(), "generator spectrum needs a generator");
      require(a.signal != "generator" || generator.has_value(), "generator signal needs a generator");
      for (double g : a.gamma) require(g > 0.0, "gamma values must be positive");
      for (double l : a.lambda) require(l >= 0.0, "lambda values must be >= 0");
      break;
    }
    case ExperimentKind::Reproduce: {
      const auto ids = figure_ids();
      require(std::find(ids.begin(), ids.end(), figure) != ids.end(), "unknown figure id '" + figure + "'");
      break;
    }
  }
  if (generator) generator->validate();
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, {"kind", "seed", "output", "generator", "predictors", "estimator", "asymptotics", "shift", "figure", "full"},
             "config");
  ExperimentConfig c;
  if (!j.contains("kind")) throw InvalidArgument("config needs a kind");
  c.kind = parse_experiment_kind(get_string(j["kind"], "kind"));
  if (j.contains("seed")) c.seed = get_u64(j["seed"], "seed");
  if (j.contains("output")) c.output = get_string(j["output"], "output");
  if (j.contains("generator")) c.generator = parse_generator(j["generator"]);
  if (j.contains("predictors")) {
    if (!j["predictors"].is_array()) throw InvalidArgument("predictors must be a list");
    for (const auto& p : j["predictors"]) parse_predictor(p, c.predictors);
  }
  if (j.contains("estimator")) c.estimator = parse_estimator(j["estimator"]);
  if (j.contains("asymptotics")) c.asymptotics = parse_asymptotics(j["asymptotics"]);
  if (j.contains("shift")) c.shift = parse_shift(j["shift"]);
  if (j.contains("figure")) c.figure = get_string(j["figure"], "figure");
  if (j.contains("full")) c.full = get_bool(j["full"], "full");
  c.estimator.seed = c.seed;
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const ExperimentConfig& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["seed"] = c.seed;
  if (c.generator) j["generator"] = to_json(*c.generator);
  if (!c.predictors.empty()) {
    json ps = json::array();
    for (const auto& p : c.predictors) ps.push_back(to_json(p));
    j["predictors"] = ps;
  }
  j["estimator"] = to_json(c.estimator);
  if (c.asymptotics) j["asymptotics"] = to_json(*c.asymptotics);
  if (c.kind == ExperimentKind::Decompose) {
    json s{{"scale", c.shift.scale}};
    if (c.shift.offset_vector.size() > 0)
      s["offset"] = std::vector<double>(c.shift.offset_vector.begin(), c.shift.offset_vector.end());
    else if (c.shift.offset)
      s["offset"] = *c.shift.offset;
    j["shift"] = s;
  }
  if (c.kind == ExperimentKind::Reproduce) {
    j["figure"] = c.figure;
    j["full"] = c.full;
  }
  return j.dump();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace doflab
