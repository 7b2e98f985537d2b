#include <doctest.h>

#include <cmath>
#include <random>

#include "doflab/decomposition.hpp"
#include "doflab/error.hpp"

using namespace doflab;

namespace {

EstimatorConfig config(std::size_t reps, std::uint64_t seed) {
  EstimatorConfig c;
  c.n_reps = reps;
  c.seed = seed;
  return c;
}

bool within(double a, double b, double se) { return std::abs(a - b) <= 3.0 * se; }

}  // namespace

TEST_CASE("shapley examples") {
  const Attribution a = shapley_attribution(make_scenario_grid(1, 1, 1, 1));
  CHECK(a.phi_bias == 0.0);
  CHECK(a.phi_cov == 0.0);
  CHECK(a.base == 1.0);
  const Attribution b = shapley_attribution(make_scenario_grid(2, 2, 5, 5));
  CHECK(b.phi_bias == 3.0);
  CHECK(b.phi_cov == 0.0);
  const Attribution c = shapley_attribution(make_scenario_grid(2, 6, 2, 6));
  CHECK(c.phi_bias == 0.0);
  CHECK(c.phi_cov == 4.0);
}

TEST_CASE("efficiency holds bitwise on random grids") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-50.0, 200.0);
  for (int i = 0; i < 10000; ++i) {
    const double d00 = u(rng), d01 = u(rng), d10 = u(rng), d11 = u(rng);
    const Attribution a = shapley_attribution(make_scenario_grid(d00, d01, d10, d11));
    CHECK(d11 - d00 - a.phi_bias - a.phi_cov == 0.0);
    CHECK(a.efficiency_residual == 0.0);
    const Attribution s = shapley_attribution(make_scenario_grid(d00, d10, d01, d11));
    CHECK(s.phi_bias == doctest::Approx(a.phi_cov).epsilon(1e-12));
  }
}

TEST_CASE("shift spec") {
  const ShiftSpec s;
  const Vector v = s.resolve(16);
  CHECK(v.size() == 16);
  CHECK(v(3) == doctest::Approx(0.125));
  const Vector z = ShiftSpec::none().resolve(4);
  CHECK(z.isZero(0.0));
  ShiftSpec bad;
  bad.scale = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  ShiftSpec wrong;
  wrong.offset_vector = Vector::Ones(3);
  CHECK_THROWS_AS(wrong.resolve(4), InvalidArgument);
}

TEST_CASE("identity shift leaves the optimism unchanged") {
  const ScenarioGrid g =
      scenario_grid(GeneratorSpec::linear_ar1(60, 10), PredictorSpec::ridge(0.3), ShiftSpec::none(), config(60, 3));
  CHECK(g.df11 == g.df10);
  CHECK(g.df01 == g.df00);
  const Attribution a = shapley_attribution(g);
  CHECK(std::abs(a.phi_cov) <= 3.0 * a.se_phi_cov + 1e-12);
}

TEST_CASE("null signal leaves no bias") {
  GeneratorSpec gen = GeneratorSpec::linear_ar1(60, 10);
  gen.signal_scale = 0.0;
  const ScenarioGrid g = scenario_grid(gen, PredictorSpec::knn(5), ShiftSpec{}, config(80, 4));
  CHECK(within(g.df11, g.df01, g.se11 + g.se01));
  CHECK(within(g.df10, g.df00, g.se10 + g.se00));
  const Attribution a = shapley_attribution(g);
  CHECK(std::abs(a.phi_bias) <= 3.0 * a.se_phi_bias);
}

TEST_CASE("ridge on shifted linear data") {
  const ScenarioGrid g =
      scenario_grid(GeneratorSpec::linear_ar1(80, 20), PredictorSpec::ridge(1.0), ShiftSpec{}, config(80, 6));
  CHECK(g.df11 >= g.df00 - 3.0 * g.se00);
  CHECK(g.opt00.size() == 80);
  const Attribution a = shapley_attribution(g);
  CHECK(a.se_phi_bias > 0.0);
  CHECK(a.se_phi_cov > 0.0);
  CHECK(a.efficiency_residual == 0.0);
}

TEST_CASE("sweep matches single grids and is worker independent") {
  const DataModel m(GeneratorSpec::nonlinear_ar1(40, 12), 8);
  const PredictorSpec preds[] = {PredictorSpec::ridge(0.1), PredictorSpec::knn(3)};
  auto cfg = config(20, 8);
  const auto sweep = scenario_sweep(m, preds, ShiftSpec{}, cfg);
  cfg.workers = 4;
  const auto par = scenario_sweep(m, preds, ShiftSpec{}, cfg);
  const ScenarioGrid one = scenario_grid(m, preds[1], ShiftSpec{}, config(20, 8));
  CHECK(sweep[1].df11 == one.df11);
  CHECK(sweep[1].df00 == one.df00);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(sweep[i].df01 == par[i].df01);
    CHECK(sweep[i].se10 == par[i].se10);
  }
}

TEST_CASE("proxy sigma2 in the scenario grid") {
  auto cfg = config(20, 9);
  cfg.sigma2_source = Sigma2Source::Proxy;
  const DataModel m(GeneratorSpec::linear_ar1(50, 5), 9);
  const PredictorSpec preds[] = {PredictorSpec::ridge(0.05), PredictorSpec::ridge(5.0)};
  const auto grids = scenario_sweep(m, preds, ShiftSpec{}, cfg);
  CHECK(grids[0].sigma2_used == grids[1].sigma2_used);
  CHECK(grids[0].sigma2_used > 0.0);
}
