#include "maisac/pso.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace maisac {
namespace {

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.n_tx = 4;
  cfg.n_rx = 3;
  cfg.k_dl = 2;
  cfg.k_ul = 2;
  cfg.n_clutter = 2;
  cfg.n_paths = 3;
  cfg.n_particles = 4;
  cfg.pso_iters = 3;
  cfg.seed = 31;
  return cfg;
}

// --- inertia schedule ---------------------------------------------------------

TEST(PsoInertia, EndpointsAndMidpoint) {
  ScenarioConfig cfg;
  cfg.pso_w_max = 0.9;
  cfg.pso_w_min = 0.4;
  EXPECT_DOUBLE_EQ(pso_inertia(cfg, 0, 11), 0.9);
  EXPECT_DOUBLE_EQ(pso_inertia(cfg, 10, 11), 0.4);
  EXPECT_DOUBLE_EQ(pso_inertia(cfg, 5, 11), 0.65);
  EXPECT_DOUBLE_EQ(pso_inertia(cfg, 0, 1), 0.9);  // degenerate schedule
}

// --- projection ----------------------------------------------------------------

TEST(PsoProject, ClampsAndLeavesInteriorUnchanged) {
  ScenarioConfig cfg = small_config();
  AntennaLayout l = layout_uniform(cfg);
  l.tx(0, 0) = 0.07;
  l.tx(1, 1) = -0.02;
  const AntennaLayout p = pso_project(l, cfg);
  EXPECT_DOUBLE_EQ(p.tx(0, 0), cfg.region_max_x);
  EXPECT_DOUBLE_EQ(p.tx(1, 1), cfg.region_min_y);
  EXPECT_DOUBLE_EQ(p.tx(2, 0), l.tx(2, 0));
  EXPECT_TRUE((p.rx.array() == l.rx.array()).all());
}

TEST(PsoProject, Idempotent) {
  ScenarioConfig cfg = small_config();
  Rng rng(3, "proj");
  for (int t = 0; t < 100; ++t) {
    AntennaLayout l;
    l.tx = Positions::Zero(cfg.n_tx, 2);
    l.rx = Positions::Zero(cfg.n_rx, 2);
    for (auto* p : {&l.tx, &l.rx}) {
      for (Eigen::Index i = 0; i < p->rows(); ++i) {
        (*p)(i, 0) = 0.2 * rng.uniform() - 0.1;
        (*p)(i, 1) = 0.2 * rng.uniform() - 0.1;
      }
    }
    const AntennaLayout once = pso_project(l, cfg);
    const AntennaLayout twice = pso_project(once, cfg);
    EXPECT_TRUE((once.tx.array() == twice.tx.array()).all());
    EXPECT_TRUE((once.rx.array() == twice.rx.array()).all());
    for (Eigen::Index i = 0; i < once.tx.rows(); ++i) {
      EXPECT_GE(once.tx(i, 0), cfg.region_min_x);
      EXPECT_LE(once.tx(i, 0), cfg.region_max_x);
    }
  }
}

// --- velocity update ------------------------------------------------------------

TEST(PsoVelocity, ZeroCoefficientsPreserveVelocity) {
  ScenarioConfig cfg = small_config();
  cfg.pso_c1 = 0.0;
  cfg.pso_c2 = 0.0;
  Rng rng(1, "vel");
  Positions v = Positions::Constant(cfg.n_tx, 2, 0.25);
  const Positions v0 = v;
  const Positions p = Positions::Random(cfg.n_tx, 2);
  const Positions pb = Positions::Random(cfg.n_tx, 2);
  const Positions gb = Positions::Random(cfg.n_tx, 2);
  pso_velocity_update(v, p, pb, gb, 1.0, cfg, rng);
  EXPECT_TRUE((v.array() == v0.array()).all());
}

TEST(PsoVelocity, ConsensusFixedPoint) {
  ScenarioConfig cfg = small_config();
  Rng rng(2, "vel");
  Positions v = Positions::Zero(cfg.n_tx, 2);
  const Positions p = Positions::Random(cfg.n_tx, 2);
  pso_velocity_update(v, p, p, p, 0.7, cfg, rng);
  EXPECT_EQ(v.norm(), 0.0);
}

TEST(PsoVelocity, MonteCarloMeanMatchesExpectation) {
  ScenarioConfig cfg = small_config();
  cfg.pso_c1 = 1.5;
  cfg.pso_c2 = 0.5;
  const double omega = 0.7;
  Rng rng(4, "vel_mc");
  const Positions v0 = Positions::Constant(1, 2, 0.1);
  const Positions p = Positions::Constant(1, 2, 0.3);
  const Positions pb = Positions::Constant(1, 2, 0.9);
  const Positions gb = Positions::Constant(1, 2, -0.5);
  const int n = 10000;
  Positions sum = Positions::Zero(1, 2);
  for (int t = 0; t < n; ++t) {
    Positions v = v0;
    pso_velocity_update(v, p, pb, gb, omega, cfg, rng);
    sum += v;
  }
  const Positions mean = sum / n;
  // E[v] = omega v + (c1/2)(pb-p) + (c2/2)(gb-p); per-draw variance is
  // c1^2 d1^2/12 + c2^2 d2^2/12 with d1 = pb-p, d2 = gb-p.
  const double d1 = 0.9 - 0.3, d2 = -0.5 - 0.3;
  const double expect = omega * 0.1 + 0.5 * cfg.pso_c1 * d1 + 0.5 * cfg.pso_c2 * d2;
  const double sd = std::sqrt((cfg.pso_c1 * cfg.pso_c1 * d1 * d1 +
                               cfg.pso_c2 * cfg.pso_c2 * d2 * d2) /
                              12.0 / n);
  EXPECT_NEAR(mean(0, 0), expect, 3.0 * sd);
  EXPECT_NEAR(mean(0, 1), expect, 3.0 * sd);
}

// --- fitness ---------------------------------------------------------------------

TEST(PsoFitness, MinimumDistanceViolationIsInfeasible) {
  ScenarioConfig cfg = small_config();
  const ChannelRealization r = sample_realization(cfg, 0);
  AntennaLayout l = layout_uniform(cfg);
  l.tx.row(1) = l.tx.row(0);
  l.tx(1, 0) += cfg.d0 / 2.0;
  const PsoFitness fit = pso_fitness(r, l, cfg);
  EXPECT_TRUE(std::isinf(fit.value));
  EXPECT_LT(fit.value, 0.0);
}

TEST(PsoFitness, FeasibleFitnessEqualsRefinementObjective) {
  ScenarioConfig cfg = small_config();
  const ChannelRealization r = sample_realization(cfg, 1);
  const AntennaLayout l = layout_uniform(cfg);
  const PsoFitness fit = pso_fitness(r, l, cfg);
  const AoResult ao = ao_loop(r, l, cfg, cfg.max_ao_iters_pso);
  EXPECT_EQ(fit.value, ao.g);
  EXPECT_TRUE((fit.refined.tx.array() == ao.layout.tx.array()).all());
}

TEST(PsoFitness, Deterministic) {
  ScenarioConfig cfg = small_config();
  const ChannelRealization r = sample_realization(cfg, 2);
  Rng rng(cfg.seed, "fit_probe");
  const AntennaLayout l = layout_random(cfg, rng);
  const PsoFitness a = pso_fitness(r, l, cfg);
  const PsoFitness b = pso_fitness(r, l, cfg);
  EXPECT_EQ(a.value, b.value);
}

// --- full swarm --------------------------------------------------------------------

TEST(PsoRun, TraceNonDecreasingAndConsistent) {
  ScenarioConfig cfg = small_config();
  const ChannelRealization r = sample_realization(cfg, 0);
  const PsoResult res = pso_run(r, cfg);
  ASSERT_GE(res.trace.size(), 2u);
  for (std::size_t t = 1; t < res.trace.size(); ++t) {
    EXPECT_GE(res.trace[t], res.trace[t - 1]);
  }
  EXPECT_EQ(res.g, res.trace.back());
  EXPECT_TRUE(check_layout(res.layout, cfg));
  const ChannelSet cs = build_channels(r, res.layout, cfg.d_si);
  const double g = objective(cs, res.bf, weights_of(cfg), cfg.sigma2());
  EXPECT_NEAR(g, res.g, 1e-9 * (1.0 + std::abs(res.g)));
}

TEST(PsoRun, BeatsSingleRefinementFromSuppliedSeedLayout) {
  ScenarioConfig cfg = small_config();
  const ChannelRealization r = sample_realization(cfg, 1);
  const PsoResult res = pso_run(r, cfg, {layout_uniform(cfg)});
  const AoResult ao = ao_loop(r, layout_uniform(cfg), cfg);
  EXPECT_GE(res.g, ao.g - 1e-12 * (1.0 + std::abs(ao.g)));
}

TEST(PsoRun, DegenerateSwarmReproducesAlternatingOptimization) {
  ScenarioConfig cfg = small_config();
  cfg.n_particles = 1;
  cfg.pso_c1 = 0.0;
  cfg.pso_c2 = 0.0;
  const ChannelRealization r = sample_realization(cfg, 2);
  const AntennaLayout init = layout_uniform(cfg);
  const PsoResult ps = pso_run(r, cfg, {init});
  const AoResult ao = ao_loop(r, init, cfg);
  EXPECT_EQ(ps.g, ao.g);
  EXPECT_TRUE((ps.layout.tx.array() == ao.layout.tx.array()).all());
  EXPECT_TRUE((ps.layout.rx.array() == ao.layout.rx.array()).all());
  EXPECT_TRUE((ps.bf.F.array() == ao.bf.F.array()).all());
  EXPECT_TRUE((ps.bf.f_ul.array() == ao.bf.f_ul.array()).all());
  EXPECT_TRUE((ps.bf.w_s.array() == ao.bf.w_s.array()).all());
  EXPECT_TRUE((ps.bf.w_r.array() == ao.bf.w_r.array()).all());
}

TEST(PsoRun, DeterministicAcrossRepeats) {
  ScenarioConfig cfg = small_config();
  const ChannelRealization r = sample_realization(cfg, 3);
  const PsoResult a = pso_run(r, cfg);
  const PsoResult b = pso_run(r, cfg);
  EXPECT_EQ(a.g, b.g);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t t = 0; t < a.trace.size(); ++t) EXPECT_EQ(a.trace[t], b.trace[t]);
  EXPECT_TRUE((a.layout.tx.array() == b.layout.tx.array()).all());
}

}  // namespace
}  // namespace maisac
