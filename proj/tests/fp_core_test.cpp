#include <gtest/gtest.h>

#include <cmath>

#include "maisac/fp_core.hpp"
#include "test_util.hpp"

namespace maisac {
namespace {

TEST(GHat, TightAtUpdatedAuxiliaries) {
  ScenarioConfig cfg;
  const Weights w = weights_of(cfg);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto st = test::random_state(cfg, i);
    const AuxVars aux = update_aux(st.cs, st.bf, cfg.sigma2());
    const double g = objective(st.cs, st.bf, w, cfg.sigma2());
    const double g_hat = eval_g_hat(st.cs, st.bf, aux, w, cfg.sigma2());
    EXPECT_NEAR(g_hat, g, 1e-9 * (1.0 + std::abs(g)));
  }
}

TEST(GHat, ZeroAuxGivesZero) {
  ScenarioConfig cfg;
  const auto st = test::random_state(cfg, 0);
  AuxVars aux;
  aux.mu = Vec::Zero(cfg.k_dl + cfg.k_ul + 1);
  aux.xi_dl = CVec::Zero(cfg.k_dl);
  aux.xi_ul = CVec::Zero(cfg.k_ul);
  aux.xi_s = CVec::Zero(cfg.k_dl);
  EXPECT_DOUBLE_EQ(eval_g_hat(st.cs, st.bf, aux, weights_of(cfg), cfg.sigma2()), 0.0);
}

TEST(GHat, PerturbingXiAwayFromOptimumDecreases) {
  ScenarioConfig cfg;
  const auto st = test::random_state(cfg, 1);
  const Weights w = weights_of(cfg);
  const AuxVars aux = update_aux(st.cs, st.bf, cfg.sigma2());
  const double base = eval_g_hat(st.cs, st.bf, aux, w, cfg.sigma2());
  Rng rng(9, "perturb", 0);
  for (int t = 0; t < 100; ++t) {
    AuxVars p = aux;
    const cplx delta = 0.1 * rng.cgauss();
    switch (t % 3) {
      case 0: p.xi_dl[t % cfg.k_dl] += delta * p.xi_dl.norm(); break;
      case 1: p.xi_ul[t % cfg.k_ul] += delta * p.xi_ul.norm(); break;
      default: p.xi_s[t % cfg.k_dl] += delta * p.xi_s.norm(); break;
    }
    EXPECT_LT(eval_g_hat(st.cs, st.bf, p, w, cfg.sigma2()), base);
  }
}

TEST(GHat, UpdatedAuxDominatesPerturbedAux) {
  ScenarioConfig cfg;
  const Weights w = weights_of(cfg);
  Rng rng(10, "perturb", 1);
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto st = test::random_state(cfg, i);
    AuxVars aux = update_aux(st.cs, st.bf, cfg.sigma2());
    const double best = eval_g_hat(st.cs, st.bf, aux, w, cfg.sigma2());
    AuxVars other = aux;
    other.mu *= rng.uniform(0.2, 0.9);
    for (Eigen::Index k = 0; k < other.xi_dl.size(); ++k) other.xi_dl[k] *= rng.cgauss();
    for (Eigen::Index k = 0; k < other.xi_ul.size(); ++k) other.xi_ul[k] *= rng.cgauss();
    for (Eigen::Index k = 0; k < other.xi_s.size(); ++k) other.xi_s[k] *= rng.cgauss();
    EXPECT_LE(eval_g_hat(st.cs, st.bf, other, w, cfg.sigma2()),
              best + 1e-9 * (1.0 + std::abs(best)));
  }
}

TEST(UpdateMu, EqualsMetricsRatios) {
  ScenarioConfig cfg;
  const auto st = test::random_state(cfg, 2);
  const double sigma2 = cfg.sigma2();
  const AuxVars aux = update_mu(st.cs, st.bf, sigma2);
  ASSERT_EQ(aux.mu.size(), cfg.k_dl + cfg.k_ul + 1);
  for (int k = 0; k < cfg.k_dl; ++k) {
    EXPECT_DOUBLE_EQ(aux.mu[k], sinr_dl(st.cs, st.bf.F, k, sigma2));
  }
  for (int k = 0; k < cfg.k_ul; ++k) {
    EXPECT_DOUBLE_EQ(aux.mu[cfg.k_dl + k], sinr_ul(st.cs, st.bf, k, sigma2));
  }
  EXPECT_DOUBLE_EQ(aux.mu[cfg.k_dl + cfg.k_ul], scnr(st.cs, st.bf, sigma2));
}

TEST(UpdateMu, ZeroBeamformersGiveZeroMu) {
  ScenarioConfig cfg;
  const auto st = test::random_state(cfg, 3);
  Beamformers bf = st.bf;
  bf.F.setZero();
  bf.f_ul.setZero();
  bf.w_s.setZero();
  bf.w_r.setZero();
  const AuxVars aux = update_mu(st.cs, bf, cfg.sigma2());
  EXPECT_NEAR(aux.mu.norm(), 0.0, 1e-15);
}

TEST(UpdateMu, DualValueReproducesObjective) {
  // Per ratio, (log(1+mu) - mu + (1+mu)*g/(1+g)) / ln2 at mu = g equals
  // log2(1+g); the weighted stack must therefore reproduce the objective.
  ScenarioConfig cfg;
  const auto st = test::random_state(cfg, 4);
  const Weights w = weights_of(cfg);
  const double sigma2 = cfg.sigma2();
  const AuxVars aux = update_mu(st.cs, st.bf, sigma2);
  auto dual_term = [](double mu, double g) {
    return (std::log(1.0 + mu) - mu + (1.0 + mu) * g / (1.0 + g)) / kLn2;
  };
  double dual = 0.0;
  for (int k = 0; k < cfg.k_dl; ++k) {
    dual += w.dl * dual_term(aux.mu[k], sinr_dl(st.cs, st.bf.F, k, sigma2));
  }
  for (int k = 0; k < cfg.k_ul; ++k) {
    dual += w.ul * dual_term(aux.mu[cfg.k_dl + k], sinr_ul(st.cs, st.bf, k, sigma2));
  }
  dual += w.s * dual_term(aux.mu[cfg.k_dl + cfg.k_ul], scnr(st.cs, st.bf, sigma2));
  const double g = objective(st.cs, st.bf, w, sigma2);
  EXPECT_NEAR(dual, g, 1e-9 * (1.0 + std::abs(g)));
}

TEST(UpdateXi, ScalarToyMatchesHandFormula) {
  // All dimensions 1, no clutter/SI: xi = sqrt(1+mu) * conj(num) / den.
  ChannelSet cs;
  cs.h_dl.push_back(CVec::Constant(1, cplx(0.6, -0.2)));
  cs.a_s = CVec::Ones(1);
  cs.b_s = CVec::Ones(1);
  cs.g = CMat::Zero(0, 1);
  cs.h_si = CMat::Zero(1, 1);
  cs.c_s = cplx(0.5, 0.0);
  cs.c_c = CVec::Zero(0);
  Beamformers bf;
  bf.F = CMat::Constant(1, 1, cplx(1.2, 0.4));
  bf.f_ul = CVec::Zero(0);
  bf.w_s = CVec::Constant(1, cplx(0.9, 0.1));
  bf.w_r = CMat::Zero(1, 0);
  const double sigma2 = 0.25;

  const AuxVars aux = update_aux(cs, bf, sigma2);
  const cplx num = std::conj(cs.h_dl[0][0]) * bf.F(0, 0);
  const double den = std::norm(num) / 1.0 + sigma2;  // |h^H f|^2 + sigma2
  const cplx expected = std::sqrt(1.0 + aux.mu[0]) * std::conj(num) / den;
  EXPECT_NEAR(std::abs(aux.xi_dl[0] - expected), 0.0, 1e-12);
}

TEST(UpdateXi, ZeroNumeratorGivesZeroXi) {
  ScenarioConfig cfg;
  const auto st = test::random_state(cfg, 5);
  Beamformers bf = st.bf;
  bf.f_ul.setZero();  // uplink numerator vanishes
  const AuxVars aux = update_aux(st.cs, bf, cfg.sigma2());
  EXPECT_NEAR(aux.xi_ul.norm(), 0.0, 1e-15);
}

TEST(UpdateXi, RatioIdentityAtOptimum) {
  // 2 sqrt(1+mu) Re(xi^* num) - |xi|^2 den = (1+mu)|num|^2/den at the
  // closed-form xi, for the downlink ratio.
  ScenarioConfig cfg;
  const auto st = test::random_state(cfg, 6);
  const double sigma2 = cfg.sigma2();
  const AuxVars aux = update_aux(st.cs, st.bf, sigma2);
  for (int k = 0; k < cfg.k_dl; ++k) {
    const cplx num = (st.bf.F.col(k).adjoint() * st.cs.h_dl[k])(0, 0);
    double den = sigma2;
    for (int j = 0; j < cfg.k_dl; ++j) {
      den += std::norm((st.cs.h_dl[k].adjoint() * st.bf.F.col(j))(0, 0));
    }
    for (int j = 0; j < cfg.k_ul; ++j) den += std::norm(st.cs.g(j, k));
    const double mu = aux.mu[k];
    const double lhs = 2.0 * std::sqrt(1.0 + mu) * (std::conj(aux.xi_dl[k]) * num).real() -
                       std::norm(aux.xi_dl[k]) * den;
    const double rhs = (1.0 + mu) * std::norm(num) / den;
    EXPECT_NEAR(lhs, rhs, 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST(GHat, ConcaveAlongEachBlock) {
  ScenarioConfig cfg;
  const Weights w = weights_of(cfg);
  const double sigma2 = cfg.sigma2();
  for (std::uint64_t i = 0; i < 5; ++i) {
    const auto st = test::random_state(cfg, i);
    const auto st2 = test::random_state(cfg, i + 100);
    const AuxVars aux = update_aux(st.cs, st.bf, sigma2);
    auto check = [&](auto assign) {
      Beamformers x = st.bf, y = st.bf;
      assign(y, st2.bf);
      // midpoint of the modified block
      Beamformers m = x;
      assign(m, Beamformers{(x.F + y.F) / 2.0, (x.w_s + y.w_s) / 2.0,
                            (x.w_r + y.w_r) / 2.0, (x.f_ul + y.f_ul) / 2.0});
      const double gm = eval_g_hat(st.cs, m, aux, w, sigma2);
      const double gx = eval_g_hat(st.cs, x, aux, w, sigma2);
      const double gy = eval_g_hat(st.cs, y, aux, w, sigma2);
      EXPECT_GE(gm, (gx + gy) / 2.0 - 1e-10 * (1.0 + std::abs(gm)));
    };
    check([](Beamformers& dst, const Beamformers& src) { dst.F = src.F; });
    check([](Beamformers& dst, const Beamformers& src) { dst.f_ul = src.f_ul; });
    check([](Beamformers& dst, const Beamformers& src) { dst.w_s = src.w_s; });
    check([](Beamformers& dst, const Beamformers& src) { dst.w_r = src.w_r; });
  }
}

}  // namespace
}  // namespace maisac
