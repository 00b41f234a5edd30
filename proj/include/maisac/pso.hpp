#ifndef MAISAC_PSO_HPP_
#define MAISAC_PSO_HPP_

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "maisac/position_opt.hpp"
#include "maisac/rng.hpp"

namespace maisac {

/// Linear inertia schedule over iterations 0..iters-1.
inline double pso_inertia(const ScenarioConfig& cfg, int iter, int iters) {
  if (iters <= 1) return cfg.pso_w_max;
  return cfg.pso_w_max -
         (cfg.pso_w_max - cfg.pso_w_min) * static_cast<double>(iter) / (iters - 1);
}

/// Clamp every coordinate of both arrays into the feasible region.
inline AntennaLayout pso_project(AntennaLayout layout, const ScenarioConfig& cfg) {
  auto clamp_array = [&](Positions& p) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      p(i, 0) = std::clamp(p(i, 0), cfg.region_min_x, cfg.region_max_x);
      p(i, 1) = std::clamp(p(i, 1), cfg.region_min_y, cfg.region_max_y);
    }
  };
  clamp_array(layout.tx);
  clamp_array(layout.rx);
  return layout;
}

/// Standard PSO velocity update with per-coordinate random factors. `rng`
/// is the particle's dedicated velocity stream, consumed in a fixed order.
inline void pso_velocity_update(Positions& v, const Positions& p, const Positions& p_best,
                                const Positions& g_best, double omega, const ScenarioConfig& cfg,
                                Rng& rng) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      v(i, j) = omega * v(i, j) + cfg.pso_c1 * r1 * (p_best(i, j) - p(i, j)) +
                cfg.pso_c2 * r2 * (g_best(i, j) - p(i, j));
    }
  }
}

struct PsoFitness {
  double value = 0.0;
  AntennaLayout refined;  // memetic replacement for the particle position
  Beamformers bf;
};

/// Fitness of a candidate layout: -inf when the minimum-distance constraint
/// is violated, otherwise the objective after a short alternating refinement
/// (whose inner beamformer optimization runs to convergence). The refined
/// layout replaces the particle position (memetic step).
inline PsoFitness pso_fitness(const ChannelRealization& r, const AntennaLayout& layout,
                              const ScenarioConfig& cfg) {
  PsoFitness fit;
  if (!check_layout(layout, cfg)) {
    fit.value = -std::numeric_limits<double>::infinity();
    fit.refined = layout;
    return fit;
  }
  AoResult ao = ao_loop(r, layout, cfg, cfg.max_ao_iters_pso);
  fit.value = ao.g;
  fit.refined = std::move(ao.layout);
  fit.bf = std::move(ao.bf);
  return fit;
}

struct PsoResult {
  AntennaLayout layout;
  Beamformers bf;
  double g = 0.0;
  std::vector<double> trace;  // best fitness after each iteration
};

/// Particle swarm over joint tx/rx layouts with memetic local refinement.
/// When `init_layouts` supplies fewer layouts than particles, the remaining
/// particles are drawn from the deterministic "pso_init" stream. The final
/// beamformers are the ones produced by the refinement of the best particle,
/// so no separate re-optimization pass is needed.
inline PsoResult pso_run(const ChannelRealization& r, const ScenarioConfig& cfg,
                         const std::vector<AntennaLayout>& init_layouts = {}) {
  const int np = cfg.n_particles;
  const int iters = cfg.pso_iters;

  std::vector<AntennaLayout> pos(np);
  std::vector<Positions> vel_tx(np), vel_rx(np);
  std::vector<AntennaLayout> best_pos(np);
  std::vector<double> best_val(np, -std::numeric_limits<double>::infinity());
  std::vector<Rng> vel_rng;
  vel_rng.reserve(np);

  Rng init_rng(cfg.seed, "pso_init");
  for (int i = 0; i < np; ++i) {
    if (i < static_cast<int>(init_layouts.size())) {
      pos[i] = init_layouts[i];
    } else {
      pos[i] = layout_random(cfg, init_rng);
    }
    vel_tx[i] = Positions::Zero(cfg.n_tx, 2);
    vel_rx[i] = Positions::Zero(cfg.n_rx, 2);
    vel_rng.emplace_back(cfg.seed, "pso_vel", static_cast<std::uint64_t>(i));
  }

  PsoResult res;
  double g_val = -std::numeric_limits<double>::infinity();
  AntennaLayout g_pos = pos[0];
  AntennaLayout g_raw = pos[0];  // global-best position before refinement

  auto evaluate = [&](int i) {
    const AntennaLayout raw = pos[i];
    const PsoFitness fit = pso_fitness(r, pos[i], cfg);
    pos[i] = fit.refined;
    if (fit.value > best_val[i]) {
      best_val[i] = fit.value;
      best_pos[i] = pos[i];
    }
    if (fit.value > g_val) {
      g_val = fit.value;
      g_pos = pos[i];
      g_raw = raw;
      res.bf = fit.bf;
    }
  };

  for (int i = 0; i < np; ++i) evaluate(i);
  res.trace.push_back(g_val);

  for (int it = 0; it < iters; ++it) {
    const double omega = pso_inertia(cfg, it, iters);
    for (int i = 0; i < np; ++i) {
      pso_velocity_update(vel_tx[i], pos[i].tx, best_pos[i].tx, g_pos.tx, omega, cfg, vel_rng[i]);
      pso_velocity_update(vel_rx[i], pos[i].rx, best_pos[i].rx, g_pos.rx, omega, cfg, vel_rng[i]);
      AntennaLayout moved{pos[i].tx + vel_tx[i], pos[i].rx + vel_rx[i]};
      moved = pso_project(std::move(moved), cfg);
      // An unmoved particle would reproduce its cached personal best exactly;
      // skip the (deterministic) re-evaluation.
      auto same = [](const Positions& a, const Positions& b) {
        return a.rows() == b.rows() && (a.array() == b.array()).all();
      };
      if (same(moved.tx, pos[i].tx) && same(moved.rx, pos[i].rx) &&
          same(best_pos[i].tx, pos[i].tx) && same(best_pos[i].rx, pos[i].rx)) {
        continue;
      }
      pos[i] = std::move(moved);
      evaluate(i);
    }
    res.trace.push_back(g_val);
  }

  // Final polish: rerun the full-depth alternating optimization from the raw
  // (pre-refinement) position of the global best and keep whichever is better.
  if (std::isfinite(g_val) && check_layout(g_raw, cfg)) {
    AoResult fin = ao_loop(r, g_raw, cfg);
    if (fin.g >= g_val) {
      g_val = fin.g;
      g_pos = std::move(fin.layout);
      res.bf = std::move(fin.bf);
    }
  }

  res.layout = std::move(g_pos);
  res.g = g_val;
  res.trace.push_back(g_val);
  return res;
}

}  // namespace maisac

#endif  // MAISAC_PSO_HPP_
