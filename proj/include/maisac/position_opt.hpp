#ifndef MAISAC_POSITION_OPT_HPP_
#define MAISAC_POSITION_OPT_HPP_

#include <utility>
#include <vector>

#include "maisac/beamforming.hpp"
#include "maisac/channel.hpp"
#include "maisac/fp_core.hpp"

namespace maisac {

namespace detail {

/// Position-independent products reused across all coordinate derivatives of
/// one gradient evaluation.
struct GhatGradWorkspace {
  struct Combiner {
    CVec w;
    double quad_coeff = 0.0;            // weight * |xi|^2 factor of the bracket
    std::vector<CRowVec> q_clutter;     // c_c (w^H b_c)(a_c^H F)
    CRowVec q_target;
    CRowVec row_si;                     // w^H H_si^H F
    CVec s_ul;                          // (w^H h_j^H) f_j
  };
  std::vector<Combiner> combiners;      // K_ul entries then the sensing chain
  CMat t_dl;                            // t(k, j) = h_k^H f_j
  CVec f_xis;                           // F * xi_s
};

inline GhatGradWorkspace make_grad_workspace(const ChannelSet& cs, const Beamformers& bf,
                                             const AuxVars& aux, const Weights& w) {
  GhatGradWorkspace ws;
  auto make_combiner = [&](const CVec& comb, double coeff) {
    GhatGradWorkspace::Combiner c;
    c.w = comb;
    c.quad_coeff = coeff;
    for (int i = 0; i < cs.n_clutter(); ++i) {
      c.q_clutter.push_back(cs.c_c[i] * (comb.adjoint() * cs.b_c[i])(0, 0) *
                            (cs.a_c[i].adjoint() * bf.F));
    }
    c.q_target = cs.c_s * (comb.adjoint() * cs.b_s)(0, 0) * (cs.a_s.adjoint() * bf.F);
    c.row_si = comb.adjoint() * cs.h_si.adjoint() * bf.F;
    c.s_ul.resize(cs.k_ul());
    for (int j = 0; j < cs.k_ul(); ++j) {
      c.s_ul[j] = (comb.adjoint() * cs.h_ul[j].adjoint())(0, 0) * bf.f_ul[j];
    }
    return c;
  };
  for (int k = 0; k < cs.k_ul(); ++k) {
    ws.combiners.push_back(make_combiner(bf.w_r.col(k), w.ul * std::norm(aux.xi_ul[k])));
  }
  ws.combiners.push_back(make_combiner(bf.w_s, w.s * aux.xi_s.squaredNorm()));

  ws.t_dl.resize(cs.k_dl(), cs.k_dl());
  for (int k = 0; k < cs.k_dl(); ++k) {
    for (int j = 0; j < cs.k_dl(); ++j) ws.t_dl(k, j) = (cs.h_dl[k].adjoint() * bf.F.col(j))(0, 0);
  }
  ws.f_xis = bf.F * aux.xi_s;
  return ws;
}

inline double re_dot(const CRowVec& a, const CRowVec& da) {
  return (a.conjugate().cwiseProduct(da)).sum().real();
}

/// Directional derivative of the transformed objective along one antenna
/// coordinate, given the corresponding channel derivatives.
inline double ghat_position_dir(const ChannelSet& cs, const ChannelDerivatives& d,
                                const Beamformers& bf, const AuxVars& aux, const Weights& w,
                                const GhatGradWorkspace& ws) {
  const int kdl = cs.k_dl();
  const int kul = cs.k_ul();
  const bool tx = d.side == ArraySide::kTx;
  double g = 0.0;

  if (tx) {
    for (int k = 0; k < kdl; ++k) {
      const CRowVec dhf = d.dh_dl[k].adjoint() * bf.F;  // dh_k^H f_j for all j
      double term = 2.0 * std::sqrt(1.0 + aux.mu[k]) * (aux.xi_dl[k] * dhf(0, k)).real();
      double quad = 0.0;
      for (int j = 0; j < kdl; ++j) quad += 2.0 * (std::conj(ws.t_dl(k, j)) * dhf(0, j)).real();
      g += w.dl * (term - std::norm(aux.xi_dl[k]) * quad);
    }
  }

  // Receive-chain brackets: uplink combiners followed by the sensing chain.
  for (int ci = 0; ci < static_cast<int>(ws.combiners.size()); ++ci) {
    const auto& c = ws.combiners[ci];
    if (c.quad_coeff == 0.0) continue;
    double dquad = 0.0;
    for (int i = 0; i < cs.n_clutter(); ++i) {
      CRowVec dq;
      if (tx) {
        dq = cs.c_c[i] * (c.w.adjoint() * cs.b_c[i])(0, 0) * (d.da_c[i].adjoint() * bf.F);
      } else {
        dq = cs.c_c[i] * (c.w.adjoint() * d.db_c[i])(0, 0) * (cs.a_c[i].adjoint() * bf.F);
      }
      dquad += 2.0 * re_dot(c.q_clutter[i], dq);
    }
    {
      CRowVec dq;
      if (tx) {
        dq = cs.c_s * (c.w.adjoint() * cs.b_s)(0, 0) * (d.da_s.adjoint() * bf.F);
      } else {
        dq = cs.c_s * (c.w.adjoint() * d.db_s)(0, 0) * (cs.a_s.adjoint() * bf.F);
      }
      dquad += 2.0 * re_dot(c.q_target, dq);
    }
    {
      const CRowVec drow = c.w.adjoint() * d.dh_si.adjoint() * bf.F;
      dquad += 2.0 * re_dot(c.row_si, drow);
    }
    if (!tx) {
      for (int j = 0; j < kul; ++j) {
        const cplx ds = (c.w.adjoint() * d.dh_ul[j].adjoint())(0, 0) * bf.f_ul[j];
        dquad += 2.0 * (std::conj(c.s_ul[j]) * ds).real();
      }
    }
    g -= c.quad_coeff * dquad;
  }

  if (!tx) {
    for (int k = 0; k < kul; ++k) {
      const cplx dlin = aux.xi_ul[k] * bf.f_ul[k] *
                        (bf.w_r.col(k).adjoint() * d.dh_ul[k].adjoint())(0, 0);
      g += w.ul * 2.0 * std::sqrt(1.0 + aux.mu[kdl + k]) * dlin.real();
    }
  }

  {
    const double mu = aux.mu[kdl + kul];
    cplx dz;
    if (tx) {
      dz = cs.c_s * (bf.w_s.adjoint() * cs.b_s)(0, 0) * (d.da_s.adjoint() * ws.f_xis)(0, 0);
    } else {
      dz = cs.c_s * (bf.w_s.adjoint() * d.db_s)(0, 0) * (cs.a_s.adjoint() * ws.f_xis)(0, 0);
    }
    g += w.s * 2.0 * std::sqrt(1.0 + mu) * dz.real();
  }

  return g / kLn2;
}

}  // namespace detail

/// Analytic gradient of the transformed objective over the chosen array's
/// antenna coordinates. Returns an N x 2 matrix of (d/dx, d/dy) rows.
inline Mat grad_positions(const ChannelRealization& r, const AntennaLayout& layout,
                          const ScenarioConfig& cfg, const Beamformers& bf, const AuxVars& aux,
                          ArraySide side) {
  const ChannelSet cs = build_channels(r, layout, cfg.d_si);
  const Weights w = weights_of(cfg);
  const detail::GhatGradWorkspace ws = detail::make_grad_workspace(cs, bf, aux, w);
  const Eigen::Index n = side == ArraySide::kTx ? layout.tx.rows() : layout.rx.rows();
  Mat grad(n, 2);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Axis axis : {Axis::kX, Axis::kY}) {
      const ChannelDerivatives d = channel_derivatives(r, layout, cfg.d_si, side, m, axis);
      grad(m, static_cast<int>(axis)) = detail::ghat_position_dir(cs, d, bf, aux, w, ws);
    }
  }
  return grad;
}

struct GaResult {
  AntennaLayout layout;
  double g_hat = 0.0;
  double displacement = 0.0;  // total antenna movement over the phase
  int iters = 0;
};

/// Gradient ascent on one array's positions with beamformers and auxiliaries
/// frozen. A candidate step is retried with a 0.9-shrunk step whenever it
/// leaves the feasible set or lowers the objective, so accepted iterates are
/// feasible and non-decreasing by construction.
inline GaResult ga_positions(const ChannelRealization& r, AntennaLayout layout,
                             const Beamformers& bf, const AuxVars& aux,
                             const ScenarioConfig& cfg, ArraySide side) {
  // The objective curvature over positions is of order (2*pi/lambda)^2, so
  // the accepting step can be several orders below ga_step_init.
  constexpr int kMaxBackoffs = 300;
  const Weights w = weights_of(cfg);
  const double sigma2 = cfg.sigma2();
  auto eval = [&](const AntennaLayout& l) {
    return eval_g_hat(build_channels(r, l, cfg.d_si), bf, aux, w, sigma2);
  };

  GaResult res;
  double step = cfg.ga_step_init;
  double current = eval(layout);
  for (int it = 0; it < cfg.max_ga_iters; ++it) {
    const Mat grad = grad_positions(r, layout, cfg, bf, aux, side);
    const double gnorm = grad.norm();
    if (gnorm == 0.0) break;
    const Mat direction = grad / (1.0 + gnorm);

    bool accepted = false;
    double cand_g = current;
    AntennaLayout cand = layout;
    for (int back = 0; back < kMaxBackoffs; ++back) {
      Positions& p = side == ArraySide::kTx ? cand.tx : cand.rx;
      p = (side == ArraySide::kTx ? layout.tx : layout.rx) + step * direction;
      if (check_layout(cand, cfg)) {
        cand_g = eval(cand);
        if (cand_g >= current) {
          accepted = true;
          break;
        }
      }
      step *= 0.9;
    }
    if (!accepted) break;

    res.displacement += step * direction.rowwise().norm().sum();
    layout = std::move(cand);
    res.iters = it + 1;
    const double gain = cand_g - current;
    current = cand_g;
    if (gain < cfg.tol_obj * std::max(1.0, std::abs(current))) break;
  }
  res.layout = std::move(layout);
  res.g_hat = current;
  return res;
}

struct AoTracePoint {
  double g = 0.0;
  double g_hat = 0.0;
  double tx_displacement = 0.0;
  double rx_displacement = 0.0;
};

struct AoResult {
  AntennaLayout layout;
  Beamformers bf;
  double g = 0.0;
  std::vector<AoTracePoint> trace;
  int outer_iters = 0;
  bool converged = false;
};

namespace detail {

/// One wavelength-scale "bold" reposition of one array side: step along the
/// gradient direction over a geometric ladder of lengths, re-optimize the
/// beamformers at each candidate, and accept the first candidate whose
/// re-optimized objective does not decrease. The surrogate with frozen
/// auxiliaries only certifies sub-micrometre steps (its curvature is of order
/// (2*pi/lambda)^2), while the joint landscape keeps improving at lambda-scale
/// moves once the beamformers adapt; acceptance against the re-optimized
/// objective keeps the outer trace monotone at those scales.
inline bool bold_move(const ChannelRealization& r, AntennaLayout& layout,
                      InnerLoopState& st, double& g, const ScenarioConfig& cfg,
                      ArraySide side, double& displacement) {
  const Mat grad = grad_positions(r, layout, cfg, st.bf, st.aux, side);
  const double gnorm = grad.norm();
  if (gnorm == 0.0) return false;
  const Mat dir = grad / gnorm;
  for (int k = 0; k < 5; ++k) {
    const double t = cfg.wavelength / static_cast<double>(1 << k);
    AntennaLayout cand = layout;
    Positions& p = side == ArraySide::kTx ? cand.tx : cand.rx;
    p = (side == ArraySide::kTx ? layout.tx : layout.rx) + t * dir;
    if (!check_layout(cand, cfg)) continue;
    InnerLoopState st2 = inner_loop(build_channels(r, cand, cfg.d_si), cfg, st.bf);
    const double g2 = st2.trace.empty() ? g : st2.trace.back().g;
    if (g2 >= g) {
      displacement += t * dir.rowwise().norm().sum();
      layout = std::move(cand);
      st = std::move(st2);
      g = g2;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Alternating optimization of beamformers and antenna positions. Each outer
/// iteration runs transmit GA, receive GA, re-optimizes beamformers
/// warm-started from the previous solution, then attempts one bold
/// wavelength-scale move per side accepted only if the re-optimized objective
/// does not decrease. The objective trace is therefore non-decreasing.
inline AoResult ao_loop(const ChannelRealization& r, AntennaLayout init_layout,
                        const ScenarioConfig& cfg, int max_outer = -1) {
  if (max_outer < 0) max_outer = cfg.max_ao_iters;
  const Weights w = weights_of(cfg);
  AoResult res;
  res.layout = std::move(init_layout);

  ChannelSet cs = build_channels(r, res.layout, cfg.d_si);
  InnerLoopState st = inner_loop(cs, cfg);
  res.bf = st.bf;
  double g = st.trace.empty() ? objective(cs, st.bf, w, cfg.sigma2()) : st.trace.back().g;
  res.trace.push_back({g, g, 0.0, 0.0});

  for (int outer = 0; outer < max_outer; ++outer) {
    GaResult ga_tx = ga_positions(r, res.layout, st.bf, st.aux, cfg, ArraySide::kTx);
    res.layout = std::move(ga_tx.layout);
    GaResult ga_rx = ga_positions(r, res.layout, st.bf, st.aux, cfg, ArraySide::kRx);
    res.layout = std::move(ga_rx.layout);

    cs = build_channels(r, res.layout, cfg.d_si);
    st = inner_loop(cs, cfg, st.bf);
    double g_new = st.trace.empty() ? g : st.trace.back().g;

    double tx_disp = ga_tx.displacement;
    double rx_disp = ga_rx.displacement;
    const bool bold_tx =
        detail::bold_move(r, res.layout, st, g_new, cfg, ArraySide::kTx, tx_disp);
    const bool bold_rx =
        detail::bold_move(r, res.layout, st, g_new, cfg, ArraySide::kRx, rx_disp);

    res.bf = st.bf;
    res.trace.push_back({g_new, g_new, tx_disp, rx_disp});
    res.outer_iters = outer + 1;

    if (!bold_tx && !bold_rx &&
        std::abs(g_new - g) < cfg.tol_obj * std::max(1.0, std::abs(g))) {
      g = g_new;
      res.converged = true;
      break;
    }
    g = g_new;
  }
  res.g = g;
  return res;
}

}  // namespace maisac

#endif  // MAISAC_POSITION_OPT_HPP_
