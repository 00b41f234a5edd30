#ifndef MAISAC_BEAMFORMING_HPP_
#define MAISAC_BEAMFORMING_HPP_

#include <vector>

#include "maisac/fp_core.hpp"
#include "maisac/rng.hpp"

namespace maisac {

namespace detail {

/// Hermitian solve with a small ridge retry when the factorization fails.
inline CVec hermitian_solve(const CMat& A, const CVec& b) {
  Eigen::LDLT<CMat> ldlt(A);
  if (ldlt.info() == Eigen::Success) {
    CVec x = ldlt.solve(b);
    if (x.allFinite()) return x;
  }
  const double ridge = 1e-12 * (A.trace().real() / static_cast<double>(A.rows()) + 1.0);
  CMat reg = A;
  reg.diagonal().array() += ridge;
  return CMat(reg).ldlt().solve(b);
}

/// Shared quadratic operator of the transmit precoder subproblem: the
/// gradient-consistent form sums |xi|^2-weighted outer products over all
/// downlink users and both receive chains.
inline CMat precoder_quadratic(const ChannelSet& cs, const Beamformers& bf, const AuxVars& aux,
                               const Weights& w) {
  const int nt = cs.n_tx();
  CMat lambda = CMat::Zero(nt, nt);

  auto add_rx_terms = [&](const CVec& comb, double coeff) {
    if (coeff == 0.0) return;
    for (int c = 0; c < cs.n_clutter(); ++c) {
      const double gain = std::norm(cs.c_c[c]) * std::norm((comb.adjoint() * cs.b_c[c])(0, 0));
      lambda += coeff * gain * (cs.a_c[c] * cs.a_c[c].adjoint());
    }
    const double gain_s = std::norm(cs.c_s) * std::norm((comb.adjoint() * cs.b_s)(0, 0));
    lambda += coeff * gain_s * (cs.a_s * cs.a_s.adjoint());
    const CVec si = cs.h_si * comb;  // (H_si w); SI power is |w^H H_si^H f|^2
    lambda += coeff * (si * si.adjoint());
  };

  for (int k = 0; k < cs.k_ul(); ++k) {
    add_rx_terms(bf.w_r.col(k), w.ul * std::norm(aux.xi_ul[k]));
  }
  add_rx_terms(bf.w_s, w.s * aux.xi_s.squaredNorm());
  for (int j = 0; j < cs.k_dl(); ++j) {
    lambda += w.dl * std::norm(aux.xi_dl[j]) * (cs.h_dl[j] * cs.h_dl[j].adjoint());
  }
  return lambda;
}

inline CVec precoder_linear(const ChannelSet& cs, const Beamformers& bf, const AuxVars& aux,
                            const Weights& w, int k) {
  const int last = cs.k_dl() + cs.k_ul();
  CVec phi = w.dl * std::sqrt(1.0 + aux.mu[k]) * std::conj(aux.xi_dl[k]) * cs.h_dl[k];
  phi += w.s * std::sqrt(1.0 + aux.mu[last]) * std::conj(cs.c_s) * std::conj(aux.xi_s[k]) *
         (cs.b_s.adjoint() * bf.w_s)(0, 0) * cs.a_s;
  return phi;
}

}  // namespace detail

/// Closed-form transmit precoder under the downlink power budget. tau = 0 is
/// accepted when the budget is slack; otherwise tau is found by bisection so
/// that |tr(F^H F) - P_dl| < tol_power * P_dl.
inline CMat update_F(const ChannelSet& cs, const Beamformers& bf, const AuxVars& aux,
                     const Weights& w, double sigma2, double p_dl, double tol_power) {
  const int nt = cs.n_tx();
  const int kdl = cs.k_dl();
  const CMat lambda = detail::precoder_quadratic(cs, bf, aux, w);
  std::vector<CVec> phi(kdl);
  for (int k = 0; k < kdl; ++k) phi[k] = detail::precoder_linear(cs, bf, aux, w, k);

  auto solve_at = [&](double tau) {
    CMat a = lambda;
    a.diagonal().array() += tau;
    CMat F(nt, kdl);
    for (int k = 0; k < kdl; ++k) F.col(k) = detail::hermitian_solve(a, phi[k]);
    return F;
  };

  const double eps = tol_power * p_dl;
  CMat F = solve_at(0.0);
  if (F.squaredNorm() <= p_dl + eps) return F;

  double lo = 0.0, hi = 1.0;
  while (solve_at(hi).squaredNorm() >= p_dl) {
    hi *= 2.0;
    if (hi > 1e30) throw std::runtime_error("update_F: bisection bracket not found");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    F = solve_at(mid);
    const double p = F.squaredNorm();
    if (std::abs(p - p_dl) < eps || mid == lo || mid == hi) break;
    (p > p_dl ? lo : hi) = mid;
  }
  // When the interval collapses before the power tolerance is met, fall back
  // to the feasible (under-budget) side.
  if (F.squaredNorm() > p_dl + eps) F = solve_at(hi);
  return F;
}

/// Closed-form uplink power coefficients under the uplink power budget.
inline CVec update_f_ul(const ChannelSet& cs, const Beamformers& bf, const AuxVars& aux,
                        const Weights& w, double p_ul, double tol_power) {
  const int kul = cs.k_ul();
  if (kul == 0) return CVec(0);
  Vec lambda(kul);
  CVec phi(kul);
  for (int k = 0; k < kul; ++k) {
    double l = w.s * aux.xi_s.squaredNorm() *
               std::norm((bf.w_s.adjoint() * cs.h_ul[k].adjoint())(0, 0));
    for (int j = 0; j < kul; ++j) {
      l += w.ul * std::norm(aux.xi_ul[j] * (bf.w_r.col(j).adjoint() * cs.h_ul[k].adjoint())(0, 0));
    }
    lambda[k] = l;
    phi[k] = w.ul * std::sqrt(1.0 + aux.mu[cs.k_dl() + k]) * aux.xi_ul[k] *
             (bf.w_r.col(k).adjoint() * cs.h_ul[k].adjoint())(0, 0);
  }

  auto solve_at = [&](double tau) {
    CVec f(kul);
    for (int k = 0; k < kul; ++k) {
      const double den = lambda[k] + tau;
      f[k] = den > 0.0 ? std::conj(phi[k] / den) : cplx(0.0, 0.0);
    }
    return f;
  };

  const double eps = tol_power * p_ul;
  CVec f = solve_at(0.0);
  if (f.squaredNorm() <= p_ul + eps) return f;

  double lo = 0.0, hi = 1.0;
  while (solve_at(hi).squaredNorm() >= p_ul) {
    hi *= 2.0;
    if (hi > 1e30) throw std::runtime_error("update_f_ul: bisection bracket not found");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    f = solve_at(mid);
    const double p = f.squaredNorm();
    if (std::abs(p - p_ul) < eps || mid == lo || mid == hi) break;
    (p > p_ul ? lo : hi) = mid;
  }
  if (f.squaredNorm() > p_ul + eps) f = solve_at(hi);
  return f;
}

namespace detail {

/// Common Gram matrix of the receive-combiner subproblems (noise term included,
/// |xi|^2 scaling left to the caller).
inline CMat combiner_gram(const ChannelSet& cs, const Beamformers& bf, double sigma2) {
  const int nr = cs.n_rx();
  CMat m = CMat::Zero(nr, nr);
  for (int c = 0; c < cs.n_clutter(); ++c) {
    const double gain = std::norm(cs.c_c[c]) * (cs.a_c[c].adjoint() * bf.F).squaredNorm();
    m += gain * (cs.b_c[c] * cs.b_c[c].adjoint());
  }
  m += std::norm(cs.c_s) * (cs.a_s.adjoint() * bf.F).squaredNorm() *
       (cs.b_s * cs.b_s.adjoint());
  for (int j = 0; j < cs.k_ul(); ++j) {
    m += std::norm(bf.f_ul[j]) * (cs.h_ul[j].adjoint() * cs.h_ul[j]);
  }
  const CMat si = cs.h_si.adjoint() * bf.F;  // Nr x K_dl
  m += si * si.adjoint();
  m.diagonal().array() += sigma2;
  return m;
}

}  // namespace detail

/// Unconstrained MMSE-style combiner for uplink user k. Returns zero when the
/// coupling auxiliary vanishes (the objective is then flat in w).
inline CVec update_w_r(const ChannelSet& cs, const Beamformers& bf, const AuxVars& aux,
                       double sigma2, int k) {
  const double xi2 = std::norm(aux.xi_ul[k]);
  if (xi2 == 0.0) return CVec::Zero(cs.n_rx());
  const CMat psi = xi2 * detail::combiner_gram(cs, bf, sigma2);
  const CVec gamma_h = std::sqrt(1.0 + aux.mu[cs.k_dl() + k]) * aux.xi_ul[k] * bf.f_ul[k] *
                       cs.h_ul[k].adjoint();
  return detail::hermitian_solve(psi, gamma_h);
}

inline CVec update_w_s(const ChannelSet& cs, const Beamformers& bf, const AuxVars& aux,
                       double sigma2) {
  const double xi2 = aux.xi_s.squaredNorm();
  if (xi2 == 0.0) return CVec::Zero(cs.n_rx());
  const CMat psi = xi2 * detail::combiner_gram(cs, bf, sigma2);
  const cplx scale = std::sqrt(1.0 + aux.mu[cs.k_dl() + cs.k_ul()]) * cs.c_s *
                     (cs.a_s.adjoint() * bf.F * aux.xi_s)(0, 0);
  const CVec gamma_h = scale * cs.b_s;
  return detail::hermitian_solve(psi, gamma_h);
}

/// Deterministic random initialization scaled to the power budgets.
inline Beamformers init_beamformers(const ScenarioConfig& cfg, Rng& rng) {
  Beamformers bf;
  bf.F.resize(cfg.n_tx, cfg.k_dl);
  for (Eigen::Index j = 0; j < bf.F.cols(); ++j) {
    for (Eigen::Index i = 0; i < bf.F.rows(); ++i) bf.F(i, j) = rng.cgauss();
  }
  if (bf.F.size() > 0) bf.F *= std::sqrt(cfg.p_dl() / bf.F.squaredNorm());
  bf.f_ul = CVec::Constant(cfg.k_ul, cfg.k_ul > 0 ? std::sqrt(cfg.p_ul() / cfg.k_ul) : 0.0);
  auto random_unit = [&](int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.cgauss();
    return CVec(v / v.norm());
  };
  bf.w_s = random_unit(cfg.n_rx);
  bf.w_r.resize(cfg.n_rx, cfg.k_ul);
  for (int k = 0; k < cfg.k_ul; ++k) bf.w_r.col(k) = random_unit(cfg.n_rx);
  return bf;
}

struct InnerTracePoint {
  double g_hat = 0.0;
  double g = 0.0;
  double power_dl = 0.0;
  double power_ul = 0.0;
};

struct InnerLoopState {
  Beamformers bf;
  AuxVars aux;
  std::vector<InnerTracePoint> trace;
  int iters = 0;
  bool converged = false;
};

/// One full block sweep: F, f_ul, w_r, w_s, then mu, then xi.
inline void sweep_once(const ChannelSet& cs, Beamformers& bf, AuxVars& aux,
                       const ScenarioConfig& cfg, const Weights& w) {
  const double sigma2 = cfg.sigma2();
  bf.F = update_F(cs, bf, aux, w, sigma2, cfg.p_dl(), cfg.tol_power);
  bf.f_ul = update_f_ul(cs, bf, aux, w, cfg.p_ul(), cfg.tol_power);
  for (int k = 0; k < cs.k_ul(); ++k) bf.w_r.col(k) = update_w_r(cs, bf, aux, sigma2, k);
  bf.w_s = update_w_s(cs, bf, aux, sigma2);
  const Vec mu = update_mu(cs, bf, sigma2).mu;
  aux.mu = mu;
  update_xi(cs, bf, aux, sigma2);
}

/// Alternating beamformer/auxiliary optimization at fixed antenna positions.
inline InnerLoopState inner_loop(const ChannelSet& cs, const ScenarioConfig& cfg,
                                 Beamformers init) {
  const Weights w = weights_of(cfg);
  const double sigma2 = cfg.sigma2();
  InnerLoopState st;
  st.bf = std::move(init);
  st.aux = update_aux(cs, st.bf, sigma2);

  double prev = eval_g_hat(cs, st.bf, st.aux, w, sigma2);
  for (int it = 0; it < cfg.max_inner_iters; ++it) {
    sweep_once(cs, st.bf, st.aux, cfg, w);
    const double ghat = eval_g_hat(cs, st.bf, st.aux, w, sigma2);
    st.trace.push_back({ghat, objective(cs, st.bf, w, sigma2), dl_power(st.bf), ul_power(st.bf)});
    st.iters = it + 1;
    if (std::abs(ghat - prev) < cfg.tol_obj * std::max(1.0, std::abs(prev))) {
      st.converged = true;
      break;
    }
    prev = ghat;
  }
  return st;
}

/// inner_loop with the standard deterministic initialization stream.
inline InnerLoopState inner_loop(const ChannelSet& cs, const ScenarioConfig& cfg) {
  Rng rng(cfg.seed, "bf_init");
  return inner_loop(cs, cfg, init_beamformers(cfg, rng));
}

}  // namespace maisac

#endif  // MAISAC_BEAMFORMING_HPP_
