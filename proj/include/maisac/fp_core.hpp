#ifndef MAISAC_FP_CORE_HPP_
#define MAISAC_FP_CORE_HPP_

#include "maisac/metrics.hpp"

namespace maisac {

/// Fractional-programming auxiliary variables. mu stacks the K_dl downlink
/// SINRs, the K_ul uplink SINRs, and the SCNR, in that order.
struct AuxVars {
  Vec mu;      // K_dl + K_ul + 1
  CVec xi_dl;  // K_dl
  CVec xi_ul;  // K_ul
  CVec xi_s;   // K_dl
};

namespace detail {

/// Quadratic-bracket denominator of downlink user k: all-users signal power
/// plus uplink cross interference plus noise.
inline double dl_bracket(const ChannelSet& cs, const CMat& F, int k, double sigma2) {
  double d = sigma2;
  for (int j = 0; j < cs.k_dl(); ++j) d += std::norm((cs.h_dl[k].adjoint() * F.col(j))(0, 0));
  for (int j = 0; j < cs.k_ul(); ++j) d += std::norm(cs.g(j, k));
  return d;
}

/// Quadratic-bracket denominator at combiner w: clutter + target + SI + all
/// uplink users + scaled noise.
inline double rx_bracket(const InterferencePowers& p, const CVec& w, double sigma2) {
  return p.clutter + p.target + p.si + p.ul.sum() + w.squaredNorm() * sigma2;
}

}  // namespace detail

inline AuxVars update_mu(const ChannelSet& cs, const Beamformers& bf, double sigma2) {
  AuxVars aux;
  aux.mu.resize(cs.k_dl() + cs.k_ul() + 1);
  for (int k = 0; k < cs.k_dl(); ++k) aux.mu[k] = sinr_dl(cs, bf.F, k, sigma2);
  for (int k = 0; k < cs.k_ul(); ++k) aux.mu[cs.k_dl() + k] = sinr_ul(cs, bf, k, sigma2);
  aux.mu[cs.k_dl() + cs.k_ul()] = scnr(cs, bf, sigma2);
  return aux;
}

/// Closed-form quadratic-transform maximizers for fixed mu.
inline void update_xi(const ChannelSet& cs, const Beamformers& bf, AuxVars& aux, double sigma2) {
  const int kdl = cs.k_dl();
  const int kul = cs.k_ul();
  aux.xi_dl.resize(kdl);
  for (int k = 0; k < kdl; ++k) {
    const cplx num = (bf.F.col(k).adjoint() * cs.h_dl[k])(0, 0);
    aux.xi_dl[k] = std::sqrt(1.0 + aux.mu[k]) * num / detail::dl_bracket(cs, bf.F, k, sigma2);
  }
  aux.xi_ul.resize(kul);
  for (int k = 0; k < kul; ++k) {
    const CVec w = bf.w_r.col(k);
    const InterferencePowers p = interference_powers(cs, bf.F, bf.f_ul, w);
    const cplx num = std::conj(bf.f_ul[k] * (w.adjoint() * cs.h_ul[k].adjoint())(0, 0));
    const double bracket = detail::rx_bracket(p, w, sigma2);
    aux.xi_ul[k] =
        bracket > 0.0 ? cplx(std::sqrt(1.0 + aux.mu[kdl + k]) * num / bracket) : cplx(0.0);
  }
  const InterferencePowers ps = interference_powers(cs, bf.F, bf.f_ul, bf.w_s);
  const CRowVec srow = cs.c_s * (bf.w_s.adjoint() * cs.b_s)(0, 0) * (cs.a_s.adjoint() * bf.F);
  const double bracket_s = detail::rx_bracket(ps, bf.w_s, sigma2);
  aux.xi_s = bracket_s > 0.0
                 ? CVec(std::sqrt(1.0 + aux.mu[kdl + kul]) * srow.adjoint() / bracket_s)
                 : CVec(CVec::Zero(kdl));
}

inline AuxVars update_aux(const ChannelSet& cs, const Beamformers& bf, double sigma2) {
  AuxVars aux = update_mu(cs, bf, sigma2);
  update_xi(cs, bf, aux, sigma2);
  return aux;
}

/// Transformed objective. Evaluated in log2 units (the natural-log form
/// divided by ln 2) so it coincides with the weighted rate objective at
/// updated auxiliaries.
inline double eval_g_hat(const ChannelSet& cs, const Beamformers& bf, const AuxVars& aux,
                         const Weights& w, double sigma2) {
  const int kdl = cs.k_dl();
  const int kul = cs.k_ul();
  double g = 0.0;

  for (int k = 0; k < kdl; ++k) {
    const double mu = aux.mu[k];
    const cplx lin = aux.xi_dl[k] * (cs.h_dl[k].adjoint() * bf.F.col(k))(0, 0);
    g += w.dl * (std::log(1.0 + mu) - mu + 2.0 * std::sqrt(1.0 + mu) * lin.real() -
                 std::norm(aux.xi_dl[k]) * detail::dl_bracket(cs, bf.F, k, sigma2));
  }

  for (int k = 0; k < kul; ++k) {
    const double mu = aux.mu[kdl + k];
    const CVec wr = bf.w_r.col(k);
    const InterferencePowers p = interference_powers(cs, bf.F, bf.f_ul, wr);
    const cplx lin = aux.xi_ul[k] * bf.f_ul[k] * (wr.adjoint() * cs.h_ul[k].adjoint())(0, 0);
    g += w.ul * (std::log(1.0 + mu) - mu + 2.0 * std::sqrt(1.0 + mu) * lin.real() -
                 std::norm(aux.xi_ul[k]) * detail::rx_bracket(p, wr, sigma2));
  }

  {
    const double mu = aux.mu[kdl + kul];
    const InterferencePowers p = interference_powers(cs, bf.F, bf.f_ul, bf.w_s);
    const cplx lin = cs.c_s * (bf.w_s.adjoint() * cs.b_s)(0, 0) *
                     (cs.a_s.adjoint() * bf.F * aux.xi_s)(0, 0);
    g += w.s * (std::log(1.0 + mu) - mu + 2.0 * std::sqrt(1.0 + mu) * lin.real() -
                aux.xi_s.squaredNorm() * detail::rx_bracket(p, bf.w_s, sigma2));
  }

  return g / kLn2;
}

}  // namespace maisac

#endif  // MAISAC_FP_CORE_HPP_
