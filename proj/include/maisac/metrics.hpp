#ifndef MAISAC_METRICS_HPP_
#define MAISAC_METRICS_HPP_

#include <json.hpp>

#include "maisac/channel.hpp"
#include "maisac/core.hpp"
#include "maisac/scenario.hpp"

namespace maisac {

/// Transmit precoder, sensing combiner, uplink combiners, uplink powers.
struct Beamformers {
  CMat F;     // Nt x K_dl
  CVec w_s;   // Nr
  CMat w_r;   // Nr x K_ul
  CVec f_ul;  // K_ul
};

inline double dl_power(const Beamformers& bf) { return bf.F.squaredNorm(); }
inline double ul_power(const Beamformers& bf) { return bf.f_ul.squaredNorm(); }

/// Received powers at a combiner w: clutter echoes, target echo,
/// self-interference, and per-uplink-user signal.
struct InterferencePowers {
  double clutter = 0.0;
  double target = 0.0;
  double si = 0.0;
  Vec ul;  // K_ul entries
};

inline InterferencePowers interference_powers(const ChannelSet& cs, const CMat& F,
                                              const CVec& f_ul, const CVec& w) {
  InterferencePowers p;
  for (int c = 0; c < cs.n_clutter(); ++c) {
    const CRowVec row = cs.c_c[c] * (w.adjoint() * cs.b_c[c])(0, 0) * (cs.a_c[c].adjoint() * F);
    p.clutter += row.squaredNorm();
  }
  const CRowVec srow = cs.c_s * (w.adjoint() * cs.b_s)(0, 0) * (cs.a_s.adjoint() * F);
  p.target = srow.squaredNorm();
  p.si = (w.adjoint() * cs.h_si.adjoint() * F).squaredNorm();
  p.ul.resize(cs.k_ul());
  for (int j = 0; j < cs.k_ul(); ++j) {
    p.ul[j] = std::norm((w.adjoint() * cs.h_ul[j].adjoint())(0, 0) * f_ul[j]);
  }
  return p;
}

inline double sinr_dl(const ChannelSet& cs, const CMat& F, int k, double sigma2) {
  double den = sigma2;
  for (int j = 0; j < cs.k_dl(); ++j) {
    if (j != k) den += std::norm((cs.h_dl[k].adjoint() * F.col(j))(0, 0));
  }
  for (int j = 0; j < cs.k_ul(); ++j) den += std::norm(cs.g(j, k));
  return std::norm((cs.h_dl[k].adjoint() * F.col(k))(0, 0)) / den;
}

inline double sinr_ul(const ChannelSet& cs, const Beamformers& bf, int k, double sigma2) {
  const CVec w = bf.w_r.col(k);
  const InterferencePowers p = interference_powers(cs, bf.F, bf.f_ul, w);
  // A shut-off chain (zero power or zero combiner) carries no signal.
  if (p.ul[k] == 0.0) return 0.0;
  double den = p.clutter + p.target + p.si + w.squaredNorm() * sigma2;
  for (int j = 0; j < cs.k_ul(); ++j) {
    if (j != k) den += p.ul[j];
  }
  return p.ul[k] / den;
}

inline double scnr(const ChannelSet& cs, const Beamformers& bf, double sigma2) {
  const InterferencePowers p = interference_powers(cs, bf.F, bf.f_ul, bf.w_s);
  if (p.target == 0.0) return 0.0;
  const double den = p.clutter + p.si + p.ul.sum() + bf.w_s.squaredNorm() * sigma2;
  return p.target / den;
}

struct Weights {
  double dl = 0.3;
  double ul = 0.3;
  double s = 0.4;
};

inline Weights weights_of(const ScenarioConfig& cfg) { return {cfg.w_dl, cfg.w_ul, cfg.w_s}; }

struct Metrics {
  Vec sinr_dl;
  Vec sinr_ul;
  double scnr = 0.0;
  Vec r_dl;
  Vec r_ul;
  double r_s = 0.0;
  double objective = 0.0;
};

inline Metrics compute_metrics(const ChannelSet& cs, const Beamformers& bf, const Weights& w,
                               double sigma2) {
  Metrics m;
  m.sinr_dl.resize(cs.k_dl());
  m.r_dl.resize(cs.k_dl());
  for (int k = 0; k < cs.k_dl(); ++k) {
    m.sinr_dl[k] = sinr_dl(cs, bf.F, k, sigma2);
    m.r_dl[k] = std::log2(1.0 + m.sinr_dl[k]);
  }
  m.sinr_ul.resize(cs.k_ul());
  m.r_ul.resize(cs.k_ul());
  for (int k = 0; k < cs.k_ul(); ++k) {
    m.sinr_ul[k] = sinr_ul(cs, bf, k, sigma2);
    m.r_ul[k] = std::log2(1.0 + m.sinr_ul[k]);
  }
  m.scnr = scnr(cs, bf, sigma2);
  m.r_s = std::log2(1.0 + m.scnr);
  m.objective = w.dl * m.r_dl.sum() + w.ul * m.r_ul.sum() + w.s * m.r_s;
  return m;
}

/// Weighted sum of rates and sensing mutual information, in bits.
inline double objective(const ChannelSet& cs, const Beamformers& bf, const Weights& w,
                        double sigma2) {
  return compute_metrics(cs, bf, w, sigma2).objective;
}

inline nlohmann::json metrics_to_json(const Metrics& m) {
  auto vec = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  return nlohmann::json{{"sinr_dl", vec(m.sinr_dl)}, {"sinr_ul", vec(m.sinr_ul)},
                        {"scnr", m.scnr},            {"r_dl", vec(m.r_dl)},
                        {"r_ul", vec(m.r_ul)},       {"r_s", m.r_s},
                        {"objective", m.objective}};
}

}  // namespace maisac

#endif  // MAISAC_METRICS_HPP_
