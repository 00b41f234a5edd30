#ifndef MAISAC_CHANNEL_HPP_
#define MAISAC_CHANNEL_HPP_

#include <vector>

#include "maisac/core.hpp"
#include "maisac/scenario.hpp"

namespace maisac {

enum class ArraySide { kTx, kRx };
enum class Axis { kX = 0, kY = 1 };

/// Steering vector over antenna positions for a plane wave (theta, phi):
/// entry i = exp(j * 2*pi/lambda * steering_delay(p_i)).
inline CVec steering_vector(const Positions& p, double theta, double phi, double lambda) {
  const double k = 2.0 * kPi / lambda;
  CVec a(p.rows());
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    a[i] = std::polar(1.0, k * steering_delay(p(i, 0), p(i, 1), theta, phi));
  }
  return a;
}

/// Derivative of a steering vector w.r.t. one coordinate of antenna m.
/// Nonzero only in entry m: j*k*cos(theta)sin(phi)*a_m along x,
/// j*k*sin(theta)*a_m along y.
inline CVec steering_derivative(const Positions& p, double theta, double phi, double lambda,
                                Axis axis, Eigen::Index m) {
  const double k = 2.0 * kPi / lambda;
  CVec d = CVec::Zero(p.rows());
  const double factor =
      axis == Axis::kX ? k * std::cos(theta) * std::sin(phi) : k * std::sin(theta);
  d[m] = cplx(0.0, factor) * std::polar(1.0, k * steering_delay(p(m, 0), p(m, 1), theta, phi));
  return d;
}

/// Multipath downlink channel, Nt vector.
inline CVec dl_channel(const ChannelRealization& r, const Positions& tx, int k) {
  const PathSet& ps = r.dl_paths[k];
  const int lp = static_cast<int>(ps.rho.size());
  CVec h = CVec::Zero(tx.rows());
  for (int l = 0; l < lp; ++l) {
    h += ps.rho[l] * steering_vector(tx, ps.theta[l], ps.phi[l], r.wavelength);
  }
  return std::sqrt(r.eta_dl[k] / lp) * h;
}

/// Multipath uplink channel, 1 x Nr row built from conjugated receive steering.
inline CRowVec ul_channel(const ChannelRealization& r, const Positions& rx, int k) {
  const PathSet& ps = r.ul_paths[k];
  const int lp = static_cast<int>(ps.rho.size());
  CRowVec h = CRowVec::Zero(rx.rows());
  for (int l = 0; l < lp; ++l) {
    h += ps.rho[l] * steering_vector(rx, ps.theta[l], ps.phi[l], r.wavelength).adjoint();
  }
  return std::sqrt(r.eta_ul[k] / lp) * h;
}

namespace detail {

inline double si_distance(double xt, double yt, double xr, double yr, double d_si) {
  return std::hypot(xt - xr + d_si, yt - yr);
}

inline cplx si_entry(double r, double lambda) {
  return std::sqrt(si_gain(r, lambda)) * std::polar(1.0, -2.0 * kPi * r / lambda);
}

/// d/dr of the SI entry: differentiates both amplitude and phase.
inline cplx si_entry_dr(double r, double lambda) {
  const double u = lambda / (2.0 * kPi * r);
  const double u2 = u * u;
  const double gain = 0.25 * (u2 - u2 * u2 + u2 * u2 * u2);
  const double dgain_du = 0.25 * (2.0 * u - 4.0 * u * u2 + 6.0 * u * u2 * u2);
  const double amp = std::sqrt(gain);
  const double damp = dgain_du * (-u / r) / (2.0 * amp);
  const cplx phase = std::polar(1.0, -2.0 * kPi * r / lambda);
  return (damp + cplx(0.0, -2.0 * kPi / lambda) * amp) * phase;
}

}  // namespace detail

/// Near-field self-interference channel, Nt x Nr. Entry (i, j) couples transmit
/// antenna i to receive antenna j through distance
/// r = sqrt((x_t - x_r + d_si)^2 + (y_t - y_r)^2); used as H_si^H downstream.
inline CMat si_channel(const AntennaLayout& layout, double d_si, double lambda) {
  CMat h(layout.tx.rows(), layout.rx.rows());
  for (Eigen::Index i = 0; i < layout.tx.rows(); ++i) {
    for (Eigen::Index j = 0; j < layout.rx.rows(); ++j) {
      const double r = detail::si_distance(layout.tx(i, 0), layout.tx(i, 1), layout.rx(j, 0),
                                           layout.rx(j, 1), d_si);
      if (r <= 0.0) throw std::invalid_argument("si_channel: coincident antennas after offset");
      h(i, j) = detail::si_entry(r, lambda);
    }
  }
  return h;
}

/// All channel objects for one (realization, layout) pair.
struct ChannelSet {
  std::vector<CVec> h_dl;     // Nt each
  std::vector<CRowVec> h_ul;  // 1 x Nr each
  CVec a_s;
  std::vector<CVec> a_c;
  CVec b_s;
  std::vector<CVec> b_c;
  CMat g;     // K_ul x K_dl cross-interference
  CMat h_si;  // Nt x Nr
  cplx c_s;   // sqrt(eta_s) * alpha_s
  CVec c_c;   // sqrt(eta_c) * alpha_c per clutter

  int n_tx() const { return static_cast<int>(h_si.rows()); }
  int n_rx() const { return static_cast<int>(h_si.cols()); }
  int k_dl() const { return static_cast<int>(h_dl.size()); }
  int k_ul() const { return static_cast<int>(h_ul.size()); }
  int n_clutter() const { return static_cast<int>(a_c.size()); }
};

inline ChannelSet build_channels(const ChannelRealization& r, const AntennaLayout& layout,
                                 double d_si) {
  ChannelSet cs;
  const double lambda = r.wavelength;
  for (int k = 0; k < r.k_dl(); ++k) cs.h_dl.push_back(dl_channel(r, layout.tx, k));
  for (int k = 0; k < r.k_ul(); ++k) cs.h_ul.push_back(ul_channel(r, layout.rx, k));
  cs.a_s = steering_vector(layout.tx, r.theta_ts, r.phi_ts, lambda);
  cs.b_s = steering_vector(layout.rx, r.theta_rs, r.phi_rs, lambda);
  for (int c = 0; c < r.n_clutter(); ++c) {
    cs.a_c.push_back(steering_vector(layout.tx, r.theta_tc[c], r.phi_tc[c], lambda));
    cs.b_c.push_back(steering_vector(layout.rx, r.theta_rc[c], r.phi_rc[c], lambda));
  }
  cs.g.resize(r.k_ul(), r.k_dl());
  for (int i = 0; i < r.k_ul(); ++i) {
    for (int j = 0; j < r.k_dl(); ++j) {
      cs.g(i, j) = std::sqrt(r.eta_cross(i, j)) *
                   std::polar(1.0, -2.0 * kPi * r.r_cross(i, j) / lambda);
    }
  }
  cs.h_si = si_channel(layout, d_si, lambda);
  cs.c_s = std::sqrt(r.eta_s) * r.alpha_s;
  cs.c_c.resize(r.n_clutter());
  for (int c = 0; c < r.n_clutter(); ++c) cs.c_c[c] = std::sqrt(r.eta_c[c]) * r.alpha_c[c];
  return cs;
}

/// Derivatives of every position-dependent channel object w.r.t. one
/// coordinate of one antenna. Objects on the unaffected side stay zero.
struct ChannelDerivatives {
  ArraySide side = ArraySide::kTx;
  std::vector<CVec> dh_dl;     // tx side
  CVec da_s;
  std::vector<CVec> da_c;
  std::vector<CRowVec> dh_ul;  // rx side
  CVec db_s;
  std::vector<CVec> db_c;
  CMat dh_si;                  // both sides
};

inline ChannelDerivatives channel_derivatives(const ChannelRealization& r,
                                              const AntennaLayout& layout, double d_si,
                                              ArraySide side, Eigen::Index m, Axis axis) {
  ChannelDerivatives d;
  d.side = side;
  const double lambda = r.wavelength;
  const Eigen::Index nt = layout.tx.rows();
  const Eigen::Index nr = layout.rx.rows();
  d.dh_si = CMat::Zero(nt, nr);

  if (side == ArraySide::kTx) {
    for (int k = 0; k < r.k_dl(); ++k) {
      const PathSet& ps = r.dl_paths[k];
      const int lp = static_cast<int>(ps.rho.size());
      CVec dh = CVec::Zero(nt);
      for (int l = 0; l < lp; ++l) {
        dh += ps.rho[l] * steering_derivative(layout.tx, ps.theta[l], ps.phi[l], lambda, axis, m);
      }
      d.dh_dl.push_back(std::sqrt(r.eta_dl[k] / lp) * dh);
    }
    d.da_s = steering_derivative(layout.tx, r.theta_ts, r.phi_ts, lambda, axis, m);
    for (int c = 0; c < r.n_clutter(); ++c) {
      d.da_c.push_back(steering_derivative(layout.tx, r.theta_tc[c], r.phi_tc[c], lambda, axis, m));
    }
    for (Eigen::Index j = 0; j < nr; ++j) {
      const double xt = layout.tx(m, 0), yt = layout.tx(m, 1);
      const double xr = layout.rx(j, 0), yr = layout.rx(j, 1);
      const double rr = detail::si_distance(xt, yt, xr, yr, d_si);
      const double dr =
          axis == Axis::kX ? (xt - xr + d_si) / rr : (yt - yr) / rr;
      d.dh_si(m, j) = detail::si_entry_dr(rr, lambda) * dr;
    }
  } else {
    for (int k = 0; k < r.k_ul(); ++k) {
      const PathSet& ps = r.ul_paths[k];
      const int lp = static_cast<int>(ps.rho.size());
      CRowVec dh = CRowVec::Zero(nr);
      for (int l = 0; l < lp; ++l) {
        dh += ps.rho[l] *
              steering_derivative(layout.rx, ps.theta[l], ps.phi[l], lambda, axis, m).adjoint();
      }
      d.dh_ul.push_back(std::sqrt(r.eta_ul[k] / lp) * dh);
    }
    d.db_s = steering_derivative(layout.rx, r.theta_rs, r.phi_rs, lambda, axis, m);
    for (int c = 0; c < r.n_clutter(); ++c) {
      d.db_c.push_back(steering_derivative(layout.rx, r.theta_rc[c], r.phi_rc[c], lambda, axis, m));
    }
    for (Eigen::Index i = 0; i < nt; ++i) {
      const double xt = layout.tx(i, 0), yt = layout.tx(i, 1);
      const double xr = layout.rx(m, 0), yr = layout.rx(m, 1);
      const double rr = detail::si_distance(xt, yt, xr, yr, d_si);
      const double dr =
          axis == Axis::kX ? -(xt - xr + d_si) / rr : -(yt - yr) / rr;
      d.dh_si(i, m) = detail::si_entry_dr(rr, lambda) * dr;
    }
  }
  return d;
}

}  // namespace maisac

#endif  // MAISAC_CHANNEL_HPP_
