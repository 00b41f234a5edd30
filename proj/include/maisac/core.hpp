#ifndef MAISAC_CORE_HPP_
#define MAISAC_CORE_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace maisac {

inline constexpr const char* kVersion = "0.1.0";

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CRowVec = Eigen::RowVectorXcd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
// Antenna coordinates, one (x, y) row per antenna, in meters.
using Positions = Eigen::Matrix<double, Eigen::Dynamic, 2>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLn2 = std::numbers::ln2;
// Omnidirectional antennas at the base station.
inline constexpr double kFreeSpaceFadingFactor = 1.0;

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Far-field free-space gain G_l*lambda / (4*pi*d)^2.
inline double path_loss(double d, double lambda, double g_l = kFreeSpaceFadingFactor) {
  if (d <= 0.0) throw std::invalid_argument("path_loss: distance must be positive");
  const double den = 4.0 * kPi * d;
  return g_l * lambda / (den * den);
}

/// Propagation-distance difference of an antenna at (x, y) relative to the
/// region origin, for a plane wave with azimuth theta and elevation phi.
inline double steering_delay(double x, double y, double theta, double phi) {
  return x * std::cos(theta) * std::sin(phi) + y * std::sin(theta);
}

/// Near-field self-interference power gain at link distance r.
inline double si_gain(double r, double lambda, double g_l = kFreeSpaceFadingFactor) {
  if (r <= 0.0) throw std::invalid_argument("si_gain: distance must be positive");
  const double u = lambda / (2.0 * kPi * r);
  const double u2 = u * u;
  return 0.25 * g_l * (u2 - u2 * u2 + u2 * u2 * u2);
}

}  // namespace maisac

#endif  // MAISAC_CORE_HPP_
