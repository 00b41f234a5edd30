#ifndef MAISAC_SCENARIO_HPP_
#define MAISAC_SCENARIO_HPP_

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "maisac/core.hpp"
#include "maisac/rng.hpp"

namespace maisac {

/// Full simulation setup: system dimensions, powers, feasible region,
/// solver tolerances and iteration caps, and the root RNG seed.
struct ScenarioConfig {
  int n_tx = 8;
  int n_rx = 4;
  int k_dl = 3;
  int k_ul = 3;
  int n_clutter = 3;
  int n_paths = 10;
  double wavelength = 0.01;
  double d_si = 0.2;
  double w_dl = 0.3;
  double w_ul = 0.3;
  double w_s = 0.4;
  double p_dl_dbm = 30.0;
  double p_ul_dbm = 30.0;
  double noise_dbm = -60.0;
  double region_min_x = 0.0;
  double region_max_x = 0.06;
  double region_min_y = 0.0;
  double region_max_y = 0.06;
  double d0 = 0.005;
  int n_random_init = 300;
  int n_particles = 100;
  int pso_iters = 50;
  std::uint64_t seed = 0;
  double tol_obj = 1e-4;
  double tol_power = 1e-6;  // relative to the power budget
  int max_inner_iters = 100;
  int max_ao_iters = 30;
  int max_ga_iters = 50;
  int max_ao_iters_pso = 5;
  double ga_step_init = 0.001;
  double pso_c1 = 1.5;
  double pso_c2 = 1.5;
  double pso_w_max = 0.9;
  double pso_w_min = 0.4;
  double dist_dl_min = 40.0;
  double dist_dl_max = 70.0;
  double dist_ul_min = 30.0;
  double dist_ul_max = 60.0;
  double dist_tgt_min = 20.0;
  double dist_tgt_max = 40.0;
  bool ri_include_uniform = true;
  bool pso_include_uniform = true;

  double p_dl() const { return dbm_to_watt(p_dl_dbm); }
  double p_ul() const { return dbm_to_watt(p_ul_dbm); }
  double sigma2() const { return dbm_to_watt(noise_dbm); }
  double region_width() const { return region_max_x - region_min_x; }
  double region_height() const { return region_max_y - region_min_y; }

  void validate() const;
};

/// Transmit/receive antenna coordinates in meters.
struct AntennaLayout {
  Positions tx;
  Positions rx;
};

namespace detail {

inline bool check_array(const Positions& p, const ScenarioConfig& cfg) {
  constexpr double kSlack = 1e-12;  // absorbs decimal-fraction rounding
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if (p(i, 0) < cfg.region_min_x - kSlack || p(i, 0) > cfg.region_max_x + kSlack ||
        p(i, 1) < cfg.region_min_y - kSlack || p(i, 1) > cfg.region_max_y + kSlack) {
      return false;
    }
  }
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < p.rows(); ++j) {
      if ((p.row(i) - p.row(j)).norm() < cfg.d0 - kSlack) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Shared feasibility predicate: both arrays within the region and every
/// intra-array pair at least d0 apart.
inline bool check_layout(const AntennaLayout& layout, const ScenarioConfig& cfg) {
  return detail::check_array(layout.tx, cfg) && detail::check_array(layout.rx, cfg);
}

inline void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("ScenarioConfig: " + msg); };
  if (n_tx < 1) fail("n_tx must be >= 1");
  if (n_rx < 1) fail("n_rx must be >= 1");
  if (k_dl < 0) fail("k_dl must be >= 0");
  if (k_ul < 0) fail("k_ul must be >= 0");
  if (n_clutter < 0) fail("n_clutter must be >= 0");
  if (n_paths < 1) fail("n_paths must be >= 1");
  if (wavelength <= 0) fail("wavelength must be positive");
  if (d_si <= 0) fail("d_si must be positive");
  if (std::abs(w_dl + w_ul + w_s - 1.0) > 1e-12) fail("weights w_dl + w_ul + w_s must sum to 1");
  if (w_dl < 0 || w_ul < 0 || w_s < 0) fail("weights must be nonnegative");
  if (region_max_x <= region_min_x) fail("region_max_x must exceed region_min_x");
  if (region_max_y <= region_min_y) fail("region_max_y must exceed region_min_y");
  if (d0 <= 0) fail("d0 must be positive");
  if (tol_obj <= 0) fail("tol_obj must be positive");
  if (tol_power <= 0) fail("tol_power must be positive");
  if (ga_step_init <= 0) fail("ga_step_init must be positive");
  if (n_random_init < 1) fail("n_random_init must be >= 1");
  if (n_particles < 1) fail("n_particles must be >= 1");
  if (pso_iters < 1) fail("pso_iters must be >= 1");
  if (pso_w_max < pso_w_min) fail("pso_w_max must be >= pso_w_min");
  if (dist_dl_min > dist_dl_max || dist_dl_min <= 0) fail("dist_dl range invalid");
  if (dist_ul_min > dist_ul_max || dist_ul_min <= 0) fail("dist_ul range invalid");
  if (dist_tgt_min > dist_tgt_max || dist_tgt_min <= 0) fail("dist_tgt range invalid");
  // A d0-spaced grid must be able to host the larger array.
  const long nx = static_cast<long>(std::floor(region_width() / d0 + 1e-9)) + 1;
  const long ny = static_cast<long>(std::floor(region_height() / d0 + 1e-9)) + 1;
  if (nx * ny < std::max(n_tx, n_rx)) fail("region cannot host layout: grid capacity exceeded");
}

namespace detail {

template <typename T>
void assign_key(const nlohmann::json& v, T& field) {
  field = v.get<T>();
}

}  // namespace detail

/// Parse a flat key-value document. Unknown keys are rejected; missing keys
/// keep their defaults. The resulting config is validated.
inline ScenarioConfig load_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("load_config: document must be an object");
  ScenarioConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "n_tx") detail::assign_key(value, cfg.n_tx);
    else if (key == "n_rx") detail::assign_key(value, cfg.n_rx);
    else if (key == "k_dl") detail::assign_key(value, cfg.k_dl);
    else if (key == "k_ul") detail::assign_key(value, cfg.k_ul);
    else if (key == "n_clutter") detail::assign_key(value, cfg.n_clutter);
    else if (key == "n_paths") detail::assign_key(value, cfg.n_paths);
    else if (key == "wavelength") detail::assign_key(value, cfg.wavelength);
    else if (key == "d_si") detail::assign_key(value, cfg.d_si);
    else if (key == "w_dl") detail::assign_key(value, cfg.w_dl);
    else if (key == "w_ul") detail::assign_key(value, cfg.w_ul);
    else if (key == "w_s") detail::assign_key(value, cfg.w_s);
    else if (key == "p_dl_dbm") detail::assign_key(value, cfg.p_dl_dbm);
    else if (key == "p_ul_dbm") detail::assign_key(value, cfg.p_ul_dbm);
    else if (key == "noise_dbm") detail::assign_key(value, cfg.noise_dbm);
    else if (key == "region_min_x") detail::assign_key(value, cfg.region_min_x);
    else if (key == "region_max_x") detail::assign_key(value, cfg.region_max_x);
    else if (key == "region_min_y") detail::assign_key(value, cfg.region_min_y);
    else if (key == "region_max_y") detail::assign_key(value, cfg.region_max_y);
    else if (key == "d0") detail::assign_key(value, cfg.d0);
    else if (key == "n_random_init") detail::assign_key(value, cfg.n_random_init);
    else if (key == "n_particles") detail::assign_key(value, cfg.n_particles);
    else if (key == "pso_iters") detail::assign_key(value, cfg.pso_iters);
    else if (key == "seed") detail::assign_key(value, cfg.seed);
    else if (key == "tol_obj") detail::assign_key(value, cfg.tol_obj);
    else if (key == "tol_power") detail::assign_key(value, cfg.tol_power);
    else if (key == "max_inner_iters") detail::assign_key(value, cfg.max_inner_iters);
    else if (key == "max_ao_iters") detail::assign_key(value, cfg.max_ao_iters);
    else if (key == "max_ga_iters") detail::assign_key(value, cfg.max_ga_iters);
    else if (key == "max_ao_iters_pso") detail::assign_key(value, cfg.max_ao_iters_pso);
    else if (key == "ga_step_init") detail::assign_key(value, cfg.ga_step_init);
    else if (key == "pso_c1") detail::assign_key(value, cfg.pso_c1);
    else if (key == "pso_c2") detail::assign_key(value, cfg.pso_c2);
    else if (key == "pso_w_max") detail::assign_key(value, cfg.pso_w_max);
    else if (key == "pso_w_min") detail::assign_key(value, cfg.pso_w_min);
    else if (key == "dist_dl_min") detail::assign_key(value, cfg.dist_dl_min);
    else if (key == "dist_dl_max") detail::assign_key(value, cfg.dist_dl_max);
    else if (key == "dist_ul_min") detail::assign_key(value, cfg.dist_ul_min);
    else if (key == "dist_ul_max") detail::assign_key(value, cfg.dist_ul_max);
    else if (key == "dist_tgt_min") detail::assign_key(value, cfg.dist_tgt_min);
    else if (key == "dist_tgt_max") detail::assign_key(value, cfg.dist_tgt_max);
    else if (key == "ri_include_uniform") detail::assign_key(value, cfg.ri_include_uniform);
    else if (key == "pso_include_uniform") detail::assign_key(value, cfg.pso_include_uniform);
    else throw std::invalid_argument("load_config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

inline ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_config_file: cannot open " + path);
  nlohmann::json doc;
  in >> doc;
  return load_config(doc);
}

inline nlohmann::json config_to_json(const ScenarioConfig& c) {
  return nlohmann::json{
      {"n_tx", c.n_tx}, {"n_rx", c.n_rx}, {"k_dl", c.k_dl}, {"k_ul", c.k_ul},
      {"n_clutter", c.n_clutter}, {"n_paths", c.n_paths}, {"wavelength", c.wavelength},
      {"d_si", c.d_si}, {"w_dl", c.w_dl}, {"w_ul", c.w_ul}, {"w_s", c.w_s},
      {"p_dl_dbm", c.p_dl_dbm}, {"p_ul_dbm", c.p_ul_dbm}, {"noise_dbm", c.noise_dbm},
      {"region_min_x", c.region_min_x}, {"region_max_x", c.region_max_x},
      {"region_min_y", c.region_min_y}, {"region_max_y", c.region_max_y},
      {"d0", c.d0}, {"n_random_init", c.n_random_init}, {"n_particles", c.n_particles},
      {"pso_iters", c.pso_iters}, {"seed", c.seed}, {"tol_obj", c.tol_obj},
      {"tol_power", c.tol_power}, {"max_inner_iters", c.max_inner_iters},
      {"max_ao_iters", c.max_ao_iters}, {"max_ga_iters", c.max_ga_iters},
      {"max_ao_iters_pso", c.max_ao_iters_pso}, {"ga_step_init", c.ga_step_init},
      {"pso_c1", c.pso_c1}, {"pso_c2", c.pso_c2}, {"pso_w_max", c.pso_w_max},
      {"pso_w_min", c.pso_w_min}, {"dist_dl_min", c.dist_dl_min},
      {"dist_dl_max", c.dist_dl_max}, {"dist_ul_min", c.dist_ul_min},
      {"dist_ul_max", c.dist_ul_max}, {"dist_tgt_min", c.dist_tgt_min},
      {"dist_tgt_max", c.dist_tgt_max}, {"ri_include_uniform", c.ri_include_uniform},
      {"pso_include_uniform", c.pso_include_uniform}};
}

/// One multipath cluster: per-path azimuth/elevation angles and complex gains.
struct PathSet {
  Vec theta;
  Vec phi;
  CVec rho;
};

/// Sampled user/target/clutter geometry and small-scale fading. Independent
/// of any antenna layout, so moving antennas never requires re-sampling.
struct ChannelRealization {
  double wavelength = 0.01;

  std::vector<double> d_dl, az_dl, eta_dl;
  std::vector<PathSet> dl_paths;

  std::vector<double> d_ul, az_ul, eta_ul;
  std::vector<PathSet> ul_paths;

  double theta_ts = 0, phi_ts = 0, theta_rs = 0, phi_rs = 0;
  cplx alpha_s;
  double d_s = 0, eta_s = 0;

  std::vector<double> theta_tc, phi_tc, theta_rc, phi_rc, d_c, eta_c;
  CVec alpha_c;

  Mat r_cross;    // uplink user i -> downlink user j ground distance
  Mat eta_cross;  // large-scale gain over r_cross

  int k_dl() const { return static_cast<int>(d_dl.size()); }
  int k_ul() const { return static_cast<int>(d_ul.size()); }
  int n_clutter() const { return static_cast<int>(d_c.size()); }
};

/// Draw one scenario realization from the stream (cfg.seed, "realization", index).
inline ChannelRealization sample_realization(const ScenarioConfig& cfg, std::uint64_t index) {
  Rng rng(cfg.seed, "realization", index);
  ChannelRealization r;
  r.wavelength = cfg.wavelength;

  auto sample_paths = [&](PathSet& p) {
    p.theta.resize(cfg.n_paths);
    p.phi.resize(cfg.n_paths);
    p.rho.resize(cfg.n_paths);
    for (int l = 0; l < cfg.n_paths; ++l) {
      p.theta[l] = rng.uniform(0.0, kPi);
      p.phi[l] = rng.uniform(0.0, kPi);
      p.rho[l] = rng.cgauss();
    }
  };

  r.dl_paths.resize(cfg.k_dl);
  for (int k = 0; k < cfg.k_dl; ++k) {
    r.d_dl.push_back(rng.uniform(cfg.dist_dl_min, cfg.dist_dl_max));
    r.az_dl.push_back(rng.uniform(0.0, 2.0 * kPi));
    r.eta_dl.push_back(path_loss(r.d_dl.back(), cfg.wavelength));
    sample_paths(r.dl_paths[k]);
  }

  r.ul_paths.resize(cfg.k_ul);
  for (int k = 0; k < cfg.k_ul; ++k) {
    r.d_ul.push_back(rng.uniform(cfg.dist_ul_min, cfg.dist_ul_max));
    r.az_ul.push_back(rng.uniform(0.0, 2.0 * kPi));
    r.eta_ul.push_back(path_loss(r.d_ul.back(), cfg.wavelength));
    sample_paths(r.ul_paths[k]);
  }

  // Target angles are fixed; only its RCS and range are random.
  r.theta_ts = r.theta_rs = kPi / 4.0;
  r.phi_ts = r.phi_rs = 0.0;
  r.alpha_s = rng.cgauss();
  r.d_s = rng.uniform(cfg.dist_tgt_min, cfg.dist_tgt_max);
  r.eta_s = path_loss(r.d_s, cfg.wavelength);

  r.alpha_c.resize(cfg.n_clutter);
  for (int c = 0; c < cfg.n_clutter; ++c) {
    r.theta_tc.push_back(rng.uniform(0.0, kPi));
    r.phi_tc.push_back(rng.uniform(0.0, kPi));
    r.theta_rc.push_back(rng.uniform(0.0, kPi));
    r.phi_rc.push_back(rng.uniform(0.0, kPi));
    r.alpha_c[c] = rng.cgauss();
    r.d_c.push_back(rng.uniform(cfg.dist_tgt_min, cfg.dist_tgt_max));
    r.eta_c.push_back(path_loss(r.d_c.back(), cfg.wavelength));
  }

  // Users sit on ground circles at their sampled BS distance; cross distances
  // come from planar geometry.
  r.r_cross.resize(cfg.k_ul, cfg.k_dl);
  r.eta_cross.resize(cfg.k_ul, cfg.k_dl);
  for (int i = 0; i < cfg.k_ul; ++i) {
    for (int j = 0; j < cfg.k_dl; ++j) {
      const double xu = r.d_ul[i] * std::cos(r.az_ul[i]);
      const double yu = r.d_ul[i] * std::sin(r.az_ul[i]);
      const double xd = r.d_dl[j] * std::cos(r.az_dl[j]);
      const double yd = r.d_dl[j] * std::sin(r.az_dl[j]);
      r.r_cross(i, j) = std::hypot(xu - xd, yu - yd);
      r.eta_cross(i, j) = path_loss(r.r_cross(i, j), cfg.wavelength);
    }
  }
  return r;
}

/// Uniform linear array along x at mid-height, lambda/2 spacing, centered.
inline AntennaLayout layout_fpa(const ScenarioConfig& cfg) {
  auto make_ula = [&](int n) {
    const double spacing = cfg.wavelength / 2.0;
    const double span = (n - 1) * spacing;
    if (span > cfg.region_width() + 1e-12) {
      throw std::invalid_argument("layout_fpa: array does not fit in region");
    }
    Positions p(n, 2);
    const double x0 = 0.5 * (cfg.region_min_x + cfg.region_max_x) - span / 2.0;
    const double y = 0.5 * (cfg.region_min_y + cfg.region_max_y);
    for (int i = 0; i < n; ++i) {
      p(i, 0) = x0 + i * spacing;
      p(i, 1) = y;
    }
    return p;
  };
  return AntennaLayout{make_ula(cfg.n_tx), make_ula(cfg.n_rx)};
}

/// Regular grid filling the region (row-major over cell centers).
inline AntennaLayout layout_uniform(const ScenarioConfig& cfg) {
  auto make_grid = [&](int n) {
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const int rows = (n + cols - 1) / cols;
    Positions p(n, 2);
    for (int i = 0; i < n; ++i) {
      const int r = i / cols;
      const int c = i % cols;
      p(i, 0) = cfg.region_min_x + (c + 0.5) * cfg.region_width() / cols;
      p(i, 1) = cfg.region_min_y + (r + 0.5) * cfg.region_height() / rows;
    }
    return p;
  };
  AntennaLayout layout{make_grid(cfg.n_tx), make_grid(cfg.n_rx)};
  if (!check_layout(layout, cfg)) {
    throw std::invalid_argument("layout_uniform: grid violates minimum spacing");
  }
  return layout;
}

/// Rejection-sampled random layout with pairwise spacing >= d0.
inline AntennaLayout layout_random(const ScenarioConfig& cfg, Rng& rng) {
  constexpr int kMaxAttempts = 10000;
  auto make_random = [&](int n) {
    Positions p(n, 2);
    for (int i = 0; i < n; ++i) {
      int attempt = 0;
      for (;; ++attempt) {
        if (attempt >= kMaxAttempts) {
          throw std::runtime_error("layout_random: rejection cap exceeded");
        }
        const double x = rng.uniform(cfg.region_min_x, cfg.region_max_x);
        const double y = rng.uniform(cfg.region_min_y, cfg.region_max_y);
        bool ok = true;
        for (int j = 0; j < i; ++j) {
          if (std::hypot(x - p(j, 0), y - p(j, 1)) < cfg.d0) {
            ok = false;
            break;
          }
        }
        if (ok) {
          p(i, 0) = x;
          p(i, 1) = y;
          break;
        }
      }
    }
    return p;
  };
  return AntennaLayout{make_random(cfg.n_tx), make_random(cfg.n_rx)};
}

// --- realization serialization -------------------------------------------

namespace detail {

inline nlohmann::json cvec_to_json(const CVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v[i].real(), v[i].imag()});
  return a;
}

inline CVec cvec_from_json(const nlohmann::json& a) {
  CVec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = cplx(a[i][0].get<double>(), a[i][1].get<double>());
  return v;
}

inline nlohmann::json vec_to_json(const Vec& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

inline Vec vec_from_json(const nlohmann::json& a) {
  auto s = a.get<std::vector<double>>();
  return Eigen::Map<const Vec>(s.data(), static_cast<Eigen::Index>(s.size()));
}

inline nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Mat mat_from_json(const nlohmann::json& a) {
  const Eigen::Index rows = static_cast<Eigen::Index>(a.size());
  const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(a[0].size()) : 0;
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = a[i][j].get<double>();
  return m;
}

inline nlohmann::json paths_to_json(const std::vector<PathSet>& ps) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : ps) {
    a.push_back({{"theta", vec_to_json(p.theta)},
                 {"phi", vec_to_json(p.phi)},
                 {"rho", cvec_to_json(p.rho)}});
  }
  return a;
}

inline std::vector<PathSet> paths_from_json(const nlohmann::json& a) {
  std::vector<PathSet> ps;
  for (const auto& e : a) {
    ps.push_back({vec_from_json(e["theta"]), vec_from_json(e["phi"]), cvec_from_json(e["rho"])});
  }
  return ps;
}

}  // namespace detail

inline nlohmann::json realization_to_json(const ChannelRealization& r) {
  using namespace detail;
  return nlohmann::json{
      {"wavelength", r.wavelength},
      {"d_dl", r.d_dl}, {"az_dl", r.az_dl}, {"eta_dl", r.eta_dl},
      {"dl_paths", paths_to_json(r.dl_paths)},
      {"d_ul", r.d_ul}, {"az_ul", r.az_ul}, {"eta_ul", r.eta_ul},
      {"ul_paths", paths_to_json(r.ul_paths)},
      {"theta_ts", r.theta_ts}, {"phi_ts", r.phi_ts},
      {"theta_rs", r.theta_rs}, {"phi_rs", r.phi_rs},
      {"alpha_s", {r.alpha_s.real(), r.alpha_s.imag()}},
      {"d_s", r.d_s}, {"eta_s", r.eta_s},
      {"theta_tc", r.theta_tc}, {"phi_tc", r.phi_tc},
      {"theta_rc", r.theta_rc}, {"phi_rc", r.phi_rc},
      {"d_c", r.d_c}, {"eta_c", r.eta_c},
      {"alpha_c", cvec_to_json(r.alpha_c)},
      {"r_cross", mat_to_json(r.r_cross)},
      {"eta_cross", mat_to_json(r.eta_cross)}};
}

inline ChannelRealization realization_from_json(const nlohmann::json& j) {
  using namespace detail;
  ChannelRealization r;
  r.wavelength = j["wavelength"].get<double>();
  r.d_dl = j["d_dl"].get<std::vector<double>>();
  r.az_dl = j["az_dl"].get<std::vector<double>>();
  r.eta_dl = j["eta_dl"].get<std::vector<double>>();
  r.dl_paths = paths_from_json(j["dl_paths"]);
  r.d_ul = j["d_ul"].get<std::vector<double>>();
  r.az_ul = j["az_ul"].get<std::vector<double>>();
  r.eta_ul = j["eta_ul"].get<std::vector<double>>();
  r.ul_paths = paths_from_json(j["ul_paths"]);
  r.theta_ts = j["theta_ts"].get<double>();
  r.phi_ts = j["phi_ts"].get<double>();
  r.theta_rs = j["theta_rs"].get<double>();
  r.phi_rs = j["phi_rs"].get<double>();
  r.alpha_s = cplx(j["alpha_s"][0].get<double>(), j["alpha_s"][1].get<double>());
  r.d_s = j["d_s"].get<double>();
  r.eta_s = j["eta_s"].get<double>();
  r.theta_tc = j["theta_tc"].get<std::vector<double>>();
  r.phi_tc = j["phi_tc"].get<std::vector<double>>();
  r.theta_rc = j["theta_rc"].get<std::vector<double>>();
  r.phi_rc = j["phi_rc"].get<std::vector<double>>();
  r.d_c = j["d_c"].get<std::vector<double>>();
  r.eta_c = j["eta_c"].get<std::vector<double>>();
  r.alpha_c = cvec_from_json(j["alpha_c"]);
  r.r_cross = mat_from_json(j["r_cross"]);
  r.eta_cross = mat_from_json(j["eta_cross"]);
  return r;
}

}  // namespace maisac

#endif  // MAISAC_SCENARIO_HPP_
