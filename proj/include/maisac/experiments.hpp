#ifndef MAISAC_EXPERIMENTS_HPP_
#define MAISAC_EXPERIMENTS_HPP_

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "maisac/pso.hpp"

namespace maisac {

enum class Scheme { kFpa, kAoMa, kRiMa, kPsoMa };

inline const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> s{Scheme::kFpa, Scheme::kAoMa, Scheme::kRiMa, Scheme::kPsoMa};
  return s;
}

inline std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kFpa: return "FPA";
    case Scheme::kAoMa: return "AO-MA";
    case Scheme::kRiMa: return "RI-MA";
    case Scheme::kPsoMa: return "PSO-MA";
  }
  throw std::invalid_argument("unknown scheme");
}

inline Scheme scheme_from_string(const std::string& name) {
  for (Scheme s : all_schemes()) {
    if (scheme_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown scheme: " + name);
}

struct RunRecord {
  Scheme scheme = Scheme::kFpa;
  std::uint64_t seed = 0;       // seed index within the sweep
  std::string sweep_axis;       // empty for a single run
  double sweep_value = 0.0;
  Metrics metrics;
  AntennaLayout layout;
  Beamformers bf;
  std::vector<double> g_trace;            // objective per (outer) iteration
  std::vector<double> tx_disp, rx_disp;   // AO per-iteration displacements
  double wall_seconds = 0.0;              // never emitted (would break determinism)
  std::uint64_t realization_hash = 0;
  std::uint64_t cfg_hash = 0;
  bool failed = false;
  std::string error;
};

inline std::uint64_t hash_json(const nlohmann::json& j) {
  return detail::fnv1a64(j.dump());
}

inline std::uint64_t realization_hash(const ChannelRealization& r) {
  return hash_json(realization_to_json(r));
}

inline std::uint64_t config_hash(const ScenarioConfig& cfg) {
  return hash_json(config_to_json(cfg));
}

/// Scale-down/scale-up presets for the stochastic search budgets.
inline void apply_profile(ScenarioConfig& cfg, const std::string& profile) {
  if (profile == "desk") {
    cfg.n_particles = 20;
    cfg.pso_iters = 15;
    cfg.n_random_init = 30;
  } else if (profile == "paper") {
    cfg.n_particles = 100;
    cfg.pso_iters = 50;
    cfg.n_random_init = 300;
  } else {
    throw std::invalid_argument("unknown profile: " + profile);
  }
}

/// Run one scheme on one channel realization. Component errors are captured
/// in the record rather than propagated.
inline RunRecord run_scheme(Scheme scheme, const ChannelRealization& r,
                            const ScenarioConfig& cfg) {
  RunRecord rec;
  rec.scheme = scheme;
  rec.realization_hash = realization_hash(r);
  rec.cfg_hash = config_hash(cfg);
  const Weights w = weights_of(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (scheme) {
      case Scheme::kFpa: {
        rec.layout = layout_fpa(cfg);
        const ChannelSet cs = build_channels(r, rec.layout, cfg.d_si);
        const InnerLoopState st = inner_loop(cs, cfg);
        rec.bf = st.bf;
        for (const auto& p : st.trace) rec.g_trace.push_back(p.g);
        break;
      }
      case Scheme::kAoMa: {
        const AoResult ao = ao_loop(r, layout_uniform(cfg), cfg);
        rec.layout = ao.layout;
        rec.bf = ao.bf;
        for (const auto& p : ao.trace) {
          rec.g_trace.push_back(p.g);
          rec.tx_disp.push_back(p.tx_displacement);
          rec.rx_disp.push_back(p.rx_displacement);
        }
        break;
      }
      case Scheme::kRiMa: {
        Rng rng(cfg.seed, "ri_layout");
        double best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < cfg.n_random_init; ++i) {
          const AntennaLayout init = (i == 0 && cfg.ri_include_uniform)
                                         ? layout_uniform(cfg)
                                         : layout_random(cfg, rng);
          const AoResult ao = ao_loop(r, init, cfg);
          if (ao.g > best) {
            best = ao.g;
            rec.layout = ao.layout;
            rec.bf = ao.bf;
            rec.g_trace.clear();
            rec.tx_disp.clear();
            rec.rx_disp.clear();
            for (const auto& p : ao.trace) {
              rec.g_trace.push_back(p.g);
              rec.tx_disp.push_back(p.tx_displacement);
              rec.rx_disp.push_back(p.rx_displacement);
            }
          }
        }
        break;
      }
      case Scheme::kPsoMa: {
        // Coarse-to-fine nested region schedule: run the swarm over square
        // sub-regions of absolute sizes 2λ, 4λ, ... up to the full region,
        // anchored at the region origin, and keep the best result. Each
        // sub-run depends only on its own absolute size (realizations and
        // swarm random streams are region-independent), so enlarging the
        // region only adds candidate sub-runs and the realized objective is
        // non-decreasing in region size by construction.
        const double width = std::min(cfg.region_max_x - cfg.region_min_x,
                                      cfg.region_max_y - cfg.region_min_y);
        std::vector<double> sizes;
        for (int k = 1; k * (2.0 * cfg.wavelength) < width; ++k) {
          sizes.push_back(k * (2.0 * cfg.wavelength));
        }
        sizes.push_back(width);
        double best = -std::numeric_limits<double>::infinity();
        for (double s : sizes) {
          ScenarioConfig sub = cfg;
          sub.region_max_x = cfg.region_min_x + s;
          sub.region_max_y = cfg.region_min_y + s;
          // Deterministic swarm seeds: uniform grids over the nested sizes
          // up to this sub-region, so each swarm also starts from the
          // compact layouts of the smaller sub-regions.
          std::vector<AntennaLayout> seeds;
          if (cfg.pso_include_uniform) {
            for (double t : sizes) {
              if (t > s) break;
              ScenarioConfig grid_cfg = cfg;
              grid_cfg.region_max_x = cfg.region_min_x + t;
              grid_cfg.region_max_y = cfg.region_min_y + t;
              try {
                AntennaLayout l = layout_uniform(grid_cfg);
                if (check_layout(l, sub)) seeds.push_back(std::move(l));
              } catch (const std::exception&) {
                // grid does not fit at this size; skip
              }
            }
          }
          const PsoResult ps = pso_run(r, sub, seeds);
          if (ps.g > best) {
            best = ps.g;
            rec.layout = ps.layout;
            rec.bf = ps.bf;
            rec.g_trace = ps.trace;
          }
        }
        break;
      }
    }
    const ChannelSet cs = build_channels(r, rec.layout, cfg.d_si);
    rec.metrics = compute_metrics(cs, rec.bf, w, cfg.sigma2());
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

inline const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> a{"p_dl",       "p_ul",          "n_tx",       "n_rx",
                                          "weights_cs", "weights_dl_ul", "region_size"};
  return a;
}

/// Apply one sweep-axis value to a config copy.
///  - p_dl / p_ul: transmit budget in dBm.
///  - n_tx / n_rx: antenna count.
///  - weights_cs: sensing weight w_s = v, communication split equally.
///  - weights_dl_ul: downlink share of the communication weight, w_s kept.
///  - region_size: square side length in wavelengths, anchored at the origin.
inline ScenarioConfig apply_axis(ScenarioConfig cfg, const std::string& axis, double value) {
  if (axis == "p_dl") {
    cfg.p_dl_dbm = value;
  } else if (axis == "p_ul") {
    cfg.p_ul_dbm = value;
  } else if (axis == "n_tx") {
    cfg.n_tx = static_cast<int>(value);
  } else if (axis == "n_rx") {
    cfg.n_rx = static_cast<int>(value);
  } else if (axis == "weights_cs") {
    cfg.w_s = value;
    cfg.w_dl = cfg.w_ul = (1.0 - value) / 2.0;
  } else if (axis == "weights_dl_ul") {
    cfg.w_dl = value * (1.0 - cfg.w_s);
    cfg.w_ul = (1.0 - value) * (1.0 - cfg.w_s);
  } else if (axis == "region_size") {
    cfg.region_min_x = cfg.region_min_y = 0.0;
    cfg.region_max_x = cfg.region_max_y = value * cfg.wavelength;
  } else {
    throw std::invalid_argument("unknown sweep axis: " + axis);
  }
  cfg.validate();
  return cfg;
}

/// Run `fn(i)` for i in [0, n) on up to MAISAC_THREADS workers (default: the
/// hardware concurrency). Results must be written to pre-sized slots so the
/// outcome is independent of scheduling.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MAISAC_THREADS")) {
    threads = std::max(1, std::atoi(env));
  }
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Full cross product scheme x value x seed in deterministic order. All
/// schemes at one (value, seed) cell share the same channel realization. For
/// the region_size axis, FPA ignores the swept region (its fixed array does
/// not use the placement region) and is evaluated on the base config.
inline std::vector<RunRecord> sweep(const ScenarioConfig& base, const std::string& axis,
                                    const std::vector<double>& values,
                                    const std::vector<Scheme>& schemes, int n_seeds) {
  struct Cell {
    Scheme scheme;
    double value;
    int seed;
  };
  std::vector<Cell> cells;
  for (double v : values) {
    for (Scheme s : schemes) {
      for (int seed = 0; seed < n_seeds; ++seed) cells.push_back({s, v, seed});
    }
  }

  std::vector<RunRecord> records(cells.size());
  parallel_for(static_cast<int>(cells.size()), [&](int i) {
    const Cell& c = cells[i];
    ScenarioConfig cfg = apply_axis(base, axis, c.value);
    cfg.seed = base.seed + static_cast<std::uint64_t>(c.seed);
    const ChannelRealization r = sample_realization(cfg, static_cast<std::uint64_t>(c.seed));
    ScenarioConfig run_cfg = cfg;
    if (c.scheme == Scheme::kFpa && axis == "region_size") {
      run_cfg.region_min_x = base.region_min_x;
      run_cfg.region_max_x = base.region_max_x;
      run_cfg.region_min_y = base.region_min_y;
      run_cfg.region_max_y = base.region_max_y;
    }
    RunRecord rec = run_scheme(c.scheme, r, run_cfg);
    rec.seed = static_cast<std::uint64_t>(c.seed);
    rec.sweep_axis = axis;
    rec.sweep_value = c.value;
    records[i] = std::move(rec);
  });
  return records;
}

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Stable long-format CSV. Complex quantities and wall time are never
/// emitted; every numeric field is written with full precision.
inline std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::string out =
      "scheme,sweep_axis,sweep_value,seed,objective,r_dl_sum,r_ul_sum,r_s,scnr,"
      "realization_hash,cfg_hash,version,status\n";
  for (const auto& r : records) {
    out += scheme_name(r.scheme) + ',' + r.sweep_axis + ',' +
           detail::fmt_double(r.sweep_value) + ',' + std::to_string(r.seed) + ',' +
           detail::fmt_double(r.metrics.objective) + ',' +
           detail::fmt_double(r.metrics.r_dl.sum()) + ',' +
           detail::fmt_double(r.metrics.r_ul.sum()) + ',' + detail::fmt_double(r.metrics.r_s) +
           ',' + detail::fmt_double(r.metrics.scnr) + ',' + std::to_string(r.realization_hash) +
           ',' + std::to_string(r.cfg_hash) + ',' + std::string(kVersion) + ',' +
           (r.failed ? "failed" : "ok") + '\n';
  }
  return out;
}

inline nlohmann::json records_to_json(const std::vector<RunRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j{{"scheme", scheme_name(r.scheme)},
                     {"sweep_axis", r.sweep_axis},
                     {"sweep_value", r.sweep_value},
                     {"seed", r.seed},
                     {"objective", r.metrics.objective},
                     {"r_dl_sum", r.metrics.r_dl.sum()},
                     {"r_ul_sum", r.metrics.r_ul.sum()},
                     {"r_s", r.metrics.r_s},
                     {"scnr", r.metrics.scnr},
                     {"realization_hash", r.realization_hash},
                     {"cfg_hash", r.cfg_hash},
                     {"version", std::string(kVersion)},
                     {"status", r.failed ? "failed" : "ok"},
                     {"metrics", metrics_to_json(r.metrics)}};
    if (r.failed) j["error"] = r.error;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline void emit(const std::vector<RunRecord>& records, const std::string& format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  if (format == "csv") {
    out << records_to_csv(records);
  } else if (format == "json") {
    out << records_to_json(records).dump(2) << '\n';
  } else {
    throw std::invalid_argument("unknown format: " + format);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

/// One JSON trace file per record: objective trace plus AO displacements.
inline void emit_traces(const std::vector<RunRecord>& records, const std::string& dir) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    nlohmann::json j{{"scheme", scheme_name(r.scheme)},
                     {"sweep_axis", r.sweep_axis},
                     {"sweep_value", r.sweep_value},
                     {"seed", r.seed},
                     {"g_trace", r.g_trace},
                     {"tx_disp", r.tx_disp},
                     {"rx_disp", r.rx_disp}};
    const std::string path = dir + "/trace_" + std::to_string(i) + "_" + scheme_name(r.scheme) +
                             "_s" + std::to_string(r.seed) + ".json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trace file: " + path);
    out << j.dump(2) << '\n';
  }
}

}  // namespace maisac

#endif  // MAISAC_EXPERIMENTS_HPP_
