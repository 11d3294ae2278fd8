#include "isaclim/regions.hpp"

#include <cmath>

#include "isaclim/errors.hpp"
#include "isaclim/parallel.hpp"
#include "isaclim/rng.hpp"

namespace isac {

Allocation Allocation::make(long u_isac, long u_c) {
  if (u_isac < 1) throw ConfigError("u_isac must be >= 1");
  if (u_c < 0 || u_c > u_isac)
    throw ConfigError("u_c = " + std::to_string(u_c) + " outside [0, " +
                      std::to_string(u_isac) + "]");
  return {u_isac, u_c, u_isac - u_c};
}

const char* region_mode_name(RegionMode mode) {
  return mode == RegionMode::exact ? "exact" : "approx";
}

const char* region_label_name(RegionLabel label) {
  switch (label) {
    case RegionLabel::trade_off: return "trade_off";
    case RegionLabel::communication_saturation:
      return "communication_saturation";
    case RegionLabel::sensing_saturation: return "sensing_saturation";
  }
  return "unknown";
}

std::vector<long> default_grid(long u_isac, int count) {
  if (u_isac < 1 || count < 2)
    throw ConfigError("grid needs u_isac >= 1 and count >= 2");
  std::vector<long> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = static_cast<long>(
        std::llround(static_cast<double>(u_isac) * i / (count - 1)));
  }
  grid.front() = 0;
  grid.back() = u_isac;
  return grid;
}

RegionCurve sweep_region(const SystemConfig& cfg,
                         const SensingChannelModel& model,
                         const Eigen::MatrixXcd& h_c,
                         const std::vector<long>& u_c_grid,
                         const SweepOptions& opts) {
  cfg.validate();
  const long u_isac = cfg.res_per_cpi();
  const bool full = model.k == model.dim();
  const bool colored = opts.ensemble.kind == Ensemble::gaussian_correlated;
  const double per_re =
      colored ? cmi_per_re(cfg, h_c, build_equicorrelation(
                                         cfg.n_tx, 1.0, opts.ensemble.rho_x,
                                         "rho_x"))
              : cmi_per_re(cfg, h_c);

  // Exact mode carves every allocation out of one seeded master draw: the
  // first 2*u_s rows are a valid ensemble draw of that size, and the nested
  // Gram matrices keep the SMI column monotone along the grid instead of
  // wobbling with independent per-point draws.
  WaveformMatrix master;
  if (opts.mode == RegionMode::exact) {
    SystemConfig full_cfg = cfg;
    full_cfg.bandwidth_b = 1;
    full_cfg.n_cpi = u_isac;
    master = gen_waveform(opts.ensemble, full_cfg,
                          derive_seed(opts.seed, SeedStream::region_point, 0));
  }

  RegionCurve curve;
  curve.mode = opts.mode;
  curve.points.resize(u_c_grid.size());
  parallel_for(static_cast<std::int64_t>(u_c_grid.size()),
               [&](std::int64_t idx) {
    const Allocation alloc =
        Allocation::make(u_isac, u_c_grid[static_cast<std::size_t>(idx)]);
    MetricPoint pt;
    pt.u_c = alloc.u_c;
    pt.u_s = alloc.u_s;
    pt.cmi_bits = static_cast<double>(alloc.u_c) * per_re;
    if (alloc.u_s == 0) {
      // No-observation endpoint: zero SMI, prior MSE.
      pt.smi_bits = 0.0;
      pt.mse_bound = mse_approx(cfg, 0, model.r_s, model.k);
    } else if (opts.mode == RegionMode::approx) {
      pt.smi_bits = smi_approx(cfg, model.r_s, model.k, alloc.u_s);
      // The closed form; equal to mse_bound(smi_approx) after the log-det
      // cancellation, and exactly halved when u_s doubles.
      pt.mse_bound = mse_approx(cfg, alloc.u_s);
    } else {
      SystemConfig sensing_cfg = cfg;
      sensing_cfg.bandwidth_b = 1;
      sensing_cfg.n_cpi = alloc.u_s;
      const WaveformMatrix wave = WaveformMatrix::from_samples(
          master.x.topRows(2 * alloc.u_s), master.ensemble_tag, master.seed);
      pt.smi_bits = full ? smi_full_channel(wave, model, sensing_cfg)
                         : smi_partial_channel(wave, model, sensing_cfg);
      pt.mse_bound = mse_bound(pt.smi_bits, model.r_s, model.k);
    }
    curve.points[static_cast<std::size_t>(idx)] = pt;
  });
  return curve;
}

std::vector<RegionLabel> classify_regions(const RegionCurve& curve,
                                          double saturation_fraction) {
  const auto& pts = curve.points;
  if (pts.size() < 3)
    throw ConfigError("region classification needs at least 3 points");
  if (saturation_fraction <= 0.0 || saturation_fraction >= 0.5)
    throw ConfigError("saturation_fraction must lie in (0, 0.5)");

  const double cmi_range = pts.back().cmi_bits - pts.front().cmi_bits;
  double smi_min = pts.front().smi_bits, smi_max = pts.front().smi_bits;
  for (const auto& p : pts) {
    smi_min = std::min(smi_min, p.smi_bits);
    smi_max = std::max(smi_max, p.smi_bits);
  }
  const double smi_range = smi_max - smi_min;
  const double cmi_slack = 1e-9 * std::abs(cmi_range);
  const double smi_slack = 1e-9 * std::abs(smi_range);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].cmi_bits - pts[i - 1].cmi_bits <= cmi_slack)
      throw ConfigError("curve cmi is not strictly increasing in u_c");
    if (pts[i].smi_bits - pts[i - 1].smi_bits > smi_slack)
      throw ConfigError("curve smi is not nonincreasing in u_c");
  }

  std::vector<RegionLabel> labels;
  labels.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d_cmi = (pts[i].cmi_bits - pts[i - 1].cmi_bits) / cmi_range;
    const double d_smi =
        smi_range > 0.0
            ? (pts[i - 1].smi_bits - pts[i].smi_bits) / smi_range
            : 0.0;
    const double rate = std::abs(d_smi / d_cmi);
    if (rate < saturation_fraction)
      labels.push_back(RegionLabel::communication_saturation);
    else if (rate > 1.0 / saturation_fraction)
      labels.push_back(RegionLabel::sensing_saturation);
    else
      labels.push_back(RegionLabel::trade_off);
  }
  return labels;
}

}  // namespace isac
