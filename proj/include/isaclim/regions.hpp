#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "isaclim/config.hpp"
#include "isaclim/covariance.hpp"
#include "isaclim/metrics.hpp"
#include "isaclim/waveform.hpp"

namespace isac {

/// Disjoint split of the CPI's resource elements between the two
/// functionalities.
struct Allocation {
  long u_isac = 0;
  long u_c = 0;
  long u_s = 0;

  static Allocation make(long u_isac, long u_c);
};

enum class RegionMode { exact, approx };

const char* region_mode_name(RegionMode mode);

struct RegionCurve {
  std::vector<MetricPoint> points;  // ordered by increasing u_c
  RegionMode mode = RegionMode::exact;
};

enum class RegionLabel {
  trade_off,
  communication_saturation,
  sensing_saturation
};

const char* region_label_name(RegionLabel label);

struct SweepOptions {
  RegionMode mode = RegionMode::exact;
  EnsembleSpec ensemble;  // waveform family for exact-mode SMI draws
  std::uint64_t seed = 0;
};

/// u_c grid of `count` evenly spaced values covering [0, u_isac], both
/// endpoints included.
std::vector<long> default_grid(long u_isac, int count = 51);

/// One MetricPoint per grid value with u_s = u_isac - u_c. CMI uses the
/// Gaussian closed form (colored by the ensemble's rho_x). Exact-mode SMI
/// evaluates each point on the first 2*u_s samples of one seeded master
/// draw, so allocations are nested and the SMI column is monotone; approx
/// mode evaluates the high-SNR closed forms. u_s = 0 maps to SMI 0 and the
/// prior MSE.
RegionCurve sweep_region(const SystemConfig& cfg,
                         const SensingChannelModel& model,
                         const Eigen::MatrixXcd& h_c,
                         const std::vector<long>& u_c_grid,
                         const SweepOptions& opts);

/// Labels each inter-point segment by the normalized marginal exchange rate
/// |d smi / d cmi| (both axes scaled to their ranges over the curve):
/// below saturation_fraction -> communication saturation, above
/// 1/saturation_fraction -> sensing saturation, otherwise trade-off.
/// Requires >= 3 points, saturation_fraction in (0, 0.5), strictly
/// increasing cmi and nonincreasing smi.
std::vector<RegionLabel> classify_regions(const RegionCurve& curve,
                                          double saturation_fraction);

}  // namespace isac
