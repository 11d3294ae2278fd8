#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace isac {

/// Independent sub-sequences carved out of one master seed. Each (stream,
/// counter) pair maps to its own generator seed, so trial k can be produced
/// on any thread, in any order, with identical output.
enum class SeedStream : std::uint64_t {
  waveform = 1,
  comm_channel = 2,
  sensing_channel = 3,
  noise = 4,
  mc_outer = 5,
  mc_inner = 6,
  trial = 7,
  region_point = 8,
  experiment = 9,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                    std::uint64_t counter) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (0x100000001b3ULL * static_cast<std::uint64_t>(stream)));
  return splitmix64(h ^ counter);
}

/// Deterministic random source. All transforms (uniform, Box-Muller,
/// phase) are spelled out here instead of relying on std::*_distribution,
/// whose output sequences are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard real normal (one Box-Muller transform, cosine branch).
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Circularly-symmetric complex normal CN(0, 1); consumes one full
  /// Box-Muller pair so no entropy is discarded in bulk draws.
  std::complex<double> cnormal() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u)/sqrt(2)
    const double a = 2.0 * kPi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  /// Uniform phase on [0, 2*pi).
  double phase() { return 2.0 * kPi * uniform01(); }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;
  std::mt19937_64 engine_;
};

/// rows x cols matrix with i.i.d. CN(0, variance) entries, filled row-major.
inline Eigen::MatrixXcd complex_gaussian_matrix(Eigen::Index rows,
                                                Eigen::Index cols,
                                                double variance, Rng& rng) {
  Eigen::MatrixXcd out(rows, cols);
  const double scale = std::sqrt(variance);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = scale * rng.cnormal();
  return out;
}

}  // namespace isac
