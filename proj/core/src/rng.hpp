#pragma once

#include <cmath>
#include <cstdint>

namespace hullfilter::detail {

// splitmix64; the output mapping below is fixed so generated clouds are
// reproducible from the seed alone.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // [0, 1) with the full 24-bit float mantissa.
  float unit_float() { return float(next() >> 40) * 0x1p-24f; }

  // [0, 1) double.
  double unit_double() { return double(next() >> 11) * 0x1p-53; }

  // (0, 1] double, safe as a log() argument.
  double unit_double_open() { return double((next() >> 11) + 1) * 0x1p-53; }

  // Box-Muller pair; always consumes exactly two draws.
  void gaussian_pair(double& g0, double& g1) {
    const double u1 = unit_double_open();
    const double u2 = unit_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    g0 = r * std::cos(a);
    g1 = r * std::sin(a);
  }

  // Unit direction via normalized Gaussians; consumes exactly four draws.
  void unit_direction(double& dx, double& dy, double& dz) {
    double g0, g1, g2, g3;
    gaussian_pair(g0, g1);
    gaussian_pair(g2, g3);
    double len = std::sqrt(g0 * g0 + g1 * g1 + g2 * g2);
    if (len < 1e-300) {  // effectively unreachable; keep the draw count fixed
      g0 = 1.0;
      len = 1.0;
    }
    dx = g0 / len;
    dy = g1 / len;
    dz = g2 / len;
  }
};

}  // namespace hullfilter::detail
