#pragma once

#include <cstdint>
#include <random>

#include "orbitcheck/linalg.hpp"

namespace orbitcheck {

/// splitmix64 mix of (master, index); used so sample i sees the same stream for any worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline Vector gaussian_vector(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> d(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

inline Vector unit_vector(Rng& rng, Eigen::Index n) {
  Vector v = gaussian_vector(rng, n);
  double norm = v.norm();
  while (n > 0 && norm == 0.0) {
    v = gaussian_vector(rng, n);
    norm = v.norm();
  }
  return n > 0 ? Vector(v / norm) : v;
}

}  // namespace orbitcheck
