#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ppt {

using Real = double;
using Complex = std::complex<double>;

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Subsystem dimensions (N_A, N_B) of a bipartite system, N = N_A * N_B.
/// Composite indices are row-major over (a, b): psi index = a * N_B + b.
struct BipartiteDims {
  int na = 1;
  int nb = 1;

  BipartiteDims() = default;
  BipartiteDims(int a, int b) : na(a), nb(b) {
    if (na < 1 || nb < 1)
      throw std::invalid_argument("BipartiteDims: subsystem dimensions must be >= 1");
    if (na * nb > 36)
      throw std::invalid_argument("BipartiteDims: total dimension capped at 36");
  }

  int n() const { return na * nb; }

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

/// Rank pair (m, n): rank of rho and of its partial transpose.
struct RankPair {
  int m = 0;
  int n = 0;

  friend bool operator==(const RankPair&, const RankPair&) = default;
  friend auto operator<=>(const RankPair&, const RankPair&) = default;
};

inline std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic combination of a base seed with stream indices, so that
/// parallel jobs derive independent, reproducible generators.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = base;
  std::uint64_t h = splitmix64(s);
  s ^= a + 0x9e3779b97f4a7c15ull;
  h ^= splitmix64(s);
  s ^= b + 0xd1b54a32d192ed03ull;
  h ^= splitmix64(s);
  return h;
}

/// Seeded generator with portable output: raw bits come from std::mt19937_64
/// (whose sequence is pinned by the standard) and all real-valued draws are
/// derived from those bits here, not from library distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  /// Standard complex normal, E|z|^2 = 1.
  Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) / std::sqrt(2.0);
  }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ppt
