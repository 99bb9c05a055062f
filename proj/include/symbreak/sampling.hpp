#ifndef SYMBREAK_SAMPLING_HPP
#define SYMBREAK_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace symbreak {

/// splitmix64 mix of a base seed and a stream index; used to give each
/// reduction chunk its own independent, reproducible generator.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled transforms; the std distributions are
// implementation-defined, these are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() {  // in [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double normal() {  // Box-Muller, one cached value
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    spare_ = rad * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return rad * std::cos(2.0 * M_PI * u2);
  }

  void unit_sphere(int dim, double* out) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int j = 0; j < dim; ++j) {
        out[j] = normal();
        norm2 += out[j] * out[j];
      }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (int j = 0; j < dim; ++j) out[j] *= inv;
  }

  void in_ball(int dim, double radius, double* out) {
    unit_sphere(dim, out);
    const double rho = radius * std::pow(uniform01(), 1.0 / dim);
    for (int j = 0; j < dim; ++j) out[j] *= rho;
  }

  /// Index into a cumulative weight table (inverse CDF).
  std::size_t categorical(const std::vector<double>& cdf) {
    const double u = uniform01() * cdf.back();
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace symbreak

#endif
