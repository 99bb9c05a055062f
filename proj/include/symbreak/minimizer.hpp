#ifndef SYMBREAK_MINIMIZER_HPP
#define SYMBREAK_MINIMIZER_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symbreak/measures.hpp"
#include "symbreak/potential.hpp"
#include "symbreak/quadrature.hpp"

namespace symbreak {

/// Two particles collapsed onto each other under a potential that is singular
/// at zero distance.
class CoincidentPairError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InitKind { gaussian, uniform_ball, from_file };
const char* init_kind_name(InitKind k);
InitKind init_kind_from_name(const std::string& name);

struct DescentSpec {
  int n_particles = 90;
  int max_iters = 5000;
  double step0 = 0.1;
  double shrink = 0.5;      // backtracking factor
  double armijo_c = 1e-4;   // sufficient-decrease constant
  double grad_tol = 1e-8;   // stop when the largest per-particle gradient norm drops below
  double move_clip = 0.02;  // per-particle displacement cap per iteration; decouples the
                            // bulk step from the wall-scale gradients of the composite
  std::uint64_t seed = 0;
  InitKind init = InitKind::gaussian;
  double init_scale = 1.0;  // gaussian std dev, or ball radius
  std::string init_file;    // for InitKind::from_file (particles text format)
  int threads = 1;
};

struct TraceRow {
  int iter = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

struct DescentResult {
  ParticleConfiguration config;
  std::vector<TraceRow> trace;  // row 0 is the initial state
  bool converged = false;       // gradient tolerance reached
  std::string stop_reason;
  int iterations = 0;
};

/// (1/(2N^2)) sum_{i != j} w(|x_i - x_j|). Self-interaction terms are
/// excluded. Throws CoincidentPairError when a pair distance drops below
/// 1e-12 and the potential is singular at the origin.
double particle_energy(const RadialPotential& p, const ParticleConfiguration& c,
                       int threads = 1);

/// Gradient of the discretized energy:
/// dE/dx_i = (1/N^2) sum_{j != i} w'(|x_i - x_j|) (x_i - x_j)/|x_i - x_j|.
std::vector<double> particle_gradient(const RadialPotential& p,
                                      const ParticleConfiguration& c, int threads = 1);

/// Backtracking (Armijo) line-search descent. Deterministic for a given seed
/// and spec; the energy trace is nonincreasing. Rejects potentials without a
/// derivative (prototype).
DescentResult gradient_descent(const RadialPotential& p, int dim, const DescentSpec& spec);

/// Energy of the radial symmetrization of c: recenter at the centroid, place
/// each particle on its own shell, and sum pair shell energies with the same
/// i != j convention as particle_energy.
double radialize_energy(const RadialPotential& p, const ParticleConfiguration& c,
                        const QuadratureSpec& q = {});

/// Single-linkage cluster count at the given merge distance.
int cluster_count(const ParticleConfiguration& c, double threshold);

struct AsymmetryDiagnostics {
  double particle_energy = 0.0;
  double radialized_energy = 0.0;
  double radial_gap = 0.0;  // radialized - particle
  int cluster_count = 0;
  double cluster_radius_threshold = 0.0;
  bool below_radial_bound = false;
  std::optional<double> radial_bound;  // the certified bound used, when identifiable
};

/// Connects a configuration to the certificates: compares its energy to its
/// radialization and to the certified radial lower bound (computed from the
/// potential's prototype part when not supplied).
AsymmetryDiagnostics diagnose(const RadialPotential& p, const ParticleConfiguration& c,
                              const QuadratureSpec& q = {},
                              double cluster_radius_threshold = 0.2,
                              std::optional<double> radial_bound = std::nullopt);

}  // namespace symbreak

#endif
