#ifndef SYMBREAK_RADIAL_ENERGY_HPP
#define SYMBREAK_RADIAL_ENERGY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symbreak/measures.hpp"
#include "symbreak/potential.hpp"
#include "symbreak/quadrature.hpp"

namespace symbreak {

/// Surface area |S^dim| of the unit dim-sphere, via log-gamma.
double surface_area(int dim);

/// The constant |S^{d-2}| / |S^{d-1}| appearing in the shell-pair kernel.
double sphere_ratio(int dim);

/// Parameters of the shell-pair distance kernel K_{r,s}(t) in dimension dim:
/// the density of |x - y| for x, y uniform on spheres of radii r and s.
struct KernelParams {
  double r = 0.0;
  double s = 0.0;
  int dim = 2;
};

/// K_{r,s}(t). Supported on (|r-s|, r+s), integrates to 1. For d = 2 the
/// endpoints carry an integrable inverse-square-root singularity; evaluation
/// there returns +infinity and integration must go through the angle variable.
double kernel_eval(const KernelParams& kp, double t);

/// Integral of K_{r,s} over [a, b]. The gauss_phi route substitutes back to
/// the sphere angle so the integrand sin^{d-2} is smooth for every d; gauss_t
/// integrates the kernel directly (cross-check route, d >= 3 only).
double kernel_partial_integral(const KernelParams& kp, double a, double b,
                               const QuadratureSpec& q = {});

/// A radial function with known kink/jump radii, the generic integrand for
/// shell-pair energies (potentials, potential differences, ball averages).
/// A power singularity at the origin must be declared so the quadrature can
/// grade its panels there.
struct RadialFn {
  std::function<double(double)> eval;
  std::vector<double> breakpoints;
  bool singular_origin = false;
  double origin_exponent = 0.0;  // f ~ r^-origin_exponent near 0
};

RadialFn as_radial_fn(const RadialPotential& p);

/// Shell-pair energy of a generic radial function: the integral of
/// K_{r,s}(t) f(t) dt, computed in the angle variable with panels split at the
/// preimages of f's breakpoints. f is evaluated only inside (|r-s|, r+s);
/// r = 0 or s = 0 degenerates to f at the other radius.
double tilde_w_fn(const RadialFn& f, double r, double s, int dim,
                  const QuadratureSpec& q = {});

/// Shell-pair energy of a potential: tilde W(r, s).
double tilde_w(const RadialPotential& p, double r, double s, int dim,
               const QuadratureSpec& q = {});

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Monte Carlo oracle for tilde W(r, s): samples uniform points on the two
/// spheres (one fixed at r e1 by rotational invariance). Chunked deterministic
/// reduction: the result depends on the seed only, never on the thread count.
McEstimate tilde_w_mc_oracle(const RadialPotential& p, double r, double s, int dim,
                             std::int64_t n_samples, std::uint64_t seed,
                             int threads = 1);

/// Energy of a radial shell profile: (1/2) sum_ij w_i w_j tilde W(r_i, r_j).
double radial_energy(const RadialPotential& p, const RadialProfile& profile,
                     const QuadratureSpec& q = {});

/// Exact energy of an atomic measure (full double sum, i = j included; the
/// prototype vanishes at 0 so Dirac self-terms contribute nothing there).
double measure_energy(const RadialPotential& p, const DiscreteMeasure& m);

/// Monte Carlo energy of a mollified-ball measure: mean of w(|X - Y|) / 2 over
/// independent pairs X, Y drawn from the measure.
McEstimate measure_energy_mc(const RadialPotential& p, const MollifiedBallMeasure& m,
                             std::int64_t n_pairs, std::uint64_t seed, int threads = 1);

/// Deterministic ball-shell quadrature route for the same energy.
double measure_energy_quadrature(const RadialPotential& p, const MollifiedBallMeasure& m,
                                 const QuadratureSpec& q = {});

/// Average of a nonnegative radial function over a ball of radius eta whose
/// center sits at distance x_norm from the origin, by shell decomposition:
/// (d / eta^d) * integral_0^eta t^{d-1} tilde f(x_norm, t) dt.
double ball_average(const RadialFn& f, double x_norm, double eta, int dim,
                    const QuadratureSpec& q = {});
double ball_average(const RadialPotential& w1, double x_norm, double eta, int dim,
                    const QuadratureSpec& q = {});

/// Grid search controls for the kernel-integral supremum.
struct SearchSpec {
  double s_max0 = 5.0;        // initial truncation of the s range (doubled as needed)
  double coarse_step = 2e-3;  // coarse grid spacing in s and r - s
  int refine_rounds = 3;      // 10x nested refinements around the incumbent
  int threads = 1;
};

/// Result of maximizing F(r, s) = integral of K_{r,s} over [1-eps, 1+eps]
/// on { r >= s >= (1-eps)/2 }. sup_value is the grid max inflated by a
/// curvature-scale safety margin; the tail bound documents why truncating the
/// unbounded region at s_max loses nothing.
struct KernelSupResult {
  double eps = 0.0;
  int dim = 0;
  double sup_value = 0.0;   // conservative: grid max + safety margin
  double grid_max = 0.0;    // best value actually evaluated
  double argmax_r = 0.0;
  double argmax_s = 0.0;
  double safety_margin = 0.0;
  double s_max = 0.0;
  double tail_bound = 0.0;  // bound on F for s >= s_max; below grid_max by construction
  double final_cell = 0.0;
  std::int64_t evaluations = 0;
  nlohmann::json to_json() const;
};

/// Certified-by-construction numeric supremum of the partial kernel integral.
/// Throws if the tail bound cannot be brought below the incumbent maximum.
KernelSupResult kernel_sup(double eps, int dim, const QuadratureSpec& q = {},
                           const SearchSpec& search = {});

/// Closed-form upper bound for the same supremum:
///   d  = 2: (22 sqrt 2 / 5 pi) sqrt(eps), valid for eps <= 1/11
///   d >= 3: (|S^{d-2}|/|S^{d-1}|) * 8 eps / (1-eps)^2
double krs_analytic_bound(double eps, int dim);

enum class BoundMode { numeric_sup, analytic };
const char* bound_mode_name(BoundMode m);
BoundMode bound_mode_from_name(const std::string& name);

/// Certified lower bound -1/(4(1-c0)) for the prototype energy over radial
/// probability measures, with c0 = sup/2 from either route.
struct BoundReport {
  double eps = 0.0;
  int dim = 0;
  BoundMode method = BoundMode::numeric_sup;
  double sup_value = 0.0;       // the value used for c0 (numeric or analytic)
  double c0 = 0.0;
  double lower_bound = 0.0;     // -1/(4(1-c0))
  std::optional<double> analytic_bound;  // present when the hypothesis holds
  std::optional<KernelSupResult> sup_audit;
  nlohmann::json to_json() const;
};

BoundReport radial_lower_bound(double eps, int dim, BoundMode mode,
                               const QuadratureSpec& q = {}, const SearchSpec& search = {});

}  // namespace symbreak

#endif
