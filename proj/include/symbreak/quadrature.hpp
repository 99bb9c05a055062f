#ifndef SYMBREAK_QUADRATURE_HPP
#define SYMBREAK_QUADRATURE_HPP

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace symbreak {

/// Thrown when the adaptive scheme cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How shell-pair integrals are evaluated.
///   gauss_phi: substitute back to the sphere angle, integrand sin^{d-2} is
///              smooth and the d=2 endpoint singularity disappears.
///   gauss_t:   integrate in the distance variable directly (endpoint care
///              required for d=2; kept as a cross-check route).
enum class QuadMethod { gauss_phi, gauss_t };

struct QuadratureSpec {
  QuadMethod method = QuadMethod::gauss_phi;
  int panels = 32;       // Gauss-Legendre points per panel
  double tol = 1e-10;    // absolute target for adaptive bisection
  double rel_tol = 1e-9;   // per-panel relative acceptance; integrand values
                           // span hundreds of orders of magnitude here, so a
                           // purely absolute criterion can never terminate,
                           // and the composite wall evaluates with ~1e-11
                           // relative noise (ratios of exp(-tau), tau ~ 500)
  int max_depth = 48;
};

/// Gauss-Legendre nodes and weights on [-1, 1]. Cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int n);

/// Single-panel Gauss-Legendre estimate of the integral of f over [a, b].
double gauss_panel(const std::function<double(double)>& f, double a, double b, int n);

/// Adaptive composite Gauss-Legendre. Bisects until the n vs. n/2 point panel
/// estimates agree to the local tolerance share. Throws QuadratureError if the
/// depth limit is hit while the estimate still disagrees.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& q);

/// Same, but first splits [a, b] at the given interior breakpoints (values
/// outside (a, b) are ignored, duplicates merged).
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::vector<double> breakpoints, const QuadratureSpec& q);

/// Integral over [a, b] of an integrand behaving like (x - a)^(gamma - 1)
/// near the left endpoint, gamma > 0. Substitutes x = a + (b-a) xi^m with
/// m ~ 3/gamma so the transformed integrand is C^2 at 0 and plain adaptive
/// panels converge. f is never evaluated at x = a.
double integrate_graded_left(const std::function<double(double)>& f, double a, double b,
                             double gamma, const QuadratureSpec& q);
/// Mirror image: singularity (b - x)^(gamma - 1) at the right endpoint.
double integrate_graded_right(const std::function<double(double)>& f, double a, double b,
                              double gamma, const QuadratureSpec& q);

}  // namespace symbreak

#endif
