#ifndef SYMBREAK_CERTIFICATE_HPP
#define SYMBREAK_CERTIFICATE_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "symbreak/potential.hpp"
#include "symbreak/radial_energy.hpp"

namespace symbreak {

/// Threshold below which the prototype certificate is guaranteed to pass:
/// (5 pi / 44 sqrt2)^2 for d = 2, (d-1)|S^{d-1}| / (32 d |S^{d-2}|) for d >= 3.
double epsilon0(int dim);

/// Energy of d+1 equal Dirac masses at unit-simplex vertices under the
/// prototype potential: -d / (2(d+1)), exact for any eps < 1/2.
double simplex_energy_prototype(int dim);

enum class CertificateKind { prototype, general, composite };
const char* certificate_kind_name(CertificateKind k);
CertificateKind certificate_kind_from_name(const std::string& name);

/// Full record of a symmetry-breaking certification. A certificate that
/// passed is a verified strict inequality
///   competitor energy < certified lower bound over radial measures,
/// which rules out radially symmetric minimizers. A failed certificate
/// asserts nothing.
struct CertificateReport {
  int schema_version = 1;
  CertificateKind kind = CertificateKind::prototype;
  int dim = 0;
  double eps = 0.0;
  std::optional<double> eta, alpha, beta, power_s;
  BoundMode mode = BoundMode::numeric_sup;
  double sup_value = 0.0;
  double c0 = 0.0;
  double radial_lower_bound = 0.0;  // -1/(4(1-c0))
  double competitor_energy = 0.0;   // (an upper bound on) the competitor's energy
  std::optional<double> condition_lhs;  // sup of the W1 ball average
  std::optional<double> condition_rhs;  // d/(d+1) - (1/2)(1-c0)^-1
  double safety_slack = 1e-9;
  // prototype/composite: radial_lower_bound - competitor_energy - slack;
  // general: condition_rhs - condition_lhs - slack
  double margin = 0.0;
  bool passed = false;
  std::optional<bool> shape_ok;  // composite only
  std::optional<double> shape_r0;
  std::optional<bool> existence_ok;  // recorded check: E[competitor] < W_inf / 2
  nlohmann::json audit;

  double recompute_margin() const;
  bool recompute_passed() const;
  nlohmann::json to_json() const;
  static CertificateReport from_json(const nlohmann::json& j);
};

struct CertifyOptions {
  BoundMode mode = BoundMode::numeric_sup;
  QuadratureSpec quad{};
  SearchSpec search{};
  double slack = 1e-9;          // strict inequalities must clear this much
  double lhs_grid_step = 1e-3;  // grid over |x| for the ball-average sup
  int lhs_refine_rounds = 2;
  std::optional<double> eta;    // composite: defaults to eps/2
};

/// Prototype certificate: competitor -d/(2(d+1)) against the radial lower
/// bound from the kernel sup (numeric or analytic route).
CertificateReport certify_prototype(double eps, int dim, BoundMode mode,
                                    const CertifyOptions& opts = {});

/// General-potential certificate for W = W_eps + W1, W1 >= 0 radial:
/// checks  sup_{|x|<1+eta} (ball average of W1)  <  d/(d+1) - (1/2)(1-c0)^-1.
CertificateReport certify_general(const RadialFn& w1, double eps, double eta, int dim,
                                  const CertifyOptions& opts = {});
CertificateReport certify_general(const RadialPotential& w1, double eps, double eta,
                                  int dim, const CertifyOptions& opts = {});

/// Certificate for the explicit smooth potential: builds W1 = W - W_eps,
/// verifies W1 >= 0, runs the general certificate at eta = eps/2 and verifies
/// the repulsive/attractive shape. Passing requires both.
CertificateReport certify_composite(double eps, double alpha, double beta, double power_s,
                                    int dim, const CertifyOptions& opts = {});

struct AlphaBetaSearch {
  double alpha = 0.0;
  double beta = 0.0;
  int halvings = 0;
  CertificateReport report;
};

/// Geometric-decrease search for a feasible (alpha, beta): starts at
/// alpha = 0.1 with beta tied as beta = (eps/2) (alpha/0.1) and halves both
/// until certify_composite passes. Returns the first (largest) passing pair.
AlphaBetaSearch search_alpha_beta(double eps, double power_s, int dim,
                                  const CertifyOptions& opts = {});

}  // namespace symbreak

#endif
