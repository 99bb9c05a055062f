#include "symbreak/certificate.hpp"

#include <algorithm>
#include <cmath>

namespace symbreak {

double epsilon0(int dim) {
  if (dim < 2) throw std::invalid_argument("epsilon0: dim must be >= 2");
  if (dim == 2) {
    const double c = 5.0 * M_PI / (44.0 * std::sqrt(2.0));
    return c * c;
  }
  return (dim - 1) * surface_area(dim - 1) / (32.0 * dim * surface_area(dim - 2));
}

double simplex_energy_prototype(int dim) {
  if (dim < 2) throw std::invalid_argument("simplex_energy_prototype: dim must be >= 2");
  return -static_cast<double>(dim) / (2.0 * (dim + 1));
}

const char* certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::prototype: return "prototype";
    case CertificateKind::general: return "general";
    case CertificateKind::composite: return "composite";
  }
  return "?";
}

CertificateKind certificate_kind_from_name(const std::string& name) {
  if (name == "prototype") return CertificateKind::prototype;
  if (name == "general") return CertificateKind::general;
  if (name == "composite") return CertificateKind::composite;
  throw std::invalid_argument("unknown certificate kind: " + name);
}

double CertificateReport::recompute_margin() const {
  if (kind == CertificateKind::general) {
    if (!condition_lhs || !condition_rhs)
      throw std::logic_error("general certificate without condition fields");
    return *condition_rhs - *condition_lhs - safety_slack;
  }
  return radial_lower_bound - competitor_energy - safety_slack;
}

bool CertificateReport::recompute_passed() const {
  return recompute_margin() > 0.0 && shape_ok.value_or(true);
}

nlohmann::json CertificateReport::to_json() const {
  nlohmann::json j{{"schema_version", schema_version},
                   {"kind", certificate_kind_name(kind)},
                   {"dim", dim},
                   {"eps", eps},
                   {"mode", bound_mode_name(mode)},
                   {"sup_value", sup_value},
                   {"c0", c0},
                   {"radial_lower_bound", radial_lower_bound},
                   {"competitor_energy", competitor_energy},
                   {"safety_slack", safety_slack},
                   {"margin", margin},
                   {"passed", passed}};
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("eta", eta);
  put("alpha", alpha);
  put("beta", beta);
  put("power_s", power_s);
  put("condition_lhs", condition_lhs);
  put("condition_rhs", condition_rhs);
  put("shape_r0", shape_r0);
  if (shape_ok) j["shape_ok"] = *shape_ok;
  if (existence_ok) j["existence_ok"] = *existence_ok;
  if (!audit.is_null()) j["audit"] = audit;
  return j;
}

CertificateReport CertificateReport::from_json(const nlohmann::json& j) {
  CertificateReport r;
  r.schema_version = j.at("schema_version").get<int>();
  r.kind = certificate_kind_from_name(j.at("kind").get<std::string>());
  r.dim = j.at("dim").get<int>();
  r.eps = j.at("eps").get<double>();
  r.mode = bound_mode_from_name(j.at("mode").get<std::string>());
  r.sup_value = j.at("sup_value").get<double>();
  r.c0 = j.at("c0").get<double>();
  r.radial_lower_bound = j.at("radial_lower_bound").get<double>();
  r.competitor_energy = j.at("competitor_energy").get<double>();
  r.safety_slack = j.at("safety_slack").get<double>();
  r.margin = j.at("margin").get<double>();
  r.passed = j.at("passed").get<bool>();
  auto grab = [&](const char* key) -> std::optional<double> {
    if (j.contains(key)) return j.at(key).get<double>();
    return std::nullopt;
  };
  r.eta = grab("eta");
  r.alpha = grab("alpha");
  r.beta = grab("beta");
  r.power_s = grab("power_s");
  r.condition_lhs = grab("condition_lhs");
  r.condition_rhs = grab("condition_rhs");
  r.shape_r0 = grab("shape_r0");
  if (j.contains("shape_ok")) r.shape_ok = j.at("shape_ok").get<bool>();
  if (j.contains("existence_ok")) r.existence_ok = j.at("existence_ok").get<bool>();
  if (j.contains("audit")) r.audit = j.at("audit");
  return r;
}

CertificateReport certify_prototype(double eps, int dim, BoundMode mode,
                                    const CertifyOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("certify_prototype: eps must lie in (0, 1)");
  if (dim < 2) throw std::invalid_argument("certify_prototype: dim must be >= 2");

  const BoundReport bound = radial_lower_bound(eps, dim, mode, opts.quad, opts.search);
  CertificateReport rep;
  rep.kind = CertificateKind::prototype;
  rep.dim = dim;
  rep.eps = eps;
  rep.mode = mode;
  rep.sup_value = bound.sup_value;
  rep.c0 = bound.c0;
  rep.radial_lower_bound = bound.lower_bound;
  rep.competitor_energy = simplex_energy_prototype(dim);
  rep.safety_slack = opts.slack;
  rep.margin = rep.radial_lower_bound - rep.competitor_energy - opts.slack;
  rep.passed = rep.margin > 0.0;
  rep.audit = nlohmann::json{{"bound", bound.to_json()},
                             {"sup_below_krssmall",
                              bound.sup_value < static_cast<double>(dim - 1) / dim}};
  return rep;
}

namespace {

// Nonnegativity spot-check for the W1 hypothesis: a dense grid up to past the
// last breakpoint. Tiny negative round-off (< 1e-12) is tolerated.
void check_w1_nonnegative(const RadialFn& w1) {
  double reach = 3.0;
  for (double b : w1.breakpoints) reach = std::max(reach, b);
  reach += 1.0;
  for (double r = 1e-3; r <= reach; r += 1e-3) {
    if (w1.eval(r) < -1e-12)
      throw std::invalid_argument("certify_general: W1 is negative at r = " +
                                  std::to_string(r));
  }
}

struct LhsSup {
  double value = 0.0;
  double argmax = 0.0;
};

// sup over |x| in [0, 1 + eta) of the ball average of W1. W1 radial makes the
// average a function of |x| alone; 1-D grid plus nested refinement. The open
// endpoint is probed just inside.
LhsSup lhs_ball_average_sup(const RadialFn& w1, double eta, int dim,
                            const CertifyOptions& opts) {
  const double x_hi = (1.0 + eta) * (1.0 - 1e-12);
  LhsSup best;
  auto consider = [&](double x) {
    const double v = ball_average(w1, x, eta, dim, opts.quad);
    if (v > best.value) {
      best.value = v;
      best.argmax = x;
    }
  };
  consider(0.0);
  consider(x_hi);
  double step = opts.lhs_grid_step;
  for (double x = step; x < x_hi; x += step) consider(x);
  for (int round = 0; round < opts.lhs_refine_rounds; ++round) {
    const double center = best.argmax;
    const double fine = step / 10.0;
    for (int k = -19; k <= 19; ++k) {
      const double x = center + k * fine;
      if (x > 0.0 && x < x_hi) consider(x);
    }
    step = fine;
  }
  return best;
}

}  // namespace

CertificateReport certify_general(const RadialFn& w1, double eps, double eta, int dim,
                                  const CertifyOptions& opts) {
  if (dim < 2) throw std::invalid_argument("certify_general: dim must be >= 2");
  if (!(eps > 0.0) || !(eps < epsilon0(dim)))
    throw std::domain_error("certify_general: requires eps < epsilon0(dim)");
  if (!(eta > 0.0) || !(eta <= 0.5 * eps))
    throw std::domain_error("certify_general: requires eta in (0, eps/2]");
  check_w1_nonnegative(w1);

  const BoundReport bound = radial_lower_bound(eps, dim, opts.mode, opts.quad, opts.search);
  const LhsSup lhs = lhs_ball_average_sup(w1, eta, dim, opts);
  const double rhs =
      static_cast<double>(dim) / (dim + 1) - 0.5 / (1.0 - bound.c0);

  CertificateReport rep;
  rep.kind = CertificateKind::general;
  rep.dim = dim;
  rep.eps = eps;
  rep.eta = eta;
  rep.mode = opts.mode;
  rep.sup_value = bound.sup_value;
  rep.c0 = bound.c0;
  rep.radial_lower_bound = bound.lower_bound;
  rep.condition_lhs = lhs.value;
  rep.condition_rhs = rhs;
  rep.competitor_energy = simplex_energy_prototype(dim) + 0.5 * lhs.value;
  rep.safety_slack = opts.slack;
  rep.margin = rhs - lhs.value - opts.slack;
  rep.passed = rep.margin > 0.0;
  rep.audit = nlohmann::json{{"bound", bound.to_json()},
                             {"lhs_argmax_x", lhs.argmax},
                             {"lhs_grid_step", opts.lhs_grid_step}};
  return rep;
}

CertificateReport certify_general(const RadialPotential& w1, double eps, double eta,
                                  int dim, const CertifyOptions& opts) {
  return certify_general(as_radial_fn(w1), eps, eta, dim, opts);
}

CertificateReport certify_composite(double eps, double alpha, double beta, double power_s,
                                    int dim, const CertifyOptions& opts) {
  const RadialPotential w = RadialPotential::composite(eps, alpha, beta, power_s, dim);
  const RadialPotential weps = RadialPotential::prototype(eps);
  if (!(eps < epsilon0(dim)))
    throw std::domain_error("certify_composite: requires eps < epsilon0(dim)");
  const double eta = opts.eta.value_or(0.5 * eps);

  RadialFn w1;
  w1.eval = [w, weps](double r) { return w.eval(r) - weps.eval(r); };
  w1.breakpoints = w.breakpoints();
  {
    auto wb = weps.breakpoints();
    w1.breakpoints.insert(w1.breakpoints.end(), wb.begin(), wb.end());
    std::sort(w1.breakpoints.begin(), w1.breakpoints.end());
  }
  w1.singular_origin = w.singular_at_origin();
  w1.origin_exponent = alpha > 0.0 ? power_s : 0.0;

  CertificateReport rep = certify_general(w1, eps, eta, dim, opts);
  rep.kind = CertificateKind::composite;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.power_s = power_s;
  // the composite margin is in energy units: lower bound minus the competitor
  // energy bound -d/(2(d+1)) + lhs/2
  rep.margin = rep.radial_lower_bound - rep.competitor_energy - opts.slack;

  try {
    const ShapeReport shape = verify_shape(w);
    rep.shape_ok = shape.ok();
    rep.shape_r0 = shape.r0;
    rep.audit["shape"] = {{"r0", shape.r0},
                          {"repulsive_verified", shape.repulsive_verified},
                          {"attractive_verified", shape.attractive_verified},
                          {"joins_verified", shape.joins_verified},
                          {"join_max_mismatch", shape.join_max_mismatch},
                          {"join_max_deriv_mismatch", shape.join_max_deriv_mismatch}};
  } catch (const ShapeViolation& e) {
    rep.shape_ok = false;
    rep.audit["shape"] = {{"violation", e.what()}, {"radii", e.offending_radii}};
  }

  // recorded existence check (not part of the pass verdict): the competitor
  // energy must sit below half the potential's value at infinity
  rep.existence_ok = rep.competitor_energy < 0.5 * w.tail_value();

  rep.passed = rep.margin > 0.0 && *rep.shape_ok;
  return rep;
}

AlphaBetaSearch search_alpha_beta(double eps, double power_s, int dim,
                                  const CertifyOptions& opts) {
  if (dim < 2) throw std::invalid_argument("search_alpha_beta: dim must be >= 2");
  if (!(eps > 0.0) || !(eps < epsilon0(dim)))
    throw std::domain_error("search_alpha_beta: requires eps < epsilon0(dim)");
  if (!(power_s > dim - 2 && power_s < dim))
    throw std::domain_error("search_alpha_beta: requires dim-2 < power_s < dim");

  const double alpha0 = 0.1;
  const double beta_ratio = 0.5 * eps / alpha0;  // beta = eps/2 at alpha = 0.1
  double alpha = alpha0;
  for (int k = 0; alpha >= 1e-12; ++k, alpha *= 0.5) {
    const double beta = beta_ratio * alpha;
    CertificateReport rep = certify_composite(eps, alpha, beta, power_s, dim, opts);
    if (rep.passed) return AlphaBetaSearch{alpha, beta, k, std::move(rep)};
  }
  throw std::runtime_error(
      "search_alpha_beta: exhausted (alpha below 1e-12 without a passing "
      "certificate); the construction guarantees feasibility, so this "
      "indicates a defect upstream");
}

}  // namespace symbreak
