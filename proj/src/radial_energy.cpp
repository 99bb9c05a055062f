#include "symbreak/radial_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symbreak/parallel.hpp"
#include "symbreak/sampling.hpp"

namespace symbreak {

double surface_area(int dim) {
  if (dim < 0) throw std::invalid_argument("surface_area: dim must be >= 0");
  const double half = 0.5 * (dim + 1);
  return std::exp(std::log(2.0) + half * std::log(M_PI) - std::lgamma(half));
}

double sphere_ratio(int dim) {
  if (dim < 2) throw std::invalid_argument("sphere_ratio: dim must be >= 2");
  return surface_area(dim - 2) / surface_area(dim - 1);
}

double kernel_eval(const KernelParams& kp, double t) {
  double r = kp.r, s = kp.s;
  if (!(r > 0.0) || !(s > 0.0))
    throw std::domain_error("kernel_eval: requires r, s > 0");
  if (r < s) std::swap(r, s);  // K is symmetric in (r, s)
  if (t <= r - s || t >= r + s) return 0.0;
  const double cosphi = (r * r + s * s - t * t) / (2.0 * r * s);
  const double base = std::max(0.0, 1.0 - cosphi * cosphi);
  const double expo = 0.5 * (kp.dim - 3);
  if (base == 0.0 && expo < 0.0) return std::numeric_limits<double>::infinity();
  return sphere_ratio(kp.dim) * std::pow(base, expo) * t / (r * s);
}

namespace {

// Angle whose shell-pair distance is t: t^2 = r^2 - 2 r s cos(phi) + s^2.
double angle_of_distance(double r, double s, double t) {
  const double c = (r * r + s * s - t * t) / (2.0 * r * s);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Distance at angle phi, in the cancellation-free form
// t = sqrt((r-s)^2 + 4 r s sin^2(phi/2)).
double distance_of_angle(double r, double s, double phi) {
  const double sh = std::sin(0.5 * phi);
  return std::sqrt((r - s) * (r - s) + 4.0 * r * s * sh * sh);
}

double sin_power_integral(double phi_a, double phi_b, int dim, const QuadratureSpec& q) {
  if (dim == 2) return phi_b - phi_a;
  if (phi_b <= phi_a) return 0.0;
  return integrate([dim](double phi) { return std::pow(std::sin(phi), dim - 2); },
                   phi_a, phi_b, q);
}

}  // namespace

double kernel_partial_integral(const KernelParams& kp, double a, double b,
                               const QuadratureSpec& q) {
  if (!(kp.r > 0.0) || !(kp.s > 0.0))
    throw std::domain_error("kernel_partial_integral: requires r, s > 0");
  if (a > b) throw std::invalid_argument("kernel_partial_integral: a > b");
  double r = kp.r, s = kp.s;
  if (r < s) std::swap(r, s);
  const double lo = std::max(a, r - s);
  const double hi = std::min(b, r + s);
  if (lo >= hi) return 0.0;
  if (q.method == QuadMethod::gauss_t) {
    if (kp.dim == 2)
      throw std::invalid_argument(
          "kernel_partial_integral: gauss_t cannot handle the d=2 endpoint "
          "singularity; use gauss_phi");
    KernelParams norm{r, s, kp.dim};
    return integrate([&](double t) { return kernel_eval(norm, t); }, lo, hi, q);
  }
  const double phi_a = angle_of_distance(r, s, lo);
  const double phi_b = angle_of_distance(r, s, hi);
  return sphere_ratio(kp.dim) * sin_power_integral(phi_a, phi_b, kp.dim, q);
}

RadialFn as_radial_fn(const RadialPotential& p) {
  RadialFn f;
  f.eval = [p](double r) { return p.eval(r); };
  f.breakpoints = p.breakpoints();
  f.singular_origin = p.singular_at_origin();
  if (const auto* c = p.as_composite(); c != nullptr && c->alpha > 0.0)
    f.origin_exponent = c->power_s;
  return f;
}

double tilde_w_fn(const RadialFn& f, double r, double s, int dim, const QuadratureSpec& q) {
  if (r < 0.0 || s < 0.0) throw std::domain_error("tilde_w: requires r, s >= 0");
  if (r < s) std::swap(r, s);
  if (s == 0.0) return f.eval(r);  // shell against Dirac at 0 (covers r = s = 0)

  const double t_lo = r - s;
  const double t_hi = r + s;
  const double ratio = sphere_ratio(dim);
  auto integrand = [&](double phi) {
    return f.eval(distance_of_angle(r, s, phi)) *
           (dim == 2 ? 1.0 : std::pow(std::sin(phi), dim - 2));
  };

  // panel boundaries: preimages of the potential's breakpoints
  std::vector<double> cuts;
  for (double b : f.breakpoints)
    if (b > t_lo && b < t_hi) cuts.push_back(angle_of_distance(r, s, b));
  std::sort(cuts.begin(), cuts.end());

  // A singularity of f at the origin reaches the window when r = s; for
  // near-equal radii the integrand is finite but has a peak of width
  // t_lo / sqrt(rs) that plain bisection resolves too slowly. Both cases are
  // handled by grading the first panel: the power substitution compresses the
  // peak's dynamic range into a few refinement levels.
  if (f.singular_origin && t_lo <= 1e-6 * (r + s)) {
    double gamma = (dim - 1) - f.origin_exponent;
    if (!(gamma > 0.0)) {
      if (t_lo == 0.0)
        throw QuadratureError(
            "tilde_w: shell self-energy diverges (origin exponent >= dim-1)");
      gamma = 0.05;  // finite peak; grading is just node placement
    }
    const double first = cuts.empty() ? M_PI : cuts.front();
    QuadratureSpec half = q;
    half.tol = 0.5 * q.tol;
    double head = integrate_graded_left(integrand, 0.0, first, gamma, half);
    double rest = 0.0;
    if (first < M_PI) {
      std::vector<double> later(cuts.begin() + 1, cuts.end());
      rest = integrate_split(integrand, first, M_PI, later, half);
    }
    return ratio * (head + rest);
  }
  return ratio * integrate_split(integrand, 0.0, M_PI, cuts, q);
}

double tilde_w(const RadialPotential& p, double r, double s, int dim,
               const QuadratureSpec& q) {
  return tilde_w_fn(as_radial_fn(p), r, s, dim, q);
}

McEstimate tilde_w_mc_oracle(const RadialPotential& p, double r, double s, int dim,
                             std::int64_t n_samples, std::uint64_t seed, int threads) {
  if (n_samples < 1) throw std::invalid_argument("tilde_w_mc_oracle: n_samples >= 1");
  if (r < 0.0 || s < 0.0) throw std::domain_error("tilde_w_mc_oracle: r, s >= 0");
  if (dim < 2) throw std::invalid_argument("tilde_w_mc_oracle: dim >= 2");
  if (r < s) std::swap(r, s);
  if (s == 0.0) return {p.eval(r), 0.0, n_samples};

  const std::size_t n = static_cast<std::size_t>(n_samples);
  std::vector<double> sums(kReductionChunks, 0.0), sqs(kReductionChunks, 0.0);
  run_fixed_chunks(n, kReductionChunks, threads, [&](std::size_t c, std::size_t lo,
                                                     std::size_t hi) {
    Rng rng(mix_seed(seed, c));
    std::vector<double> y(dim);
    double acc = 0.0, acc2 = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      rng.unit_sphere(dim, y.data());
      // |r e1 - s y| with the cancellation-free split on (r - s)
      const double dist =
          std::sqrt((r - s) * (r - s) + 2.0 * r * s * (1.0 - y[0]));
      const double v = p.eval(dist);
      acc += v;
      acc2 += v * v;
    }
    sums[c] = acc;
    sqs[c] = acc2;
  });
  double sum = 0.0, sq = 0.0;
  for (std::size_t c = 0; c < kReductionChunks; ++c) {
    sum += sums[c];
    sq += sqs[c];
  }
  const double mean = sum / static_cast<double>(n);
  double se = 0.0;
  if (n > 1) {
    const double var =
        std::max(0.0, (sq - static_cast<double>(n) * mean * mean) / (static_cast<double>(n) - 1.0));
    se = std::sqrt(var / static_cast<double>(n));
  }
  return {mean, se, n_samples};
}

double radial_energy(const RadialPotential& p, const RadialProfile& profile,
                     const QuadratureSpec& q) {
  if (!validate_profile(profile))
    throw std::invalid_argument("radial_energy: invalid profile");
  if (profile.dim < 2) throw std::invalid_argument("radial_energy: profile.dim >= 2");
  const std::size_t n = profile.nodes();
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double wij = tilde_w(p, profile.radii[i], profile.radii[j], profile.dim, q);
      const double mass = profile.weights[i] * profile.weights[j];
      e += (i == j ? 0.5 : 1.0) * mass * wij;
    }
  }
  return e;
}

namespace {

double pair_distance(const double* a, const double* b, int dim) {
  double d2 = 0.0;
  for (int j = 0; j < dim; ++j) {
    const double d = a[j] - b[j];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

}  // namespace

double measure_energy(const RadialPotential& p, const DiscreteMeasure& m) {
  const std::size_t n = m.atoms();
  if (n == 0) throw std::invalid_argument("measure_energy: empty measure");
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dist =
          pair_distance(&m.positions[i * m.dim], &m.positions[j * m.dim], m.dim);
      e += 0.5 * m.weights[i] * m.weights[j] * p.eval(dist);
    }
  }
  return e;
}

McEstimate measure_energy_mc(const RadialPotential& p, const MollifiedBallMeasure& m,
                             std::int64_t n_pairs, std::uint64_t seed, int threads) {
  if (n_pairs < 1) throw std::invalid_argument("measure_energy_mc: n_pairs >= 1");
  const std::size_t n = static_cast<std::size_t>(n_pairs);
  std::vector<double> cdf(m.weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) cdf[i] = (acc += m.weights[i]);

  std::vector<double> sums(kReductionChunks, 0.0), sqs(kReductionChunks, 0.0);
  run_fixed_chunks(n, kReductionChunks, threads, [&](std::size_t c, std::size_t lo,
                                                     std::size_t hi) {
    Rng rng(mix_seed(seed, c));
    std::vector<double> x(m.dim), y(m.dim);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      const std::size_t i = rng.categorical(cdf);
      const std::size_t j = rng.categorical(cdf);
      rng.in_ball(m.dim, m.eta, x.data());
      rng.in_ball(m.dim, m.eta, y.data());
      for (int t = 0; t < m.dim; ++t) {
        x[t] += m.centers[i * m.dim + t];
        y[t] += m.centers[j * m.dim + t];
      }
      const double v = p.eval(pair_distance(x.data(), y.data(), m.dim));
      s1 += v;
      s2 += v * v;
    }
    sums[c] = s1;
    sqs[c] = s2;
  });
  double sum = 0.0, sq = 0.0;
  for (std::size_t c = 0; c < kReductionChunks; ++c) {
    sum += sums[c];
    sq += sqs[c];
  }
  const double mean = sum / static_cast<double>(n);
  double se = 0.0;
  if (n > 1) {
    const double var =
        std::max(0.0, (sq - static_cast<double>(n) * mean * mean) / (static_cast<double>(n) - 1.0));
    se = std::sqrt(var / static_cast<double>(n));
  }
  return {0.5 * mean, 0.5 * se, n_pairs};
}

double ball_average(const RadialFn& f, double x_norm, double eta, int dim,
                    const QuadratureSpec& q) {
  if (!(eta > 0.0)) throw std::invalid_argument("ball_average: eta must be > 0");
  if (x_norm < 0.0) throw std::domain_error("ball_average: x_norm must be >= 0");
  // Shell decomposition in the ambient radius: slicing the ball B(x; eta) by
  // spheres around the origin gives
  //   avg = (d / eta^d) * int rho^{d-1} capfrac(rho) f(rho) drho
  // over rho in (max(0, x - eta), x + eta), where capfrac is the fraction of
  // the sphere of radius rho lying inside the ball (a spherical cap). One
  // quadrature level, and the only singularity is f's own power at rho = 0,
  // integrable since the exponent is < d.
  const double lo = std::max(0.0, x_norm - eta);
  const double hi = x_norm + eta;
  const double full_angle = sin_power_integral(0.0, M_PI, dim, q);
  auto capfrac = [&](double rho) {
    if (x_norm == 0.0) return rho <= eta ? 1.0 : 0.0;
    const double c = (x_norm * x_norm + rho * rho - eta * eta) / (2.0 * x_norm * rho);
    if (c <= -1.0) return 1.0;
    if (c >= 1.0) return 0.0;
    if (dim == 2) return std::acos(c) / M_PI;
    if (dim == 3) return 0.5 * (1.0 - c);
    return sin_power_integral(0.0, std::acos(c), dim, q) / full_angle;
  };
  auto slice = [&](double rho) {
    return std::pow(rho, dim - 1) * capfrac(rho) * f.eval(rho);
  };

  std::vector<double> cuts;
  if (x_norm < eta) cuts.push_back(eta - x_norm);  // below: whole sphere inside
  for (double b : f.breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total;
  if (f.singular_origin && lo == 0.0) {
    const double gamma = dim - f.origin_exponent;
    if (!(gamma > 0.0))
      throw QuadratureError("ball_average: integrand not integrable (exponent >= dim)");
    const double first = cuts.empty() ? hi : cuts.front();
    QuadratureSpec half = q;
    half.tol = 0.5 * q.tol;
    total = integrate_graded_left(slice, 0.0, first, gamma, half);
    if (first < hi) {
      std::vector<double> later(cuts.begin() + (cuts.empty() ? 0 : 1), cuts.end());
      total += integrate_split(slice, first, hi, later, half);
    }
  } else {
    total = integrate_split(slice, lo, hi, cuts, q);
  }
  return total * static_cast<double>(dim) / std::pow(eta, dim);
}

double ball_average(const RadialPotential& w1, double x_norm, double eta, int dim,
                    const QuadratureSpec& q) {
  return ball_average(as_radial_fn(w1), x_norm, eta, dim, q);
}

double measure_energy_quadrature(const RadialPotential& p, const MollifiedBallMeasure& m,
                                 const QuadratureSpec& q) {
  // pair energy of two uniform balls at center distance c:
  //   (d/eta^d)^2 iint t^{d-1} sigma^{d-1} G(c, t, sigma) dt dsigma,
  // where G is the shell-shell-shell energy, computed by treating
  // sigma |-> tilde_w(., sigma) as the radial integrand of another shell pair.
  const int dim = m.dim;
  const double eta = m.eta;
  const RadialFn base = as_radial_fn(p);
  const GaussRule& rule = gauss_rule(24);

  auto pair_energy = [&](double c) {
    double outer = 0.0;
    for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
      const double t = 0.5 * eta * (rule.nodes[a] + 1.0);
      RadialFn mid;
      mid.eval = [&, t](double rho) { return tilde_w_fn(base, rho, t, dim, q); };
      for (double b : base.breakpoints) {
        mid.breakpoints.push_back(b + t);
        if (b - t > 0.0) mid.breakpoints.push_back(b - t);
        if (t - b > 0.0) mid.breakpoints.push_back(t - b);
      }
      std::sort(mid.breakpoints.begin(), mid.breakpoints.end());
      double inner = 0.0;
      for (std::size_t bn = 0; bn < rule.nodes.size(); ++bn) {
        const double sg = 0.5 * eta * (rule.nodes[bn] + 1.0);
        inner += rule.weights[bn] * std::pow(sg, dim - 1) *
                 tilde_w_fn(mid, c, sg, dim, q);
      }
      outer += rule.weights[a] * std::pow(t, dim - 1) * inner;
    }
    // two half-interval Jacobians and the two (d/eta^d) normalizations
    const double norm = static_cast<double>(dim) / std::pow(eta, dim);
    return outer * 0.25 * eta * eta * norm * norm;
  };

  const std::size_t n = m.atoms();
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double c =
          pair_distance(&m.centers[i * dim], &m.centers[j * dim], dim);
      const double pe = pair_energy(c);
      e += (i == j ? 0.5 : 1.0) * m.weights[i] * m.weights[j] * pe;
    }
  }
  return e;
}

nlohmann::json KernelSupResult::to_json() const {
  return nlohmann::json{{"eps", eps},
                        {"dim", dim},
                        {"sup_value", sup_value},
                        {"grid_max", grid_max},
                        {"argmax_r", argmax_r},
                        {"argmax_s", argmax_s},
                        {"safety_margin", safety_margin},
                        {"s_max", s_max},
                        {"tail_bound", tail_bound},
                        {"final_cell", final_cell},
                        {"evaluations", evaluations}};
}

namespace {

// F(r, s) for the sup search; closed forms for d = 2, 3, fixed high-order
// Gauss otherwise (the integrand sin^{d-2} is entire).
struct SupObjective {
  double eps;
  int dim;
  double ratio;
  const GaussRule* rule;

  double operator()(double r, double s) const {
    const double lo = std::max(1.0 - eps, r - s);
    const double hi = std::min(1.0 + eps, r + s);
    if (lo >= hi) return 0.0;
    if (dim == 3) return (hi * hi - lo * lo) / (4.0 * r * s);
    const double pa = angle_of_distance(r, s, lo);
    const double pb = angle_of_distance(r, s, hi);
    if (dim == 2) return (pb - pa) / M_PI;
    double acc = 0.0;
    const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
    for (std::size_t i = 0; i < rule->nodes.size(); ++i)
      acc += rule->weights[i] *
             std::pow(std::sin(mid + half * rule->nodes[i]), dim - 2);
    return ratio * half * acc;
  }
};

double sup_tail_bound(double eps, int dim, double s) {
  // for r >= s: d = 2 uses the sqrt(eps)/sqrt(rs) estimate (valid once
  // 2 r s >= 4 eps, true for s >= 1), d >= 3 bounds the integrand by 1
  if (dim == 2) return (2.0 * std::sqrt(2.0) / M_PI) * std::sqrt(eps) / s;
  return sphere_ratio(dim) * 2.0 * eps / (s * s);
}

}  // namespace

KernelSupResult kernel_sup(double eps, int dim, const QuadratureSpec& q,
                           const SearchSpec& search) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("kernel_sup: eps in (0,1)");
  if (dim < 2) throw std::invalid_argument("kernel_sup: dim >= 2");
  (void)q;

  SupObjective F{eps, dim, dim >= 4 ? sphere_ratio(dim) : 0.0,
                 dim >= 4 ? &gauss_rule(48) : nullptr};

  KernelSupResult res;
  res.eps = eps;
  res.dim = dim;

  const double s_lo = 0.5 * (1.0 - eps);
  const double u_hi = 1.0 + eps;  // F = 0 once r - s >= 1 + eps
  double s_max = std::max(search.s_max0, s_lo + 1.0);

  std::int64_t evals = 0;
  double best = -1.0, best_r = 0.0, best_s = 0.0;
  for (;;) {
    const std::size_t ns =
        static_cast<std::size_t>(std::ceil((s_max - s_lo) / search.coarse_step)) + 1;
    const std::size_t nu =
        static_cast<std::size_t>(std::ceil(u_hi / search.coarse_step)) + 1;
    std::vector<double> row_best(ns, -1.0), row_r(ns, 0.0), row_s(ns, 0.0);
    run_fixed_chunks(ns, kReductionChunks, search.threads,
                     [&](std::size_t, std::size_t lo, std::size_t hi) {
                       for (std::size_t i = lo; i < hi; ++i) {
                         const double s = std::min(s_lo + i * search.coarse_step, s_max);
                         for (std::size_t k = 0; k < nu; ++k) {
                           const double u = std::min(k * search.coarse_step, u_hi);
                           const double f = F(s + u, s);
                           if (f > row_best[i]) {
                             row_best[i] = f;
                             row_r[i] = s + u;
                             row_s[i] = s;
                           }
                         }
                       }
                     });
    evals += static_cast<std::int64_t>(ns) * static_cast<std::int64_t>(nu);
    for (std::size_t i = 0; i < ns; ++i) {
      if (row_best[i] > best) {
        best = row_best[i];
        best_r = row_r[i];
        best_s = row_s[i];
      }
    }
    const double tail = sup_tail_bound(eps, dim, s_max);
    if (tail < best) {
      res.tail_bound = tail;
      res.s_max = s_max;
      break;
    }
    s_max *= 2.0;
    if (s_max > 1e4)
      throw std::runtime_error(
          "kernel_sup: tail bound cannot be brought below the grid maximum; "
          "raise s_max0");
  }

  // nested refinement around the incumbent
  double cell = search.coarse_step;
  double neighbor_gap = 0.0;
  for (int round = 0; round < search.refine_rounds; ++round) {
    const double new_cell = cell / 10.0;
    const double r_markers = best_r, s_markers = best_s;
    neighbor_gap = 0.0;
    for (int is = -20; is <= 20; ++is) {
      const double s = std::max(s_lo, s_markers + is * new_cell);
      for (int iu = -20; iu <= 20; ++iu) {
        const double r = std::max(s, r_markers + iu * new_cell);
        const double f = F(r, s);
        ++evals;
        if (f > best) {
          best = f;
          best_r = r;
          best_s = s;
        }
      }
    }
    cell = new_cell;
  }
  // conservative inflation: largest drop to a neighboring grid point at the
  // final resolution, a curvature-scale cap on what the grid can have missed
  for (int is = -1; is <= 1; ++is) {
    for (int iu = -1; iu <= 1; ++iu) {
      if (is == 0 && iu == 0) continue;
      const double s = std::max(s_lo, best_s + is * cell);
      const double r = std::max(s, best_r + iu * cell);
      neighbor_gap = std::max(neighbor_gap, best - F(r, s));
      ++evals;
    }
  }

  res.grid_max = best;
  res.argmax_r = best_r;
  res.argmax_s = best_s;
  res.final_cell = cell;
  res.safety_margin = 2.0 * neighbor_gap + 1e-12;
  res.sup_value = std::min(1.0, best + res.safety_margin);
  res.evaluations = evals;
  return res;
}

double krs_analytic_bound(double eps, int dim) {
  if (dim < 2) throw std::invalid_argument("krs_analytic_bound: dim >= 2");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("krs_analytic_bound: eps must lie in (0, 1)");
  if (dim == 2) {
    if (eps > 1.0 / 11.0)
      throw std::domain_error("krs_analytic_bound: d = 2 requires eps <= 1/11");
    return 22.0 * std::sqrt(2.0) / (5.0 * M_PI) * std::sqrt(eps);
  }
  return sphere_ratio(dim) * 8.0 * eps / ((1.0 - eps) * (1.0 - eps));
}

const char* bound_mode_name(BoundMode m) {
  return m == BoundMode::analytic ? "analytic" : "numeric_sup";
}

BoundMode bound_mode_from_name(const std::string& name) {
  if (name == "analytic") return BoundMode::analytic;
  if (name == "numeric_sup" || name == "numeric") return BoundMode::numeric_sup;
  throw std::invalid_argument("unknown bound mode: " + name);
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j{{"eps", eps},
                   {"dim", dim},
                   {"method", bound_mode_name(method)},
                   {"sup_value", sup_value},
                   {"c0", c0},
                   {"lower_bound", lower_bound}};
  if (analytic_bound) j["analytic_bound"] = *analytic_bound;
  if (sup_audit) j["sup_audit"] = sup_audit->to_json();
  return j;
}

BoundReport radial_lower_bound(double eps, int dim, BoundMode mode,
                               const QuadratureSpec& q, const SearchSpec& search) {
  BoundReport rep;
  rep.eps = eps;
  rep.dim = dim;
  rep.method = mode;
  if (mode == BoundMode::analytic) {
    rep.sup_value = krs_analytic_bound(eps, dim);
    rep.analytic_bound = rep.sup_value;
  } else {
    rep.sup_audit = kernel_sup(eps, dim, q, search);
    rep.sup_value = rep.sup_audit->sup_value;
    try {
      rep.analytic_bound = krs_analytic_bound(eps, dim);
    } catch (const std::domain_error&) {
      // hypothesis fails (d = 2 with eps > 1/11); numeric route still valid
    }
  }
  rep.c0 = 0.5 * rep.sup_value;
  if (!(rep.c0 < 1.0))
    throw std::domain_error("radial_lower_bound: c0 >= 1, bound formula invalid");
  rep.lower_bound = -1.0 / (4.0 * (1.0 - rep.c0));
  return rep;
}

}  // namespace symbreak
