#include "symbreak/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "symbreak/parallel.hpp"
#include "symbreak/radial_energy.hpp"
#include "symbreak/sampling.hpp"

namespace symbreak {

const char* init_kind_name(InitKind k) {
  switch (k) {
    case InitKind::gaussian: return "gaussian";
    case InitKind::uniform_ball: return "uniform_ball";
    case InitKind::from_file: return "from_file";
  }
  return "?";
}

InitKind init_kind_from_name(const std::string& name) {
  if (name == "gaussian") return InitKind::gaussian;
  if (name == "uniform_ball") return InitKind::uniform_ball;
  if (name == "from_file") return InitKind::from_file;
  throw std::invalid_argument("unknown init kind: " + name);
}

namespace {

double pair_dist(const double* x, std::size_t i, std::size_t j, int dim) {
  double d2 = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = x[i * dim + k] - x[j * dim + k];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

}  // namespace

double particle_energy(const RadialPotential& p, const ParticleConfiguration& c,
                       int threads) {
  const std::size_t n = c.count();
  if (n < 2) throw std::invalid_argument("particle_energy: need at least 2 particles");
  const bool singular = p.singular_at_origin();
  std::vector<double> partial(kReductionChunks, 0.0);
  std::vector<char> collapsed(kReductionChunks, 0);
  run_fixed_chunks(n, kReductionChunks, threads,
                   [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                     double acc = 0.0;
                     for (std::size_t i = lo; i < hi; ++i) {
                       for (std::size_t j = i + 1; j < n; ++j) {
                         const double d = pair_dist(c.positions.data(), i, j, c.dim);
                         if (singular && d < 1e-12) {
                           collapsed[chunk] = 1;
                           return;
                         }
                         acc += p.eval(d);
                       }
                     }
                     partial[chunk] = acc;
                   });
  for (char flag : collapsed)
    if (flag)
      throw CoincidentPairError(
          "particle_energy: coincident pair under a potential singular at 0");
  double sum = 0.0;
  for (double v : partial) sum += v;
  const double nn = static_cast<double>(n);
  return sum / (nn * nn);  // (1/2N^2) * 2 * sum_{i<j}
}

std::vector<double> particle_gradient(const RadialPotential& p,
                                      const ParticleConfiguration& c, int threads) {
  const std::size_t n = c.count();
  if (n < 2) throw std::invalid_argument("particle_gradient: need at least 2 particles");
  const int dim = c.dim;
  const double nn = static_cast<double>(n);
  std::vector<double> grad(n * dim, 0.0);
  run_fixed_chunks(n, kReductionChunks, threads,
                   [&](std::size_t, std::size_t lo, std::size_t hi) {
                     for (std::size_t i = lo; i < hi; ++i) {
                       for (std::size_t j = 0; j < n; ++j) {
                         if (j == i) continue;
                         const double d = pair_dist(c.positions.data(), i, j, dim);
                         const double coeff = p.derivative(d) / (d * nn * nn);
                         for (int k = 0; k < dim; ++k)
                           grad[i * dim + k] +=
                               coeff * (c.positions[i * dim + k] - c.positions[j * dim + k]);
                       }
                     }
                   });
  return grad;
}

namespace {

double max_particle_grad_norm(const std::vector<double>& g, int dim) {
  double best = 0.0;
  for (std::size_t i = 0; i * dim < g.size(); ++i) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += g[i * dim + k] * g[i * dim + k];
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

ParticleConfiguration make_initial(const DescentSpec& spec, int dim) {
  if (spec.init == InitKind::from_file) {
    Measure m = load_measure_file(spec.init_file);
    auto* c = std::get_if<ParticleConfiguration>(&m);
    if (c == nullptr)
      throw std::invalid_argument("gradient_descent: init file is not a particles file");
    if (c->dim != dim)
      throw std::invalid_argument("gradient_descent: init file dimension mismatch");
    return std::move(*c);
  }
  if (spec.n_particles < 2)
    throw std::invalid_argument("gradient_descent: need at least 2 particles");
  ParticleConfiguration c;
  c.dim = dim;
  c.positions.resize(static_cast<std::size_t>(spec.n_particles) * dim);
  Rng rng(mix_seed(spec.seed, 0xC0FFEE));
  if (spec.init == InitKind::gaussian) {
    for (double& x : c.positions) x = spec.init_scale * rng.normal();
  } else {
    for (int i = 0; i < spec.n_particles; ++i)
      rng.in_ball(dim, spec.init_scale, &c.positions[static_cast<std::size_t>(i) * dim]);
  }
  return c;
}

}  // namespace

DescentResult gradient_descent(const RadialPotential& p, int dim, const DescentSpec& spec) {
  if (!p.differentiable())
    throw std::invalid_argument(
        "gradient_descent: the prototype potential has an almost-everywhere zero "
        "derivative; minimize the composite or a smooth tabulated potential");
  if (dim < 1) throw std::invalid_argument("gradient_descent: dim must be >= 1");
  if (!(spec.step0 > 0.0) || !(spec.shrink > 0.0 && spec.shrink < 1.0) ||
      !(spec.armijo_c > 0.0 && spec.armijo_c < 1.0) || !(spec.grad_tol > 0.0) ||
      spec.max_iters < 0)
    throw std::invalid_argument("gradient_descent: invalid descent spec");

  DescentResult res;
  res.config = make_initial(spec, dim);
  const std::size_t n = res.config.count();
  const int threads = spec.threads;

  double energy = particle_energy(p, res.config, threads);
  std::vector<double> grad = particle_gradient(p, res.config, threads);
  double gnorm = max_particle_grad_norm(grad, dim);
  double step = spec.step0;
  res.trace.push_back({0, energy, gnorm, 0.0});

  ParticleConfiguration trial;
  trial.dim = dim;
  trial.positions.resize(n * static_cast<std::size_t>(dim));

  // Per-particle gradient norms, for the displacement clip.
  std::vector<double> pnorm(n, 0.0);
  auto fill_pnorms = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      double s2 = 0.0;
      for (int k = 0; k < dim; ++k) s2 += grad[i * dim + k] * grad[i * dim + k];
      pnorm[i] = std::sqrt(s2);
    }
  };
  fill_pnorms();

  int iter = 0;
  for (; iter < spec.max_iters; ++iter) {
    if (gnorm < spec.grad_tol) {
      res.converged = true;
      res.stop_reason = "gradient tolerance reached";
      break;
    }
    // Move particle i along -g_i by min(t |g_i|, move_clip): a diagonal
    // positive rescaling of -g, so it is a descent direction and the Armijo
    // test applies. The clip decouples the bulk step from the wall-scale
    // gradients the composite potential produces many orders of magnitude
    // above its alpha-scale plains.
    double t = step / spec.shrink;  // regrow after cheap steps
    double trial_energy = 0.0;
    bool accepted = false;
    while (t >= 1e-18) {
      double slope = 0.0;  // -<d, g> for the clipped direction d
      for (std::size_t i = 0; i < n; ++i) {
        const double factor =
            (t * pnorm[i] <= spec.move_clip || pnorm[i] == 0.0)
                ? t
                : spec.move_clip / pnorm[i];
        slope += factor * pnorm[i] * pnorm[i];
        for (int k = 0; k < dim; ++k)
          trial.positions[i * dim + k] =
              res.config.positions[i * dim + k] - factor * grad[i * dim + k];
      }
      trial_energy = particle_energy(p, trial, threads);
      if (trial_energy <= energy - spec.armijo_c * slope) {
        accepted = true;
        break;
      }
      t *= spec.shrink;
    }
    if (!accepted) {
      res.stop_reason = "line search stalled at machine precision";
      break;
    }
    res.config.positions.swap(trial.positions);
    energy = trial_energy;
    step = t;
    grad = particle_gradient(p, res.config, threads);
    gnorm = max_particle_grad_norm(grad, dim);
    fill_pnorms();
    res.trace.push_back({iter + 1, energy, gnorm, t});
  }
  if (res.stop_reason.empty()) {
    if (gnorm < spec.grad_tol) {
      res.converged = true;
      res.stop_reason = "gradient tolerance reached";
    } else {
      res.stop_reason = "iteration limit reached";
    }
  }
  res.iterations = static_cast<int>(res.trace.size()) - 1;
  return res;
}

double radialize_energy(const RadialPotential& p, const ParticleConfiguration& c,
                        const QuadratureSpec& q) {
  const std::size_t n = c.count();
  if (n == 0) throw std::invalid_argument("radialize_energy: empty configuration");
  if (n == 1) return 0.0;
  const int dim = c.dim;
  std::vector<double> centroid(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < dim; ++k) centroid[k] += c.positions[i * dim + k];
  for (double& v : centroid) v /= static_cast<double>(n);
  std::vector<double> radii(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double d = c.positions[i * dim + k] - centroid[k];
      d2 += d * d;
    }
    radii[i] = std::sqrt(d2);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sum += tilde_w(p, radii[i], radii[j], dim, q);
  const double nn = static_cast<double>(n);
  return sum / (nn * nn);
}

int cluster_count(const ParticleConfiguration& c, double threshold) {
  const std::size_t n = c.count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pair_dist(c.positions.data(), i, j, c.dim) <= threshold)
        parent[find(i)] = find(j);
  int count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (find(i) == i) ++count;
  return count;
}

AsymmetryDiagnostics diagnose(const RadialPotential& p, const ParticleConfiguration& c,
                              const QuadratureSpec& q, double cluster_radius_threshold,
                              std::optional<double> radial_bound) {
  AsymmetryDiagnostics d;
  d.particle_energy = particle_energy(p, c);
  d.radialized_energy = radialize_energy(p, c, q);
  d.radial_gap = d.radialized_energy - d.particle_energy;
  d.cluster_radius_threshold = cluster_radius_threshold;
  d.cluster_count = cluster_count(c, cluster_radius_threshold);
  if (!radial_bound) {
    // identify the prototype part: both families carry an eps annulus
    double eps = 0.0;
    if (const auto* comp = p.as_composite()) eps = comp->eps;
    if (const auto* proto = p.as_prototype()) eps = proto->eps;
    if (eps > 0.0)
      radial_bound = radial_lower_bound(eps, c.dim, BoundMode::numeric_sup, q).lower_bound;
  }
  d.radial_bound = radial_bound;
  d.below_radial_bound = radial_bound && d.particle_energy < *radial_bound;
  return d;
}

}  // namespace symbreak
