// Command-line front end: certification runs, energy evaluations, kernel sup
// computations, particle minimization and plot-data emission.
//
// Exit codes: 0 success / certificate passed; 1 certificate failed or search
// inconclusive (NOT a claim that radial minimizers exist -- the method is
// one-sided); 2 usage, file or domain errors; 3 coincident-pair abort.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "symbreak/certificate.hpp"
#include "symbreak/measures.hpp"
#include "symbreak/minimizer.hpp"
#include "symbreak/potential.hpp"
#include "symbreak/radial_energy.hpp"

namespace {

using namespace symbreak;

struct GlobalOpts {
  std::string output_dir = ".";
  int threads = 1;
  std::uint64_t seed = 0;
  double quad_tol = 1e-10;
  int quad_panels = 32;

  QuadratureSpec quad() const {
    QuadratureSpec q;
    q.tol = quad_tol;
    q.panels = quad_panels;
    return q;
  }
  std::filesystem::path resolve(const std::string& name) const {
    std::filesystem::path p(name);
    if (p.is_absolute() || p.has_parent_path()) return p;
    return std::filesystem::path(output_dir) / p;
  }
};

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write report: " + path.string());
  out << j.dump(2) << "\n";
}

int report_certificate(const CertificateReport& rep, const GlobalOpts& g,
                       const std::string& report_name) {
  std::cout << std::setprecision(17);
  std::cout << "certificate " << certificate_kind_name(rep.kind) << " d=" << rep.dim
            << " eps=" << rep.eps << " mode=" << bound_mode_name(rep.mode) << "\n";
  std::cout << "  radial lower bound : " << rep.radial_lower_bound << "\n";
  std::cout << "  competitor energy  : " << rep.competitor_energy << "\n";
  if (rep.condition_lhs)
    std::cout << "  condition lhs      : " << *rep.condition_lhs << "\n"
              << "  condition rhs      : " << *rep.condition_rhs << "\n";
  std::cout << "  margin             : " << rep.margin << "\n";
  if (rep.shape_ok)
    std::cout << "  shape verified     : " << (*rep.shape_ok ? "yes" : "NO") << "\n";
  std::cout << "  verdict            : "
            << (rep.passed ? "PASSED (no radial minimizer)" : "FAILED / inconclusive")
            << "\n";
  const auto path = g.resolve(report_name);
  write_json(rep.to_json(), path);
  std::cout << "  report             : " << path.string() << "\n";
  return rep.passed ? 0 : 1;
}

std::string default_report_name(const std::string& kind, int dim) {
  return "certificate_" + kind + "_d" + std::to_string(dim) + ".json";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "symbreak: certifies break of radial symmetry for attractive-repulsive\n"
      "interaction energies, and minimizes particle discretizations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI config file; command-line flags take precedence");

  GlobalOpts g;
  if (const char* env = std::getenv("SYMBREAK_OUTPUT_DIR")) g.output_dir = env;
  app.add_option("--output-dir", g.output_dir,
                 "directory for reports and data files (env SYMBREAK_OUTPUT_DIR)");
  app.add_option("--threads", g.threads, "worker threads for parallel regions")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized commands");
  app.add_option("--quad-tol", g.quad_tol, "quadrature tolerance override")
      ->check(CLI::PositiveNumber);
  app.add_option("--quad-panels", g.quad_panels, "Gauss points per quadrature panel")
      ->check(CLI::PositiveNumber);

  int exit_code = 0;

  // ---- certify ----
  auto* certify = app.add_subcommand("certify", "run a symmetry-breaking certificate");
  certify->require_subcommand(1);
  certify->fallthrough();

  struct {
    int dim = 2;
    double eps = 0.05;
    std::string mode = "numeric_sup";
    double slack = 1e-9;
    std::string report;
  } cert;

  auto add_common_cert = [&](CLI::App* sub, bool with_eps = true) {
    sub->add_option("--dim", cert.dim, "ambient dimension")->check(CLI::Range(2, 64));
    if (with_eps) sub->add_option("--eps", cert.eps, "annulus half-width")->required();
    sub->add_option("--mode", cert.mode,
                    "kernel sup route: numeric_sup (tighter) or analytic");
    sub->add_option("--slack", cert.slack, "safety slack for strict inequalities");
    sub->add_option("--report", cert.report, "report JSON path");
  };

  auto* cert_proto = certify->add_subcommand("prototype", "prototype potential (annulus well)");
  add_common_cert(cert_proto);
  cert_proto->callback([&] {
    CertifyOptions opts;
    opts.mode = bound_mode_from_name(cert.mode);
    opts.quad = g.quad();
    opts.search.threads = g.threads;
    opts.slack = cert.slack;
    auto rep = certify_prototype(cert.eps, cert.dim, opts.mode, opts);
    exit_code = report_certificate(
        rep, g, cert.report.empty() ? default_report_name("prototype", cert.dim) : cert.report);
  });

  struct {
    std::string w1_config;
    double eta = 0.0;
  } gen;
  auto* cert_gen = certify->add_subcommand(
      "general", "W = W_eps + W1 for a nonnegative radial W1 from a potential config");
  add_common_cert(cert_gen);
  cert_gen->add_option("--w1", gen.w1_config, "potential config file for W1")->required();
  cert_gen->add_option("--eta", gen.eta, "mollification radius, in (0, eps/2]")->required();
  cert_gen->callback([&] {
    CertifyOptions opts;
    opts.mode = bound_mode_from_name(cert.mode);
    opts.quad = g.quad();
    opts.search.threads = g.threads;
    opts.slack = cert.slack;
    auto w1 = RadialPotential::load_config_file(gen.w1_config);
    auto rep = certify_general(w1, cert.eps, gen.eta, cert.dim, opts);
    exit_code = report_certificate(
        rep, g, cert.report.empty() ? default_report_name("general", cert.dim) : cert.report);
  });

  struct {
    double alpha = 0.0;
    double beta = 0.0;
    double power_s = 0.5;
    bool search = false;
    std::optional<double> eta;
  } comp;
  auto* cert_comp = certify->add_subcommand(
      "composite", "the explicit smooth potential; --search finds feasible (alpha, beta)");
  add_common_cert(cert_comp);
  cert_comp->add_option("--alpha", comp.alpha, "short-range repulsion strength");
  cert_comp->add_option("--beta", comp.beta, "smoothing width, in (0, eps)");
  cert_comp->add_option("--power-s", comp.power_s, "repulsion power, in (dim-2, dim)");
  cert_comp->add_flag("--search", comp.search, "search (alpha, beta) by geometric decrease");
  cert_comp->add_option("--eta", comp.eta, "mollification radius (default eps/2)");
  cert_comp->callback([&] {
    CertifyOptions opts;
    opts.mode = bound_mode_from_name(cert.mode);
    opts.quad = g.quad();
    opts.search.threads = g.threads;
    opts.slack = cert.slack;
    opts.eta = comp.eta;
    CertificateReport rep;
    if (comp.search) {
      auto found = search_alpha_beta(cert.eps, comp.power_s, cert.dim, opts);
      std::cout << std::setprecision(17) << "search found alpha=" << found.alpha
                << " beta=" << found.beta << " after " << found.halvings << " halvings\n";
      rep = std::move(found.report);
    } else {
      if (!(comp.alpha > 0.0) || !(comp.beta > 0.0))
        throw CLI::ValidationError("certify composite",
                                   "--alpha and --beta are required without --search");
      rep = certify_composite(cert.eps, comp.alpha, comp.beta, comp.power_s, cert.dim, opts);
    }
    exit_code = report_certificate(
        rep, g, cert.report.empty() ? default_report_name("composite", cert.dim) : cert.report);
  });

  // ---- energy ----
  struct {
    std::string measure_file;
    std::string potential_file;
    std::string method = "mc";
    std::int64_t mc_samples = 2000000;
  } en;
  auto* energy_cmd = app.add_subcommand("energy", "interaction energy of a measure file");
  energy_cmd->add_option("--measure", en.measure_file, "measure file")->required();
  energy_cmd->add_option("--potential", en.potential_file, "potential config file")->required();
  energy_cmd->add_option("--method", en.method,
                         "mollified-ball route: mc or quadrature (default mc)");
  energy_cmd->add_option("--mc-samples", en.mc_samples, "Monte Carlo pair samples")
      ->check(CLI::PositiveNumber);
  energy_cmd->callback([&] {
    const auto pot = RadialPotential::load_config_file(en.potential_file);
    const Measure m = load_measure_file(en.measure_file);
    std::cout << std::setprecision(17);
    if (const auto* d = std::get_if<DiscreteMeasure>(&m)) {
      std::cout << "energy: " << measure_energy(pot, *d) << "\n";
    } else if (const auto* b = std::get_if<MollifiedBallMeasure>(&m)) {
      if (en.method == "quadrature") {
        std::cout << "energy: " << measure_energy_quadrature(pot, *b, g.quad()) << "\n";
      } else if (en.method == "mc") {
        const auto est = measure_energy_mc(pot, *b, en.mc_samples, g.seed, g.threads);
        std::cout << "energy: " << est.estimate << "\n";
        std::cout << "stderr: " << est.std_error << "\n";
      } else {
        throw CLI::ValidationError("energy", "--method must be mc or quadrature");
      }
    } else if (const auto* prof = std::get_if<RadialProfile>(&m)) {
      std::cout << "energy: " << radial_energy(pot, *prof, g.quad()) << "\n";
    } else {
      const auto& c = std::get<ParticleConfiguration>(m);
      std::cout << "energy: " << particle_energy(pot, c, g.threads) << "\n";
    }
  });

  // ---- kernel-sup ----
  struct {
    int dim = 2;
    double eps = 0.05;
    double s_max0 = 5.0;
    std::string report;
  } ks;
  auto* ksup = app.add_subcommand("kernel-sup",
                                  "supremum of the partial kernel integral over shells");
  ksup->add_option("--dim", ks.dim, "ambient dimension")->check(CLI::Range(2, 64));
  ksup->add_option("--eps", ks.eps, "annulus half-width")->required();
  ksup->add_option("--s-max0", ks.s_max0, "initial truncation radius");
  ksup->add_option("--report", ks.report, "report JSON path");
  ksup->callback([&] {
    SearchSpec search;
    search.s_max0 = ks.s_max0;
    search.threads = g.threads;
    const auto res = kernel_sup(ks.eps, ks.dim, g.quad(), search);
    std::cout << std::setprecision(17);
    std::cout << "numeric sup : " << res.sup_value << "  (grid max " << res.grid_max
              << " at r=" << res.argmax_r << ", s=" << res.argmax_s << ")\n";
    try {
      std::cout << "analytic    : " << krs_analytic_bound(ks.eps, ks.dim) << "\n";
    } catch (const std::domain_error&) {
      std::cout << "analytic    : unavailable (hypothesis eps <= 1/11 fails for d=2)\n";
    }
    std::cout << "tail bound  : " << res.tail_bound << " beyond s=" << res.s_max << "\n";
    nlohmann::json j = res.to_json();
    const auto path =
        g.resolve(ks.report.empty() ? std::string("kernel_sup.json") : ks.report);
    write_json(j, path);
    std::cout << "report      : " << path.string() << "\n";
  });

  // ---- minimize ----
  struct {
    std::string potential_file;
    int dim = 2;
    DescentSpec spec;
    std::string init = "gaussian";
    double cluster_threshold = 0.2;
    std::string out_prefix = "minimize";
  } mz;
  auto* minimize = app.add_subcommand("minimize", "N-particle gradient descent");
  minimize->add_option("--potential", mz.potential_file, "potential config file")->required();
  minimize->add_option("--dim", mz.dim, "ambient dimension")->check(CLI::Range(1, 64));
  minimize->add_option("--n", mz.spec.n_particles, "number of particles");
  minimize->add_option("--max-iters", mz.spec.max_iters, "iteration cap");
  minimize->add_option("--step0", mz.spec.step0, "initial step size");
  minimize->add_option("--grad-tol", mz.spec.grad_tol, "gradient stopping tolerance");
  minimize->add_option("--init", mz.init, "gaussian | uniform_ball | from_file");
  minimize->add_option("--init-scale", mz.spec.init_scale,
                       "gaussian std dev or ball radius");
  minimize->add_option("--init-file", mz.spec.init_file, "particles file for from_file");
  minimize->add_option("--cluster-threshold", mz.cluster_threshold,
                       "single-linkage merge distance");
  minimize->add_option("--out-prefix", mz.out_prefix,
                       "prefix for trace CSV, final config and diagnostics JSON");
  minimize->callback([&] {
    mz.spec.seed = g.seed;
    mz.spec.threads = g.threads;
    mz.spec.init = init_kind_from_name(mz.init);
    const auto pot = RadialPotential::load_config_file(mz.potential_file);
    const auto res = gradient_descent(pot, mz.dim, mz.spec);

    const auto trace_path = g.resolve(mz.out_prefix + "_trace.csv");
    {
      std::ofstream tr(trace_path);
      if (!tr) throw std::invalid_argument("cannot write " + trace_path.string());
      tr << std::setprecision(17) << "iter,energy,grad_norm,step\n";
      for (const auto& row : res.trace)
        tr << row.iter << ',' << row.energy << ',' << row.grad_norm << ',' << row.step
           << '\n';
    }
    const auto final_path = g.resolve(mz.out_prefix + "_final.txt");
    save_measure_file(Measure{res.config}, final_path.string());

    const auto diag = diagnose(pot, res.config, g.quad(), mz.cluster_threshold);
    nlohmann::json dj{{"particle_energy", diag.particle_energy},
                      {"radialized_energy", diag.radialized_energy},
                      {"radial_gap", diag.radial_gap},
                      {"cluster_count", diag.cluster_count},
                      {"cluster_radius_threshold", diag.cluster_radius_threshold},
                      {"below_radial_bound", diag.below_radial_bound},
                      {"iterations", res.iterations},
                      {"converged", res.converged},
                      {"stop_reason", res.stop_reason},
                      {"seed", mz.spec.seed},
                      {"n_particles", mz.spec.n_particles},
                      {"dim", mz.dim}};
    if (diag.radial_bound) dj["radial_bound"] = *diag.radial_bound;
    const auto diag_path = g.resolve(mz.out_prefix + "_diagnostics.json");
    write_json(dj, diag_path);

    std::cout << std::setprecision(17);
    std::cout << "energy            : " << diag.particle_energy << "\n"
              << "radialized energy : " << diag.radialized_energy << "\n"
              << "radial gap        : " << diag.radial_gap << "\n"
              << "cluster count     : " << diag.cluster_count << " (threshold "
              << mz.cluster_threshold << ")\n"
              << "below radial bound: " << (diag.below_radial_bound ? "yes" : "no") << "\n"
              << "stopped           : " << res.stop_reason << " after " << res.iterations
              << " iterations\n"
              << "outputs           : " << trace_path.string() << ", "
              << final_path.string() << ", " << diag_path.string() << "\n";
  });

  // ---- potential-sample ----
  struct {
    std::string potential_file;
    double r_min = 0.05;
    double r_max = 4.0;
    double step = 1e-3;
    std::string out;
  } ps;
  auto* sample = app.add_subcommand("potential-sample",
                                    "emit (r, w(r), w'(r)) CSV for plotting");
  sample->add_option("--potential", ps.potential_file, "potential config file")->required();
  sample->add_option("--r-min", ps.r_min, "start radius");
  sample->add_option("--r-max", ps.r_max, "end radius");
  sample->add_option("--step", ps.step, "grid step");
  sample->add_option("--out", ps.out, "output CSV (default potential_sample.csv)");
  sample->callback([&] {
    if (!(ps.step > 0.0)) throw CLI::ValidationError("potential-sample", "--step must be > 0");
    if (!(ps.r_max >= ps.r_min))
      throw CLI::ValidationError("potential-sample", "--r-max must be >= --r-min");
    const auto pot = RadialPotential::load_config_file(ps.potential_file);
    const auto path =
        g.resolve(ps.out.empty() ? std::string("potential_sample.csv") : ps.out);
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path.string());
    out << std::setprecision(17) << "r,w,dw\n";
    for (double r = ps.r_min; r <= ps.r_max + 0.5 * ps.step; r += ps.step) {
      out << r << ',' << pot.eval(r) << ',';
      try {
        out << pot.derivative(r);
      } catch (const NonDifferentiableError&) {
        out << "nan";
      }
      out << '\n';
    }
    std::cout << "wrote " << path.string() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage problems are exit 2
  } catch (const CoincidentPairError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    // inconclusive searches (kernel sup truncation, alpha/beta exhaustion)
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
