#include "symbreak/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "symbreak/parallel.hpp"

namespace symbreak {

namespace {

// Newton iteration on Legendre polynomials; standard construction of the
// Gauss-Legendre rule to machine precision.
GaussRule make_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

std::mutex g_rule_mutex;
std::map<int, GaussRule> g_rules;

}  // namespace

const GaussRule& gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto it = g_rules.find(n);
  if (it == g_rules.end()) it = g_rules.emplace(n, make_rule(n)).first;
  return it->second;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussRule& rule = gauss_rule(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

namespace {

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             double rel_tol, int n, int depth, int max_depth) {
  const double whole = gauss_panel(f, a, b, n);
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(f, a, mid, n);
  const double right = gauss_panel(f, mid, b, n);
  const double refined = left + right;
  const double err = std::abs(refined - whole);
  if (err <= tol || err <= rel_tol * std::abs(refined) ||
      b - a < 1e-14 * (1.0 + std::abs(a)))
    return refined;
  if (depth >= max_depth)
    throw QuadratureError("adaptive quadrature: depth limit reached, residual " +
                          std::to_string(err));
  return adapt(f, a, mid, 0.5 * tol, rel_tol, n, depth + 1, max_depth) +
         adapt(f, mid, b, 0.5 * tol, rel_tol, n, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& q) {
  if (!(a <= b)) throw std::invalid_argument("integrate: a > b");
  if (a == b) return 0.0;
  return adapt(f, a, b, q.tol, q.rel_tol, std::max(4, q.panels), 0, q.max_depth);
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::vector<double> breakpoints, const QuadratureSpec& q) {
  if (!(a <= b)) throw std::invalid_argument("integrate_split: a > b");
  if (a == b) return 0.0;
  std::vector<double> cuts;
  cuts.push_back(a);
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double c : breakpoints)
    if (c > a && c < b && (cuts.empty() || c > cuts.back() + 1e-15)) cuts.push_back(c);
  cuts.push_back(b);
  double total = 0.0;
  const double tol_share = q.tol / static_cast<double>(cuts.size() - 1);
  QuadratureSpec piece = q;
  piece.tol = tol_share;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate(f, cuts[i], cuts[i + 1], piece);
  return total;
}

namespace {

int grading_order(double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("integrate_graded: gamma must be > 0 (divergent otherwise)");
  const int m = static_cast<int>(std::ceil(3.0 / gamma));
  return std::clamp(m, 1, 80);
}

}  // namespace

double integrate_graded_left(const std::function<double(double)>& f, double a, double b,
                             double gamma, const QuadratureSpec& q) {
  if (!(a <= b)) throw std::invalid_argument("integrate_graded_left: a > b");
  if (a == b) return 0.0;
  const int m = grading_order(gamma);
  if (m == 1) return integrate(f, a, b, q);
  const double len = b - a;
  auto g = [&](double xi) {
    const double p = std::pow(xi, m - 1);
    return f(a + len * p * xi) * m * p * len;
  };
  return integrate(g, 0.0, 1.0, q);
}

double integrate_graded_right(const std::function<double(double)>& f, double a, double b,
                              double gamma, const QuadratureSpec& q) {
  if (!(a <= b)) throw std::invalid_argument("integrate_graded_right: a > b");
  if (a == b) return 0.0;
  const int m = grading_order(gamma);
  if (m == 1) return integrate(f, a, b, q);
  const double len = b - a;
  auto g = [&](double xi) {
    const double p = std::pow(xi, m - 1);
    return f(b - len * p * xi) * m * p * len;
  };
  return integrate(g, 0.0, 1.0, q);
}

void run_fixed_chunks(std::size_t n_items, std::size_t n_chunks, int threads,
                      const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n_items == 0) return;
  n_chunks = std::min(n_chunks, n_items);
  auto chunk_range = [&](std::size_t c) {
    const std::size_t lo = n_items * c / n_chunks;
    const std::size_t hi = n_items * (c + 1) / n_chunks;
    return std::pair<std::size_t, std::size_t>(lo, hi);
  };
  if (threads <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      auto [lo, hi] = chunk_range(c);
      fn(c, lo, hi);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      auto [lo, hi] = chunk_range(c);
      fn(c, lo, hi);
    }
  };
  std::vector<std::thread> pool;
  const int nt = std::min<int>(threads, static_cast<int>(n_chunks));
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace symbreak
