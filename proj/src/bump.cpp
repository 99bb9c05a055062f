#include "symbreak/bump.hpp"

#include <cmath>
#include <vector>

#include "symbreak/quadrature.hpp"

namespace symbreak {

double psi(double x) {
  const double one_minus = 1.0 - x * x;
  if (one_minus <= 0.0) return 0.0;
  return std::exp(-1.0 / one_minus);
}

double psi_prime(double x) {
  const double one_minus = 1.0 - x * x;
  if (one_minus <= 0.0) return 0.0;
  return psi(x) * (-2.0 * x / (one_minus * one_minus));
}

namespace {

// int_0^inf exp(-z) / (2 (tau+z)^2 sqrt(1 - 1/(tau+z))) dz by a fixed
// composite Gauss rule; full relative accuracy for tau >= 5.
double tail_factor_quadrature(double tau) {
  auto g = [](double t) { return 1.0 / (2.0 * t * t * std::sqrt(1.0 - 1.0 / t)); };
  static const double panel_edges[] = {0.0, 5.0, 15.0, 42.0};
  const GaussRule& rule = gauss_rule(24);
  double inner = 0.0;
  for (int panel = 0; panel < 3; ++panel) {
    const double a = panel_edges[panel], b = panel_edges[panel + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double z = mid + half * rule.nodes[i];
      acc += rule.weights[i] * std::exp(-z) * g(tau + z);
    }
    inner += half * acc;
  }
  return inner;
}

// The factor above times tau^2 is a slowly varying function of 1/tau;
// cubic-interpolate it from a dense table. This sits on the hot path of every
// composite-potential evaluation near the well edges.
struct TailFactorTable {
  static constexpr int kPoints = 4097;
  static constexpr double kVLo = 1.0 / 746.0;
  static constexpr double kVHi = 1.0 / 5.0;
  double dv;
  std::vector<double> scaled;  // tau^2 * factor at v = 1/tau
  TailFactorTable() {
    dv = (kVHi - kVLo) / (kPoints - 1);
    scaled.resize(kPoints);
    for (int i = 0; i < kPoints; ++i) {
      const double v = kVLo + i * dv;
      const double tau = 1.0 / v;
      scaled[i] = tau * tau * tail_factor_quadrature(tau);
    }
  }
  double eval(double tau) const {
    const double v = 1.0 / tau;
    double x = (v - kVLo) / dv;
    int k = static_cast<int>(x) - 1;  // 4-point stencil k..k+3
    k = std::max(0, std::min(k, kPoints - 4));
    const double t = x - (k + 1);
    const double ym1 = scaled[k], y0 = scaled[k + 1], y1 = scaled[k + 2],
                 y2 = scaled[k + 3];
    // Catmull-Rom cubic through the stencil
    const double a0 = y0;
    const double a1 = 0.5 * (y1 - ym1);
    const double a2 = ym1 - 2.5 * y0 + 2.0 * y1 - 0.5 * y2;
    const double a3 = 0.5 * (y2 - ym1) + 1.5 * (y0 - y1);
    return (a0 + t * (a1 + t * (a2 + t * a3))) / (tau * tau);
  }
};

const TailFactorTable& tail_table() {
  static const TailFactorTable t;
  return t;
}

}  // namespace

double psi_tail_integral(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return kBumpMass / 2.0;
  // Substituting tau = 1/(v(2-v)) (the exponent variable) turns the tail
  // integral over v in (0, u] into exp(-tau_u) * factor(tau_u), with the
  // factor smooth and slowly varying; accurate in relative terms no matter
  // how small u is.
  const double tau_u = 1.0 / (u * (2.0 - u));
  if (tau_u > 744.0) return 0.0;  // exp underflows; tail below double range
  const double factor =
      tau_u >= 5.0 ? tail_table().eval(tau_u) : tail_factor_quadrature(tau_u);
  return std::exp(-tau_u) * factor;
}

namespace {

// Cumulative table of psi over [-1, 0]; the upper half comes from symmetry.
// Partial panels are integrated on the fly with a 16-point rule, so the table
// introduces no interpolation error beyond the per-panel Gauss error.
constexpr int kTablePanels = 5000;
constexpr double kTailCut = 0.08;  // below -1+kTailCut use psi_tail_integral

struct CumulativeTable {
  double h;
  std::vector<double> cum;  // cum[k] = integral of psi over [-1, -1 + k h]
  CumulativeTable() {
    h = 1.0 / kTablePanels;
    cum.resize(kTablePanels + 1);
    cum[0] = 0.0;
    for (int k = 0; k < kTablePanels; ++k) {
      const double a = -1.0 + k * h;
      cum[k + 1] = cum[k] + gauss_panel(psi, a, a + h, 16);
    }
  }
};

const CumulativeTable& table() {
  static const CumulativeTable t;
  return t;
}

// Integral of psi over (-1, x] for x in (-1, 0].
double lower_cumulative(double x) {
  if (x <= -1.0) return 0.0;
  if (x + 1.0 <= kTailCut) return psi_tail_integral(x + 1.0);
  const CumulativeTable& t = table();
  int k = static_cast<int>((x + 1.0) / t.h);
  if (k > kTablePanels) k = kTablePanels;
  const double xk = -1.0 + k * t.h;
  double v = t.cum[k];
  if (x > xk) {
    const GaussRule& rule = gauss_rule(16);
    const double mid = 0.5 * (xk + x), half = 0.5 * (x - xk);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * psi(mid + half * rule.nodes[i]);
    v += half * acc;
  }
  return v;
}

}  // namespace

double phi(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x == 0.0) return 0.5;
  if (x > 0.0) return 1.0 - phi(-x);  // makes phi(x) + phi(-x) = 1 exact
  return lower_cumulative(x) / kBumpMass;
}

double phi_prime(double x) { return psi(x) / kBumpMass; }

}  // namespace symbreak
