#ifndef SYMBREAK_BUMP_HPP
#define SYMBREAK_BUMP_HPP

namespace symbreak {

// Mass of the standard bump: integral of exp(-1/(1-x^2)) over (-1, 1).
// Frozen from adaptive quadrature at tolerance 1e-12 (re-derived by the
// independent oracle in tests/test_bump.cpp, which must agree to 1e-12).
inline constexpr double kBumpMass = 0.4439938161680794;

/// exp(-1/(1-x^2)) for |x| < 1, else 0. Smooth, even, supported on [-1, 1].
double psi(double x);

/// d/dx psi(x); vanishes outside (-1, 1).
double psi_prime(double x);

/// Normalized antiderivative of psi: 0 on (-inf, -1], 1 on [1, inf),
/// smooth and increasing in between, phi(-x) = 1 - phi(x) exactly.
double phi(double x);

/// d/dx phi(x) = psi(x) / kBumpMass.
double phi_prime(double x);

/// Unnormalized tail integral of psi over (-1, -1+u], u >= 0. Accurate in
/// relative terms down to the underflow floor (returns 0 once the tail is
/// below the smallest normal double). Used for phi near the support ends,
/// where table interpolation loses all relative accuracy.
double psi_tail_integral(double u);

}  // namespace symbreak

#endif
