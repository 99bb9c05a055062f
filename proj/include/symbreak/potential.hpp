#ifndef SYMBREAK_POTENTIAL_HPP
#define SYMBREAK_POTENTIAL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace symbreak {

/// Requested derivative at a radius where the potential has a jump.
class NonDifferentiableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Potential fails the repulsive-then-attractive shape requirement.
class ShapeViolation : public std::runtime_error {
 public:
  ShapeViolation(const std::string& what, std::vector<double> radii)
      : std::runtime_error(what), offending_radii(std::move(radii)) {}
  std::vector<double> offending_radii;
};

enum class PotentialKind { prototype, composite, tabulated };

struct PrototypeParams {
  double eps;
  double jump_window = 1e-9;  // derivative() refuses within this distance of 1 +- eps
};

struct CompositeParams {
  double eps;
  double alpha;
  double beta;
  double power_s;
  int dim;
  double phi_m1b;  // phi(-1 + beta), cached at construction
};

struct TabulatedData {
  std::vector<double> radii;   // strictly increasing
  std::vector<double> values;  // same length
  std::string source_csv;      // where the table came from, if loaded
};

// Radial interaction potential w(r). Three families:
//   prototype:  -1 on ||r| - 1| <= eps, 0 elsewhere
//   composite:  alpha r^-s (1 - phi(4r - 7)) + smooth five-piece well
//   tabulated:  linear interpolation, constant extrapolation
// Evaluation is pure and reentrant after construction.
class RadialPotential {
 public:
  static RadialPotential prototype(double eps, double jump_window = 1e-9);
  static RadialPotential composite(double eps, double alpha, double beta, double power_s,
                                   int dim);
  static RadialPotential tabulated(std::vector<double> radii, std::vector<double> values,
                                   std::string source_csv = {});

  PotentialKind kind() const { return kind_; }

  /// w(r). Composite requires r > 0; prototype and tabulated accept r = 0.
  double eval(double r) const;

  /// w'(r). Throws NonDifferentiableError near the prototype jumps.
  double derivative(double r) const;

  /// Radii where w or w' changes character; quadrature panels split here.
  std::vector<double> breakpoints() const;

  bool singular_at_origin() const;
  bool differentiable() const { return kind_ != PotentialKind::prototype; }

  /// w is constant for r >= tail_start(), equal to tail_value().
  double tail_start() const;
  double tail_value() const;

  const PrototypeParams* as_prototype() const { return std::get_if<PrototypeParams>(&params_); }
  const CompositeParams* as_composite() const { return std::get_if<CompositeParams>(&params_); }
  const TabulatedData* as_tabulated() const { return std::get_if<TabulatedData>(&params_); }

  // Composite piece bookkeeping, used by shape verification. Pieces of the
  // well part w2 are indexed 0..4 in order of increasing r; joins() gives the
  // four radii where adjacent pieces meet.
  double w2_piece(int piece, double r) const;
  double w2_piece_derivative(int piece, double r) const;
  std::vector<double> w2_joins() const;

  /// Plain-text config block (key = value lines). Tabulated emits its CSV path.
  std::string to_config() const;
  static RadialPotential from_config(const std::string& text);
  /// Reads a config file; a tabulated `csv` path is resolved relative to it.
  static RadialPotential load_config_file(const std::string& path);
  static RadialPotential load_tabulated_csv(const std::string& path);

 private:
  RadialPotential() = default;
  PotentialKind kind_ = PotentialKind::prototype;
  std::variant<PrototypeParams, CompositeParams, TabulatedData> params_;
};

struct ShapeReport {
  double r0 = 0.0;                 // derivative sign-change radius (bisected)
  bool repulsive_verified = false; // w' < 0 at every grid point in (0, r0)
  bool attractive_verified = false;// w' >= -tol at every grid point in (r0, r_far]
  bool joins_verified = false;     // composite piece joins match in value and slope
  double grid_resolution = 0.0;
  double join_max_mismatch = 0.0;        // worst value gap across the four joins
  double join_max_deriv_mismatch = 0.0;  // worst slope gap across the four joins
  bool ok() const { return repulsive_verified && attractive_verified && joins_verified; }
};

/// Scans w' on a grid, locates the unique sign change by bisection and checks
/// repulsive-short-range / attractive-long-range. Throws ShapeViolation when
/// the derivative has no sign change or more than one (listing the radii).
/// r_far <= 0 selects a default past the potential's tail.
ShapeReport verify_shape(const RadialPotential& p, double grid_step = 1e-3,
                         double r_far = 0.0, double attract_tol = 1e-12);

}  // namespace symbreak

#endif
