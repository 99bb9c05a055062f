#ifndef SYMBREAK_MEASURES_HPP
#define SYMBREAK_MEASURES_HPP

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace symbreak {

/// d+1 equal Dirac masses (or a general weighted atom list) in R^d.
/// Positions are stored flat, atom i at positions[i*dim .. i*dim+dim).
struct DiscreteMeasure {
  int dim = 0;
  std::vector<double> positions;
  std::vector<double> weights;
  std::size_t atoms() const { return weights.size(); }
};

/// Uniform balls of radius eta centered at the given points.
struct MollifiedBallMeasure {
  int dim = 0;
  std::vector<double> centers;
  double eta = 0.0;
  std::vector<double> weights;
  std::size_t atoms() const { return weights.size(); }
};

/// Radial measure as a sum of uniform spherical shells: sum_i w_i delta_(r_i).
struct RadialProfile {
  int dim = 0;  // ambient dimension the shells live in
  std::vector<double> radii;
  std::vector<double> weights;
  std::size_t nodes() const { return weights.size(); }
};

/// N equal-mass particles in R^d (weights 1/N implicit).
struct ParticleConfiguration {
  int dim = 0;
  std::vector<double> positions;
  std::size_t count() const {
    return dim > 0 ? positions.size() / static_cast<std::size_t>(dim) : 0;
  }
};

using Measure =
    std::variant<DiscreteMeasure, MollifiedBallMeasure, RadialProfile, ParticleConfiguration>;

/// Vertices of a regular simplex with side length 1 in R^dim, centered so the
/// mean is the origin. Returns (dim+1) * dim coordinates, flat.
std::vector<double> unit_simplex_vertices(int dim);

/// The competitor family: eta = 0 gives d+1 equal Dirac masses at the unit
/// simplex vertices, eta > 0 the uniform balls of radius eta at the same
/// centers.
Measure rho_star_eta(int dim, double eta);

/// Weights positive and summing to 1 within 1e-12, radii nonnegative.
bool validate_profile(const RadialProfile& p);

// Line-oriented text format shared by all measure kinds:
//   <kind> <dim> <eta>
//   one atom / center / shell / particle per line
// kind is one of dirac, balls, profile, particles.
void save_measure(const Measure& m, std::ostream& os);
void save_measure_file(const Measure& m, const std::string& path);
Measure load_measure(std::istream& is);
Measure load_measure_file(const std::string& path);

}  // namespace symbreak

#endif
