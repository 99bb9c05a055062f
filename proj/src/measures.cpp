#include "symbreak/measures.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace symbreak {

std::vector<double> unit_simplex_vertices(int dim) {
  if (dim < 1) throw std::invalid_argument("unit_simplex_vertices: dim must be >= 1");
  const int n = dim + 1;
  std::vector<double> v(static_cast<std::size_t>(n) * dim, 0.0);
  auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * dim + j]; };
  // Incremental construction: vertex k sits above the centroid of the first k
  // vertices, on the axis orthogonal to their affine hull, at the height that
  // makes all distances to them equal to 1.
  for (int k = 1; k < n; ++k) {
    double rad2 = 0.0;  // squared circumradius of the first k vertices
    for (int j = 0; j < k; ++j) {
      double c = 0.0;
      for (int i = 0; i < k; ++i) c += at(i, j);
      c /= k;
      at(k, j) = c;
      rad2 += (at(0, j) - c) * (at(0, j) - c);
    }
    at(k, k - 1) += std::sqrt(1.0 - rad2);
  }
  // center at the origin
  for (int j = 0; j < dim; ++j) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += at(i, j);
    mean /= n;
    for (int i = 0; i < n; ++i) at(i, j) -= mean;
  }
  return v;
}

Measure rho_star_eta(int dim, double eta) {
  if (dim < 2) throw std::invalid_argument("rho_star_eta: dim must be >= 2");
  if (eta < 0.0) throw std::invalid_argument("rho_star_eta: eta must be >= 0");
  auto verts = unit_simplex_vertices(dim);
  std::vector<double> weights(static_cast<std::size_t>(dim) + 1,
                              1.0 / (static_cast<double>(dim) + 1.0));
  if (eta == 0.0) return DiscreteMeasure{dim, std::move(verts), std::move(weights)};
  return MollifiedBallMeasure{dim, std::move(verts), eta, std::move(weights)};
}

bool validate_profile(const RadialProfile& p) {
  if (p.radii.size() != p.weights.size() || p.weights.empty()) return false;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    if (!(p.weights[i] > 0.0)) return false;
    if (!(p.radii[i] >= 0.0)) return false;
    sum += p.weights[i];
  }
  return std::abs(sum - 1.0) <= 1e-12;
}

void save_measure(const Measure& m, std::ostream& os) {
  os << std::setprecision(17);
  if (const auto* d = std::get_if<DiscreteMeasure>(&m)) {
    os << "dirac " << d->dim << " 0\n";
    for (std::size_t i = 0; i < d->atoms(); ++i) {
      for (int j = 0; j < d->dim; ++j) os << d->positions[i * d->dim + j] << ' ';
      os << d->weights[i] << '\n';
    }
  } else if (const auto* b = std::get_if<MollifiedBallMeasure>(&m)) {
    os << "balls " << b->dim << ' ' << b->eta << '\n';
    for (std::size_t i = 0; i < b->atoms(); ++i) {
      for (int j = 0; j < b->dim; ++j) os << b->centers[i * b->dim + j] << ' ';
      os << b->weights[i] << '\n';
    }
  } else if (const auto* p = std::get_if<RadialProfile>(&m)) {
    os << "profile " << p->dim << " 0\n";
    for (std::size_t i = 0; i < p->nodes(); ++i)
      os << p->radii[i] << ' ' << p->weights[i] << '\n';
  } else {
    const auto& c = std::get<ParticleConfiguration>(m);
    os << "particles " << c.dim << " 0\n";
    for (std::size_t i = 0; i < c.count(); ++i) {
      for (int j = 0; j < c.dim; ++j) {
        if (j) os << ' ';
        os << c.positions[i * c.dim + j];
      }
      os << '\n';
    }
  }
}

void save_measure_file(const Measure& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write measure file: " + path);
  save_measure(m, out);
}

Measure load_measure(std::istream& is) {
  std::string kind;
  int dim = 0;
  double eta = 0.0;
  if (!(is >> kind >> dim >> eta))
    throw std::invalid_argument("measure file: bad header (want: kind dim eta)");
  if (dim < 1) throw std::invalid_argument("measure file: dim must be >= 1");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::getline(is, line);  // rest of header line
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double x;
    while (ls >> x) row.push_back(x);
    if (!ls.eof() && ls.fail())
      throw std::invalid_argument("measure file: non-numeric data: " + line);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  auto expect_cols = [&](std::size_t want) {
    for (const auto& r : rows)
      if (r.size() != want)
        throw std::invalid_argument("measure file: expected " + std::to_string(want) +
                                    " columns per line");
  };
  if (kind == "dirac" || kind == "balls") {
    expect_cols(static_cast<std::size_t>(dim) + 1);
    std::vector<double> pos, w;
    for (const auto& r : rows) {
      pos.insert(pos.end(), r.begin(), r.begin() + dim);
      w.push_back(r.back());
    }
    double sum = 0.0;
    for (double x : w) {
      if (!(x > 0.0)) throw std::invalid_argument("measure file: weights must be > 0");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("measure file: weights must sum to 1");
    if (kind == "dirac") {
      if (eta != 0.0) throw std::invalid_argument("measure file: dirac must have eta 0");
      return DiscreteMeasure{dim, std::move(pos), std::move(w)};
    }
    if (!(eta > 0.0)) throw std::invalid_argument("measure file: balls need eta > 0");
    return MollifiedBallMeasure{dim, std::move(pos), eta, std::move(w)};
  }
  if (kind == "profile") {
    expect_cols(2);
    RadialProfile p;
    p.dim = dim;
    for (const auto& r : rows) {
      p.radii.push_back(r[0]);
      p.weights.push_back(r[1]);
    }
    if (!validate_profile(p))
      throw std::invalid_argument(
          "measure file: invalid profile (weights positive summing to 1, radii >= 0)");
    return p;
  }
  if (kind == "particles") {
    expect_cols(static_cast<std::size_t>(dim));
    ParticleConfiguration c;
    c.dim = dim;
    for (const auto& r : rows) c.positions.insert(c.positions.end(), r.begin(), r.end());
    if (c.count() < 1) throw std::invalid_argument("measure file: no particles");
    return c;
  }
  throw std::invalid_argument("measure file: unknown kind '" + kind + "'");
}

Measure load_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open measure file: " + path);
  return load_measure(in);
}

}  // namespace symbreak
