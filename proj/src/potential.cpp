#include "symbreak/potential.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "symbreak/bump.hpp"

namespace symbreak {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

RadialPotential RadialPotential::prototype(double eps, double jump_window) {
  require(eps > 0.0 && eps < 1.0, "prototype: eps must lie in (0, 1)");
  require(jump_window >= 0.0, "prototype: jump window must be >= 0");
  RadialPotential p;
  p.kind_ = PotentialKind::prototype;
  p.params_ = PrototypeParams{eps, jump_window};
  return p;
}

RadialPotential RadialPotential::composite(double eps, double alpha, double beta,
                                           double power_s, int dim) {
  require(eps > 0.0 && eps < 0.5, "composite: eps must lie in (0, 1/2)");
  require(alpha >= 0.0, "composite: alpha must be >= 0");
  require(beta > 0.0 && beta < eps, "composite: beta must lie in (0, eps)");
  require(dim >= 2, "composite: dim must be >= 2");
  require(power_s > dim - 2 && power_s < dim,
          "composite: power_s must lie in (dim-2, dim)");
  const double phi_m1b = psi_tail_integral(beta) / kBumpMass;
  require(phi_m1b > 0.0,
          "composite: beta so small that phi(-1+beta) underflows; the tail value "
          "-1 + 1/phi(-1+beta) is not representable");
  RadialPotential p;
  p.kind_ = PotentialKind::composite;
  p.params_ = CompositeParams{eps, alpha, beta, power_s, dim, phi_m1b};
  return p;
}

RadialPotential RadialPotential::tabulated(std::vector<double> radii,
                                           std::vector<double> values,
                                           std::string source_csv) {
  require(!radii.empty(), "tabulated: needs at least one node");
  require(radii.size() == values.size(), "tabulated: radii and values differ in length");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    require(radii[i] < radii[i + 1], "tabulated: radii must be strictly increasing");
  require(radii.front() >= 0.0, "tabulated: radii must be nonnegative");
  RadialPotential p;
  p.kind_ = PotentialKind::tabulated;
  p.params_ = TabulatedData{std::move(radii), std::move(values), std::move(source_csv)};
  return p;
}

double RadialPotential::w2_piece(int piece, double r) const {
  const CompositeParams& c = std::get<CompositeParams>(params_);
  switch (piece) {
    case 0: return 0.0;
    case 1: return -phi((r - (1.0 - c.eps + 0.5 * c.beta)) / (0.5 * c.beta));
    case 2: return -1.0;
    case 3: return -1.0 + phi(r - (2.0 + c.eps - c.beta)) / c.phi_m1b;
    case 4: return -1.0 + 1.0 / c.phi_m1b;
    default: throw std::out_of_range("w2_piece: piece index");
  }
}

double RadialPotential::w2_piece_derivative(int piece, double r) const {
  const CompositeParams& c = std::get<CompositeParams>(params_);
  switch (piece) {
    case 0: return 0.0;
    case 1:
      return -phi_prime((r - (1.0 - c.eps + 0.5 * c.beta)) / (0.5 * c.beta)) *
             (2.0 / c.beta);
    case 2: return 0.0;
    case 3: return phi_prime(r - (2.0 + c.eps - c.beta)) / c.phi_m1b;
    case 4: return 0.0;
    default: throw std::out_of_range("w2_piece_derivative: piece index");
  }
}

std::vector<double> RadialPotential::w2_joins() const {
  const CompositeParams& c = std::get<CompositeParams>(params_);
  return {1.0 - c.eps, 1.0 - c.eps + c.beta, 1.0 + c.eps - c.beta, 3.0 + c.eps - c.beta};
}

namespace {

int composite_piece(const CompositeParams& c, double r) {
  if (r <= 1.0 - c.eps) return 0;
  if (r < 1.0 - c.eps + c.beta) return 1;
  if (r <= 1.0 + c.eps - c.beta) return 2;
  if (r < 3.0 + c.eps - c.beta) return 3;
  return 4;
}

double tabulated_eval(const TabulatedData& t, double r) {
  if (r <= t.radii.front()) return t.values.front();
  if (r >= t.radii.back()) return t.values.back();
  const auto it = std::upper_bound(t.radii.begin(), t.radii.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - t.radii.begin()) - 1;
  const double f = (r - t.radii[k]) / (t.radii[k + 1] - t.radii[k]);
  return t.values[k] + f * (t.values[k + 1] - t.values[k]);
}

double tabulated_derivative(const TabulatedData& t, double r) {
  const std::size_t n = t.radii.size();
  if (r < t.radii.front() || r > t.radii.back()) return 0.0;
  auto slope = [&](std::size_t seg) {
    return (t.values[seg + 1] - t.values[seg]) / (t.radii[seg + 1] - t.radii[seg]);
  };
  const auto it = std::lower_bound(t.radii.begin(), t.radii.end(), r);
  if (it != t.radii.end() && *it == r) {
    // exactly on a node: average the adjacent slopes (constant outside)
    const std::size_t j = static_cast<std::size_t>(it - t.radii.begin());
    const double left = (j == 0) ? 0.0 : slope(j - 1);
    const double right = (j + 1 == n) ? 0.0 : slope(j);
    return 0.5 * (left + right);
  }
  const auto up = std::upper_bound(t.radii.begin(), t.radii.end(), r);
  const std::size_t k = static_cast<std::size_t>(up - t.radii.begin()) - 1;
  return slope(k);
}

}  // namespace

double RadialPotential::eval(double r) const {
  switch (kind_) {
    case PotentialKind::prototype: {
      if (r < 0.0) throw std::domain_error("potential: r must be >= 0");
      const auto& p = std::get<PrototypeParams>(params_);
      return std::abs(r - 1.0) <= p.eps ? -1.0 : 0.0;
    }
    case PotentialKind::composite: {
      if (r <= 0.0) throw std::domain_error("composite potential: r must be > 0");
      const auto& c = std::get<CompositeParams>(params_);
      const double core = c.alpha * std::pow(r, -c.power_s) * (1.0 - phi(4.0 * r - 7.0));
      return core + w2_piece(composite_piece(c, r), r);
    }
    case PotentialKind::tabulated: {
      if (r < 0.0) throw std::domain_error("potential: r must be >= 0");
      return tabulated_eval(std::get<TabulatedData>(params_), r);
    }
  }
  throw std::logic_error("unreachable");
}

double RadialPotential::derivative(double r) const {
  switch (kind_) {
    case PotentialKind::prototype: {
      if (r < 0.0) throw std::domain_error("potential: r must be >= 0");
      const auto& p = std::get<PrototypeParams>(params_);
      for (double jump : {1.0 - p.eps, 1.0 + p.eps})
        if (std::abs(r - jump) <= p.jump_window)
          throw NonDifferentiableError(
              "prototype potential is not differentiable at r = 1 +- eps");
      return 0.0;
    }
    case PotentialKind::composite: {
      if (r <= 0.0) throw std::domain_error("composite potential: r must be > 0");
      const auto& c = std::get<CompositeParams>(params_);
      const double mask = 1.0 - phi(4.0 * r - 7.0);
      double d = -c.alpha * c.power_s * std::pow(r, -c.power_s - 1.0) * mask;
      if (mask > 0.0 && mask < 1.0)
        d += c.alpha * std::pow(r, -c.power_s) * (-4.0 * phi_prime(4.0 * r - 7.0));
      return d + w2_piece_derivative(composite_piece(c, r), r);
    }
    case PotentialKind::tabulated:
      if (r < 0.0) throw std::domain_error("potential: r must be >= 0");
      return tabulated_derivative(std::get<TabulatedData>(params_), r);
  }
  throw std::logic_error("unreachable");
}

std::vector<double> RadialPotential::breakpoints() const {
  switch (kind_) {
    case PotentialKind::prototype: {
      const auto& p = std::get<PrototypeParams>(params_);
      return {1.0 - p.eps, 1.0 + p.eps};
    }
    case PotentialKind::composite: {
      const auto& c = std::get<CompositeParams>(params_);
      std::vector<double> b = w2_joins();
      b.push_back(1.5);  // support edges of phi(4r - 7)
      b.push_back(2.0);
      // The rising piece spans hundreds of orders of magnitude (its scale is
      // 1/phi(-1+beta)). Quadrature panels must follow that growth, so mark
      // the radii where the exponent 1/(u(2-u)) of phi's tail has dropped by
      // steps of 25: between consecutive marks the integrand varies by a
      // bounded factor and a single Gauss panel resolves it.
      const double tau_beta = 1.0 / (c.beta * (2.0 - c.beta));
      const double base = 1.0 + c.eps - c.beta;  // piece-3 argument hits -1 here
      for (double tau = 744.0; tau > 3.0; tau -= 25.0) {
        if (std::abs(tau - tau_beta) < 1.0) continue;
        const double u = 1.0 - std::sqrt(1.0 - 1.0 / tau);
        b.push_back(base + u);
      }
      // a few marks across the remaining ordinary range of phi
      for (double x : {-0.9, -0.7, -0.4, 0.0, 0.5})
        b.push_back(2.0 + c.eps - c.beta + x);
      std::sort(b.begin(), b.end());
      return b;
    }
    case PotentialKind::tabulated: {
      const auto& t = std::get<TabulatedData>(params_);
      return t.radii;
    }
  }
  throw std::logic_error("unreachable");
}

bool RadialPotential::singular_at_origin() const {
  const CompositeParams* c = as_composite();
  return c != nullptr && c->alpha > 0.0;
}

double RadialPotential::tail_start() const {
  switch (kind_) {
    case PotentialKind::prototype:
      return 1.0 + std::get<PrototypeParams>(params_).eps;
    case PotentialKind::composite: {
      const auto& c = std::get<CompositeParams>(params_);
      return 3.0 + c.eps - c.beta;
    }
    case PotentialKind::tabulated:
      return std::get<TabulatedData>(params_).radii.back();
  }
  throw std::logic_error("unreachable");
}

double RadialPotential::tail_value() const {
  switch (kind_) {
    case PotentialKind::prototype:
      return 0.0;
    case PotentialKind::composite: {
      const auto& c = std::get<CompositeParams>(params_);
      return -1.0 + 1.0 / c.phi_m1b;
    }
    case PotentialKind::tabulated:
      return std::get<TabulatedData>(params_).values.back();
  }
  throw std::logic_error("unreachable");
}

std::string RadialPotential::to_config() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case PotentialKind::prototype: {
      const auto& p = std::get<PrototypeParams>(params_);
      os << "variant = prototype\n" << "eps = " << p.eps << "\n";
      break;
    }
    case PotentialKind::composite: {
      const auto& c = std::get<CompositeParams>(params_);
      os << "variant = composite\n"
         << "eps = " << c.eps << "\n"
         << "alpha = " << c.alpha << "\n"
         << "beta = " << c.beta << "\n"
         << "power_s = " << c.power_s << "\n"
         << "dim = " << c.dim << "\n";
      break;
    }
    case PotentialKind::tabulated: {
      const auto& t = std::get<TabulatedData>(params_);
      if (t.source_csv.empty())
        throw std::logic_error("tabulated potential has no CSV path to reference");
      os << "variant = tabulated\n" << "csv = " << t.source_csv << "\n";
      break;
    }
  }
  return os.str();
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("potential config: expected 'key = value', got: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

double want_num(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::invalid_argument("potential config: missing key '" + key + "'");
  std::size_t pos = 0;
  const double v = std::stod(it->second, &pos);
  if (pos != it->second.size())
    throw std::invalid_argument("potential config: bad number for '" + key + "'");
  return v;
}

}  // namespace

RadialPotential RadialPotential::from_config(const std::string& text) {
  auto kv = parse_kv(text);
  auto it = kv.find("variant");
  if (it == kv.end()) throw std::invalid_argument("potential config: missing 'variant'");
  const std::string variant = it->second;
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : kv) {
      if (k == "variant") continue;
      if (std::find_if(allowed.begin(), allowed.end(),
                       [&](const char* a) { return k == a; }) == allowed.end())
        throw std::invalid_argument("potential config: unknown key '" + k + "'");
    }
  };
  if (variant == "prototype") {
    check_keys({"eps"});
    return prototype(want_num(kv, "eps"));
  }
  if (variant == "composite") {
    check_keys({"eps", "alpha", "beta", "power_s", "dim"});
    return composite(want_num(kv, "eps"), want_num(kv, "alpha"), want_num(kv, "beta"),
                     want_num(kv, "power_s"), static_cast<int>(want_num(kv, "dim")));
  }
  if (variant == "tabulated") {
    check_keys({"csv"});
    auto csv = kv.find("csv");
    if (csv == kv.end()) throw std::invalid_argument("potential config: missing 'csv'");
    return load_tabulated_csv(csv->second);
  }
  throw std::invalid_argument("potential config: unknown variant '" + variant + "'");
}

RadialPotential RadialPotential::load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open potential config: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto kv = parse_kv(buf.str());
  if (auto it = kv.find("csv"); it != kv.end()) {
    std::filesystem::path csv(it->second);
    if (csv.is_relative()) {
      csv = std::filesystem::path(path).parent_path() / csv;
      kv["csv"] = csv.string();
    }
    std::string rebuilt;
    for (const auto& [k, v] : kv) rebuilt += k + " = " + v + "\n";
    return from_config(rebuilt);
  }
  return from_config(buf.str());
}

RadialPotential RadialPotential::load_tabulated_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tabulated CSV: " + path);
  std::vector<double> radii, values;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double r, v;
    if (!(ls >> r >> v))
      throw std::invalid_argument("tabulated CSV: expected 'radius,value' per line");
    // allow a header row once
    radii.push_back(r);
    values.push_back(v);
  }
  return tabulated(std::move(radii), std::move(values), path);
}

namespace {

double bisect_derivative_root(const RadialPotential& p, double lo, double hi) {
  double flo = p.derivative(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = p.derivative(mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ShapeReport verify_shape(const RadialPotential& p, double grid_step, double r_far,
                         double attract_tol) {
  if (!p.differentiable())
    throw std::invalid_argument("verify_shape: potential has no derivative (prototype)");
  require(grid_step > 0.0, "verify_shape: grid_step must be > 0");
  if (r_far <= 0.0) r_far = p.tail_start() + 1.0;

  ShapeReport rep;
  rep.grid_resolution = grid_step;

  const std::size_t n = static_cast<std::size_t>(std::floor(r_far / grid_step));
  std::vector<double> deriv(n);
  for (std::size_t k = 0; k < n; ++k) deriv[k] = p.derivative(grid_step * (k + 1));

  // first up-crossing of w' defines r0
  std::size_t cross = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (deriv[k] >= 0.0) {
      cross = k;
      break;
    }
  }
  if (cross == n)
    throw ShapeViolation("verify_shape: derivative never becomes nonnegative up to r_far",
                         {r_far});
  if (cross == 0) {
    rep.r0 = grid_step;
    rep.repulsive_verified = false;
  } else {
    rep.r0 = bisect_derivative_root(p, grid_step * cross, grid_step * (cross + 1));
    rep.repulsive_verified = true;  // every grid point before `cross` was < 0
  }

  // after r0 the derivative must stay >= -tol; a later dip that crosses back
  // up means multiple sign changes
  std::vector<double> bad;
  rep.attractive_verified = true;
  bool in_dip = false;
  for (std::size_t k = cross; k < n; ++k) {
    const double r = grid_step * (k + 1);
    if (r <= rep.r0) continue;
    if (deriv[k] < -attract_tol) {
      rep.attractive_verified = false;
      if (!in_dip) bad.push_back(r);
      in_dip = true;
    } else if (in_dip) {
      bad.push_back(r);
      in_dip = false;
    }
  }
  if (!bad.empty() && bad.size() >= 2)
    throw ShapeViolation("verify_shape: multiple derivative sign changes", bad);

  // piece joins (composite): value and slope must match across each join
  if (p.kind() == PotentialKind::composite) {
    const auto joins = p.w2_joins();
    for (std::size_t j = 0; j < joins.size(); ++j) {
      const double vl = p.w2_piece(static_cast<int>(j), joins[j]);
      const double vr = p.w2_piece(static_cast<int>(j) + 1, joins[j]);
      const double dl = p.w2_piece_derivative(static_cast<int>(j), joins[j]);
      const double dr = p.w2_piece_derivative(static_cast<int>(j) + 1, joins[j]);
      rep.join_max_mismatch = std::max(rep.join_max_mismatch, std::abs(vl - vr));
      rep.join_max_deriv_mismatch =
          std::max(rep.join_max_deriv_mismatch, std::abs(dl - dr));
    }
    rep.joins_verified =
        rep.join_max_mismatch < 1e-9 && rep.join_max_deriv_mismatch < 1e-7;
    if (!rep.joins_verified)
      throw ShapeViolation("verify_shape: piece joins mismatch", joins);
  } else {
    rep.joins_verified = true;  // tabulated interpolation is continuous by construction
  }
  return rep;
}

}  // namespace symbreak
