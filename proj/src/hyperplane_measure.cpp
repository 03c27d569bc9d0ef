#include "stitlab/hyperplane_measure.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "stitlab/error.hpp"

namespace stitlab {

DirectionalDistribution DirectionalDistribution::discrete(std::vector<DirectionalAtom> atoms, int dim) {
  if (dim != 2 && dim != 3) throw Error(Errc::BadDimension, "directional distribution dimension must be 2 or 3");
  if (atoms.empty()) throw Error(Errc::InvalidArgument, "discrete directional distribution needs atoms");
  double total = 0.0;
  Eigen::MatrixXd normals(dim, atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto& a = atoms[i];
    if (!(a.weight > 0.0)) throw Error(Errc::InvalidArgument, "atom weights must be positive");
    if (dim == 2) a.normal.z() = 0.0;
    const double len = a.normal.norm();
    if (!(len > 0.0)) throw Error(Errc::InvalidArgument, "atom normal must be nonzero");
    a.normal = canonical_direction(a.normal / len, dim);
    total += a.weight;
    normals.col(static_cast<Eigen::Index>(i)) = a.normal.head(dim);
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(Errc::InvalidArgument, "atom weights must sum to 1");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normals);
  lu.setThreshold(1e-9);
  if (lu.rank() < dim) throw Error(Errc::InvalidArgument, "normals must span the space (bounded cells)");
  DirectionalDistribution q;
  q.dim_ = dim;
  q.atoms_ = std::move(atoms);
  return q;
}

DirectionalDistribution DirectionalDistribution::isotropic(int dim) {
  if (dim != 2 && dim != 3) throw Error(Errc::BadDimension, "directional distribution dimension must be 2 or 3");
  DirectionalDistribution q;
  q.dim_ = dim;
  q.isotropic_ = true;
  return q;
}

DirectionalDistribution DirectionalDistribution::axis_parallel(int dim) {
  std::vector<DirectionalAtom> atoms;
  for (int i = 0; i < dim; ++i) atoms.push_back({Vec::Unit(i), 1.0 / dim});
  return discrete(std::move(atoms), dim);
}

Vec DirectionalDistribution::sample(Rng& rng) const {
  if (isotropic_) {
    if (dim_ == 2) {
      const double theta = std::numbers::pi * uniform01(rng);
      return canonical_direction(Vec(std::cos(theta), std::sin(theta), 0.0), 2);
    }
    const double z = uniform01_open_low(rng);
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec(r * std::cos(phi), r * std::sin(phi), z);
  }
  double u = uniform01(rng);
  for (const auto& a : atoms_) {
    if (u < a.weight) return a.normal;
    u -= a.weight;
  }
  return atoms_.back().normal;
}

double HyperplaneMeasure::hit_rate(const ConvexPolytope& z) const {
  if (z.empty()) throw Error(Errc::EmptyPolytope, "hit rate of an empty polytope");
  if (directional_.is_isotropic()) return z.mean_width();
  double r = 0.0;
  for (const auto& a : directional_.atoms()) r += a.weight * width(z, a.normal);
  return r;
}

double HyperplaneMeasure::line_hit_rate(const Vec& u) const {
  const Vec dir = u.normalized();
  if (directional_.is_isotropic()) return dim() == 2 ? 2.0 / std::numbers::pi : 0.5;
  double r = 0.0;
  for (const auto& a : directional_.atoms()) r += a.weight * std::abs(dir.dot(a.normal));
  return r;
}

double HyperplaneMeasure::hit_rate(const Segment& s) const {
  const double len = s.length();
  if (!(len > 0.0)) return 0.0;
  return len * line_hit_rate(s.b - s.a);
}

Hyperplane HyperplaneMeasure::sample_hitting(const ConvexPolytope& z, Rng& rng) const {
  if (z.empty()) throw Error(Errc::EmptyPolytope, "cannot sample hyperplanes hitting an empty polytope");
  const double diam = z.diameter();
  const double tol = kEpsGeom * diam;
  const auto& atoms = directional_.atoms();
  std::vector<double> size_biased;
  double total = 0.0;
  if (!directional_.is_isotropic()) {
    size_biased.reserve(atoms.size());
    for (const auto& a : atoms) {
      total += a.weight * width(z, a.normal);
      size_biased.push_back(total);
    }
  }
  for (;;) {
    Vec n;
    if (directional_.is_isotropic()) {
      // Rejection from the uniform law with envelope width <= diam.
      do {
        n = directional_.sample(rng);
      } while (uniform01(rng) * diam >= width(z, n));
    } else {
      const double u = uniform01(rng) * total;
      std::size_t i = 0;
      while (i + 1 < size_biased.size() && u >= size_biased[i]) ++i;
      n = atoms[i].normal;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : z.vertices()) {
      const double p = v.dot(n);
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    const double offset = uniform(rng, lo, hi);
    bool grazing = false;
    for (const auto& v : z.vertices()) grazing = grazing || std::abs(v.dot(n) - offset) <= tol;
    if (!grazing) return Hyperplane{n, offset, dim()};
  }
}

}  // namespace stitlab
