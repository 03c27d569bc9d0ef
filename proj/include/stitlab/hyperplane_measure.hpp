#pragma once

#include <vector>

#include "stitlab/geometry.hpp"
#include "stitlab/random.hpp"

namespace stitlab {

struct DirectionalAtom {
  Vec normal;
  double weight = 0.0;
};

/// Law of the unit normal of a hyperplane through the origin: a finite mixture
/// of point masses or the uniform law on the half-sphere of normals.
class DirectionalDistribution {
 public:
  /// Normals are normalized and canonicalized. Throws InvalidArgument unless the
  /// weights are positive and sum to 1 within 1e-12 and the normals span R^dim.
  static DirectionalDistribution discrete(std::vector<DirectionalAtom> atoms, int dim);
  static DirectionalDistribution isotropic(int dim);
  /// Equal weights on the coordinate axes.
  static DirectionalDistribution axis_parallel(int dim);

  int dim() const { return dim_; }
  bool is_isotropic() const { return isotropic_; }
  const std::vector<DirectionalAtom>& atoms() const { return atoms_; }

  /// Draws a canonical unit normal.
  Vec sample(Rng& rng) const;

 private:
  int dim_ = 2;
  bool isotropic_ = false;
  std::vector<DirectionalAtom> atoms_;
};

/// Translation-invariant hyperplane measure: normals from the directional
/// distribution, offsets from Lebesgue measure.
class HyperplaneMeasure {
 public:
  explicit HyperplaneMeasure(DirectionalDistribution directional) : directional_(std::move(directional)) {}

  int dim() const { return directional_.dim(); }
  const DirectionalDistribution& directional() const { return directional_; }

  /// Measure of the hyperplanes hitting z: the width of z averaged over normals.
  double hit_rate(const ConvexPolytope& z) const;
  /// Same for a segment; equals length(s) * line_hit_rate(direction of s).
  double hit_rate(const Segment& s) const;
  /// Hit rate of a unit segment with direction u.
  double line_hit_rate(const Vec& u) const;

  /// Hyperplane distributed by the normalized restriction of the measure to
  /// hyperplanes hitting z. Draws passing within kEpsGeom * diam(z) of a vertex
  /// are redrawn.
  Hyperplane sample_hitting(const ConvexPolytope& z, Rng& rng) const;

 private:
  DirectionalDistribution directional_;
};

}  // namespace stitlab
