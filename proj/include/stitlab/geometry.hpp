#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace stitlab {

/// Points and directions live in R^3; planar objects keep z = 0.
using Vec = Eigen::Vector3d;

/// Relative geometric tolerance (scaled by the diameter of the object involved).
inline constexpr double kEpsGeom = 1e-9;
/// Tolerance on unit-vector norms.
inline constexpr double kEpsUnit = 1e-12;

/// Tag carried by each polygon edge (d=2) or polyhedron facet (d=3). The engine
/// stores the id of the maximal face the edge lies on; the window boundary is
/// kBoundaryLabel.
using Label = std::int64_t;
inline constexpr Label kBoundaryLabel = -1;

/// Affine hyperplane {x : <x, normal> = offset} in R^d, d in {2, 3}.
struct Hyperplane {
  Vec normal = Vec::UnitX();
  double offset = 0.0;
  int dim = 2;

  /// Normalizes `normal`; throws InvalidArgument for a zero vector.
  static Hyperplane make(const Vec& normal, double offset, int dim);

  double signed_distance(const Vec& x) const { return x.dot(normal) - offset; }

  /// Representative with the normal on the upper half-sphere: the last nonzero
  /// coordinate is positive. Flipping the normal flips the offset.
  Hyperplane canonical() const;
  bool is_canonical() const;
};

/// Canonical upper-half-sphere representative of a direction.
Vec canonical_direction(const Vec& u, int dim);

struct Segment {
  Vec a = Vec::Zero();
  Vec b = Vec::Zero();

  double length() const { return (b - a).norm(); }
  /// Also the circumcenter of the segment.
  Vec midpoint() const { return 0.5 * (a + b); }
};

/// A (d-1)-dimensional face: a segment (two vertices) in the plane or a planar
/// convex polygon in space.
struct Face {
  std::vector<Vec> vertices;

  /// Length of a segment, area of a polygon.
  double measure() const;
  /// Midpoint for segments, area centroid for polygons.
  Vec center() const;
  Segment segment() const;
  double diameter() const;
};

/// Bounded convex polygon (d=2, counterclockwise) or polyhedron (d=3, facets
/// as vertex-index cycles, counterclockwise seen from outside). Immutable.
class ConvexPolytope {
 public:
  ConvexPolytope() = default;

  static ConvexPolytope polygon(std::vector<Vec> ccw_vertices, std::vector<Label> edge_labels = {});
  static ConvexPolytope polyhedron(std::vector<Vec> vertices, std::vector<std::vector<int>> facets,
                                   std::vector<Label> facet_labels = {});
  /// Axis-parallel box [lo, hi] in dimension 2 or 3.
  static ConvexPolytope box(const Vec& lo, const Vec& hi, int dim);

  int dim() const { return dim_; }
  bool empty() const { return vertices_.empty(); }
  std::span<const Vec> vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& facets() const { return facets_; }
  /// Per-edge labels (edge i joins vertex i and i+1) in d=2; per-facet in d=3.
  std::span<const Label> labels() const { return labels_; }

  /// Area (d=2) or volume (d=3).
  double measure() const { return measure_; }
  Vec centroid() const { return centroid_; }
  double diameter() const { return diameter_; }
  /// Perimeter (d=2) or surface area (d=3).
  double boundary_measure() const;
  /// Average of width(u) over uniformly distributed directions u.
  double mean_width() const;

  /// Outward facet planes, not canonicalized: x is inside iff
  /// signed_distance(x) <= 0 for all of them.
  std::vector<Hyperplane> facet_planes() const;

  bool contains(const Vec& x, double rel_tol = kEpsGeom) const;
  bool contains(const ConvexPolytope& other, double rel_tol = kEpsGeom) const;
  /// Shortest distance from an interior point x to the boundary (negative outside).
  double depth(const Vec& x) const;

  ConvexPolytope translated(const Vec& shift) const;
  ConvexPolytope scaled(double factor) const;
  /// Applies a linear map with positive determinant.
  ConvexPolytope transformed(const Eigen::Matrix3d& map) const;
  ConvexPolytope with_labels(std::vector<Label> labels) const;

 private:
  void finalize();

  int dim_ = 2;
  std::vector<Vec> vertices_;
  std::vector<std::vector<int>> facets_;
  std::vector<Label> labels_;
  double measure_ = 0.0;
  Vec centroid_ = Vec::Zero();
  double diameter_ = 0.0;
};

/// max<x,u> - min<x,u> over the vertices of z.
double width(const ConvexPolytope& z, const Vec& u);
double width(const Segment& s, const Vec& u);

enum class CutPolicy {
  /// Reject cuts passing within kEpsGeom * diam of a vertex (DegenerateCut).
  Strict,
  /// Accept any cut through the interior; near-vertex crossings are snapped.
  Lenient,
};

struct SplitResult {
  ConvexPolytope plus;   // z ∩ {<x,n> >= offset}
  ConvexPolytope minus;  // z ∩ {<x,n> <= offset}
  Face face;             // z ∩ h
  /// d=2 only: labels of the edges of z on which the two face endpoints lie.
  std::array<Label, 2> endpoint_labels{kBoundaryLabel, kBoundaryLabel};
};

/// Splits z by h. The new edge/facet of both pieces is tagged `cut_label`.
/// Throws NoIntersection if h misses the interior of z and DegenerateCut if
/// the cut face is tiny or (Strict policy) h grazes a vertex.
SplitResult split_polytope(const ConvexPolytope& z, const Hyperplane& h, Label cut_label = kBoundaryLabel,
                           CutPolicy policy = CutPolicy::Lenient);

/// z ∩ {<x,n> <= offset}; nullopt if the result has no interior.
std::optional<ConvexPolytope> clip_halfspace(const ConvexPolytope& z, const Hyperplane& h,
                                             Label cut_label = kBoundaryLabel);

/// z ∩ w with z's labels preserved and w's facets tagged `boundary_label`.
std::optional<ConvexPolytope> intersect(const ConvexPolytope& z, const ConvexPolytope& w,
                                        Label boundary_label = kBoundaryLabel);

/// Part of a face inside w, or nullopt if it has no relative interior there.
std::optional<Face> clip_face(const Face& face, const ConvexPolytope& w);

/// Intersection point of segment s with a face (segment in d=2, polygon in d=3),
/// if the segment crosses it transversally.
std::optional<Vec> segment_face_crossing(const Segment& s, const Face& face, int dim);

/// True iff x lies within tol of the line through s and strictly inside it,
/// at least tol away from both endpoints. Throws ZeroLength for a degenerate s.
bool point_on_segment_interior(const Vec& x, const Segment& s, double tol);

}  // namespace stitlab
