#include "stitlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "stitlab/error.hpp"

namespace stitlab {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NoIntersection: return "NoIntersection";
    case Errc::DegenerateCut: return "DegenerateCut";
    case Errc::ZeroLength: return "ZeroLength";
    case Errc::EmptyPolytope: return "EmptyPolytope";
    case Errc::InvalidWindow: return "InvalidWindow";
    case Errc::MaxCellsExceeded: return "MaxCellsExceeded";
    case Errc::SegmentOutsideWindow: return "SegmentOutsideWindow";
    case Errc::NotContained: return "NotContained";
    case Errc::WindowMismatch: return "WindowMismatch";
    case Errc::InsufficientFresh: return "InsufficientFresh";
    case Errc::NonPositiveFactor: return "NonPositiveFactor";
    case Errc::BadInnerWindow: return "BadInnerWindow";
    case Errc::BadDimension: return "BadDimension";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Config: return "Config";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Hyperplane

Hyperplane Hyperplane::make(const Vec& normal, double offset, int dim) {
  if (dim != 2 && dim != 3) throw Error(Errc::BadDimension, "hyperplane dimension must be 2 or 3");
  Vec n = normal;
  if (dim == 2) n.z() = 0.0;
  const double len = n.norm();
  if (!(len > 0.0) || !std::isfinite(len)) throw Error(Errc::InvalidArgument, "hyperplane normal must be nonzero");
  return Hyperplane{n / len, offset / len, dim};
}

Vec canonical_direction(const Vec& u, int dim) {
  for (int i = dim - 1; i >= 0; --i) {
    if (std::abs(u[i]) > kEpsUnit) return u[i] < 0.0 ? Vec(-u) : u;
  }
  return u;
}

Hyperplane Hyperplane::canonical() const {
  Vec c = canonical_direction(normal, dim);
  if (c == normal) return *this;
  return Hyperplane{c, -offset, dim};
}

bool Hyperplane::is_canonical() const { return canonical_direction(normal, dim) == normal; }

// ---------------------------------------------------------------------------
// Face

namespace {

Vec newell_normal(std::span<const Vec> pts) {
  Vec n = Vec::Zero();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec& p = pts[i];
    const Vec& q = pts[(i + 1) % pts.size()];
    n.x() += (p.y() - q.y()) * (p.z() + q.z());
    n.y() += (p.z() - q.z()) * (p.x() + q.x());
    n.z() += (p.x() - q.x()) * (p.y() + q.y());
  }
  return n;
}

double max_pairwise_distance(std::span<const Vec> pts) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d2 = std::max(d2, (pts[i] - pts[j]).squaredNorm());
  return std::sqrt(d2);
}

}  // namespace

double Face::measure() const {
  if (vertices.size() < 2) return 0.0;
  if (vertices.size() == 2) return (vertices[1] - vertices[0]).norm();
  return 0.5 * newell_normal(vertices).norm();
}

Vec Face::center() const {
  if (vertices.empty()) return Vec::Zero();
  if (vertices.size() <= 2) return 0.5 * (vertices.front() + vertices.back());
  Vec acc = Vec::Zero();
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < vertices.size(); ++i) {
    const double a = 0.5 * (vertices[i] - vertices[0]).cross(vertices[i + 1] - vertices[0]).norm();
    acc += a * (vertices[0] + vertices[i] + vertices[i + 1]) / 3.0;
    total += a;
  }
  return total > 0.0 ? Vec(acc / total) : vertices[0];
}

Segment Face::segment() const {
  if (vertices.size() != 2) throw Error(Errc::InvalidArgument, "face is not a segment");
  return Segment{vertices[0], vertices[1]};
}

double Face::diameter() const { return max_pairwise_distance(vertices); }

// ---------------------------------------------------------------------------
// ConvexPolytope

ConvexPolytope ConvexPolytope::polygon(std::vector<Vec> ccw_vertices, std::vector<Label> edge_labels) {
  if (ccw_vertices.size() < 3) throw Error(Errc::EmptyPolytope, "polygon needs at least 3 vertices");
  if (edge_labels.empty()) edge_labels.assign(ccw_vertices.size(), kBoundaryLabel);
  if (edge_labels.size() != ccw_vertices.size())
    throw Error(Errc::InvalidArgument, "one label per polygon edge required");
  for (auto& v : ccw_vertices) v.z() = 0.0;
  double twice_area = 0.0;
  for (std::size_t i = 0; i < ccw_vertices.size(); ++i) {
    const Vec& p = ccw_vertices[i];
    const Vec& q = ccw_vertices[(i + 1) % ccw_vertices.size()];
    twice_area += p.x() * q.y() - q.x() * p.y();
  }
  if (twice_area < 0.0) {
    // Reverse orientation; edge i (v_i -> v_{i+1}) becomes edge n-2-i.
    const std::size_t n = ccw_vertices.size();
    std::vector<Vec> rv(ccw_vertices.rbegin(), ccw_vertices.rend());
    std::vector<Label> rl(n);
    for (std::size_t k = 0; k < n; ++k) rl[k] = edge_labels[(2 * n - 2 - k) % n];
    ccw_vertices = std::move(rv);
    edge_labels = std::move(rl);
  }
  ConvexPolytope z;
  z.dim_ = 2;
  z.vertices_ = std::move(ccw_vertices);
  z.labels_ = std::move(edge_labels);
  z.finalize();
  return z;
}

ConvexPolytope ConvexPolytope::polyhedron(std::vector<Vec> vertices, std::vector<std::vector<int>> facets,
                                          std::vector<Label> facet_labels) {
  if (vertices.size() < 4 || facets.size() < 4) throw Error(Errc::EmptyPolytope, "polyhedron needs 4+ facets");
  if (facet_labels.empty()) facet_labels.assign(facets.size(), kBoundaryLabel);
  if (facet_labels.size() != facets.size()) throw Error(Errc::InvalidArgument, "one label per facet required");
  ConvexPolytope z;
  z.dim_ = 3;
  z.vertices_ = std::move(vertices);
  z.facets_ = std::move(facets);
  z.labels_ = std::move(facet_labels);
  z.finalize();
  return z;
}

ConvexPolytope ConvexPolytope::box(const Vec& lo, const Vec& hi, int dim) {
  if (dim == 2) {
    if (!(hi.x() > lo.x() && hi.y() > lo.y())) throw Error(Errc::EmptyPolytope, "box has empty interior");
    return polygon({Vec(lo.x(), lo.y(), 0), Vec(hi.x(), lo.y(), 0), Vec(hi.x(), hi.y(), 0), Vec(lo.x(), hi.y(), 0)});
  }
  if (dim != 3) throw Error(Errc::BadDimension, "box dimension must be 2 or 3");
  if (!(hi.array() > lo.array()).all()) throw Error(Errc::EmptyPolytope, "box has empty interior");
  std::vector<Vec> v;
  for (int k = 0; k < 8; ++k)
    v.emplace_back((k & 1) ? hi.x() : lo.x(), (k & 2) ? hi.y() : lo.y(), (k & 4) ? hi.z() : lo.z());
  std::vector<std::vector<int>> f = {
      {0, 2, 3, 1},  // z = lo
      {4, 5, 7, 6},  // z = hi
      {0, 1, 5, 4},  // y = lo
      {2, 6, 7, 3},  // y = hi
      {0, 4, 6, 2},  // x = lo
      {1, 3, 7, 5},  // x = hi
  };
  return polyhedron(std::move(v), std::move(f));
}

void ConvexPolytope::finalize() {
  diameter_ = max_pairwise_distance(vertices_);
  if (dim_ == 2) {
    double a2 = 0.0;
    Vec c = Vec::Zero();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const Vec& p = vertices_[i];
      const Vec& q = vertices_[(i + 1) % vertices_.size()];
      const double cr = p.x() * q.y() - q.x() * p.y();
      a2 += cr;
      c += cr * (p + q);
    }
    measure_ = 0.5 * a2;
    centroid_ = a2 != 0.0 ? Vec(c / (3.0 * a2)) : vertices_[0];
    centroid_.z() = 0.0;
  } else {
    Vec ref = Vec::Zero();
    for (const auto& v : vertices_) ref += v;
    ref /= static_cast<double>(vertices_.size());
    double vol = 0.0;
    Vec c = Vec::Zero();
    for (const auto& f : facets_) {
      for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        const Vec a = vertices_[f[0]] - ref;
        const Vec b = vertices_[f[i]] - ref;
        const Vec d = vertices_[f[i + 1]] - ref;
        const double v6 = a.dot(b.cross(d)) / 6.0;
        vol += v6;
        c += v6 * (ref + (a + b + d) / 4.0);
      }
    }
    measure_ = vol;
    centroid_ = vol != 0.0 ? Vec(c / vol) : ref;
  }
  if (!(measure_ > 0.0)) throw Error(Errc::EmptyPolytope, "polytope has empty interior");
}

double ConvexPolytope::boundary_measure() const {
  double total = 0.0;
  if (dim_ == 2) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      total += (vertices_[(i + 1) % vertices_.size()] - vertices_[i]).norm();
    return total;
  }
  for (const auto& f : facets_) {
    std::vector<Vec> pts;
    for (int idx : f) pts.push_back(vertices_[idx]);
    total += 0.5 * newell_normal(pts).norm();
  }
  return total;
}

double ConvexPolytope::mean_width() const {
  if (dim_ == 2) return boundary_measure() / std::numbers::pi;
  // Mean width of a polyhedron: sum over edges of length times exterior
  // dihedral angle, divided by 4*pi.
  std::vector<Vec> normals;
  normals.reserve(facets_.size());
  for (const auto& f : facets_) {
    std::vector<Vec> pts;
    for (int idx : f) pts.push_back(vertices_[idx]);
    normals.push_back(newell_normal(pts).normalized());
  }
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (std::size_t fi = 0; fi < facets_.size(); ++fi) {
    const auto& f = facets_[fi];
    for (std::size_t i = 0; i < f.size(); ++i) {
      const int a = f[i];
      const int b = f[(i + 1) % f.size()];
      edge_faces[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(fi));
    }
  }
  double total = 0.0;
  for (const auto& [edge, fs] : edge_faces) {
    if (fs.size() != 2) continue;
    const double c = std::clamp(normals[fs[0]].dot(normals[fs[1]]), -1.0, 1.0);
    total += (vertices_[edge.first] - vertices_[edge.second]).norm() * std::acos(c);
  }
  return total / (4.0 * std::numbers::pi);
}

std::vector<Hyperplane> ConvexPolytope::facet_planes() const {
  std::vector<Hyperplane> planes;
  if (dim_ == 2) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const Vec& p = vertices_[i];
      const Vec& q = vertices_[(i + 1) % vertices_.size()];
      const Vec n(q.y() - p.y(), p.x() - q.x(), 0.0);
      planes.push_back(Hyperplane::make(n, n.dot(p), 2));
    }
    return planes;
  }
  for (const auto& f : facets_) {
    std::vector<Vec> pts;
    for (int idx : f) pts.push_back(vertices_[idx]);
    const Vec n = newell_normal(pts);
    Vec c = Vec::Zero();
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    planes.push_back(Hyperplane::make(n, n.dot(c), 3));
  }
  return planes;
}

double ConvexPolytope::depth(const Vec& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : facet_planes()) worst = std::max(worst, h.signed_distance(x));
  return -worst;
}

bool ConvexPolytope::contains(const Vec& x, double rel_tol) const { return depth(x) >= -rel_tol * diameter_; }

bool ConvexPolytope::contains(const ConvexPolytope& other, double rel_tol) const {
  const auto planes = facet_planes();
  const double tol = rel_tol * diameter_;
  for (const auto& v : other.vertices())
    for (const auto& h : planes)
      if (h.signed_distance(v) > tol) return false;
  return true;
}

ConvexPolytope ConvexPolytope::translated(const Vec& shift) const {
  ConvexPolytope z = *this;
  Vec s = shift;
  if (dim_ == 2) s.z() = 0.0;
  for (auto& v : z.vertices_) v += s;
  z.centroid_ += s;
  return z;
}

ConvexPolytope ConvexPolytope::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(Errc::NonPositiveFactor, "scale factor must be positive");
  ConvexPolytope z = *this;
  for (auto& v : z.vertices_) v *= factor;
  z.finalize();
  return z;
}

ConvexPolytope ConvexPolytope::transformed(const Eigen::Matrix3d& map) const {
  ConvexPolytope z = *this;
  for (auto& v : z.vertices_) {
    v = map * v;
    if (dim_ == 2) v.z() = 0.0;
  }
  z.finalize();
  return z;
}

ConvexPolytope ConvexPolytope::with_labels(std::vector<Label> labels) const {
  if (labels.size() != labels_.size()) throw Error(Errc::InvalidArgument, "label count mismatch");
  ConvexPolytope z = *this;
  z.labels_ = std::move(labels);
  return z;
}

double width(const ConvexPolytope& z, const Vec& u) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : z.vertices()) {
    const double p = v.dot(u);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return z.empty() ? 0.0 : hi - lo;
}

double width(const Segment& s, const Vec& u) { return std::abs((s.b - s.a).dot(u)); }

// ---------------------------------------------------------------------------
// Clipping

namespace {

int classify(double d, double tol) { return d > tol ? 1 : (d < -tol ? -1 : 0); }

struct Clip2d {
  std::vector<Vec> pts;
  std::vector<Label> labels;  // labels[i] tags edge pts[i] -> pts[i+1]
  int cut_edge = -1;
};

// Keeps the part of a polygon with signed distance <= 0.
Clip2d clip_polygon(const ConvexPolytope& z, const Hyperplane& h, Label cut, double tol) {
  const auto verts = z.vertices();
  const auto labels = z.labels();
  const std::size_t n = verts.size();
  std::vector<double> dist(n);
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = h.signed_distance(verts[i]);
    cls[i] = classify(dist[i], tol);
  }
  Clip2d out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (cls[i] <= 0) {
      const bool leaves = cls[i] == 0 && cls[j] > 0;
      out.pts.push_back(verts[i]);
      out.labels.push_back(leaves ? cut : labels[i]);
      if (leaves) out.cut_edge = static_cast<int>(out.pts.size()) - 1;
    }
    if (cls[i] * cls[j] < 0) {
      const double s = dist[i] / (dist[i] - dist[j]);
      Vec x = verts[i] + s * (verts[j] - verts[i]);
      x.z() = 0.0;
      out.pts.push_back(x);
      if (cls[i] < 0) {
        out.labels.push_back(cut);
        out.cut_edge = static_cast<int>(out.pts.size()) - 1;
      } else {
        out.labels.push_back(labels[i]);
      }
    }
  }
  return out;
}

struct Clip3d {
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> facets;
  std::vector<Label> labels;
  std::vector<Vec> cap;  // ordered cap polygon, empty if none
};

Clip3d clip_polyhedron(const ConvexPolytope& z, const Hyperplane& h, Label cut, double tol) {
  const auto verts = z.vertices();
  const std::size_t n = verts.size();
  std::vector<double> dist(n);
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = h.signed_distance(verts[i]);
    cls[i] = classify(dist[i], tol);
  }
  // Output vertex pool: original kept vertices and edge crossings.
  std::vector<Vec> pool;
  std::vector<int> orig_map(n, -1);
  std::map<std::pair<int, int>, int> crossing;
  std::vector<int> on_plane;
  auto keep_vertex = [&](int i) {
    if (orig_map[i] < 0) {
      orig_map[i] = static_cast<int>(pool.size());
      pool.push_back(verts[i]);
      if (cls[i] == 0) on_plane.push_back(orig_map[i]);
    }
    return orig_map[i];
  };
  auto cross_vertex = [&](int i, int j) {
    const auto key = std::make_pair(std::min(i, j), std::max(i, j));
    auto it = crossing.find(key);
    if (it != crossing.end()) return it->second;
    const double s = dist[i] / (dist[i] - dist[j]);
    const int idx = static_cast<int>(pool.size());
    pool.push_back(verts[i] + s * (verts[j] - verts[i]));
    crossing.emplace(key, idx);
    on_plane.push_back(idx);
    return idx;
  };

  Clip3d out;
  const auto& facets = z.facets();
  const auto labels = z.labels();
  for (std::size_t fi = 0; fi < facets.size(); ++fi) {
    const auto& f = facets[fi];
    bool all_on_plane = true;
    for (int v : f) all_on_plane = all_on_plane && cls[v] == 0;
    if (all_on_plane) continue;  // replaced by the cap
    std::vector<int> poly;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const int i = f[k];
      const int j = f[(k + 1) % f.size()];
      if (cls[i] <= 0) poly.push_back(keep_vertex(i));
      if (cls[i] * cls[j] < 0) poly.push_back(cross_vertex(i, j));
    }
    if (poly.size() >= 3) {
      out.facets.push_back(std::move(poly));
      out.labels.push_back(labels[fi]);
    }
  }

  // Cap: order on-plane points counterclockwise about the outward normal h.normal.
  std::sort(on_plane.begin(), on_plane.end());
  on_plane.erase(std::unique(on_plane.begin(), on_plane.end()), on_plane.end());
  if (on_plane.size() >= 3) {
    Vec c = Vec::Zero();
    for (int idx : on_plane) c += pool[idx];
    c /= static_cast<double>(on_plane.size());
    const Vec e1 = (std::abs(h.normal.x()) < 0.9 ? Vec::UnitX() : Vec::UnitY()).cross(h.normal).normalized();
    const Vec e2 = h.normal.cross(e1);
    std::vector<std::pair<double, int>> ang;
    for (int idx : on_plane) {
      const Vec r = pool[idx] - c;
      ang.emplace_back(std::atan2(r.dot(e2), r.dot(e1)), idx);
    }
    std::sort(ang.begin(), ang.end());
    std::vector<int> cap;
    for (const auto& [a, idx] : ang) {
      if (!cap.empty() && (pool[idx] - pool[cap.back()]).norm() <= tol) continue;
      cap.push_back(idx);
    }
    if (cap.size() >= 3 && (pool[cap.front()] - pool[cap.back()]).norm() <= tol) cap.pop_back();
    if (cap.size() >= 3) {
      for (int idx : cap) out.cap.push_back(pool[idx]);
      out.facets.push_back(std::move(cap));
      out.labels.push_back(cut);
    }
  }

  // Compact the vertex pool to the vertices actually referenced.
  std::vector<int> remap(pool.size(), -1);
  for (auto& f : out.facets)
    for (int& idx : f) {
      if (remap[idx] < 0) {
        remap[idx] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(pool[idx]);
      }
      idx = remap[idx];
    }
  return out;
}

Hyperplane flipped(const Hyperplane& h) { return Hyperplane{-h.normal, -h.offset, h.dim}; }

std::optional<ConvexPolytope> build_polygon(Clip2d&& c, double tol) {
  if (c.pts.size() < 3) return std::nullopt;
  double a2 = 0.0;
  for (std::size_t i = 0; i < c.pts.size(); ++i) {
    const Vec& p = c.pts[i];
    const Vec& q = c.pts[(i + 1) % c.pts.size()];
    a2 += p.x() * q.y() - q.x() * p.y();
  }
  if (!(a2 > tol * tol)) return std::nullopt;
  return ConvexPolytope::polygon(std::move(c.pts), std::move(c.labels));
}

std::optional<ConvexPolytope> build_polyhedron(Clip3d&& c, double tol) {
  if (c.facets.size() < 4 || c.vertices.size() < 4) return std::nullopt;
  try {
    auto z = ConvexPolytope::polyhedron(std::move(c.vertices), std::move(c.facets), std::move(c.labels));
    if (!(z.measure() > tol * tol * tol)) return std::nullopt;
    return z;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<ConvexPolytope> clip_halfspace(const ConvexPolytope& z, const Hyperplane& h, Label cut_label) {
  const double tol = kEpsGeom * z.diameter();
  if (z.dim() == 2) return build_polygon(clip_polygon(z, h, cut_label, tol), tol);
  return build_polyhedron(clip_polyhedron(z, h, cut_label, tol), tol);
}

SplitResult split_polytope(const ConvexPolytope& z, const Hyperplane& h, Label cut_label, CutPolicy policy) {
  if (z.empty()) throw Error(Errc::EmptyPolytope, "cannot split an empty polytope");
  if (h.dim != z.dim()) throw Error(Errc::BadDimension, "hyperplane and polytope dimension differ");
  const double tol = kEpsGeom * z.diameter();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double closest = lo;
  for (const auto& v : z.vertices()) {
    const double d = h.signed_distance(v);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    closest = std::min(closest, std::abs(d));
  }
  if (!(hi > tol && lo < -tol)) throw Error(Errc::NoIntersection, "hyperplane misses the interior");
  if (policy == CutPolicy::Strict && closest <= tol)
    throw Error(Errc::DegenerateCut, "hyperplane passes within tolerance of a vertex");

  SplitResult r;
  if (z.dim() == 2) {
    Clip2d minus = clip_polygon(z, h, cut_label, tol);
    Clip2d plus = clip_polygon(z, flipped(h), cut_label, tol);
    if (minus.cut_edge < 0) throw Error(Errc::DegenerateCut, "cut edge not found");
    const std::size_t m = minus.pts.size();
    const std::size_t k = static_cast<std::size_t>(minus.cut_edge);
    r.face.vertices = {minus.pts[k], minus.pts[(k + 1) % m]};
    r.endpoint_labels = {minus.labels[(k + m - 1) % m], minus.labels[(k + 1) % m]};
    auto pm = build_polygon(std::move(minus), tol);
    auto pp = build_polygon(std::move(plus), tol);
    if (!pm || !pp) throw Error(Errc::NoIntersection, "hyperplane misses the interior");
    r.minus = std::move(*pm);
    r.plus = std::move(*pp);
  } else {
    Clip3d minus = clip_polyhedron(z, h, cut_label, tol);
    Clip3d plus = clip_polyhedron(z, flipped(h), cut_label, tol);
    r.face.vertices = minus.cap;
    auto pm = build_polyhedron(std::move(minus), tol);
    auto pp = build_polyhedron(std::move(plus), tol);
    if (!pm || !pp) throw Error(Errc::NoIntersection, "hyperplane misses the interior");
    r.minus = std::move(*pm);
    r.plus = std::move(*pp);
  }
  if (r.face.diameter() < tol) throw Error(Errc::DegenerateCut, "cut face is below tolerance");
  return r;
}

std::optional<ConvexPolytope> intersect(const ConvexPolytope& z, const ConvexPolytope& w, Label boundary_label) {
  if (z.dim() != w.dim()) throw Error(Errc::BadDimension, "dimension mismatch");
  std::optional<ConvexPolytope> cur = z;
  for (const auto& h : w.facet_planes()) {
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& v : cur->vertices()) hi = std::max(hi, h.signed_distance(v));
    if (hi <= kEpsGeom * cur->diameter()) continue;  // fully inside this facet
    cur = clip_halfspace(*cur, h, boundary_label);
    if (!cur) return std::nullopt;
  }
  return cur;
}

std::optional<Face> clip_face(const Face& face, const ConvexPolytope& w) {
  const double tol = kEpsGeom * w.diameter();
  const auto planes = w.facet_planes();
  if (face.vertices.size() == 2) {
    const Vec a = face.vertices[0];
    const Vec d = face.vertices[1] - a;
    double t0 = 0.0;
    double t1 = 1.0;
    for (const auto& h : planes) {
      const double num = h.signed_distance(a);
      const double den = h.normal.dot(d);
      if (std::abs(den) < 1e-300) {
        if (num > tol) return std::nullopt;
        continue;
      }
      const double t = -num / den;
      if (den > 0) t1 = std::min(t1, t);
      else t0 = std::max(t0, t);
    }
    if ((t1 - t0) * d.norm() <= tol) return std::nullopt;
    return Face{{a + t0 * d, a + t1 * d}};
  }
  std::vector<Vec> poly = face.vertices;
  for (const auto& h : planes) {
    std::vector<Vec> next;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec& p = poly[i];
      const Vec& q = poly[(i + 1) % poly.size()];
      const double dp = h.signed_distance(p);
      const double dq = h.signed_distance(q);
      if (dp <= tol) next.push_back(p);
      if ((dp > tol && dq < -tol) || (dp < -tol && dq > tol)) next.push_back(p + dp / (dp - dq) * (q - p));
    }
    poly = std::move(next);
    if (poly.size() < 3) return std::nullopt;
  }
  Face out{std::move(poly)};
  if (out.measure() <= tol * tol) return std::nullopt;
  return out;
}

std::optional<Vec> segment_face_crossing(const Segment& s, const Face& face, int dim) {
  const Vec d = s.b - s.a;
  if (dim == 2) {
    if (face.vertices.size() != 2) return std::nullopt;
    const Vec p = face.vertices[0];
    const Vec e = face.vertices[1] - p;
    const double den = d.x() * e.y() - d.y() * e.x();
    if (std::abs(den) < 1e-15 * d.norm() * e.norm()) return std::nullopt;
    const Vec w = p - s.a;
    const double t = (w.x() * e.y() - w.y() * e.x()) / den;
    const double u = (w.x() * d.y() - w.y() * d.x()) / den;
    if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
    return Vec(s.a + t * d);
  }
  if (face.vertices.size() < 3) return std::nullopt;
  const Vec n = newell_normal(face.vertices).normalized();
  const double den = n.dot(d);
  if (std::abs(den) < 1e-15 * d.norm()) return std::nullopt;
  const double t = n.dot(face.vertices[0] - s.a) / den;
  if (t < 0.0 || t > 1.0) return std::nullopt;
  const Vec x = s.a + t * d;
  const std::size_t m = face.vertices.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec& p = face.vertices[i];
    const Vec& q = face.vertices[(i + 1) % m];
    if ((q - p).cross(x - p).dot(n) < 0.0) return std::nullopt;
  }
  return x;
}

bool point_on_segment_interior(const Vec& x, const Segment& s, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  const double len = s.length();
  if (!(len > 0.0)) throw Error(Errc::ZeroLength, "segment has zero length");
  const Vec dir = (s.b - s.a) / len;
  const Vec r = x - s.a;
  const double along = r.dot(dir);
  const double off = (r - along * dir).norm();
  const double param = along / len;
  const double tol_param = tol / len;
  return off <= tol && param > tol_param && param < 1.0 - tol_param;
}

}  // namespace stitlab
