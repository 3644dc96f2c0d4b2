#pragma once

#include <string>
#include <vector>

#include "kelab/common.hpp"

namespace kelab {

// A 2D convex body (plus n-dimensional box/simplex parameters for the
// closed-form potentials).  Immutable after construction; recenter() returns
// a translated copy.
class ConvexBody {
 public:
  enum class Kind { polygon, box, disk, simplex };

  static ConvexBody polygon(std::vector<Vec2> vertices);
  static ConvexBody box(std::vector<double> halfwidths);
  static ConvexBody disk(Vec2 center, double radius);
  static ConvexBody simplex(int n);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  // Vertices in counterclockwise order (polygon and 2D box/simplex; disks
  // have none).
  const std::vector<Vec2>& vertices() const { return verts_; }
  const std::vector<double>& halfwidths() const { return halfwidths_; }
  double radius() const { return radius_; }
  Vec2 center() const { return center_; }

  Vec2 barycenter() const { return barycenter_; }
  double area() const;
  bool is_centered(double tol = 1e-12) const { return barycenter_.norm() <= tol; }

  ConvexBody recenter() const;

  // Support function h_K(theta) = max over K of <x, theta>; theta must be a
  // unit vector.
  double support(Vec2 theta) const;
  // Smallest R with K inside the closed ball of radius R about the origin.
  double outer_radius() const;
  // Membership test against the body dilated by `dilation` about the origin.
  bool contains(Vec2 p, double dilation = 1.0, double tol = 1e-12) const;

  std::string kind_name() const;
  std::string to_json() const;
  static ConvexBody from_json(const std::string& text);

 private:
  ConvexBody() = default;
  void finalize();

  Kind kind_ = Kind::polygon;
  int dim_ = 2;
  std::vector<Vec2> verts_;
  std::vector<double> halfwidths_;
  double radius_ = 0.0;
  Vec2 center_{};
  Vec2 barycenter_{};
};

// Build from a descriptor (see ConvexBody::from_json for the JSON form).
// The result is NOT recentered.
ConvexBody make_body(const std::string& json_descriptor);

}  // namespace kelab
