#include "kelab/bodies.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace kelab {

namespace {

// Exact polygon area and centroid by the shoelace / triangle-fan formulas.
double polygon_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    a += p.cross(q);
  }
  return 0.5 * a;
}

Vec2 polygon_centroid(const std::vector<Vec2>& v) {
  double a = 0.0;
  Vec2 c{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    double w = p.cross(q);
    a += w;
    c.x += (p.x + q.x) * w;
    c.y += (p.y + q.y) * w;
  }
  if (a == 0.0) throw ValidationError("polygon has zero area");
  return {c.x / (3.0 * a), c.y / (3.0 * a)};
}

void validate_polygon(const std::vector<Vec2>& v) {
  if (v.size() < 3) throw ValidationError("polygon needs at least 3 vertices");
  double scale = 0.0;
  for (const auto& p : v) scale = std::max(scale, std::max(std::abs(p.x), std::abs(p.y)));
  if (scale == 0.0) throw ValidationError("degenerate polygon");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i];
    const Vec2 b = v[(i + 1) % v.size()];
    const Vec2 c = v[(i + 2) % v.size()];
    if ((b - a).norm() <= 1e-14 * scale) throw ValidationError("repeated polygon vertices");
    double cr = (b - a).cross(c - b);
    if (cr <= 1e-14 * scale * scale)
      throw ValidationError("polygon vertices not in strictly convex counterclockwise position");
  }
}

std::vector<Vec2> simplex_vertices_2d() {
  // S = { x1 + x2 <= 1, x_i >= -1 }
  return {{-1.0, -1.0}, {2.0, -1.0}, {-1.0, 2.0}};
}

}  // namespace

void ConvexBody::finalize() {
  switch (kind_) {
    case Kind::polygon:
      barycenter_ = polygon_centroid(verts_);
      break;
    case Kind::box:
      barycenter_ = {0.0, 0.0};
      if (dim_ == 2) {
        double w0 = halfwidths_[0], w1 = halfwidths_[1];
        verts_ = {{w0, -w1}, {w0, w1}, {-w0, w1}, {-w0, -w1}};
      }
      break;
    case Kind::disk:
      barycenter_ = center_;
      break;
    case Kind::simplex:
      barycenter_ = {0.0, 0.0};
      if (dim_ == 2) verts_ = simplex_vertices_2d();
      break;
  }
}

ConvexBody ConvexBody::polygon(std::vector<Vec2> vertices) {
  validate_polygon(vertices);
  ConvexBody b;
  b.kind_ = Kind::polygon;
  b.dim_ = 2;
  b.verts_ = std::move(vertices);
  b.finalize();
  return b;
}

ConvexBody ConvexBody::box(std::vector<double> halfwidths) {
  if (halfwidths.empty()) throw ValidationError("box needs halfwidths");
  for (double w : halfwidths)
    if (!(w > 0.0)) throw ValidationError("box halfwidths must be positive");
  ConvexBody b;
  b.kind_ = Kind::box;
  b.dim_ = static_cast<int>(halfwidths.size());
  b.halfwidths_ = std::move(halfwidths);
  b.finalize();
  return b;
}

ConvexBody ConvexBody::disk(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw ValidationError("disk radius must be positive");
  ConvexBody b;
  b.kind_ = Kind::disk;
  b.dim_ = 2;
  b.center_ = center;
  b.radius_ = radius;
  b.finalize();
  return b;
}

ConvexBody ConvexBody::simplex(int n) {
  if (n < 1) throw ValidationError("simplex dimension must be >= 1");
  ConvexBody b;
  b.kind_ = Kind::simplex;
  b.dim_ = n;
  b.finalize();
  return b;
}

double ConvexBody::area() const {
  switch (kind_) {
    case Kind::polygon:
      return polygon_area(verts_);
    case Kind::box: {
      double a = 1.0;
      for (double w : halfwidths_) a *= 2.0 * w;
      return a;
    }
    case Kind::disk:
      return kPi * radius_ * radius_;
    case Kind::simplex: {
      // volume of S: scaled standard simplex with edge scale (n+1)
      double v = 1.0;
      for (int k = 1; k <= dim_; ++k) v *= static_cast<double>(dim_ + 1) / static_cast<double>(k);
      return v;
    }
  }
  return 0.0;
}

ConvexBody ConvexBody::recenter() const {
  ConvexBody b = *this;
  Vec2 c = barycenter_;
  switch (kind_) {
    case Kind::polygon:
      for (auto& v : b.verts_) v = v - c;
      b.barycenter_ = polygon_centroid(b.verts_);
      break;
    case Kind::disk:
      b.center_ = {0.0, 0.0};
      b.barycenter_ = {0.0, 0.0};
      break;
    case Kind::box:
    case Kind::simplex:
      break;  // centered by construction
  }
  return b;
}

double ConvexBody::support(Vec2 theta) const {
  double n = theta.norm();
  if (n < 1e-14) throw ValidationError("support: zero direction");
  if (std::abs(n - 1.0) > 1e-9) theta = theta * (1.0 / n);
  switch (kind_) {
    case Kind::polygon:
    case Kind::simplex: {
      if (kind_ == Kind::simplex && dim_ != 2)
        throw ValidationError("support: only 2D simplex supported");
      double h = -1e300;
      for (const auto& v : verts_) h = std::max(h, v.dot(theta));
      return h * n;
    }
    case Kind::box:
      return (halfwidths_[0] * std::abs(theta.x) + halfwidths_[1] * std::abs(theta.y)) * n;
    case Kind::disk:
      return (center_.dot(theta) + radius_) * n;
  }
  return 0.0;
}

double ConvexBody::outer_radius() const {
  switch (kind_) {
    case Kind::polygon:
    case Kind::simplex:
    case Kind::box: {
      double r = 0.0;
      for (const auto& v : verts_) r = std::max(r, v.norm());
      return r;
    }
    case Kind::disk:
      return center_.norm() + radius_;
  }
  return 0.0;
}

bool ConvexBody::contains(Vec2 p, double dilation, double tol) const {
  switch (kind_) {
    case Kind::polygon:
    case Kind::simplex: {
      // inside iff on the left of every (scaled) edge
      for (std::size_t i = 0; i < verts_.size(); ++i) {
        Vec2 a = verts_[i] * dilation;
        Vec2 b = verts_[(i + 1) % verts_.size()] * dilation;
        if ((b - a).cross(p - a) < -tol) return false;
      }
      return true;
    }
    case Kind::box:
      return std::abs(p.x) <= dilation * halfwidths_[0] + tol &&
             std::abs(p.y) <= dilation * halfwidths_[1] + tol;
    case Kind::disk:
      return (p - center_ * dilation).norm() <= dilation * radius_ + tol;
  }
  return false;
}

std::string ConvexBody::kind_name() const {
  switch (kind_) {
    case Kind::polygon: return "polygon";
    case Kind::box: return "box";
    case Kind::disk: return "disk";
    case Kind::simplex: return "simplex";
  }
  return "?";
}

std::string ConvexBody::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name();
  switch (kind_) {
    case Kind::polygon: {
      auto arr = nlohmann::json::array();
      for (const auto& v : verts_) arr.push_back({v.x, v.y});
      j["vertices"] = arr;
      break;
    }
    case Kind::box:
      j["halfwidths"] = halfwidths_;
      break;
    case Kind::disk:
      j["radius"] = radius_;
      j["center"] = {center_.x, center_.y};
      break;
    case Kind::simplex:
      j["n"] = dim_;
      break;
  }
  return j.dump();
}

ConvexBody ConvexBody::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("body descriptor: bad JSON: ") + e.what());
  }
  if (!j.contains("kind")) throw ValidationError("body descriptor: missing kind");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "polygon") {
    if (!j.contains("vertices")) throw ValidationError("polygon descriptor: missing vertices");
    std::vector<Vec2> verts;
    for (const auto& p : j["vertices"])
      verts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return polygon(std::move(verts));
  }
  if (kind == "box") {
    if (!j.contains("halfwidths")) throw ValidationError("box descriptor: missing halfwidths");
    return box(j["halfwidths"].get<std::vector<double>>());
  }
  if (kind == "disk") {
    if (!j.contains("radius")) throw ValidationError("disk descriptor: missing radius");
    Vec2 c{};
    if (j.contains("center")) c = {j["center"].at(0).get<double>(), j["center"].at(1).get<double>()};
    return disk(c, j["radius"].get<double>());
  }
  if (kind == "simplex") {
    if (!j.contains("n")) throw ValidationError("simplex descriptor: missing n");
    return simplex(j["n"].get<int>());
  }
  throw ValidationError("body descriptor: unknown kind '" + kind + "'");
}

ConvexBody make_body(const std::string& json_descriptor) {
  return ConvexBody::from_json(json_descriptor);
}

}  // namespace kelab
