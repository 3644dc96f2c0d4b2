#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kelab/bodies.hpp"

using namespace kelab;

TEST_CASE("box, simplex and polygon construction") {
  ConvexBody sq = ConvexBody::box({1.0, 1.0});
  CHECK(sq.barycenter().norm() == 0.0);
  CHECK(sq.area() == doctest::Approx(4.0));

  ConvexBody s = ConvexBody::simplex(2);
  REQUIRE(s.vertices().size() == 3);
  CHECK(s.vertices()[0].x == doctest::Approx(-1.0));
  CHECK(s.vertices()[0].y == doctest::Approx(-1.0));
  CHECK(s.vertices()[1].x == doctest::Approx(2.0));
  CHECK(s.vertices()[1].y == doctest::Approx(-1.0));
  CHECK(s.vertices()[2].x == doctest::Approx(-1.0));
  CHECK(s.vertices()[2].y == doctest::Approx(2.0));
  CHECK(s.barycenter().norm() < 1e-15);
  CHECK(s.area() == doctest::Approx(4.5));  // (1/2)*3*3

  ConvexBody t = ConvexBody::polygon({{0, 0}, {3, 0}, {0, 3}});
  CHECK(t.barycenter().x == doctest::Approx(1.0));
  CHECK(t.barycenter().y == doctest::Approx(1.0));
}

TEST_CASE("validation rejects degenerate input") {
  CHECK_THROWS_AS(ConvexBody::polygon({{0, 0}, {1, 0}, {2, 0}}), ValidationError);
  CHECK_THROWS_AS(ConvexBody::polygon({{0, 0}, {0, 3}, {3, 0}}), ValidationError);  // clockwise
  CHECK_THROWS_AS(ConvexBody::polygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), ValidationError);
  CHECK_THROWS_AS(ConvexBody::polygon({{0, 0}, {2, 0}, {2, 2}, {1, 0.5}}), ValidationError);
  CHECK_THROWS_AS(ConvexBody::box({1.0, -1.0}), ValidationError);
  CHECK_THROWS_AS(ConvexBody::disk({0, 0}, 0.0), ValidationError);
  CHECK_THROWS_AS(ConvexBody::box({1.0, 1.0}).support({0, 0}), ValidationError);
}

TEST_CASE("recenter: exact, area preserving, idempotent") {
  ConvexBody t = ConvexBody::polygon({{0, 0}, {3, 0}, {0, 3}}).recenter();
  CHECK(t.barycenter().norm() < 1e-12);
  CHECK(t.vertices()[0].x == doctest::Approx(-1.0));
  CHECK(t.vertices()[1].x == doctest::Approx(2.0));
  CHECK(t.vertices()[2].y == doctest::Approx(2.0));
  CHECK(t.area() == doctest::Approx(4.5));

  ConvexBody t2 = t.recenter();
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(t2.vertices()[i].x - t.vertices()[i].x) < 1e-12);
    CHECK(std::abs(t2.vertices()[i].y - t.vertices()[i].y) < 1e-12);
  }

  ConvexBody d = ConvexBody::disk({0.5, 0.0}, 1.0).recenter();
  CHECK(d.center().norm() == 0.0);

  ConvexBody sq = ConvexBody::box({1.0, 1.0});
  CHECK(sq.recenter().area() == doctest::Approx(4.0));
}

TEST_CASE("support function values") {
  ConvexBody sq = ConvexBody::box({1.0, 1.0});
  CHECK(sq.support({1, 0}) == doctest::Approx(1.0));
  double is2 = 1.0 / std::sqrt(2.0);
  CHECK(sq.support({is2, is2}) == doctest::Approx(std::sqrt(2.0)));

  ConvexBody s = ConvexBody::simplex(2);
  CHECK(s.support({is2, is2}) == doctest::Approx(is2));  // max over the three vertices

  ConvexBody d = ConvexBody::disk({0, 0}, 3.0);
  CHECK(d.support({0, 1}) == doctest::Approx(3.0));
}

TEST_CASE("outer radius") {
  CHECK(ConvexBody::box({1.0, 1.0}).outer_radius() == doctest::Approx(std::sqrt(2.0)));
  CHECK(ConvexBody::simplex(2).outer_radius() == doctest::Approx(std::sqrt(5.0)));
  CHECK(ConvexBody::disk({0, 0}, 3.0).outer_radius() == doctest::Approx(3.0));
}

TEST_CASE("support dominates interior points; homogeneity") {
  QuasiRandom2D qr(7);
  ConvexBody s = ConvexBody::simplex(2);
  ConvexBody p = ConvexBody::polygon({{1, 0}, {2, 1}, {1.5, 2.5}, {0, 2}, {-0.5, 0.7}}).recenter();
  for (const ConvexBody* b : {&s, &p}) {
    int found = 0;
    while (found < 50) {
      Vec2 x = qr.next_in_box(b->outer_radius());
      if (!b->contains(x)) continue;
      ++found;
      for (int k = 0; k < 16; ++k) {
        double th = 2.0 * kPi * k / 16.0;
        Vec2 dir{std::cos(th), std::sin(th)};
        CHECK(b->support(dir) >= x.dot(dir) - 1e-12);
      }
    }
    // h(t theta) = t h(theta)
    Vec2 dir{0.6, 0.8};
    CHECK(b->support(dir * 2.5) == doctest::Approx(2.5 * b->support(dir)));
    // outer radius equals the max of support over a dense angular grid
    double m = 0.0;
    for (int k = 0; k < 4096; ++k) {
      double th = 2.0 * kPi * k / 4096.0;
      m = std::max(m, b->support({std::cos(th), std::sin(th)}));
    }
    CHECK(m == doctest::Approx(b->outer_radius()).epsilon(1e-5));
  }
}

TEST_CASE("descriptor JSON round trip") {
  ConvexBody p = make_body(R"({"kind":"polygon","vertices":[[0,0],[3,0],[0,3]]})");
  CHECK(p.kind_name() == "polygon");
  CHECK(p.barycenter().x == doctest::Approx(1.0));
  ConvexBody b2 = ConvexBody::from_json(p.to_json());
  CHECK(b2.area() == doctest::Approx(p.area()));
  CHECK_THROWS_AS(make_body(R"({"kind":"sphere"})"), ValidationError);
  CHECK_THROWS_AS(make_body("not json"), ValidationError);
  ConvexBody s = make_body(R"({"kind":"simplex","n":2})");
  CHECK(s.area() == doctest::Approx(4.5));
  ConvexBody d = make_body(R"({"kind":"disk","radius":1.5,"center":[0.5,0]})");
  CHECK(d.outer_radius() == doctest::Approx(2.0));
}
