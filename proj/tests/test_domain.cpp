#include <cmath>
#include <random>

#include "cvp/domain.hpp"
#include "doctest.h"

using namespace cvp;

namespace {

std::mt19937_64 rng(77001);

ConvexDomain unit_square() {
  return make_domain({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
}

// Random strictly convex polygon: points on a random ellipse.
ConvexDomain random_convex(int n, double rad) {
  std::uniform_real_distribution<double> u(0.5, 1.0);
  double ax = rad * u(rng), by = rad * u(rng), rot = 6.28 * u(rng);
  std::vector<Vec2> vs;
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * M_PI * k / n;
    double x = ax * std::cos(t), y = by * std::sin(t);
    vs.push_back({x * std::cos(rot) - y * std::sin(rot), x * std::sin(rot) + y * std::cos(rot)});
  }
  return make_domain(std::move(vs));
}

Vec2 random_interior(const ConvexDomain& dom, double shrink = 0.85) {
  Vec2 c{0, 0};
  for (const Vec2& v : dom.vertices) c = c + v;
  c = c / double(dom.vertices.size());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    size_t i = size_t(u(rng) * double(dom.vertices.size()));
    i = std::min(i, dom.vertices.size() - 1);
    Vec2 p = c + (dom.vertices[i] - c) * (shrink * u(rng));
    if (contains_strict(dom, p)) return p;
  }
}

}  // namespace

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(make_domain({{0, 0}, {1, 0}}), error);
  CHECK_THROWS_AS(make_domain({{0, 0}, {1, 0}, {2, 0}}), error);          // collinear
  CHECK_THROWS_AS(make_domain({{0, 0}, {1, 1}, {1, 0}}), error);          // clockwise
  CHECK_THROWS_AS(make_domain({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), error);  // repeat
  CHECK_NOTHROW(make_domain({{0, 0}, {1, 0}, {0, 1}}));
}

TEST_CASE("chord endpoints on the unit square") {
  ConvexDomain sq = unit_square();
  auto [p, q] = chord_endpoints(sq, {0, 0}, {0.5, 0});
  CHECK(p.x == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(p.y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(chord_endpoints(sq, {0.2, 0.1}, {0.2, 0.1}), error);
  CHECK_THROWS_AS(chord_endpoints(sq, {3, 0}, {0, 0}), error);
}

TEST_CASE("chord endpoints on a polygonal disc vs circle oracle") {
  ConvexDomain disc = make_disc(64);
  auto [p, q] = chord_endpoints(disc, {0, 0}, {0.5, 0});
  CHECK(p.x == doctest::Approx(-1.0).epsilon(2e-3));
  CHECK(q.x == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("distance basics") {
  ConvexDomain sq = unit_square();
  CHECK(distance(sq, {0.3, -0.3}, {0.3, -0.3}) == 0.0);
  // Square chord hits x = +-1: d = (1/2) log 3.
  CHECK(distance(sq, {0, 0}, {0.5, 0}) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));

  ConvexDomain disc = make_disc(1024);
  CHECK(distance(disc, {0, 0}, {0.5, 0}) == doctest::Approx(std::atanh(0.5)).epsilon(1e-5));
}

TEST_CASE("distance metric axioms on random triples") {
  ConvexDomain dom = random_convex(24, 2.0);
  for (int i = 0; i < 300; ++i) {
    Vec2 a = random_interior(dom), b = random_interior(dom), c = random_interior(dom);
    double ab = distance(dom, a, b), ba = distance(dom, b, a);
    CHECK(ab == ba);  // symmetric by the cross-ratio symmetry of the formula
    CHECK(ab >= 0.0);
    CHECK(distance(dom, a, c) <= ab + distance(dom, b, c) + 1e-10);
  }
}

TEST_CASE("finsler norm hand values") {
  ConvexDomain disc = make_disc(2048);
  CHECK(finsler_norm(disc, {{0, 0}, {1, 0}}) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(finsler_norm(disc, {{0, 0}, {0.3, -0.8}}) ==
        doctest::Approx(Vec2{0.3, -0.8}.norm()).epsilon(1e-5));
  // base (.5, 0), dir (1,0): (1/2)(1/1.5 + 1/0.5).
  CHECK(finsler_norm(disc, {{0.5, 0}, {1, 0}}) ==
        doctest::Approx(0.5 * (1.0 / 1.5 + 1.0 / 0.5)).epsilon(1e-4));
  // Homogeneity is exact, reversibility too.
  ConvexDomain dom = random_convex(17, 1.5);
  for (int i = 0; i < 50; ++i) {
    Vec2 base = random_interior(dom);
    Vec2 dir{0.3, 0.7};
    double n1 = finsler_norm(dom, {base, dir});
    CHECK(finsler_norm(dom, {base, dir * 7.0}) == doctest::Approx(7.0 * n1).epsilon(1e-14));
    CHECK(finsler_norm(dom, {base, dir * -1.0}) == doctest::Approx(n1).epsilon(1e-12));
  }
  CHECK_THROWS_AS(finsler_norm(disc, {{0, 0}, {0, 0}}), error);
}

TEST_CASE("unit ball area at the disc center and near the boundary") {
  ConvexDomain disc = make_disc(512);
  double at_center = unit_ball_area(disc, {0, 0}, 256);
  CHECK(at_center == doctest::Approx(M_PI).epsilon(0.01));
  double near_rim = unit_ball_area(disc, {0.7, 0}, 256);
  CHECK(near_rim < at_center);
  // Quadrature refinement converges.
  double doubled = unit_ball_area(disc, {0.31, -0.2}, 512);
  double halved = unit_ball_area(disc, {0.31, -0.2}, 256);
  CHECK(std::fabs(doubled - halved) / doubled < 1e-3);
}

TEST_CASE("measure of a small region at the disc center") {
  ConvexDomain disc = make_disc(256);
  double side = 0.2;
  ConvexDomain region = make_domain(
      {{-side, -side}, {side, -side}, {side, side}, {-side, side}});
  double mu = measure(disc, region, 24, 64);
  double expect = (2 * side) * (2 * side) / M_PI;
  CHECK(mu == doctest::Approx(expect).epsilon(0.02));

  ConvexDomain outside = make_domain({{0.9, 0.9}, {1.4, 0.9}, {1.4, 1.4}, {0.9, 1.4}});
  CHECK_THROWS_AS(measure(disc, outside, 8), error);
}

TEST_CASE("hausdorff distance hand geometry") {
  ConvexDomain sq = unit_square();
  CHECK(hausdorff_distance(sq, sq) == 0.0);
  ConvexDomain big = make_domain({{-1.1, -1.1}, {1.1, -1.1}, {1.1, 1.1}, {-1.1, 1.1}});
  CHECK(hausdorff_distance(sq, big) == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-9));

  ConvexDomain charted = sq;
  charted.chart = Mat3::diag(2, 1, 1);
  CHECK_THROWS_AS(hausdorff_distance(sq, charted), error);
}

TEST_CASE("hausdorff distance of a converging nested sequence") {
  double prev = 1e9;
  ConvexDomain target = make_disc(6);
  for (double t : {0.5, 0.25, 0.125, 0.0625}) {
    std::vector<Vec2> vs;
    for (const Vec2& v : target.vertices) vs.push_back(v * (1.0 - t));
    double d = hausdorff_distance(make_domain(std::move(vs)), target);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.1);
}

TEST_CASE("monotonicity suite on nested pairs") {
  // The four Hilbert-metric comparisons for Omega1 inside Omega2.
  for (int trial = 0; trial < 60; ++trial) {
    ConvexDomain outer = random_convex(20, 2.5);
    Vec2 c{0, 0};
    for (const Vec2& v : outer.vertices) c = c + v;
    c = c / double(outer.vertices.size());
    std::vector<Vec2> inner_vs;
    std::uniform_real_distribution<double> u(0.55, 0.8);
    double f = u(rng);
    for (const Vec2& v : outer.vertices) inner_vs.push_back(c + (v - c) * f);
    ConvexDomain inner = make_domain(std::move(inner_vs));

    Vec2 x = random_interior(inner), y = random_interior(inner);
    if ((x - y).norm() < 1e-6) continue;
    Vec2 dir{0.6, -0.2};

    CHECK(finsler_norm(outer, {x, dir}) <= finsler_norm(inner, {x, dir}) + 1e-12);
    CHECK(distance(outer, x, y) <= distance(inner, x, y) + 1e-12);
    // Ball inclusion along sampled rays: radius_inner <= radius_outer.
    for (int k = 0; k < 8; ++k) {
      double t = 2.0 * M_PI * k / 8;
      Vec2 ray{std::cos(t), std::sin(t)};
      double r1 = 1.0 / finsler_norm(inner, {x, ray});
      double r2 = 1.0 / finsler_norm(outer, {x, ray});
      CHECK(r1 <= r2 + 1e-12);
    }
    // Measures compare the other way.
    std::vector<Vec2> reg;
    for (const Vec2& v : inner.vertices) reg.push_back(x + (v - x) * 0.2);
    ConvexDomain region = make_domain(std::move(reg));
    CHECK(measure(outer, region, 10, 32) <= measure(inner, region, 10, 32) + 1e-12);
  }
}

TEST_CASE("projective invariance of the distance") {
  ConvexDomain disc = make_disc(128);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (int trial = 0; trial < 40; ++trial) {
    Mat3 t = Mat3::identity();
    for (auto& e : t.m) e += u(rng);
    t = normalize_det1(t.det() > 0 ? t : t * -1.0);
    ConvexDomain image = apply_projective(t, disc);
    Vec2 x{0.2, -0.1}, y{-0.4, 0.3};
    Vec3 xi = t * Vec3{x.x, x.y, 1.0}, yi = t * Vec3{y.x, y.y, 1.0};
    Vec2 tx{xi.x / xi.z, xi.y / xi.z}, ty{yi.x / yi.z, yi.y / yi.z};
    CHECK(distance(image, tx, ty) == doctest::Approx(distance(disc, x, y)).epsilon(1e-9));
  }
}

TEST_CASE("distance equals half log cross ratio of the chord") {
  // Independent re-implementation through the projective cross_ratio.
  ConvexDomain dom = random_convex(15, 1.8);
  for (int i = 0; i < 100; ++i) {
    Vec2 x = random_interior(dom), y = random_interior(dom);
    if ((x - y).norm() < 1e-9) continue;
    auto [p, q] = chord_endpoints(dom, x, y);
    double v = cross_ratio(ProjPoint::from({p.x, p.y, 1}), ProjPoint::from({x.x, x.y, 1}),
                           ProjPoint::from({y.x, y.y, 1}), ProjPoint::from({q.x, q.y, 1}));
    CHECK(distance(dom, x, y) == doctest::Approx(0.5 * std::log(v)).epsilon(1e-9));
  }
}
