#include <doctest.h>

#include <cmath>

#include "voxelvol/experiments.hpp"
#include "voxelvol/phantoms.hpp"

using namespace voxelvol;

TEST_CASE("membership: closed-set convention and distances") {
  Phantom ball = Phantom::ball(3, {0, 0, 0}, 1.0);
  CHECK(contains(ball, {0, 0, 0}));
  CHECK(contains(ball, {1.0, 0, 0}));  // boundary point
  CHECK_FALSE(contains(ball, {1.0 + 1e-12, 0, 0}));

  Phantom caps = Phantom::capsule(3, {0, 0, 0}, {1, 0, 0}, 2.0, 0.5);
  CHECK(contains(caps, {2.5, 0, 0}));
  CHECK_FALSE(contains(caps, {2.5 + 1e-9, 0, 0}));
  CHECK(contains(caps, {1.0, 0.5, 0}));
  CHECK_FALSE(contains(caps, {1.0, 0.5 + 1e-9, 0}));
}

TEST_CASE("phantom validation") {
  CHECK_THROWS_AS(Phantom::ball(3, {0, 0, 0}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(Phantom::capsule(3, {0, 0, 0}, {2, 0, 0}, 1.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(Phantom::ortho_body(3, {0, 0, 0}, {{1, 0, 0}, {1, 0, 0}}, {1.0, 1.0}, 0.5),
                  std::invalid_argument);
  // core rank d-1 is allowed, d is not
  CHECK_NOTHROW(Phantom::ortho_body(3, {0, 0, 0}, {{1, 0, 0}, {0, 1, 0}}, {1.0, 2.0}, 0.5));
}

TEST_CASE("intrinsic volumes via Steiner") {
  double r = 0.7;
  Phantom ball = Phantom::ball(3, {0, 0, 0}, r);
  std::vector<double> v = intrinsic_volumes(ball);
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(4.0 * r));
  CHECK(v[2] == doctest::Approx(2.0 * kPi * r * r));
  CHECK(v[3] == doctest::Approx(4.0 * kPi / 3.0 * r * r * r));

  double t = 1.3;
  Phantom caps = Phantom::capsule(3, {0, 0, 0}, {0, 0, 1}, t, r);
  std::vector<double> vc = intrinsic_volumes(caps);
  CHECK(vc[0] == doctest::Approx(1.0));
  CHECK(vc[1] == doctest::Approx(t + 4.0 * r));
  CHECK(vc[2] == doctest::Approx(2.0 * kPi * r * r + kPi * r * t));
  CHECK(vc[3] ==
        doctest::Approx(4.0 * kPi / 3.0 * r * r * r + kPi * r * r * t));

  // 2d disc
  Phantom disc = Phantom::ball(2, {0, 0, 0}, r);
  std::vector<double> vd = intrinsic_volumes(disc);
  CHECK(vd[0] == doctest::Approx(1.0));
  CHECK(vd[1] == doctest::Approx(kPi * r));  // half perimeter
  CHECK(vd[2] == doctest::Approx(kPi * r * r));
}

TEST_CASE("boundary patches: counts and areas") {
  double r = 0.6, t = 1.1;
  Phantom ball = Phantom::ball(3, {0, 0, 0}, r);
  auto pb = boundary_patches(ball);
  CHECK(pb.size() == 1);
  CHECK(pb[0].area() == doctest::Approx(4.0 * kPi * r * r));

  Phantom caps = Phantom::capsule(3, {0, 0, 0}, {0, 0, 1}, t, r);
  auto pc = boundary_patches(caps);
  CHECK(pc.size() == 3);
  double cyl_area = 0.0, cap_area = 0.0;
  for (const auto& p : pc)
    (p.kind == BoundaryPatch::Kind::Cylinder ? cyl_area : cap_area) += p.area();
  CHECK(cyl_area == doctest::Approx(2.0 * kPi * r * t));
  CHECK(cap_area == doctest::Approx(4.0 * kPi * r * r));

  // rounded plate: total patch area equals the Steiner surface area
  Phantom plate =
      Phantom::ortho_body(3, {0, 0, 0}, {{1, 0, 0}, {0, 1, 0}}, {1.2, 0.8}, r);
  auto pp = boundary_patches(plate);
  double area = 0.0;
  for (const auto& p : pp) area += p.area();
  CHECK(area == doctest::Approx(2.0 * intrinsic_volumes(plate)[2]).epsilon(1e-12));
}

TEST_CASE("surface integral: area and curvature functionals") {
  double r = 0.85;
  Phantom ball = Phantom::ball(3, {0.2, -0.1, 0.4}, r);
  QuadResult area =
      surface_integral(ball, [](const SurfacePoint&) { return 1.0; }, 1e-9);
  CHECK(area.value == doctest::Approx(4.0 * kPi * r * r).epsilon(1e-8));

  // mean curvature integral / (2 pi) = V_1
  QuadResult mc = surface_integral(
      ball, [](const SurfacePoint& sp) { return curvature_trace(sp) / (2.0 * kPi); },
      1e-9);
  CHECK(mc.value == doctest::Approx(4.0 * r).epsilon(1e-8));

  double t = 0.9;
  Phantom caps = Phantom::capsule(3, {0, 0, 0}, normalized(Vec3{1, 1, 1}), t, r);
  std::vector<double> v = intrinsic_volumes(caps);
  QuadResult ac =
      surface_integral(caps, [](const SurfacePoint&) { return 1.0; }, 1e-8);
  CHECK(ac.value == doctest::Approx(2.0 * v[2]).epsilon(1e-7));
  QuadResult mcc = surface_integral(
      caps, [](const SurfacePoint& sp) { return curvature_trace(sp) / (2.0 * kPi); },
      1e-8);
  CHECK(mcc.value == doctest::Approx(v[1]).epsilon(1e-7));

  Phantom plate =
      Phantom::ortho_body(3, {0, 0, 0}, {{1, 0, 0}, {0, 1, 0}}, {1.2, 0.8}, 0.5);
  std::vector<double> vp = intrinsic_volumes(plate);
  QuadResult ap =
      surface_integral(plate, [](const SurfacePoint&) { return 1.0; }, 1e-8);
  CHECK(ap.value == doctest::Approx(2.0 * vp[2]).epsilon(1e-7));
  QuadResult mcp = surface_integral(
      plate, [](const SurfacePoint& sp) { return curvature_trace(sp) / (2.0 * kPi); },
      1e-8);
  CHECK(mcp.value == doctest::Approx(vp[1]).epsilon(1e-7));

  // 2d: disc circumference and Euler characteristic
  Phantom disc = Phantom::ball(2, {0, 0, 0}, r);
  QuadResult per = surface_integral(disc, [](const SurfacePoint&) { return 1.0; }, 1e-9);
  CHECK(per.value == doctest::Approx(2.0 * kPi * r).epsilon(1e-8));
  QuadResult euler = surface_integral(
      disc, [](const SurfacePoint& sp) { return curvature_trace(sp) / (2.0 * kPi); },
      1e-9);
  CHECK(euler.value == doctest::Approx(1.0).epsilon(1e-8));

  Phantom stadium = Phantom::capsule(2, {0, 0, 0}, normalized(Vec3{2, 1, 0}), 1.5, r);
  std::vector<double> vs = intrinsic_volumes(stadium);
  QuadResult per2 =
      surface_integral(stadium, [](const SurfacePoint&) { return 1.0; }, 1e-8);
  CHECK(per2.value == doctest::Approx(2.0 * vs[1]).epsilon(1e-7));
}

TEST_CASE("patch points satisfy the core-distance and tangency relations") {
  double r = 0.5;
  Phantom caps = Phantom::capsule(3, {0.1, 0.2, -0.3}, normalized(Vec3{1, 2, 0}), 1.0, r);
  StreamRng rng(5);
  for (const auto& p : boundary_patches(caps)) {
    for (int s = 0; s < 40; ++s) {
      SurfacePoint sp;
      if (p.kind == BoundaryPatch::Kind::Sphere) {
        Vec3 n = normalized(Vec3{rng.next_unit() - 0.5, rng.next_unit() - 0.5,
                                 rng.next_unit() - 0.5});
        bool ok = true;
        for (const Vec3& g : p.wedge) ok = ok && dot(n, g) >= 0.0;
        if (!ok) continue;
        sp = sphere_point(p, n);
      } else if (p.kind == BoundaryPatch::Kind::Cylinder) {
        sp = cylinder_point(p, rng.next_unit() * p.length, rng.next_unit() * 2.0 * kPi);
      } else {
        continue;
      }
      CHECK(std::abs(std::sqrt(core_distance2(caps, sp.x)) - r) < 1e-10);
      CHECK(std::abs(norm(sp.n) - 1.0) < 1e-12);
      // r-regularity witness: inner and outer tangent balls
      CHECK(contains(caps, sp.x - r * sp.n));
      Vec3 outer = sp.x + r * sp.n;
      CHECK(core_distance2(caps, outer) >= (2.0 * r) * (2.0 * r) - 1e-9);
      // principal curvatures within [0, 1/r]
      for (int i = 0; i < sp.num_curv; ++i) {
        CHECK(sp.k[i] >= -1e-15);
        CHECK(sp.k[i] <= 1.0 / r + 1e-15);
      }
    }
  }
}

TEST_CASE("line-body intervals match membership") {
  StreamRng rng(17);
  std::vector<Phantom> bodies = {
      Phantom::ball(3, {0.1, -0.2, 0.3}, 0.8),
      Phantom::capsule(3, {-0.3, 0.0, 0.2}, normalized(Vec3{1, -1, 2}), 1.4, 0.5),
      Phantom::ortho_body(3, {0, 0, 0}, {{0, 1, 0}, {0, 0, 1}}, {0.7, 1.1}, 0.4)};
  for (const Phantom& ph : bodies) {
    for (int trial = 0; trial < 200; ++trial) {
      Vec3 p0{4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0,
              4.0 * rng.next_unit() - 2.0};
      Vec3 dir{0, 0, 1};
      auto iv = line_body_interval(ph, p0, dir);
      auto inside = [&](double s) { return contains(ph, p0 + s * dir); };
      if (!iv) {
        for (double s = -3.0; s <= 3.0; s += 0.37) CHECK_FALSE(inside(s));
      } else {
        double lo = iv->first, hi = iv->second;
        CHECK(inside(0.5 * (lo + hi)));
        CHECK(inside(lo + 1e-9 * (hi - lo)));
        CHECK_FALSE(inside(lo - 1e-6 - 1e-9 * std::abs(lo)));
        CHECK_FALSE(inside(hi + 1e-6 + 1e-9 * std::abs(hi)));
      }
    }
  }
}

TEST_CASE("surface integral reports unattainable tolerances with its best estimate") {
  Phantom ball = Phantom::ball(3, {0, 0, 0}, 1.0);
  bool threw = false;
  try {
    surface_integral(
        ball,
        [](const SurfacePoint& sp) {
          return std::sin(4000.0 * sp.x[0]) * std::cos(3000.0 * sp.x[1]);
        },
        1e-13);
  } catch (const QuadratureError& e) {
    threw = true;
    CHECK(std::isfinite(e.best.value));
    CHECK(e.best.error > 1e-13);
  }
  CHECK(threw);
}

TEST_CASE("q_form basics") {
  Phantom ball = Phantom::ball(3, {0, 0, 0}, 0.5);
  auto patches = boundary_patches(ball);
  SurfacePoint sp = sphere_point(patches[0], {0, 0, 1});
  CHECK(q_form(sp, {0, 0, 0}) == doctest::Approx(0.0));
  // Q(n) = tr(II)
  CHECK(q_form(sp, {0, 0, 1}) == doctest::Approx(curvature_trace(sp)));
  // tangent vector: Q = -II
  CHECK(q_form(sp, {1, 0, 0}) == doctest::Approx(-2.0));  // II = k |s|^2 = 2
}
