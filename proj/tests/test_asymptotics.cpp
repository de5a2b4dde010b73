#include <doctest.h>

#include <cmath>
#include <set>

#include "voxelvol/asymptotics.hpp"
#include "voxelvol/experiments.hpp"

using namespace voxelvol;

namespace {

Vec3 random_unit(StreamRng& rng, int dim) {
  while (true) {
    Vec3 v{2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0,
           dim == 3 ? 2.0 * rng.next_unit() - 1.0 : 0.0};
    double n2 = norm2(v);
    if (n2 > 1e-4 && n2 <= 1.0) return (1.0 / std::sqrt(n2)) * v;
  }
}

}  // namespace

TEST_CASE("support function properties") {
  StreamRng rng(31);
  ConfigSets cs = config_sets(0x2d, 3);
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 n = random_unit(rng, 3);

    // Minkowski additivity: h(S (+) T, n) = h(S,n) + h(T,n)
    std::vector<Vec3> sum;
    for (const Vec3& b : cs.black)
      for (const Vec3& w : cs.white) sum.push_back(b - w);
    std::vector<Vec3> wcheck;
    for (const Vec3& w : cs.white) wcheck.push_back(-1.0 * w);
    CHECK(support_h(sum, n) ==
          doctest::Approx(support_h(cs.black, n) + support_h(wcheck, n)).epsilon(1e-12));

    // rotation invariance h(RS, Rn) = h(S, n)
    Mat3 R = sample_pose(SamplingMode::Isotropic, 3, 1.0, 5, 0, trial).R;
    std::vector<Vec3> rb;
    for (const Vec3& b : cs.black) rb.push_back(R.apply(b));
    CHECK(support_h(rb, R.apply(n)) == doctest::Approx(support_h(cs.black, n)).epsilon(1e-12));

    // selectors land in the support sets away from ties
    SupportPoint sp = support_point_plus(cs.black, n);
    if (!sp.degenerate)
      CHECK(dot(sp.p, n) == doctest::Approx(support_h(cs.black, n)).epsilon(1e-12));
    SupportPoint sm = support_point_minus(cs.white, n);
    if (!sm.degenerate) {
      double lw = 1e300;
      for (const Vec3& w : cs.white) lw = std::min(lw, dot(w, n));
      CHECK(dot(sm.p, n) == doctest::Approx(lw).epsilon(1e-12));
    }
  }
}

TEST_CASE("delta and first-order density examples") {
  ConfigSets xi1_3 = config_sets(1, 3);
  Vec3 diag = normalized(Vec3{1, 1, 1});
  CHECK(delta_indicator(xi1_3.black, xi1_3.white, diag));
  CHECK_FALSE(delta_indicator(xi1_3.black, xi1_3.white, {1, 0, 0}));

  // xi_6 in 2d has no separating direction at all
  ConfigSets xi6 = config_sets(6, 2);
  for (int k = 0; k < 360; ++k) {
    double th = 2.0 * kPi * k / 360.0;
    CHECK_FALSE(delta_indicator(xi6.black, xi6.white, {std::cos(th), std::sin(th), 0}));
  }

  ConfigSets xi1_2 = config_sets(1, 2);
  Vec3 n{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0};
  CHECK(first_order_density(xi1_2.black, xi1_2.white, n) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(first_order_density(xi6.black, xi6.white, n) == 0.0);
}

TEST_CASE("2d summed densities reduce to min/max of the normal components") {
  ClassPartition part = orbit_classes(2);
  StreamRng rng(77);
  for (int trial = 0; trial < 400; ++trial) {
    Vec3 n = random_unit(rng, 2);
    double mn = std::min(std::abs(n[0]), std::abs(n[1]));
    double mx = std::max(std::abs(n[0]), std::abs(n[1]));
    for (const char* lbl : {"eta1", "eta3"}) {
      double s = 0.0;
      for (std::uint32_t l : part.by_label(lbl).members) {
        ConfigSets cs = config_sets(l, 2);
        s += first_order_density(cs.black, cs.white, n);
      }
      CHECK(s == doctest::Approx(mn).epsilon(1e-12));
    }
    double s2 = 0.0;
    for (std::uint32_t l : part.by_label("eta2").members) {
      ConfigSets cs = config_sets(l, 2);
      s2 += first_order_density(cs.black, cs.white, n);
    }
    CHECK(s2 == doctest::Approx(mx - mn).epsilon(1e-12));
  }
}

TEST_CASE("triangle decomposition: one active configuration per cardinality") {
  ClassPartition part = orbit_classes(3);
  for (const auto& ct : triangle_decomposition()) {
    Vec3 c = normalized(ct.tri.a + ct.tri.b + ct.tri.c);
    std::array<int, 8> active_per_card{};
    std::uint32_t active4 = 0;
    for (std::uint32_t l = 1; l < 255; ++l) {
      ConfigSets cs = config_sets(l, 3);
      if (delta_indicator(cs.black, cs.white, c)) {
        int card = __builtin_popcount(l);
        ++active_per_card[card];
        if (card == 4) active4 = l;
      }
    }
    for (int k = 1; k <= 7; ++k) CHECK(active_per_card[k] == 1);

    // the k=4 configuration is a face on type-1 triangles, a tripod on type-2
    const std::string& lbl = part.classes[part.class_of(active4)].label;
    CHECK(lbl == (ct.type == 1 ? "eta4_1" : "eta4_2"));
  }
}

TEST_CASE("psi_bar reproduces the closed-form coefficients") {
  ClassPartition part = orbit_classes(3);
  for (const auto& cls : part.classes) {
    auto cf = closed_form_psi_bar(part, cls.id);
    if (!cf) continue;
    CHECK(psi_bar(part, cls.id, 1e-8) == doctest::Approx(*cf).scale(1).epsilon(1e-9));
  }
  // complementary classes share psi_bar
  CHECK(psi_bar(part, part.id_of_label("eta1")) ==
        doctest::Approx(psi_bar(part, part.id_of_label("eta7"))).epsilon(1e-10));
}

TEST_CASE("psi_bar in 2d against an independent Riemann sum") {
  ClassPartition part = orbit_classes(2);
  for (const char* lbl : {"eta1", "eta2", "eta3"}) {
    int id = part.id_of_label(lbl);
    double crude = 0.0;
    const int n = 400000;
    for (int k = 0; k < n; ++k) {
      double th = 2.0 * kPi * (k + 0.5) / n;
      Vec3 nv{std::cos(th), std::sin(th), 0};
      for (std::uint32_t l : part.classes[id].members) {
        ConfigSets cs = config_sets(l, 2);
        crude += first_order_density(cs.black, cs.white, nv);
      }
    }
    crude *= 2.0 / n;
    CHECK(psi_bar(part, id, 1e-10) == doctest::Approx(crude).epsilon(1e-7));
  }
  // analytic values
  CHECK(psi_bar(part, part.id_of_label("eta1"), 1e-10) ==
        doctest::Approx((8.0 - 4.0 * std::sqrt(2.0)) / kPi).epsilon(1e-11));
  CHECK(psi_bar(part, part.id_of_label("eta2"), 1e-10) ==
        doctest::Approx((8.0 * std::sqrt(2.0) - 8.0) / kPi).epsilon(1e-11));
}

TEST_CASE("mu_bar closed forms and mu_l symmetries") {
  ClassPartition part = orbit_classes(3);
  for (const char* lbl : {"eta1", "eta2", "eta3", "eta4_1", "eta4_2"}) {
    int id = part.id_of_label(lbl);
    CHECK(mu_bar(part, id, 1e-8) ==
          doctest::Approx(*closed_form_mu_bar(part, id)).scale(1).epsilon(1e-9));
  }

  // raw per-configuration quadrature: class-constant, antisymmetric under
  // complement, and summing to the reduced class value
  for (const char* lbl : {"eta1", "eta2", "eta4_2"}) {
    const ClassInfo& cls = part.by_label(lbl);
    double first = mu_l(cls.members.front(), 3, 1e-9);
    double sum = 0.0;
    for (std::uint32_t l : cls.members) {
      double m = mu_l(l, 3, 1e-9);
      CHECK(m == doctest::Approx(first).scale(1).epsilon(1e-8));
      CHECK(mu_l(255 - l, 3, 1e-9) == doctest::Approx(-m).scale(1).epsilon(1e-8));
      sum += m;
    }
    CHECK(sum == doctest::Approx(mu_bar(part, cls.id, 1e-9)).scale(1).epsilon(1e-8));
  }

  // 2d values
  ClassPartition p2 = orbit_classes(2);
  CHECK(mu_bar(p2, p2.id_of_label("eta1"), 1e-9) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(mu_bar(p2, p2.id_of_label("eta2"), 1e-9) ==
        doctest::Approx(0.0).scale(1).epsilon(1e-9));
  CHECK(mu_bar(p2, p2.id_of_label("eta3"), 1e-9) == doctest::Approx(-2.0).epsilon(1e-9));
  for (std::uint32_t l : {1u, 2u, 4u, 8u})
    CHECK(mu_l(l, 2, 1e-9) == doctest::Approx(0.5).epsilon(1e-9));

  // non-separable configurations contribute nothing
  CHECK(mu_l(6, 2, 1e-9) == 0.0);
  CHECK(mu_bar(part, part.class_of(0b00100100), 1e-8) ==
        doctest::Approx(0.0).scale(1).epsilon(1e-9));
}

TEST_CASE("lambda on the ball matches mu_l times V_1") {
  double r = 1.3;
  Phantom ball = Phantom::ball(3, {0.1, 0.0, -0.2}, r);
  for (std::uint32_t l : {1u, 3u, 7u, 15u, 23u, 127u, 254u}) {
    double expected = mu_l(l, 3, 1e-10) * 4.0 * r;
    CHECK(lambda_l(ball, l, 1e-9) == doctest::Approx(expected).scale(1).epsilon(1e-7));
  }
  // 2d: lambda_l(disc) = mu_l * V_0 = mu_l
  Phantom disc = Phantom::ball(2, {0, 0, 0}, 0.9);
  for (std::uint32_t l : {1u, 3u, 7u, 14u})
    CHECK(lambda_l(disc, l, 1e-9) ==
          doctest::Approx(mu_l(l, 2, 1e-10)).scale(1).epsilon(1e-7));
}

TEST_CASE("lambda on a 2d capsule still equals mu_l (Gauss map argument)") {
  Phantom stadium = Phantom::capsule(2, {0, 0, 0}, normalized(Vec3{1, 2, 0}), 1.7, 0.6);
  for (std::uint32_t l : {1u, 3u, 7u})
    CHECK(lambda_l(stadium, l, 1e-9) ==
          doctest::Approx(mu_l(l, 2, 1e-10)).scale(1).epsilon(1e-7));
}

TEST_CASE("phi_bar on the ball reduces to the psi_bar coefficient") {
  ClassPartition part = orbit_classes(3);
  double r = 0.75;
  Phantom ball = Phantom::ball(3, {0, 0, 0}, r);
  for (const char* lbl : {"eta1", "eta3", "eta4_1"}) {
    int id = part.id_of_label(lbl);
    CHECK(phi_bar(ball, part, id, 1e-8) ==
          doctest::Approx(2.0 * kPi * r * r * psi_bar(part, id, 1e-10)).epsilon(1e-8));
  }
  // empty/full classes carry no mass
  CHECK(phi_bar(ball, part, part.class_of(0), 1e-8) == 0.0);
}

TEST_CASE("phi_bar on a tilted capsule: ball part plus cylinder part") {
  ClassPartition part = orbit_classes(3);
  double r = 0.6, t = 1.1;
  Vec3 u = normalized(Vec3{0.3, -0.5, 0.8});  // generic axis exercises clipping
  Phantom caps = Phantom::capsule(3, {0, 0, 0}, u, t, r);
  Phantom ball = Phantom::ball(3, {0, 0, 0}, r);
  int id = part.id_of_label("eta2");

  // cylinder contribution: strata quadrature of the first-order density
  Vec3 e, f;
  orthonormal_complement(u, 3, e, f);
  double cyl = 0.0;
  for (std::uint32_t l : part.classes[id].members) {
    ConfigSets cs = config_sets(l, 3);
    std::vector<double> brk = circle_breakpoints(e, f, 3);
    for (std::size_t s = 0; s + 1 < brk.size(); ++s)
      cyl += integrate_segment(
          [&](double th) {
            Vec3 n = std::cos(th) * e + std::sin(th) * f;
            return first_order_density(cs.black, cs.white, n);
          },
          brk[s], brk[s + 1], 24);
  }
  cyl *= r * t;
  double expected = phi_bar(ball, part, id, 1e-9) + cyl;
  CHECK(phi_bar(caps, part, id, 1e-8) == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("coefficient table: provenance and closed-form pinning") {
  ClassPartition part = orbit_classes(3);
  CoefficientTable table = compute_coefficient_table(part, nullptr, 1e-8);
  REQUIRE(table.entries.size() == part.classes.size());
  for (const auto& cls : part.classes) {
    const CoefficientEntry& e = table.by_class(cls.id);
    if (cls.label == "eta1") {
      CHECK(e.provenance == "closed-form");
      CHECK(e.mu_bar == 3.0 - std::sqrt(3.0));
      CHECK(e.err < 1e-9);
    }
    if (!cls.separable && cls.label.empty()) {
      CHECK(e.psi_bar == doctest::Approx(0.0).scale(1).epsilon(1e-12));
      CHECK(e.mu_bar == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    }
  }
}

TEST_CASE("coefficient table with per-configuration entries") {
  ClassPartition part = orbit_classes(2);
  Phantom disc = Phantom::ball(2, {0, 0, 0}, 1.0);
  CoefficientTable table = compute_coefficient_table(part, &disc, 1e-8, true);
  REQUIRE(table.mu_per_config.size() == 16);
  CHECK(table.mu_per_config[1] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(table.mu_per_config[6] == 0.0);
  REQUIRE(table.lambda_per_config.size() == 16);
  CHECK(*table.lambda_per_config[1] == doctest::Approx(0.5).epsilon(1e-7));
  // lambda_bar of a class is the sum of its per-configuration entries
  const ClassInfo& eta1 = part.by_label("eta1");
  double sum = 0.0;
  for (std::uint32_t l : eta1.members) sum += *table.lambda_per_config[l];
  CHECK(*table.by_class(eta1.id).lambda_bar == doctest::Approx(sum).epsilon(1e-8));
}

namespace {

// Independent oracle for the ball with B = {0}: reduce the hit-or-miss set
// along rays from the center; the radial section is (rho_max(u), r], so the
// volume is a sphere integral of exact radial measures.
double ball_hitmiss_radial_oracle(double r, const std::vector<Vec3>& W, double a) {
  double total = 0.0;
  for (const auto& ct : cube_sphere_triangles()) {
    try {
      total += integrate_spherical_triangle_adaptive(
                   ct.tri,
                   [&](const Vec3& u) {
                     double m = 0.0;
                     for (const Vec3& w : W) {
                       double c = dot(u, w);
                       double disc = r * r - a * a * (norm2(w) - c * c);
                       if (disc < 0.0) continue;
                       m = std::max(m, -a * c + std::sqrt(disc));
                     }
                     m = std::min(m, r);
                     return (r * r * r - m * m * m) / 3.0;
                   },
                   1e-9, 8)
                   .value;
    } catch (const QuadratureError& e) {
      total += e.best.value;  // kinked integrand; the best estimate is enough
    }
  }
  return total;
}

}  // namespace

TEST_CASE("hit-or-miss grid and MC against the radial oracle") {
  double r = 1.0;
  Phantom ball = Phantom::ball(3, {0, 0, 0}, r);
  ConfigSets cs = config_sets(1, 3);
  for (double a : {r / 25.0, r / 100.0}) {
    double oracle = ball_hitmiss_radial_oracle(r, cs.white, a);
    HitMissResult grid =
        hit_or_miss_volume(ball, cs.black, cs.white, a, HitMissMethod::Grid, 8'000'000);
    CHECK(std::abs(grid.value - oracle) < std::max(grid.error_bound * 2.0, 3e-7));
    HitMissResult mc = hit_or_miss_volume(ball, cs.black, cs.white, a,
                                          HitMissMethod::MonteCarlo, 400'000);
    CHECK(std::abs(mc.value - oracle) < std::max(mc.error_bound * 1.5, 1e-6));
  }
}

TEST_CASE("hit-or-miss 2d grid tracks the second-order expansion") {
  double r = 0.8;
  Phantom disc = Phantom::ball(2, {0, 0, 0}, r);
  ConfigSets cs = config_sets(1, 2);
  double a = r / 50.0;
  double l1 = surface_integral(disc,
                               [&](const SurfacePoint& sp) {
                                 return first_order_density(cs.black, cs.white, sp.n);
                               },
                               1e-10)
                  .value;
  double lam = lambda_l(disc, 1, 1e-10);
  HitMissResult grid =
      hit_or_miss_volume(disc, cs.black, cs.white, a, HitMissMethod::Grid, 2'000'000);
  CHECK(std::abs(grid.value - (a * l1 + a * a * lam)) < 5e-7);
}

TEST_CASE("hit-or-miss preconditions") {
  Phantom ball = Phantom::ball(3, {0, 0, 0}, 0.1);
  ConfigSets cs = config_sets(1, 3);
  CHECK_THROWS_AS(hit_or_miss_volume(ball, cs.black, {}, 0.01, HitMissMethod::Grid, 1000),
                  std::invalid_argument);
  // a * circumradius(B u W) exceeds r
  CHECK_THROWS_AS(
      hit_or_miss_volume(ball, cs.black, cs.white, 0.06, HitMissMethod::Grid, 1000),
      std::invalid_argument);
}
