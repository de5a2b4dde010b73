#include <doctest.h>

#include <random>

#include "voxelvol/experiments.hpp"
#include "voxelvol/imaging.hpp"

using namespace voxelvol;

namespace {

BinaryImage random_image(int dim, std::array<int, 3> dims, std::uint64_t seed,
                         double density = 0.5) {
  BinaryImage img;
  img.dim = dim;
  img.dims = dims;
  img.pose.dim = dim;
  img.allocate();
  StreamRng rng(seed);
  for (int i = 0; i < dims[0]; ++i)
    for (int j = 0; j < dims[1]; ++j)
      for (int k = 0; k < (dim == 3 ? dims[2] : 1); ++k)
        img.set(i, j, k, rng.next_unit() < density);
  return img;
}

BinaryImage blank(int dim, std::array<int, 3> dims) {
  BinaryImage img;
  img.dim = dim;
  img.dims = dims;
  img.pose.dim = dim;
  img.allocate();
  return img;
}

}  // namespace

TEST_CASE("all-zero and all-one images") {
  for (int d : {2, 3}) {
    std::array<int, 3> dims = d == 2 ? std::array<int, 3>{7, 5, 1}
                                     : std::array<int, 3>{7, 5, 9};
    BinaryImage img = blank(d, dims);
    ConfigHistogram h = count_configurations(img);
    std::int64_t cells = d == 2 ? 6 * 4 : 6 * 4 * 8;
    CHECK(h.counts[0] == cells);
    CHECK(h.window_cells == cells);

    for (int i = 0; i < dims[0]; ++i)
      for (int j = 0; j < dims[1]; ++j)
        for (int k = 0; k < (d == 3 ? dims[2] : 1); ++k) img.set(i, j, k, true);
    h = count_configurations(img);
    CHECK(h.counts[num_configurations(d) - 1] == cells);
  }
}

TEST_CASE("single interior pixel, d=2") {
  BinaryImage img = blank(2, {9, 9, 1});
  img.set(4, 4, 0, true);
  ConfigHistogram h = count_configurations(img);
  CHECK(h.counts[1] == 1);
  CHECK(h.counts[2] == 1);
  CHECK(h.counts[4] == 1);
  CHECK(h.counts[8] == 1);
  CHECK(h.counts[0] == 8 * 8 - 4);

  ClassPartition part = orbit_classes(2);
  std::vector<std::int64_t> cls = count_classes(h, part);
  CHECK(cls[part.id_of_label("eta1")] == 4);
}

TEST_CASE("fast counting equals the brute-force oracle on random images") {
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 60; ++trial) {
      StreamRng dims_rng(900 + trial, d);
      auto dim_draw = [&](int lo, int hi) {
        return lo + static_cast<int>(dims_rng.next_unit() * (hi - lo + 1));
      };
      std::array<int, 3> dims{dim_draw(2, 21), dim_draw(2, 21),
                              d == 3 ? dim_draw(2, 21) : 1};
      double density = 0.1 + 0.8 * dims_rng.next_unit();
      BinaryImage img = random_image(d, dims, 7'000 + trial, density);
      ConfigHistogram fast = count_configurations(img);
      ConfigHistogram slow = brute_force_count(img);
      CHECK(fast.counts == slow.counts);
      CHECK(fast.window_cells == slow.window_cells);

      std::int64_t total = 0;
      for (auto c : fast.counts) total += c;
      CHECK(total == fast.window_cells);
    }
  }
}

TEST_CASE("complement duality of counts") {
  for (int d : {2, 3}) {
    std::array<int, 3> dims = d == 2 ? std::array<int, 3>{17, 13, 1}
                                     : std::array<int, 3>{9, 11, 13};
    BinaryImage img = random_image(d, dims, 42, 0.4);
    BinaryImage inv = img;
    for (int i = 0; i < dims[0]; ++i)
      for (int j = 0; j < dims[1]; ++j)
        for (int k = 0; k < (d == 3 ? dims[2] : 1); ++k)
          inv.set(i, j, k, !img.get(i, j, k));
    ConfigHistogram h = count_configurations(img);
    ConfigHistogram hc = count_configurations(inv);
    std::uint32_t full = num_configurations(d) - 1;
    for (std::uint32_t l = 0; l <= full; ++l) CHECK(h.counts[l] == hc.counts[full - l]);
  }
}

TEST_CASE("counting is independent of the thread split") {
  BinaryImage img = random_image(3, {23, 19, 29}, 777, 0.5);
  ConfigHistogram h1 = count_configurations(img, 1);
  ConfigHistogram h4 = count_configurations(img, 4);
  CHECK(h1.counts == h4.counts);
}

TEST_CASE("voxelize: ball membership and volume") {
  Phantom ball = Phantom::ball(3, {0, 0, 0}, 1.0);
  LatticePose pose;
  pose.dim = 3;
  pose.a = 1.0 / 20.0;
  BinaryImage img = voxelize(ball, pose, 2.0 * pose.a);

  // center lattice point (c=0) is the origin, which is inside
  CHECK(img.get(static_cast<int>(-img.origin[0]), static_cast<int>(-img.origin[1]),
                static_cast<int>(-img.origin[2])));

  double vol = static_cast<double>(img.popcount()) * pose.a * pose.a * pose.a;
  double exact = 4.0 * kPi / 3.0;
  CHECK(std::abs(vol - exact) / exact < 0.02);

  CHECK_THROWS_AS(voxelize(ball, pose, 0.5 * pose.a), std::invalid_argument);
}

TEST_CASE("voxelize: outermost layer is background") {
  Phantom ball = Phantom::ball(2, {0.37, -0.11, 0}, 0.8);
  LatticePose pose;
  pose.dim = 2;
  pose.a = 0.05;
  pose.c = {0.3, 0.7, 0};
  pose.R = rotation2d(0.35);
  BinaryImage img = voxelize(ball, pose, 2.0 * pose.a);
  for (int i = 0; i < img.dims[0]; ++i)
    for (int j = 0; j < img.dims[1]; ++j)
      if (i == 0 || j == 0 || i == img.dims[0] - 1 || j == img.dims[1] - 1)
        CHECK_FALSE(img.get(i, j, 0));
}

TEST_CASE("voxelize: growing the margin leaves non-empty counts unchanged") {
  Phantom caps = Phantom::capsule(3, {0, 0, 0}, {0, 0, 1}, 0.9, 0.6);
  LatticePose pose;
  pose.dim = 3;
  pose.a = 0.08;
  pose.c = {0.2, 0.5, 0.8};
  BinaryImage small = voxelize(caps, pose, 2.0 * pose.a);
  BinaryImage big = voxelize(caps, pose, 3.0 * pose.a);
  ConfigHistogram hs = count_configurations(small);
  ConfigHistogram hb = count_configurations(big);
  for (std::uint32_t l = 1; l < 256; ++l) CHECK(hs.counts[l] == hb.counts[l]);
  CHECK(hb.counts[0] > hs.counts[0]);
}

TEST_CASE("voxelize: a body missing every lattice point yields an empty image") {
  // a tiny ball parked between lattice points
  Phantom dot = Phantom::ball(2, {0.5, 0.5, 0}, 0.05);
  LatticePose pose;
  pose.dim = 2;
  pose.a = 1.0;
  BinaryImage img = voxelize(dot, pose, 1.0);
  CHECK(img.popcount() == 0);
  ConfigHistogram h = count_configurations(img);
  CHECK(h.counts[0] == h.window_cells);
}

TEST_CASE("pose validation") {
  LatticePose pose;
  pose.dim = 3;
  pose.a = -1.0;
  CHECK_THROWS_AS(pose.validate(), std::invalid_argument);
  pose.a = 0.1;
  pose.c = {1.5, 0, 0};
  CHECK_THROWS_AS(pose.validate(), std::invalid_argument);
  pose.c = {0.5, 0, 0};
  pose.R(0, 0) = 2.0;
  CHECK_THROWS_AS(pose.validate(), std::invalid_argument);
  pose.R(0, 0) = 1.0;
  CHECK_NOTHROW(pose.validate());

  BinaryImage degenerate;
  degenerate.dim = 2;
  degenerate.dims = {1, 5, 1};
  degenerate.pose.dim = 2;
  degenerate.allocate();
  CHECK_THROWS_AS(count_configurations(degenerate), std::invalid_argument);
}

TEST_CASE("histogram of per-config ones aggregates to class sizes") {
  ClassPartition part = orbit_classes(3);
  ConfigHistogram h;
  h.dim = 3;
  h.counts.assign(256, 1);
  std::vector<std::int64_t> cls = count_classes(h, part);
  for (const auto& c : part.classes) CHECK(cls[c.id] == static_cast<std::int64_t>(c.members.size()));
}
