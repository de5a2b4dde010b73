#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "voxelvol/configs.hpp"

using namespace voxelvol;

TEST_CASE("config_index follows the vertex bit convention") {
  CHECK(config_index({{0, 0}}, 2) == 1);
  CHECK(config_index({}, 2) == 0);
  CHECK(config_index({{1, 0}, {1, 1}}, 2) == 10);
  CHECK(config_index({{0, 0, 0}}, 3) == 1);
  CHECK(config_index({{1, 1, 1}}, 3) == 128);
  CHECK_THROWS_AS(config_index({{0, 2}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(config_index({{0, 0}, {0, 0}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(config_index({{0}}, 2), std::invalid_argument);
}

TEST_CASE("vertex coordinates read off the index bits") {
  for (int i = 0; i < 8; ++i) {
    Vec3 v = cell_vertex(i, 3);
    for (int k = 0; k < 3; ++k) CHECK(v[k] == doctest::Approx(((i >> k) & 1) * 1.0));
  }
}

TEST_CASE("symmetry group orders and axioms") {
  for (int d : {2, 3}) {
    SymmetryGroup g = build_symmetry_group(d);
    CHECK(g.order() == (d == 2 ? 8 : 48));
    int nv = num_cell_vertices(d);

    // every element is a bijection
    for (const auto& p : g.vertex_perms) {
      std::set<int> image;
      for (int i = 0; i < nv; ++i) image.insert(p[i]);
      CHECK(image.size() == static_cast<std::size_t>(nv));
    }

    // identity is present
    bool has_identity = false;
    for (const auto& p : g.vertex_perms) {
      bool id = true;
      for (int i = 0; i < nv; ++i) id = id && p[i] == i;
      has_identity = has_identity || id;
    }
    CHECK(has_identity);

    // closure under composition and inverse
    std::set<std::array<std::uint8_t, 8>> elems(g.vertex_perms.begin(),
                                                g.vertex_perms.end());
    for (const auto& p : g.vertex_perms) {
      std::array<std::uint8_t, 8> inv{};
      for (int i = 0; i < nv; ++i) inv[p[i]] = static_cast<std::uint8_t>(i);
      CHECK(elems.count(inv) == 1);
      for (const auto& q : g.vertex_perms) {
        std::array<std::uint8_t, 8> comp{};
        for (int i = 0; i < nv; ++i) comp[i] = q[p[i]];
        CHECK(elems.count(comp) == 1);
      }
    }
  }
  CHECK_THROWS_AS(build_symmetry_group(4), std::invalid_argument);
}

TEST_CASE("orbit partition matches the brute-force and Burnside oracles") {
  ClassPartition p2 = orbit_classes(2);
  CHECK(p2.classes.size() == 6);
  std::multiset<std::size_t> sizes;
  for (const auto& c : p2.classes) sizes.insert(c.members.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 4, 4, 2, 4, 1});
  CHECK(burnside_class_count(2) == 6);

  ClassPartition p3 = orbit_classes(3);
  CHECK(p3.classes.size() == 22);
  CHECK(burnside_class_count(3) == 22);

  std::size_t covered = 0;
  for (const auto& c : p3.classes) covered += c.members.size();
  CHECK(covered == 256);

  CHECK(p3.by_label("eta1").members.size() == 8);
  CHECK(p3.by_label("eta2").members.size() == 12);
  CHECK(p3.by_label("eta3").members.size() == 24);
  CHECK(p3.by_label("eta4_1").members.size() == 6);
  CHECK(p3.by_label("eta4_2").members.size() == 8);
  CHECK(p3.by_label("eta7").representative == 127);
}

TEST_CASE("class_of is invariant under the group action") {
  for (int d : {2, 3}) {
    ClassPartition part = orbit_classes(d);
    SymmetryGroup g = build_symmetry_group(d);
    for (std::uint32_t l = 0; l < num_configurations(d); ++l)
      for (const auto& perm : g.vertex_perms)
        CHECK(part.class_of(apply_vertex_perm(perm, l, d)) == part.class_of(l));
  }
}

TEST_CASE("strict separability: 2d knowns") {
  // diagonal pairs are the only non-separable proper configurations in 2d
  CHECK_FALSE(strictly_separable(6, 2));
  CHECK_FALSE(strictly_separable(9, 2));
  for (std::uint32_t l = 1; l < 15; ++l)
    if (l != 6 && l != 9) CHECK(strictly_separable(l, 2));
  CHECK_THROWS_AS(strictly_separable(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(strictly_separable(15, 2), std::invalid_argument);
}

TEST_CASE("strict separability: 3d classes") {
  ClassPartition part = orbit_classes(3);

  // separability is constant on classes
  for (const auto& c : part.classes) {
    if (c.representative == 0 || c.representative == 255) continue;
    for (std::uint32_t l : c.members) CHECK(strictly_separable(l, 3) == c.separable);
  }

  // swap symmetry B <-> W
  for (std::uint32_t l = 1; l < 255; ++l)
    CHECK(strictly_separable(l, 3) == strictly_separable(255 - l, 3));

  // exactly the eight named classes are separable
  std::set<std::string> separable_labels;
  std::size_t separable_count = 0;
  for (const auto& c : part.classes)
    if (c.separable) {
      separable_labels.insert(c.label);
      separable_count += c.members.size();
    }
  CHECK(separable_labels ==
        std::set<std::string>{"eta1", "eta2", "eta3", "eta4_1", "eta4_2", "eta5", "eta6",
                              "eta7"});
  CHECK(separable_count == 102);
}

TEST_CASE("complement identity on masks") {
  for (int d : {2, 3}) {
    std::uint32_t full = num_configurations(d) - 1;
    for (std::uint32_t l = 0; l <= full; ++l) {
      Configuration c{d, l};
      CHECK(c.complement() == full - l);
    }
  }
}
