#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voxelvol/geom.hpp"

namespace voxelvol {

// A 2x...x2 configuration is a subset of the 2^d unit-cell vertices, stored
// as a 2^d-bit mask. Vertex i sits at coordinates (bit_0(i), ..., bit_{d-1}(i)).
struct Configuration {
  int dim = 0;
  std::uint32_t mask = 0;

  std::uint32_t index() const { return mask; }
  std::uint32_t complement() const { return ~mask & ((1u << (1u << dim)) - 1u); }
  bool contains_vertex(int i) const { return (mask >> i) & 1u; }
};

int num_cell_vertices(int dim);       // 2^d
std::uint32_t num_configurations(int dim);  // 2^(2^d)

Vec3 cell_vertex(int i, int dim);
std::vector<Vec3> black_vertices(std::uint32_t mask, int dim);
std::vector<Vec3> white_vertices(std::uint32_t mask, int dim);

// Index l = sum of 2^i over contained vertices. Coordinates must be 0/1 and
// the list duplicate-free.
std::uint32_t config_index(const std::vector<std::vector<int>>& vertex_subset, int dim);

// All rigid motions and reflections preserving the cell vertex set, as
// permutations of the vertex indices 0..2^d-1. Order 8 for d=2, 48 for d=3.
struct SymmetryGroup {
  int dim = 0;
  std::vector<std::array<std::uint8_t, 8>> vertex_perms;

  std::size_t order() const { return vertex_perms.size(); }
};

SymmetryGroup build_symmetry_group(int dim);

// Induced action of a vertex permutation on configuration masks.
std::uint32_t apply_vertex_perm(const std::array<std::uint8_t, 8>& perm,
                                std::uint32_t mask, int dim);

struct ClassInfo {
  int id = 0;
  std::uint32_t representative = 0;  // minimal mask in the orbit
  std::vector<std::uint32_t> members;
  bool separable = false;
  std::string label;  // eta1..eta7, eta4_1/eta4_2, empty, full, or ""
};

struct ClassPartition {
  int dim = 0;
  std::vector<ClassInfo> classes;        // sorted by representative
  std::vector<std::int16_t> class_of_mask;  // size 2^(2^d)

  int class_of(std::uint32_t mask) const { return class_of_mask[mask]; }
  const ClassInfo& by_label(const std::string& label) const;
  int id_of_label(const std::string& label) const { return by_label(label).id; }
  std::size_t size() const { return classes.size(); }
};

ClassPartition orbit_classes(int dim);

// Exact decision of whether the black and white vertex sets can be strongly
// separated by a hyperplane: conv(B) and conv(W) disjoint, equivalently
// 0 not in conv{b - w}. Integer arithmetic throughout.
bool strictly_separable(std::uint32_t mask, int dim);

// Burnside count of orbits, for cross-checking the enumeration.
std::size_t burnside_class_count(int dim);

}  // namespace voxelvol
