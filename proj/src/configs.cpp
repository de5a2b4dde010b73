#include "voxelvol/configs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace voxelvol {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dimension must be 2 or 3");
}

}  // namespace

int num_cell_vertices(int dim) {
  check_dim(dim);
  return 1 << dim;
}

std::uint32_t num_configurations(int dim) {
  return 1u << static_cast<std::uint32_t>(num_cell_vertices(dim));
}

Vec3 cell_vertex(int i, int dim) {
  Vec3 v{0, 0, 0};
  for (int k = 0; k < dim; ++k) v[k] = static_cast<double>((i >> k) & 1);
  return v;
}

std::vector<Vec3> black_vertices(std::uint32_t mask, int dim) {
  std::vector<Vec3> out;
  int nv = num_cell_vertices(dim);
  for (int i = 0; i < nv; ++i)
    if ((mask >> i) & 1u) out.push_back(cell_vertex(i, dim));
  return out;
}

std::vector<Vec3> white_vertices(std::uint32_t mask, int dim) {
  std::vector<Vec3> out;
  int nv = num_cell_vertices(dim);
  for (int i = 0; i < nv; ++i)
    if (!((mask >> i) & 1u)) out.push_back(cell_vertex(i, dim));
  return out;
}

std::uint32_t config_index(const std::vector<std::vector<int>>& vertex_subset, int dim) {
  check_dim(dim);
  std::uint32_t mask = 0;
  for (const auto& v : vertex_subset) {
    if (static_cast<int>(v.size()) != dim)
      throw std::invalid_argument("vertex has wrong number of coordinates");
    int idx = 0;
    for (int k = 0; k < dim; ++k) {
      if (v[k] != 0 && v[k] != 1)
        throw std::invalid_argument("vertex coordinates must be 0 or 1");
      idx |= v[k] << k;
    }
    std::uint32_t bit = 1u << idx;
    if (mask & bit) throw std::invalid_argument("duplicate vertex in subset");
    mask |= bit;
  }
  return mask;
}

SymmetryGroup build_symmetry_group(int dim) {
  check_dim(dim);
  SymmetryGroup g;
  g.dim = dim;
  int nv = num_cell_vertices(dim);

  // Signed axis permutations: axis k maps to axis sigma(k), optionally with
  // the coordinate flipped. On {0,1} coordinates a flip is x -> 1-x.
  std::vector<int> sigma(dim);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    for (int flips = 0; flips < (1 << dim); ++flips) {
      std::array<std::uint8_t, 8> perm{};
      for (int i = 0; i < nv; ++i) {
        int j = 0;
        for (int k = 0; k < dim; ++k) {
          int bit = (i >> k) & 1;
          if ((flips >> k) & 1) bit ^= 1;
          j |= bit << sigma[k];
        }
        perm[i] = static_cast<std::uint8_t>(j);
      }
      g.vertex_perms.push_back(perm);
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return g;
}

std::uint32_t apply_vertex_perm(const std::array<std::uint8_t, 8>& perm,
                                std::uint32_t mask, int dim) {
  int nv = num_cell_vertices(dim);
  std::uint32_t out = 0;
  for (int i = 0; i < nv; ++i)
    if ((mask >> i) & 1u) out |= 1u << perm[i];
  return out;
}

namespace {

// 0-in-convex-hull test over integer points (coordinates in {-1,0,1}).
// By Caratheodory it is enough to look for a simplex of at most dim+1
// affinely independent points containing the origin; barycentric signs are
// decided with integer determinants, so touching hulls are classified
// exactly.
using IVec = std::array<long long, 3>;

long long det2(const IVec& a, const IVec& b) { return a[0] * b[1] - a[1] * b[0]; }

long long det3(const IVec& a, const IVec& b, const IVec& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

bool origin_on_segment(const IVec& a, const IVec& b) {
  // Collinear with origin and on opposite sides (or one endpoint at 0).
  IVec c = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  if (c[0] || c[1] || c[2]) return false;
  long long d = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return d <= 0;
}

bool origin_in_triangle_2d(const IVec& a, const IVec& b, const IVec& c) {
  long long d1 = det2(a, b), d2 = det2(b, c), d3 = det2(c, a);
  if (d1 == 0 && d2 == 0 && d3 == 0) return false;  // degenerate; segments cover it
  bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

IVec isub(const IVec& a, const IVec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

bool origin_in_tetra(const IVec& a, const IVec& b, const IVec& c, const IVec& d) {
  // Solve lb*(b-a) + lc*(c-a) + ld*(d-a) = -a by Cramer; inside iff all
  // barycentric weights are nonnegative.
  IVec ba = isub(b, a), ca = isub(c, a), da = isub(d, a);
  IVec ma = {-a[0], -a[1], -a[2]};
  long long D = det3(ba, ca, da);
  if (D == 0) return false;  // degenerate; lower-dim cases handle it
  long long nb = det3(ma, ca, da);
  long long nc = det3(ba, ma, da);
  long long nd = det3(ba, ca, ma);
  if (D < 0) { D = -D; nb = -nb; nc = -nc; nd = -nd; }
  long long na = D - nb - nc - nd;
  return nb >= 0 && nc >= 0 && nd >= 0 && na >= 0;
}

bool origin_in_triangle_3d(const IVec& a, const IVec& b, const IVec& c) {
  // Origin must lie in the triangle's plane first.
  if (det3(a, b, c) != 0) return false;
  // Project to the coordinate plane where the triangle is non-degenerate.
  IVec ab = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  IVec ac = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  IVec nrm = {ab[1] * ac[2] - ab[2] * ac[1], ab[2] * ac[0] - ab[0] * ac[2],
              ab[0] * ac[1] - ab[1] * ac[0]};
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(nrm[k]) > std::abs(nrm[axis])) axis = k;
  if (nrm[axis] == 0) return false;  // degenerate triangle
  int u = (axis + 1) % 3, v = (axis + 2) % 3;
  IVec a2 = {a[u], a[v], 0}, b2 = {b[u], b[v], 0}, c2 = {c[u], c[v], 0};
  return origin_in_triangle_2d(a2, b2, c2);
}

bool origin_in_hull(const std::vector<IVec>& pts, int dim) {
  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!pts[i][0] && !pts[i][1] && !pts[i][2]) return true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (origin_on_segment(pts[i], pts[j])) return true;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (dim == 2) {
          if (origin_in_triangle_2d(pts[i], pts[j], pts[k])) return true;
        } else {
          if (origin_in_triangle_3d(pts[i], pts[j], pts[k])) return true;
          for (std::size_t l = k + 1; l < n; ++l)
            if (origin_in_tetra(pts[i], pts[j], pts[k], pts[l])) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

bool strictly_separable(std::uint32_t mask, int dim) {
  check_dim(dim);
  std::uint32_t full = num_configurations(dim) - 1;
  if (mask == 0 || mask == full)
    throw std::invalid_argument("separability needs both black and white vertices");

  int nv = num_cell_vertices(dim);
  std::vector<IVec> diffs;
  for (int b = 0; b < nv; ++b) {
    if (!((mask >> b) & 1u)) continue;
    for (int w = 0; w < nv; ++w) {
      if ((mask >> w) & 1u) continue;
      IVec d{};
      for (int k = 0; k < dim; ++k)
        d[k] = static_cast<long long>((b >> k) & 1) - static_cast<long long>((w >> k) & 1);
      diffs.push_back(d);
    }
  }
  // Separating normal exists iff 0 is outside conv{b - w}.
  return !origin_in_hull(diffs, dim);
}

const ClassInfo& ClassPartition::by_label(const std::string& label) const {
  for (const auto& c : classes)
    if (c.label == label) return c;
  throw std::invalid_argument("unknown class label: " + label);
}

ClassPartition orbit_classes(int dim) {
  check_dim(dim);
  SymmetryGroup g = build_symmetry_group(dim);
  std::uint32_t nm = num_configurations(dim);

  ClassPartition part;
  part.dim = dim;
  part.class_of_mask.assign(nm, -1);

  for (std::uint32_t m = 0; m < nm; ++m) {
    if (part.class_of_mask[m] >= 0) continue;
    ClassInfo info;
    info.id = static_cast<int>(part.classes.size());
    std::vector<std::uint32_t> orbit;
    for (const auto& perm : g.vertex_perms) orbit.push_back(apply_vertex_perm(perm, m, dim));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    info.representative = orbit.front();
    info.members = orbit;
    for (std::uint32_t o : orbit) part.class_of_mask[o] = static_cast<std::int16_t>(info.id);
    info.separable =
        (m != 0 && m != nm - 1) ? strictly_separable(info.representative, dim) : false;
    part.classes.push_back(std::move(info));
  }

  std::uint32_t full = nm - 1;
  auto label_of = [&](std::uint32_t generator) { return part.class_of_mask[generator]; };
  part.classes[label_of(0)].label = "empty";
  part.classes[label_of(full)].label = "full";
  if (dim == 2) {
    part.classes[label_of(1)].label = "eta1";
    part.classes[label_of(3)].label = "eta2";
    part.classes[label_of(7)].label = "eta3";
  } else {
    part.classes[label_of(1)].label = "eta1";
    part.classes[label_of(3)].label = "eta2";
    part.classes[label_of(7)].label = "eta3";
    part.classes[label_of(15)].label = "eta4_1";
    part.classes[label_of(23)].label = "eta4_2";
    part.classes[label_of(full ^ 7u)].label = "eta5";
    part.classes[label_of(full ^ 3u)].label = "eta6";
    part.classes[label_of(full ^ 1u)].label = "eta7";
  }
  return part;
}

std::size_t burnside_class_count(int dim) {
  SymmetryGroup g = build_symmetry_group(dim);
  int nv = num_cell_vertices(dim);
  unsigned long long total = 0;
  for (const auto& perm : g.vertex_perms) {
    // Count cycles of the vertex permutation; each cycle may be freely
    // colored black or white in a fixed configuration.
    std::array<bool, 8> seen{};
    int cycles = 0;
    for (int i = 0; i < nv; ++i) {
      if (seen[i]) continue;
      ++cycles;
      int j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = perm[j];
      }
    }
    total += 1ull << cycles;
  }
  return static_cast<std::size_t>(total / g.order());
}

}  // namespace voxelvol
