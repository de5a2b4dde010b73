#pragma once

#include <cstdint>
#include <vector>

#include "voxelvol/configs.hpp"
#include "voxelvol/geom.hpp"
#include "voxelvol/phantoms.hpp"

namespace voxelvol {

// Pose of the sampling lattice a R (Z^d + c).
struct LatticePose {
  int dim = 3;
  double a = 1.0;
  Mat3 R = Mat3::identity();
  Vec3 c{0, 0, 0};  // componentwise in [0,1)

  void validate() const;
  // World coordinates of the lattice point with integer index k.
  Vec3 point(const std::array<std::int64_t, 3>& k) const;
};

// Binary image on a posed lattice. Bits are packed row-major with the last
// axis fastest, LSB-first within each byte, and each row padded to whole
// bytes (this layout is the BVOX wire format).
struct BinaryImage {
  int dim = 3;
  std::array<int, 3> dims{1, 1, 1};  // samples per axis; axes past dim are 1
  LatticePose pose;
  std::array<std::int64_t, 3> origin{0, 0, 0};  // lattice index of sample (0,..,0)
  std::vector<std::uint8_t> bits;

  std::size_t row_stride() const { return (static_cast<std::size_t>(dims[dim - 1]) + 7) / 8; }
  std::size_t row_count() const;
  std::size_t row_offset(int i0, int i1) const;  // i1 ignored for d=2

  bool get(int i0, int i1, int i2) const;
  void set(int i0, int i1, int i2, bool v);
  std::int64_t popcount() const;

  void allocate();
};

struct ConfigHistogram {
  int dim = 3;
  std::vector<std::int64_t> counts;  // length 2^(2^d)
  std::int64_t window_cells = 0;
};

// Samples the phantom on every lattice point of a window that contains the
// body inflated by `margin` (margin >= a required). Closed-set convention:
// boundary points are foreground.
BinaryImage voxelize(const Phantom& ph, const LatticePose& pose, double margin);

// Streaming 2x...x2 cell-code histogram. Rows are combined with shifts and
// masks; no per-corner random access.
ConfigHistogram count_configurations(const BinaryImage& img, int threads = 0);

// Naive per-cell, per-corner reference counter (the test oracle, also
// behind the CLI --oracle flag).
ConfigHistogram brute_force_count(const BinaryImage& img);

// Class-aggregated counts N_bar_j.
std::vector<std::int64_t> count_classes(const ConfigHistogram& hist,
                                        const ClassPartition& part);

}  // namespace voxelvol
