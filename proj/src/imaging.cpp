#include "voxelvol/imaging.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "voxelvol/parallel.hpp"

namespace voxelvol {

void LatticePose::validate() const {
  if (dim != 2 && dim != 3) throw std::invalid_argument("lattice dimension must be 2 or 3");
  if (!(a > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
  if (orthonormality_defect(R, dim) > 1e-12)
    throw std::invalid_argument("lattice rotation is not orthonormal");
  for (int k = 0; k < dim; ++k)
    if (c[k] < 0.0 || c[k] >= 1.0)
      throw std::invalid_argument("lattice translation must lie in [0,1)^d");
}

Vec3 LatticePose::point(const std::array<std::int64_t, 3>& k) const {
  Vec3 q{static_cast<double>(k[0]) + c[0], static_cast<double>(k[1]) + c[1],
         dim == 3 ? static_cast<double>(k[2]) + c[2] : 0.0};
  return a * R.apply(q);
}

std::size_t BinaryImage::row_count() const {
  return dim == 2 ? static_cast<std::size_t>(dims[0])
                  : static_cast<std::size_t>(dims[0]) * dims[1];
}

std::size_t BinaryImage::row_offset(int i0, int i1) const {
  std::size_t row = dim == 2 ? static_cast<std::size_t>(i0)
                             : static_cast<std::size_t>(i0) * dims[1] + i1;
  return row * row_stride();
}

bool BinaryImage::get(int i0, int i1, int i2) const {
  int last = dim == 2 ? i1 : i2;
  std::size_t off = row_offset(i0, i1) + static_cast<std::size_t>(last >> 3);
  return (bits[off] >> (last & 7)) & 1u;
}

void BinaryImage::set(int i0, int i1, int i2, bool v) {
  int last = dim == 2 ? i1 : i2;
  std::size_t off = row_offset(i0, i1) + static_cast<std::size_t>(last >> 3);
  std::uint8_t mask = static_cast<std::uint8_t>(1u << (last & 7));
  if (v) bits[off] |= mask;
  else bits[off] &= static_cast<std::uint8_t>(~mask);
}

std::int64_t BinaryImage::popcount() const {
  // Padding bits are kept zero, so a raw byte popcount is exact.
  std::int64_t n = 0;
  for (std::uint8_t b : bits) n += __builtin_popcount(b);
  return n;
}

void BinaryImage::allocate() {
  bits.assign(row_count() * row_stride(), 0);
}

BinaryImage voxelize(const Phantom& ph, const LatticePose& pose, double margin) {
  pose.validate();
  if (ph.dim != pose.dim) throw std::invalid_argument("phantom/lattice dimension mismatch");
  if (margin < pose.a)
    throw std::invalid_argument("margin must be at least one lattice spacing");

  BBox box = bounding_box(ph);
  for (int k = 0; k < ph.dim; ++k) {
    box.lo[k] -= margin;
    box.hi[k] += margin;
  }

  // Lattice index ranges covering R^-1(box)/a - c, via interval arithmetic
  // on the rotated box.
  BinaryImage img;
  img.dim = ph.dim;
  img.pose = pose;
  Vec3 mid = 0.5 * (box.lo + box.hi);
  Vec3 half = 0.5 * (box.hi - box.lo);
  Vec3 mid_l = pose.R.apply_transposed(mid);
  for (int k = 0; k < ph.dim; ++k) {
    double ext = 0.0;
    for (int j = 0; j < ph.dim; ++j) ext += std::abs(pose.R(j, k)) * half[j];
    double lo = (mid_l[k] - ext) / pose.a - pose.c[k];
    double hi = (mid_l[k] + ext) / pose.a - pose.c[k];
    img.origin[k] = static_cast<std::int64_t>(std::floor(lo));
    std::int64_t top = static_cast<std::int64_t>(std::ceil(hi));
    img.dims[k] = static_cast<int>(top - img.origin[k] + 1);
  }
  img.allocate();

  std::int64_t nrows = static_cast<std::int64_t>(img.row_count());
  parallel_chunks(nrows, 0, [&](std::int64_t begin, std::int64_t end, int) {
    int nlast = img.dims[img.dim - 1];
    for (std::int64_t row = begin; row < end; ++row) {
      int i0, i1 = 0;
      if (img.dim == 2) {
        i0 = static_cast<int>(row);
      } else {
        i0 = static_cast<int>(row / img.dims[1]);
        i1 = static_cast<int>(row % img.dims[1]);
      }
      std::uint8_t* out = img.bits.data() + row * img.row_stride();
      std::array<std::int64_t, 3> k{img.origin[0] + i0, img.origin[1] + i1, img.origin[2]};
      if (img.dim == 2) k = {img.origin[0] + i0, img.origin[1], 0};
      // March along the fast axis incrementally in world space.
      Vec3 step{pose.a * pose.R(0, img.dim - 1), pose.a * pose.R(1, img.dim - 1),
                pose.a * pose.R(2, img.dim - 1)};
      Vec3 x = pose.point(k);
      for (int i = 0; i < nlast; ++i) {
        if (contains(ph, x)) out[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
        x = x + step;
      }
    }
  });
  return img;
}

namespace {

ConfigHistogram count_3d(const BinaryImage& img, int threads) {
  ConfigHistogram hist;
  hist.dim = 3;
  hist.counts.assign(256, 0);
  int n0 = img.dims[0], n1 = img.dims[1], n2 = img.dims[2];
  std::int64_t anchor_rows = static_cast<std::int64_t>(n0 - 1) * (n1 - 1);

  int nt = effective_threads(threads);
  std::vector<std::vector<std::int64_t>> partial(nt, std::vector<std::int64_t>(256, 0));

  parallel_chunks(anchor_rows, nt, [&](std::int64_t begin, std::int64_t end, int chunk) {
    std::vector<std::int64_t>& h = partial[chunk];
    std::size_t stride = img.row_stride();
    for (std::int64_t row = begin; row < end; ++row) {
      int i0 = static_cast<int>(row / (n1 - 1));
      int i1 = static_cast<int>(row % (n1 - 1));
      const std::uint8_t* r00 = img.bits.data() + img.row_offset(i0, i1);
      const std::uint8_t* r10 = img.bits.data() + img.row_offset(i0 + 1, i1);
      const std::uint8_t* r01 = img.bits.data() + img.row_offset(i0, i1 + 1);
      const std::uint8_t* r11 = img.bits.data() + img.row_offset(i0 + 1, i1 + 1);
      // Nibble stream: corner plane at z carries vertex bits {1,2,4,8}; the
      // plane at z+1 supplies the high nibble.
      unsigned prev = 0;
      bool have_prev = false;
      for (std::size_t byte = 0; byte < stride; ++byte) {
        unsigned b00 = r00[byte], b10 = r10[byte], b01 = r01[byte], b11 = r11[byte];
        int zbase = static_cast<int>(byte << 3);
        int zmax = std::min(8, n2 - zbase);
        for (int z = 0; z < zmax; ++z) {
          unsigned nib = ((b00 >> z) & 1u) | (((b10 >> z) & 1u) << 1) |
                         (((b01 >> z) & 1u) << 2) | (((b11 >> z) & 1u) << 3);
          if (have_prev) ++h[prev | (nib << 4)];
          prev = nib;
          have_prev = true;
        }
      }
    }
  });

  for (const auto& h : partial)
    for (int l = 0; l < 256; ++l) hist.counts[l] += h[l];
  hist.window_cells = static_cast<std::int64_t>(n0 - 1) * (n1 - 1) * (n2 - 1);
  return hist;
}

ConfigHistogram count_2d(const BinaryImage& img, int threads) {
  ConfigHistogram hist;
  hist.dim = 2;
  hist.counts.assign(16, 0);
  int n0 = img.dims[0], n1 = img.dims[1];

  int nt = effective_threads(threads);
  std::vector<std::vector<std::int64_t>> partial(nt, std::vector<std::int64_t>(16, 0));

  parallel_chunks(n0 - 1, nt, [&](std::int64_t begin, std::int64_t end, int chunk) {
    std::vector<std::int64_t>& h = partial[chunk];
    std::size_t stride = img.row_stride();
    for (std::int64_t i0 = begin; i0 < end; ++i0) {
      const std::uint8_t* r0 = img.bits.data() + img.row_offset(static_cast<int>(i0), 0);
      const std::uint8_t* r1 = img.bits.data() + img.row_offset(static_cast<int>(i0) + 1, 0);
      unsigned prev = 0;
      bool have_prev = false;
      for (std::size_t byte = 0; byte < stride; ++byte) {
        unsigned b0 = r0[byte], b1 = r1[byte];
        int ybase = static_cast<int>(byte << 3);
        int ymax = std::min(8, n1 - ybase);
        for (int y = 0; y < ymax; ++y) {
          unsigned pair = ((b0 >> y) & 1u) | (((b1 >> y) & 1u) << 1);
          if (have_prev) ++h[prev | (pair << 2)];
          prev = pair;
          have_prev = true;
        }
      }
    }
  });

  for (const auto& h : partial)
    for (int l = 0; l < 16; ++l) hist.counts[l] += h[l];
  hist.window_cells = static_cast<std::int64_t>(n0 - 1) * (n1 - 1);
  return hist;
}

}  // namespace

ConfigHistogram count_configurations(const BinaryImage& img, int threads) {
  for (int k = 0; k < img.dim; ++k)
    if (img.dims[k] < 2) throw std::invalid_argument("image needs at least 2 samples per axis");
  return img.dim == 3 ? count_3d(img, threads) : count_2d(img, threads);
}

ConfigHistogram brute_force_count(const BinaryImage& img) {
  for (int k = 0; k < img.dim; ++k)
    if (img.dims[k] < 2) throw std::invalid_argument("image needs at least 2 samples per axis");
  ConfigHistogram hist;
  hist.dim = img.dim;
  hist.counts.assign(num_configurations(img.dim), 0);
  int nv = num_cell_vertices(img.dim);
  if (img.dim == 2) {
    for (int i = 0; i + 1 < img.dims[0]; ++i)
      for (int j = 0; j + 1 < img.dims[1]; ++j) {
        unsigned code = 0;
        for (int v = 0; v < nv; ++v)
          code |= static_cast<unsigned>(img.get(i + (v & 1), j + ((v >> 1) & 1), 0)) << v;
        ++hist.counts[code];
      }
    hist.window_cells = static_cast<std::int64_t>(img.dims[0] - 1) * (img.dims[1] - 1);
  } else {
    for (int i = 0; i + 1 < img.dims[0]; ++i)
      for (int j = 0; j + 1 < img.dims[1]; ++j)
        for (int k = 0; k + 1 < img.dims[2]; ++k) {
          unsigned code = 0;
          for (int v = 0; v < nv; ++v)
            code |= static_cast<unsigned>(
                        img.get(i + (v & 1), j + ((v >> 1) & 1), k + ((v >> 2) & 1)))
                    << v;
          ++hist.counts[code];
        }
    hist.window_cells =
        static_cast<std::int64_t>(img.dims[0] - 1) * (img.dims[1] - 1) * (img.dims[2] - 1);
  }
  return hist;
}

std::vector<std::int64_t> count_classes(const ConfigHistogram& hist,
                                        const ClassPartition& part) {
  if (hist.dim != part.dim) throw std::invalid_argument("histogram/partition dimension mismatch");
  std::vector<std::int64_t> out(part.classes.size(), 0);
  for (std::size_t l = 0; l < hist.counts.size(); ++l)
    out[part.class_of(static_cast<std::uint32_t>(l))] += hist.counts[l];
  return out;
}

}  // namespace voxelvol
